#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fixtures.hpp"
#include "layered/assembly.hpp"

using namespace layered;

namespace {

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::ValidationFailure;
}

bool mentions(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

// Genus-2 handlebody: spine layered [S, S, A] so every spine-era curve is
// retired and the upper front is the theta on curves {4, 5, 6}.
ModelComplex theta_handlebody() {
    ModelComplex spine = build_fat_spine(SpineTree::genus_two());
    PantsGraph base = spine.stages().back().graph;
    MovePath path{base,
                  {{1, MoveKind::S, std::nullopt, 0, 4},
                   {2, MoveKind::S, std::nullopt, 0, 5},
                   {3, MoveKind::A, Repairing::Cross1, 0, 6}}};
    return layer_model(spine, path);
}

// Genus-2 handlebody layered [S, S] only: the upper front keeps the
// dumbbell shape, so it cannot match a theta front.
ModelComplex dumbbell_handlebody() {
    ModelComplex spine = build_fat_spine(SpineTree::genus_two());
    PantsGraph base = spine.stages().back().graph;
    MovePath path{base, {{1, MoveKind::S, std::nullopt, 0, 4}, {2, MoveKind::S, std::nullopt, 0, 5}}};
    return layer_model(spine, path);
}

ModelComplex theta_product() { return build_fat_spine(SpineTree::product(fixtures::theta())); }

// Positional pairing of the two upper fronts' curve ids.
CurveMatching paired_fronts(const ModelComplex& left, const ModelComplex& right) {
    std::vector<CurveId> a = left.stages().back().graph.curve_ids();
    std::vector<CurveId> b = right.stages().back().graph.curve_ids();
    REQUIRE(a.size() == b.size());
    CurveMatching m;
    for (std::size_t i = 0; i < a.size(); ++i) m.push_back({a[i], b[i]});
    return m;
}

int germ_total(const ModelComplex& m) {
    int n = 0;
    for (const auto& l : m.links()) n += static_cast<int>(l.germs.size());
    return n;
}

std::pair<int, int> block_counts(const ModelComplex& m) {
    int s = 0, a = 0;
    for (const auto& b : m.blocks()) (b.kind == MoveKind::S ? s : a) += 1;
    return {s, a};
}

// Shortest clean loop at the given front: a move path that starts and ends
// on the front's exact labels while retiring every front curve on the way.
// Breadth-first search over labeled graphs; scratch curves use ids 101+ and
// the departing ids are re-created once dead.
MovePath find_thin_path(const PantsGraph& front) {
    struct Node {
        PantsGraph g;
        int scratch = 0;
        int mask = 0;
    };
    std::vector<CurveId> orig = front.curve_ids();
    int full = (1 << orig.size()) - 1;
    auto mask_bit = [&](CurveId c) {
        for (std::size_t i = 0; i < orig.size(); ++i)
            if (orig[i] == c) return 1 << i;
        return 0;
    };
    auto key_of = [&](const Node& n) {
        std::string k;
        for (int v = 0; v < n.g.vertices(); ++v)
            for (int s = 0; s < 3; ++s) k += std::to_string(n.g.curve_at(Leg{v, s})) + ",";
        return k + ":" + std::to_string(n.scratch) + ":" + std::to_string(n.mask);
    };

    std::map<std::string, Node> nodes;
    std::map<std::string, std::pair<std::string, Move>> parent;
    Node start{front, 0, 0};
    std::string start_key = key_of(start), goal_key;
    nodes.emplace(start_key, start);
    std::vector<std::string> frontier{start_key};
    for (int depth = 0; depth < 8 && goal_key.empty() && !frontier.empty(); ++depth) {
        std::vector<std::string> next;
        for (const std::string& fk : frontier) {
            const Node n = nodes.at(fk);
            std::vector<CurveId> creations;
            if (n.scratch < 5) creations.push_back(static_cast<CurveId>(101 + n.scratch));
            for (CurveId c : orig)
                if (!n.g.has_curve(c)) creations.push_back(c);
            for (CurveId t : n.g.curve_ids()) {
                bool loop = n.g.curve_kind(t) == CurveKind::SelfLoop;
                for (CurveId created : creations) {
                    std::vector<Move> batch;
                    if (loop)
                        batch.push_back({t, MoveKind::S, std::nullopt, 0, created});
                    else {
                        batch.push_back({t, MoveKind::A, Repairing::Cross1, 0, created});
                        batch.push_back({t, MoveKind::A, Repairing::Cross2, 0, created});
                    }
                    for (const Move& mv : batch) {
                        Node nn{move_effect(n.g, mv).after,
                                n.scratch + (mv.new_curve > 100 ? 1 : 0), n.mask | mask_bit(mv.target)};
                        std::string nk = key_of(nn);
                        if (nodes.count(nk)) continue;
                        nodes.emplace(nk, nn);
                        parent.emplace(nk, std::pair<std::string, Move>{fk, mv});
                        if (nn.mask == full && nn.g == front) {
                            goal_key = nk;
                            break;
                        }
                        next.push_back(nk);
                    }
                    if (!goal_key.empty()) break;
                }
                if (!goal_key.empty()) break;
            }
            if (!goal_key.empty()) break;
        }
        frontier = std::move(next);
    }
    REQUIRE(!goal_key.empty());
    std::vector<Move> moves;
    for (std::string at = goal_key; at != start_key;) {
        const auto& [pk, mv] = parent.at(at);
        moves.push_back(mv);
        at = pk;
    }
    std::reverse(moves.begin(), moves.end());
    return MovePath{front, moves};
}

SplittingDescriptor double_descriptor() {
    SplittingDescriptor s;
    s.bodies = {{2, {}, "left"}, {2, {}, "right"}};
    return s;
}

SplittingDescriptor k2_descriptor() {
    SplittingDescriptor s;
    s.bodies = {{2, {}, "first"}, {2, {2}, "upper middle"}, {2, {2}, "lower middle"}, {2, {}, "last"}};
    return s;
}

}  // namespace

TEST_CASE("splitting descriptors validate boundary matching") {
    CHECK(validate_splitting(double_descriptor()).ok);
    CHECK(validate_splitting(k2_descriptor()).ok);

    SECTION("genus-one boundaries are rejected") {
        SplittingDescriptor s = double_descriptor();
        s.bodies[0].plus_genus = 1;
        ValidationReport r = validate_splitting(s);
        REQUIRE_FALSE(r.ok);
        CHECK(mentions(r.problems.front(), "genus-one"));

        SplittingDescriptor t = k2_descriptor();
        t.bodies[1].minus_genera = {1};
        t.bodies[2].minus_genera = {1};
        r = validate_splitting(t);
        REQUIRE_FALSE(r.ok);
        CHECK(mentions(r.problems.front(), "genus-one"));
    }
    SECTION("thick surfaces need equal genera") {
        SplittingDescriptor s = double_descriptor();
        s.bodies[1].plus_genus = 3;
        ValidationReport r = validate_splitting(s);
        REQUIRE_FALSE(r.ok);
        CHECK(mentions(r.problems.front(), "thick surface"));
    }
    SECTION("thin levels need matching lower boundaries") {
        SplittingDescriptor s = k2_descriptor();
        s.bodies[1].plus_genus = 4;
        s.bodies[0].plus_genus = 4;
        s.bodies[1].minus_genera = {2, 2};
        ValidationReport r = validate_splitting(s);
        REQUIRE_FALSE(r.ok);
        CHECK(mentions(r.problems.front(), "thin level"));
    }
    SECTION("odd body counts cannot pair off") {
        SplittingDescriptor s;
        s.bodies = {{2, {}, ""}};
        CHECK_FALSE(validate_splitting(s).ok);
    }
    SECTION("closed assemblies start and end with handlebodies") {
        SplittingDescriptor s = double_descriptor();
        s.bodies[0].minus_genera = {2};
        s.bodies[0].plus_genus = 2;
        ValidationReport r = validate_splitting(s);
        REQUIRE_FALSE(r.ok);
        CHECK(mentions(r.problems.front(), "handlebody"));
    }
    SECTION("upper genus carries the lower boundaries") {
        SplittingDescriptor s = k2_descriptor();
        s.bodies[1].minus_genera = {2, 2};
        s.bodies[2].minus_genera = {2, 2};
        ValidationReport r = validate_splitting(s);
        REQUIRE_FALSE(r.ok);
        CHECK(mentions(r.problems.front(), "below the total"));
    }
    SECTION("empty splitting is flagged") { CHECK_FALSE(validate_splitting(SplittingDescriptor{}).ok); }
}

TEST_CASE("shared loops are read off the move targets") {
    PantsGraph dumbbell = fixtures::dumbbell();
    PantsGraph theta = fixtures::theta();

    SECTION("a path retiring every base curve is clean") {
        MovePath p{dumbbell,
                   {{0, MoveKind::S, std::nullopt, 0, 4},
                    {1, MoveKind::S, std::nullopt, 0, 5},
                    {2, MoveKind::A, Repairing::Cross1, 0, 6}}};
        SharedLoopReport r = check_shared_loops(dumbbell, theta, p);
        CHECK(r.clean);
        CHECK(r.shared.empty());
        CHECK(r.length == 3);
    }
    SECTION("the empty path between equal graphs flags all curves") {
        SharedLoopReport r = check_shared_loops(theta, theta, MovePath{theta, {}});
        CHECK_FALSE(r.clean);
        CHECK(r.shared == std::vector<CurveId>{0, 1, 2});
        CHECK(r.length == 0);
    }
    SECTION("retiring all but one base curve leaves one violation") {
        MovePath p = fixtures::theta_three_a_path();
        p.moves.pop_back();
        SharedLoopReport r = check_shared_loops(theta, validate_path(p).graphs.back(), p);
        CHECK_FALSE(r.clean);
        CHECK(r.shared == std::vector<CurveId>{2});
    }
    SECTION("clean paths stay clean under extension") {
        MovePath p = fixtures::theta_three_a_path();
        PantsGraph end = validate_path(p).graphs.back();
        SharedLoopReport base = check_shared_loops(theta, end, p);
        CHECK(base.clean);
        p.moves.push_back({end.curve_ids().front(), MoveKind::A, Repairing::Cross2, 0, 9});
        SharedLoopReport more = check_shared_loops(theta, validate_path(p).graphs.back(), p);
        CHECK(more.clean);
        CHECK(more.length == 4);
    }
    SECTION("a reused id still counts as retired") {
        ModelComplex body = theta_product();
        PantsGraph front = body.minus_fronts().front().graph;
        MovePath loop = find_thin_path(front);
        SharedLoopReport r = check_shared_loops(front, front, loop);
        CHECK(r.clean);
        // Three retirements are forced and no move recreates its own target,
        // so a clean loop at a theta front needs at least four moves.
        CHECK(r.length >= 4);
    }
    SECTION("endpoints are checked as classes") {
        CHECK(code_of([&] { check_shared_loops(dumbbell, theta, MovePath{theta, {}}); }) ==
              Errc::EndpointMismatch);
        CHECK(code_of([&] { check_shared_loops(theta, dumbbell, MovePath{theta, {}}); }) ==
              Errc::EndpointMismatch);
        MovePath bad{theta, {{0, MoveKind::S, std::nullopt, 0, 9}}};
        CHECK(code_of([&] { check_shared_loops(theta, theta, bad); }) == Errc::InvalidPath);
    }
}

TEST_CASE("annulus graphs chain matched curves through links") {
    SECTION("product spines facing each other give paths") {
        ModelComplex left = theta_product(), right = theta_product();
        AnnulusGraph g = annulus_forest(left, right, paired_fronts(left, right));
        CHECK(g.loops.size() == 9);
        CHECK(g.annuli.size() == 6);
        CHECK(g.components.size() == 3);
        CHECK(g.torus_components.empty());
        CHECK(g.forest());
        for (const auto& comp : g.components) CHECK(comp.size() == 3);
        CHECK(crush_tori(g) == g);
    }
    SECTION("doubly lifted spine links close into a torus") {
        ModelComplex left = build_fat_spine(SpineTree::genus_two());
        ModelComplex right = build_fat_spine(SpineTree::genus_two());
        AnnulusGraph g = annulus_forest(left, right, paired_fronts(left, right));
        // Both interior links lift twice, so the two matched loop curves
        // close a 2-cycle between them.
        CHECK(g.loops.size() == 7);
        CHECK(g.annuli.size() == 6);
        CHECK(g.components.size() == 2);
        REQUIRE(g.torus_components.size() == 1);
        CHECK_FALSE(g.forest());

        AnnulusGraph crushed = crush_tori(g);
        CHECK(crushed.forest());
        CHECK(crushed.torus_components.empty());
        CHECK(crushed.loops.size() == 4);
        CHECK(crushed.annuli.size() == 2);
        CHECK(crushed.components.size() == 2);
        CHECK(crush_tori(crushed) == crushed);
    }
    SECTION("matchings must pair every curve exactly once") {
        ModelComplex left = theta_product(), right = theta_product();
        CurveMatching good = paired_fronts(left, right);
        CurveMatching missing(good.begin(), good.end() - 1);
        CHECK(code_of([&] { annulus_forest(left, right, missing); }) == Errc::NotAMatching);
        CurveMatching doubled = good;
        doubled[1].first = good[0].first;
        CHECK(code_of([&] { annulus_forest(left, right, doubled); }) == Errc::NotAMatching);
        CurveMatching unknown = good;
        unknown[0].second = 99;
        CHECK(code_of([&] { annulus_forest(left, right, unknown); }) == Errc::NotAMatching);
        CHECK(code_of([&] { annulus_forest(ModelBuilder().finish(), right, good); }) == Errc::NotSingleBody);
    }
}

TEST_CASE("the genus-2 double assembles into a closed model") {
    ModelComplex body = theta_handlebody();
    REQUIRE(body.stages().back().graph.curve_ids() == std::vector<CurveId>{4, 5, 6});
    SplittingDescriptor s = double_descriptor();
    CurveMatching matching = paired_fronts(body, body);
    AssemblyReport rep = assemble(s, {body, body}, {matching}, {});
    const ModelComplex& m = rep.complex;

    CHECK(m.closed());
    CHECK(validate_complex(m).ok);
    CHECK(euler_characteristic(m) == 0);
    CHECK(m.stages().empty());
    CHECK(m.minus_fronts().empty());

    CHECK(m.links().size() == 7);
    CHECK(m.faces().size() == 8);
    auto [s_blocks, a_blocks] = block_counts(m);
    CHECK(s_blocks == 4);
    CHECK(a_blocks == 2);
    CHECK(static_cast<int>(m.faces().size()) == s_blocks + 2 * a_blocks);

    SECTION("layer links merge pairwise, spine links stay separate") {
        CHECK(rep.curve_offsets == std::vector<CurveId>{0, 7});
        REQUIRE(rep.link_map.size() == 2);
        CHECK(rep.link_map[0] == std::vector<LinkId>{0, 1, 2, 3, 4});
        CHECK(rep.link_map[1] == std::vector<LinkId>{5, 6, 2, 3, 4});
        CHECK(m.links()[2].absorbed == std::vector<CurveId>{4, 11});
        CHECK(m.links()[4].absorbed == std::vector<CurveId>{6, 13});
        CHECK(m.links()[0].absorbed == std::vector<CurveId>{1, 2});
        CHECK(m.links()[5].absorbed == std::vector<CurveId>{8, 9});
        CHECK(m.blocks()[0].bottom_link == 0);
        CHECK(m.blocks()[3].bottom_link == 5);
        CHECK(rep.tori_crushed == std::vector<int>{0});
        CHECK(rep.thin_lengths.empty());
        CHECK(germ_total(m) == 6);
    }
    SECTION("link components are the annulus trees plus interior links") {
        AnnulusGraph g = crush_tori(annulus_forest(body, body, matching));
        std::set<LinkId> on_front;
        for (const auto& [c, l] : body.stages().back().links) on_front.insert(l);
        std::size_t interior = 2 * (body.links().size() - on_front.size());
        CHECK(m.links().size() == g.components.size() + interior);
    }
    SECTION("assembly is deterministic") {
        AssemblyReport again = assemble(s, {body, body}, {matching}, {});
        CHECK(again.complex == m);
    }
    SECTION("descriptor and model must agree on genus") {
        SplittingDescriptor wrong = s;
        wrong.bodies[0].plus_genus = 3;
        wrong.bodies[1].plus_genus = 3;
        CHECK(code_of([&] { assemble(wrong, {body, body}, {matching}, {}); }) == Errc::MatchingMismatch);
    }
    SECTION("fronts must be matched isomorphically") {
        ModelComplex other = dumbbell_handlebody();
        CurveMatching cross = paired_fronts(body, other);
        SplittingDescriptor s2 = double_descriptor();
        CHECK(code_of([&] { assemble(s2, {body, other}, {cross}, {}); }) == Errc::MatchingMismatch);
    }
    SECTION("matchings must cover the whole surface") {
        CurveMatching partial(matching.begin(), matching.end() - 1);
        CHECK(code_of([&] { assemble(s, {body, body}, {partial}, {}); }) == Errc::NotAMatching);
    }
    SECTION("a bare spine cannot face a gluing surface") {
        ModelComplex bare = build_fat_spine(SpineTree::genus_two());
        CurveMatching ident = paired_fronts(bare, bare);
        CHECK(code_of([&] { assemble(s, {bare, bare}, {ident}, {}); }) == Errc::ValidationFailure);
    }
    SECTION("input lists must line up with the descriptor") {
        CHECK(code_of([&] { assemble(s, {body}, {matching}, {}); }) == Errc::MatchingMismatch);
        CHECK(code_of([&] { assemble(s, {body, body}, {}, {}); }) == Errc::MatchingMismatch);
    }
}

TEST_CASE("thin surfaces glue through product collars") {
    ModelComplex handle = theta_handlebody();
    ModelComplex product = theta_product();
    REQUIRE(product.minus_fronts().size() == 1);
    REQUIRE(product.minus_fronts().front().graph.genus() == 2);
    REQUIRE(product.stages().back().graph.curve_ids() == std::vector<CurveId>{4, 5, 6});

    SplittingDescriptor s = k2_descriptor();
    std::vector<ModelComplex> models{handle, product, product, handle};
    std::vector<CurveMatching> thick{paired_fronts(handle, product), paired_fronts(product, handle)};
    PantsGraph front = product.minus_fronts().front().graph;

    SECTION("a minimal thin path violates the shared-loop condition") {
        Errc c = code_of([&] { assemble(s, models, thick, {MovePath{front, {}}}); });
        CHECK(c == Errc::SharedLoopViolation);
    }
    SECTION("thin paths must land on the facing lower fronts") {
        Errc c = code_of([&] { assemble(s, models, thick, {MovePath{fixtures::theta(), {}}}); });
        CHECK(c == Errc::EndpointMismatch);
    }
    SECTION("each thin surface needs a path") {
        CHECK(code_of([&] { assemble(s, models, thick, {}); }) == Errc::MatchingMismatch);
    }
    SECTION("a clean path fills the thin region with product layers") {
        MovePath thin = find_thin_path(front);
        int thin_s = 0, thin_a = 0;
        for (const Move& mv : thin.moves) (mv.kind == MoveKind::S ? thin_s : thin_a) += 1;

        AssemblyReport rep = assemble(s, models, thick, {thin});
        const ModelComplex& m = rep.complex;
        CHECK(m.closed());
        CHECK(validate_complex(m).ok);
        CHECK(euler_characteristic(m) == 0);

        auto [s_blocks, a_blocks] = block_counts(m);
        CHECK(s_blocks == 4 + thin_s);
        CHECK(a_blocks == 2 + thin_a);
        CHECK(static_cast<int>(m.faces().size()) == s_blocks + 2 * a_blocks);
        CHECK(m.links().size() == 7 + thin.moves.size());
        CHECK(rep.thin_lengths == std::vector<int>{static_cast<int>(thin.moves.size())});
        CHECK(rep.tori_crushed == std::vector<int>{0, 0, 0});
        CHECK(germ_total(m) == 18);
        REQUIRE(rep.curve_offsets.size() == 5);

        // The product bodies' links chain through both gluings: each ends
        // up in one class with a handlebody layer link and a collar link.
        for (LinkId l = 0; l < 3; ++l) {
            LinkId merged = rep.link_map[1][l];
            int members = 0;
            for (const auto& per_entity : rep.link_map)
                for (LinkId target : per_entity) members += target == merged ? 1 : 0;
            CHECK(members >= 3);
        }
        AssemblyReport again = assemble(s, models, thick, {thin});
        CHECK(again.complex == m);
    }
}

TEST_CASE("knotted certificates combine word and structural evidence") {
    ModelComplex body = theta_handlebody();
    SplittingDescriptor s = double_descriptor();
    s.strongly_irreducible = true;
    CurveMatching matching = paired_fronts(body, body);
    AssemblyReport rep = assemble(s, {body, body}, {matching}, {});
    const ModelComplex& m = rep.complex;
    REQUIRE(rep.strongly_irreducible);

    SECTION("marked loops get oracle verdicts, unmarked stay unknown") {
        CurveWordMarking mk{"double", 2, {}};
        mk.mark(4, "x1 x2 X1 X2");
        mk.mark(11, "x2 X1 X2 x1");   // conjugate lift of the same loop
        KnottedCertificate cert = knotted_certificate(m, mk, {});
        REQUIRE(cert.loops.size() == 7);
        CHECK(cert.loops[2].verdict.status == DiskStatus::NoDisk);
        CHECK(mentions(cert.loops[2].verdict.provenance, "free-group word check"));
        CHECK(cert.loops[0].verdict.status == DiskStatus::Unknown);
        CHECK_FALSE(cert.all_knotted);
    }
    SECTION("both attestations certify every loop of a closed model") {
        Attestations att{true, true};
        KnottedCertificate cert = knotted_certificate(m, CurveWordMarking{"double", 2, {}}, att);
        CHECK(cert.all_knotted);
        for (const LoopCertificate& lc : cert.loops) {
            CHECK(lc.verdict.status == DiskStatus::NoDisk);
            bool attested = false;
            for (const std::string& a : lc.verdict.assumptions)
                attested = attested || mentions(a, "strong irreducibility");
            CHECK(attested);
        }
    }
    SECTION("one attestation alone leaves a closed model unknown") {
        KnottedCertificate spinal = knotted_certificate(m, CurveWordMarking{"double", 2, {}}, {true, false});
        CHECK_FALSE(spinal.all_knotted);
        CHECK(spinal.loops[0].verdict.status == DiskStatus::Unknown);
        KnottedCertificate strong = knotted_certificate(m, CurveWordMarking{"double", 2, {}}, {false, true});
        CHECK_FALSE(strong.all_knotted);
        CHECK(strong.loops[0].verdict.status == DiskStatus::Unknown);
    }
    SECTION("conflicting evidence is surfaced, not resolved") {
        CurveWordMarking mk{"double", 2, {}};
        mk.mark(4, "x1 X1");
        KnottedCertificate cert = knotted_certificate(m, mk, {true, true});
        CHECK(cert.loops[2].verdict.status == DiskStatus::Unknown);
        CHECK(mentions(cert.loops[2].verdict.provenance, "conflicting"));
        CHECK_FALSE(cert.all_knotted);
    }
    SECTION("certificates are reproducible") {
        CurveWordMarking mk{"double", 2, {}};
        mk.mark(4, "x1");
        mk.mark(11, "x1");
        Attestations att{false, true};
        KnottedCertificate first = knotted_certificate(m, mk, att);
        KnottedCertificate second = knotted_certificate(m, mk, att);
        CHECK(first == second);
    }
    SECTION("single-body models keep the per-body structural rules") {
        KnottedCertificate cert = knotted_certificate(body, CurveWordMarking{"body", 2, {}}, {true, false});
        CHECK(cert.all_knotted);
        REQUIRE(cert.loops.size() == 5);
        for (const LoopCertificate& lc : cert.loops) CHECK(lc.verdict.status == DiskStatus::NoDisk);
    }
}
