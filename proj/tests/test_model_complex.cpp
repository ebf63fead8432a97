#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <set>

#include "fixtures.hpp"
#include "layered/model_complex.hpp"

using namespace layered;

namespace {

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::IoFailure;
}

int internal_faces(const ModelComplex& m) {
    int n = 0;
    for (const auto& f : m.faces())
        if (f.cover[0] && f.cover[1]) ++n;
    return n;
}

}  // namespace

TEST_CASE("empty path gives a blockless product") {
    for (const PantsGraph& g : {fixtures::theta(), fixtures::dumbbell()}) {
        auto m = build_product_model(MovePath{g, {}});
        CHECK(m.blocks().empty());
        CHECK(m.faces().size() == 2);
        CHECK(m.links().size() == 3);
        CHECK(m.stages().size() == 1);
        CHECK(m.minus_fronts().size() == 1);
        CHECK_FALSE(m.closed());
        CHECK(validate_complex(m).ok);
        CHECK(euler_characteristic(m) == -2);
        CHECK(exposed_decomposition(m, 0) == g);
    }
}

TEST_CASE("three A-moves over theta give the pinned cell counts") {
    auto m = build_product_model(fixtures::theta_three_a_path());
    CHECK(m.blocks().size() == 3);
    CHECK(m.faces().size() == 8);
    CHECK(m.links().size() == 6);
    CHECK(internal_faces(m) == 4);
    CHECK(euler_characteristic(m) == -2);
    REQUIRE(validate_complex(m).ok);

    for (const auto& blk : m.blocks()) {
        CHECK(blk.kind == MoveKind::A);
        CHECK(blk.bottom.size() == 2);
        CHECK(blk.top.size() == 2);
        CHECK(blk.vertical.size() == 4);
    }
    CHECK(m.blocks()[0].twist == 1);
    CHECK(m.blocks()[1].twist == 0);
    CHECK(m.blocks()[2].twist == -2);

    // Base links retire in move order; created links live to the end.
    for (int i = 0; i < 3; ++i) {
        REQUIRE(m.links()[i].retired_stage.has_value());
        CHECK(*m.links()[i].retired_stage == i + 1);
        CHECK(m.links()[i].created_stage == 0);
        CHECK(m.links()[i + 3].created_stage == i + 1);
        CHECK_FALSE(m.links()[i + 3].retired_stage.has_value());
    }

    // Every original theta curve crosses the first block vertically except
    // the one it retires.
    auto verticals = m.blocks()[0].vertical;
    std::multiset<LinkId> vs(verticals.begin(), verticals.end());
    CHECK(vs == std::multiset<LinkId>{1, 1, 2, 2});
}

TEST_CASE("single S-block alone has characteristic -1") {
    ModelBuilder b;
    LinkId bottom = b.add_link({0}, 0);
    LinkId top = b.add_link({1}, 1);
    LinkId vertical = b.add_link({2}, 0);
    FaceId f0 = b.add_face({bottom, bottom, vertical}, 0);
    FaceId f1 = b.add_face({top, top, vertical}, 1);
    b.add_block({0, MoveKind::S, 1, {{f0, 1}}, {{f1, 0}}, {vertical}, bottom, top, 0});
    auto m = b.finish();
    REQUIRE(validate_complex(m).ok);
    CHECK(euler_characteristic(m) == -1);
}

TEST_CASE("product models satisfy the counting identities") {
    std::mt19937_64 rng(20250819);
    for (int round = 0; round < 60; ++round) {
        int genus = 2 + round % 4;
        int n = 1 + static_cast<int>(rng() % 50);
        auto g = fixtures::random_graph(genus, rng);
        auto path = random_path(g, n, rng());
        auto m = build_product_model(path);

        CHECK(m.blocks().size() == static_cast<std::size_t>(n));
        CHECK(m.links().size() == static_cast<std::size_t>(3 * genus - 3 + n));
        REQUIRE(m.stages().size() == static_cast<std::size_t>(n + 1));
        for (const auto& s : m.stages()) {
            CHECK(s.slots.size() == static_cast<std::size_t>(2 * genus - 2));
            CHECK(s.graph.genus() == genus);
        }
        CHECK(euler_characteristic(m) == 2 - 2 * genus);
        CHECK(validate_complex(m).ok);

        // Fronts are exactly the path's graph sequence.
        auto rep = validate_path(path);
        REQUIRE(rep.valid);
        for (int k = 0; k <= n; ++k) CHECK(exposed_decomposition(m, k) == rep.graphs[k]);

        // Links are curve lifetimes.
        for (const auto& link : m.links()) {
            REQUIRE(link.absorbed.size() == 1);
            const auto& life = rep.lifetimes.at(link.absorbed[0]);
            CHECK(link.created_stage == life.created_stage);
            CHECK(link.retired_stage == life.retired_stage);
        }

        CHECK(code_of([&] { exposed_decomposition(m, -1); }) == Errc::StageOutOfRange);
        CHECK(code_of([&] { exposed_decomposition(m, n + 1); }) == Errc::StageOutOfRange);
    }
}

TEST_CASE("inapplicable paths are rejected") {
    auto t = fixtures::theta();
    MovePath bad{t, {Move{t.curve_ids()[0], MoveKind::S, std::nullopt, 0, 99}}};
    CHECK(code_of([&] { build_product_model(bad); }) == Errc::InvalidPath);
}

TEST_CASE("a face side cannot be covered twice") {
    ModelBuilder b;
    LinkId l0 = b.add_link({0}, 0);
    LinkId l1 = b.add_link({1}, 1);
    LinkId l2 = b.add_link({2}, 0);
    FaceId f0 = b.add_face({l0, l0, l2}, 0);
    FaceId f1 = b.add_face({l1, l1, l2}, 1);
    b.add_block({0, MoveKind::S, 1, {{f0, 1}}, {{f1, 0}}, {l2}, l0, l1, 0});
    CHECK(code_of([&] {
              b.add_block({0, MoveKind::S, 2, {{f0, 1}}, {{f1, 0}}, {l2}, l0, l1, 0});
          }) == Errc::ValidationFailure);
}

TEST_CASE("validation catches malformed complexes") {
    // Wrong vertical count for an S block.
    {
        ModelBuilder b;
        LinkId l0 = b.add_link({0}, 0);
        LinkId l1 = b.add_link({1}, 1);
        LinkId l2 = b.add_link({2}, 0);
        FaceId f0 = b.add_face({l0, l0, l2}, 0);
        FaceId f1 = b.add_face({l1, l1, l2}, 1);
        b.add_block({0, MoveKind::S, 1, {{f0, 1}}, {{f1, 0}}, {l2, l2}, l0, l1, 0});
        auto m = b.finish();
        auto rep = validate_complex(m);
        CHECK_FALSE(rep.ok);
        CHECK(code_of([&] { euler_characteristic(m); }) == Errc::NotValidated);
    }
    // Closed flag with exposed sides.
    {
        auto m2 = [&] {
            ModelBuilder b;
            LinkId l0 = b.add_link({0}, 0);
            FaceId f = b.add_face({l0, l0, l0}, 0);
            (void)f;
            b.set_closed(true);
            return b.finish();
        }();
        CHECK_FALSE(validate_complex(m2).ok);
    }
    // A cuff on a link that does not exist.
    {
        ModelBuilder b;
        b.add_face({0, 1, 7}, 0);
        b.add_link({0}, 0);
        b.add_link({1}, 0);
        auto m3 = b.finish();
        CHECK_FALSE(validate_complex(m3).ok);
    }
}

TEST_CASE("product model S blocks record their anatomy") {
    auto d = fixtures::dumbbell();
    CurveId loop = 0;
    for (CurveId c : d.curve_ids())
        if (d.curve_kind(c) == CurveKind::SelfLoop) loop = c;
    MovePath p{d, {Move{loop, MoveKind::S, std::nullopt, 5, d.max_curve_id() + 1}}};
    auto m = build_product_model(p);

    REQUIRE(m.blocks().size() == 1);
    const auto& blk = m.blocks()[0];
    CHECK(blk.kind == MoveKind::S);
    CHECK(blk.twist == 5);
    CHECK(blk.bottom.size() == 1);
    CHECK(blk.top.size() == 1);
    REQUIRE(blk.vertical.size() == 1);

    // The vertical cuff of an S block is the third cuff of the moved pants:
    // here the dumbbell connector.
    const auto& vlink = m.links()[blk.vertical[0]];
    REQUIRE(vlink.absorbed.size() == 1);
    CHECK(d.curve_kind(vlink.absorbed[0]) == CurveKind::NonLoop);

    CHECK(m.faces().size() == 3);
    CHECK(euler_characteristic(m) == -2);
    CHECK(exposed_decomposition(m, 1).canonical_form() == d.canonical_form());
}
