#pragma once

/*
 * Generalized splittings and closed-model assembly.
 *
 * A splitting descriptor lists compression bodies in gluing order: the lower
 * and upper body of the first thick surface, then of the second, and so on.
 * Consecutive pairs share their upper boundary (a thick surface); the upper
 * body of one level and the lower body of the next share their lower
 * boundaries (thin surfaces). The first and last bodies are handlebodies, so
 * the assembled manifold is closed.
 *
 * Thick surfaces are glued along explicit curve matchings between the two
 * induced decompositions; the matching must extend to an isomorphism of the
 * decomposition graphs. Thin surfaces are glued through a connecting move
 * path from the upper body's lower front to the lower body's lower front;
 * the path is realized as a product collar, and every loop of the departing
 * decomposition must be retired along the way, so no loop of the thin
 * surface is shared by both sides.
 *
 * Gluing presses exposed face sides together pairwise. The pressed cells
 * become one face whose transverse sides swap or keep orientation according
 * to which sides were exposed; the kept face is always the one in the
 * earlier body. Links that lift to matched curves merge into single loops.
 * Matched curves sweep vertical annuli; the annulus graph over a thick
 * surface records how those annuli chain through the facing links. A cycle
 * in that graph closes into a torus, which crushing contracts to a single
 * loop, leaving a forest.
 *
 * A knotted certificate evaluates every loop of an assembled (or single
 * body) model against the disk oracle: word evidence through curve markings
 * combined with structural evidence from the attested construction.
 */

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "layered/disk_oracle.hpp"

namespace layered {

struct CompressionBodyDescriptor {
    int plus_genus = 2;
    std::vector<int> minus_genera;   // lower boundary genera, empty for a handlebody
    std::string label;
    bool operator==(const CompressionBodyDescriptor&) const = default;
};

struct SplittingDescriptor {
    // Bodies in gluing order: lower then upper body of the first thick
    // surface, lower then upper of the second, and so on.
    std::vector<CompressionBodyDescriptor> bodies;
    bool strongly_irreducible = false;
    bool operator==(const SplittingDescriptor&) const = default;
};

inline ValidationReport validate_splitting(const SplittingDescriptor& s) {
    ValidationReport r;
    if (s.bodies.empty()) {
        r.flag("splitting has no bodies");
        return r;
    }
    for (std::size_t i = 0; i < s.bodies.size(); ++i) {
        const CompressionBodyDescriptor& b = s.bodies[i];
        std::string name = "body " + std::to_string(i) + (b.label.empty() ? "" : " (" + b.label + ")");
        if (b.plus_genus < 2) r.flag(name + ": genus-one boundary excluded, upper genus must be at least 2");
        int total = 0;
        for (int g : b.minus_genera) {
            if (g < 2) r.flag(name + ": genus-one boundary excluded, lower genus must be at least 2");
            total += g;
        }
        if (!b.minus_genera.empty() && b.plus_genus < total)
            r.flag(name + ": upper genus is below the total lower genus");
    }
    if (s.bodies.size() % 2 != 0) {
        r.flag("bodies must pair off across thick surfaces");
        return r;
    }
    std::size_t k = s.bodies.size() / 2;
    for (std::size_t i = 0; i < k; ++i)
        if (s.bodies[2 * i].plus_genus != s.bodies[2 * i + 1].plus_genus)
            r.flag("thick surface " + std::to_string(i + 1) + ": the two bodies disagree on its genus");
    for (std::size_t i = 0; i + 1 < k; ++i) {
        std::vector<int> above = s.bodies[2 * i + 1].minus_genera;
        std::vector<int> below = s.bodies[2 * i + 2].minus_genera;
        std::sort(above.begin(), above.end());
        std::sort(below.begin(), below.end());
        if (above != below)
            r.flag("thin level " + std::to_string(i + 1) + ": lower boundaries of the facing bodies differ");
    }
    if (!s.bodies.front().minus_genera.empty())
        r.flag("first body must be a handlebody in a closed assembly");
    if (!s.bodies.back().minus_genera.empty())
        r.flag("last body must be a handlebody in a closed assembly");
    return r;
}

// Loops shared by the two sides of a thin surface. A loop of the departing
// decomposition survives the connecting path exactly when no move retires
// its curve; such a loop would be isotopic into both neighbouring bodies.
struct SharedLoopReport {
    bool clean = true;
    std::vector<CurveId> shared;   // base curves never retired along the path
    int length = 0;
};

inline SharedLoopReport check_shared_loops(const PantsGraph& left, const PantsGraph& right,
                                           const MovePath& connecting) {
    if (connecting.base.canonical_form() != left.canonical_form())
        fail(Errc::EndpointMismatch, "connecting path does not start at the left decomposition");
    PathReport rep = validate_path(connecting);
    if (!rep.valid) fail(Errc::InvalidPath, "connecting path is not applicable: " + rep.message);
    if (rep.graphs.back().canonical_form() != right.canonical_form())
        fail(Errc::EndpointMismatch, "connecting path does not end at the right decomposition");
    // A retired id may be reused for a later curve, so survival is read off
    // the move targets rather than the final lifetime table.
    std::set<CurveId> retired;
    for (const Move& mv : connecting.moves) retired.insert(mv.target);
    SharedLoopReport r;
    r.length = static_cast<int>(connecting.moves.size());
    for (CurveId c : connecting.base.curve_ids())
        if (retired.count(c) == 0) {
            r.clean = false;
            r.shared.push_back(c);
        }
    return r;
}

// One node of the annulus graph over a glued thick surface: a link of one
// of the two facing models, or a matched curve pair of the surface itself.
struct AnnulusLoop {
    int side = 0;             // -1: left-model link, +1: right-model link, 0: matched curve pair
    LinkId link = 0;          // for side != 0
    CurveId left_curve = 0;   // for side == 0
    CurveId right_curve = 0;  // for side == 0
    auto operator<=>(const AnnulusLoop&) const = default;
};

// Vertical annuli swept by the matched curves, chained through the links
// they land on. Components with a cycle close up into tori; crush_tori
// contracts every cycle so that only trees remain.
struct AnnulusGraph {
    std::vector<AnnulusLoop> loops;
    std::vector<std::pair<int, int>> annuli;    // edges between loop indices
    std::vector<std::vector<int>> components;   // loop indices, one list per component
    std::vector<int> torus_components;          // components with at least one cycle
    bool operator==(const AnnulusGraph&) const = default;

    bool forest() const { return torus_components.empty(); }
};

using CurveMatching = std::vector<std::pair<CurveId, CurveId>>;

namespace detail {

inline std::map<CurveId, CurveId> checked_matching(const FrontSnapshot& lf, const FrontSnapshot& rf,
                                                   const CurveMatching& matching) {
    std::map<CurveId, CurveId> pairing;
    std::set<CurveId> hit;
    for (const auto& [l, r] : matching) {
        if (!lf.graph.has_curve(l))
            fail(Errc::NotAMatching, "curve " + std::to_string(l) + " is not on the left surface");
        if (!rf.graph.has_curve(r))
            fail(Errc::NotAMatching, "curve " + std::to_string(r) + " is not on the right surface");
        if (!pairing.emplace(l, r).second)
            fail(Errc::NotAMatching, "left curve " + std::to_string(l) + " matched twice");
        if (!hit.insert(r).second)
            fail(Errc::NotAMatching, "right curve " + std::to_string(r) + " matched twice");
    }
    if (static_cast<int>(pairing.size()) != lf.graph.curve_count() ||
        static_cast<int>(hit.size()) != rf.graph.curve_count())
        fail(Errc::NotAMatching, "matching must pair every curve of both surfaces");
    return pairing;
}

inline void analyze_annuli(AnnulusGraph& g) {
    int n = static_cast<int>(g.loops.size());
    std::vector<int> root(n);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int a) {
        while (root[a] != a) a = root[a] = root[root[a]];
        return a;
    };
    for (const auto& [a, b] : g.annuli) root[find(a)] = find(b);
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
    g.components.clear();
    g.torus_components.clear();
    for (auto& [rep, members] : groups) g.components.push_back(std::move(members));
    std::sort(g.components.begin(), g.components.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a.front() < b.front(); });
    for (std::size_t c = 0; c < g.components.size(); ++c) {
        std::set<int> members(g.components[c].begin(), g.components[c].end());
        int edges = 0;
        for (const auto& [a, b] : g.annuli)
            if (members.count(a)) ++edges;
        if (edges - static_cast<int>(members.size()) + 1 > 0)
            g.torus_components.push_back(static_cast<int>(c));
    }
}

}  // namespace detail

inline AnnulusGraph annulus_forest(const ModelComplex& left, const ModelComplex& right,
                                   const CurveMatching& matching) {
    if (left.stages().empty() || right.stages().empty())
        fail(Errc::NotSingleBody, "annulus analysis needs two models with upper fronts");
    const FrontSnapshot& lf = left.stages().back();
    const FrontSnapshot& rf = right.stages().back();
    std::map<CurveId, CurveId> pairing = detail::checked_matching(lf, rf, matching);

    AnnulusGraph g;
    std::map<LinkId, int> lnode, rnode;
    for (const auto& [c, l] : lf.links)
        if (!lnode.count(l)) {
            lnode[l] = static_cast<int>(g.loops.size());
            g.loops.push_back({-1, l, 0, 0});
        }
    for (const auto& [c, l] : rf.links)
        if (!rnode.count(l)) {
            rnode[l] = static_cast<int>(g.loops.size());
            g.loops.push_back({+1, l, 0, 0});
        }
    for (const auto& [l, r] : pairing) {
        int node = static_cast<int>(g.loops.size());
        g.loops.push_back({0, 0, l, r});
        g.annuli.push_back({lnode.at(lf.links.at(l)), node});
        g.annuli.push_back({rnode.at(rf.links.at(r)), node});
    }
    detail::analyze_annuli(g);
    return g;
}

// Contracts every cycle of the annulus graph: each torus collapses onto a
// single loop. Concretely the non-bridge edges are contracted, so each
// two-edge-connected piece becomes one node and only bridges survive.
// Crushing an already crushed graph changes nothing.
inline AnnulusGraph crush_tori(const AnnulusGraph& g) {
    int n = static_cast<int>(g.loops.size());
    int m = static_cast<int>(g.annuli.size());
    std::vector<bool> bridge(m, false);
    for (int i = 0; i < m; ++i) {
        auto [a, b] = g.annuli[i];
        if (a == b) continue;
        std::vector<bool> seen(n, false);
        std::vector<int> queue{a};
        seen[a] = true;
        while (!queue.empty()) {
            int at = queue.back();
            queue.pop_back();
            for (int j = 0; j < m; ++j) {
                if (j == i) continue;
                auto [x, y] = g.annuli[j];
                int next = x == at ? y : y == at ? x : -1;
                if (next >= 0 && !seen[next]) {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        bridge[i] = !seen[b];
    }

    std::vector<int> root(n);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int a) {
        while (root[a] != a) a = root[a] = root[root[a]];
        return a;
    };
    for (int i = 0; i < m; ++i)
        if (!bridge[i]) {
            auto [a, b] = g.annuli[i];
            root[std::max(find(a), find(b))] = std::min(find(a), find(b));
        }

    std::map<int, int> dense;   // class representative (minimal member) -> new index
    for (int i = 0; i < n; ++i) dense.emplace(find(i), 0);
    AnnulusGraph out;
    for (auto& [rep, idx] : dense) {
        idx = static_cast<int>(out.loops.size());
        out.loops.push_back(g.loops[rep]);
    }
    for (int i = 0; i < m; ++i)
        if (bridge[i]) {
            int a = dense.at(find(g.annuli[i].first)), b = dense.at(find(g.annuli[i].second));
            out.annuli.push_back({std::min(a, b), std::max(a, b)});
        }
    detail::analyze_annuli(out);
    return out;
}

namespace detail {

// A vertex-and-slot correspondence realizing a curve pairing as an
// isomorphism of decomposition graphs: vertex v of the left graph maps to
// vertex[v] on the right, slot s of v to slots[v][s].
struct FrontIso {
    std::vector<int> vertex;
    std::vector<std::array<int, 3>> slots;
};

struct FrontMatchSearch {
    const PantsGraph& left;
    const PantsGraph& right;
    const std::map<CurveId, CurveId>& pairing;
    FrontIso& iso;
    std::vector<bool>& used;

    bool place(int v) {
        int n = left.vertices();
        if (v == n) return true;
        static constexpr std::array<std::array<int, 3>, 6> perms{
            {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
        for (int w = 0; w < n; ++w) {
            if (used[w]) continue;
            for (const std::array<int, 3>& t : perms) {
                bool ok = true;
                for (int s = 0; s < 3 && ok; ++s) {
                    auto it = pairing.find(left.curve_at(Leg{v, s}));
                    ok = it != pairing.end() && right.curve_at(Leg{w, t[s]}) == it->second;
                }
                if (!ok) continue;
                used[w] = true;
                iso.vertex[v] = w;
                iso.slots[v] = t;
                if (place(v + 1)) return true;
                used[w] = false;
            }
        }
        return false;
    }
};

// Lexicographically least isomorphism inducing the pairing, if any. A leg
// bijection that sends each curve to its partner automatically preserves
// the matching structure, so per-leg curve agreement is the whole test.
inline std::optional<FrontIso> match_fronts(const PantsGraph& left, const PantsGraph& right,
                                            const std::map<CurveId, CurveId>& pairing) {
    if (left.vertices() != right.vertices()) return std::nullopt;
    FrontIso iso;
    iso.vertex.assign(left.vertices(), -1);
    iso.slots.assign(left.vertices(), {0, 1, 2});
    std::vector<bool> used(left.vertices(), false);
    FrontMatchSearch search{left, right, pairing, iso, used};
    if (!search.place(0)) return std::nullopt;
    return iso;
}

// Pressing exposed sides identifies faces pairwise; the pressed face keeps
// a parent pointer into the kept cell. onto maps its cuff slots to the
// parent's, parity 1 means its transverse sides land swapped.
struct FaceGluing {
    std::size_t parent = 0;
    std::array<int, 3> onto{0, 1, 2};
    int parity = 0;
};

struct FacePlacement {
    std::size_t face = 0;
    std::array<int, 3> onto{0, 1, 2};
    int parity = 0;
};

inline FacePlacement resolve_face(const std::map<std::size_t, FaceGluing>& glued, std::size_t f) {
    FacePlacement p{f, {0, 1, 2}, 0};
    auto it = glued.find(p.face);
    while (it != glued.end()) {
        std::array<int, 3> composed{};
        for (int s = 0; s < 3; ++s) composed[s] = it->second.onto[p.onto[s]];
        p.onto = composed;
        p.parity ^= it->second.parity;
        p.face = it->second.parent;
        it = glued.find(p.face);
    }
    return p;
}

inline std::pair<std::size_t, std::size_t> locate(std::size_t global, const std::vector<std::size_t>& offsets) {
    std::size_t e = offsets.size() - 1;
    while (offsets[e] > global) --e;
    return {e, global - offsets[e]};
}

}  // namespace detail

// The assembled complex together with the translation tables from each
// entity (the bodies in order, then one product collar per thin surface)
// into the assembled id spaces.
struct AssemblyReport {
    ModelComplex complex;
    std::vector<CurveId> curve_offsets;          // per entity: shift applied to its curve ids
    std::vector<std::vector<LinkId>> link_map;   // per entity: local link id -> assembled link id
    std::vector<std::vector<FaceId>> face_map;   // per entity: local face id -> assembled cell id
    std::vector<std::vector<BlockId>> block_map; // per entity: local block id -> assembled block id
    std::vector<int> tori_crushed;               // per gluing: thick surfaces first, then thin
    std::vector<int> thin_lengths;               // moves per thin connecting path
    bool strongly_irreducible = false;
};

inline AssemblyReport assemble(const SplittingDescriptor& s, const std::vector<ModelComplex>& models,
                               const std::vector<CurveMatching>& thick_matchings,
                               const std::vector<MovePath>& thin_paths) {
    ValidationReport sr = validate_splitting(s);
    if (!sr.ok) fail(Errc::ValidationFailure, "splitting descriptor: " + sr.problems.front());
    std::size_t k = s.bodies.size() / 2;
    if (models.size() != s.bodies.size()) fail(Errc::MatchingMismatch, "expected one model per body");
    if (thick_matchings.size() != k) fail(Errc::MatchingMismatch, "expected one matching per thick surface");
    std::size_t thin_count = 0;
    for (std::size_t i = 0; i + 1 < k; ++i) thin_count += s.bodies[2 * i + 1].minus_genera.size();
    if (thin_paths.size() != thin_count)
        fail(Errc::MatchingMismatch, "expected one connecting path per thin surface");

    for (std::size_t i = 0; i < models.size(); ++i) {
        const ModelComplex& m = models[i];
        std::string name = "body " + std::to_string(i);
        ValidationReport vr = validate_complex(m);
        if (!vr.ok) fail(Errc::ValidationFailure, name + ": " + vr.problems.front());
        if (m.closed()) fail(Errc::ValidationFailure, name + " is already closed");
        if (m.stages().empty()) fail(Errc::NotSingleBody, name + " has no upper front");
        const CompressionBodyDescriptor& b = s.bodies[i];
        if (m.stages().back().graph.genus() != b.plus_genus)
            fail(Errc::MatchingMismatch, name + ": upper front genus disagrees with the descriptor");
        if (m.minus_fronts().size() != b.minus_genera.size())
            fail(Errc::MatchingMismatch, name + ": lower boundary count disagrees with the descriptor");
        for (std::size_t j = 0; j < b.minus_genera.size(); ++j)
            if (m.minus_fronts()[j].graph.genus() != b.minus_genera[j])
                fail(Errc::MatchingMismatch, name + ": lower boundary genus disagrees with the descriptor");
        std::set<FaceId> seen;
        for (const auto& [v, ref] : m.stages().back().slots)
            if (!seen.insert(ref.face).second)
                fail(Errc::ValidationFailure, name + ": upper front exposes both sides of one face");
    }

    // Realize each thin surface as a product collar over its connecting
    // path. The path must run exactly from the upper body's lower front to
    // the lower body's lower front (fronts pair off by position), and must
    // retire every departing loop.
    std::vector<ModelComplex> collars;
    std::vector<std::array<std::size_t, 2>> collar_bodies;
    std::vector<std::size_t> collar_front;
    std::vector<int> thin_lengths;
    std::size_t t = 0;
    for (std::size_t lvl = 0; lvl + 1 < k; ++lvl) {
        std::size_t a = 2 * lvl + 1, b = 2 * lvl + 2;
        for (std::size_t j = 0; j < s.bodies[a].minus_genera.size(); ++j, ++t) {
            const FrontSnapshot& fa = models[a].minus_fronts()[j];
            const FrontSnapshot& fb = models[b].minus_fronts()[j];
            const MovePath& path = thin_paths[t];
            std::string name = "thin surface " + std::to_string(t + 1);
            if (!(path.base == fa.graph))
                fail(Errc::EndpointMismatch, name + ": path does not start on the upper body's lower front");
            PathReport rep = validate_path(path);
            if (!rep.valid) fail(Errc::InvalidPath, name + ": " + rep.message);
            if (!(rep.graphs.back() == fb.graph))
                fail(Errc::EndpointMismatch, name + ": path does not end on the lower body's lower front");
            SharedLoopReport shared = check_shared_loops(fa.graph, fb.graph, path);
            if (!shared.clean) {
                std::string ids;
                for (CurveId c : shared.shared) ids += (ids.empty() ? "" : ", ") + std::to_string(c);
                fail(Errc::SharedLoopViolation, name + " keeps loops {" + ids + "} on both sides");
            }
            collars.push_back(build_product_model(path));
            collar_bodies.push_back({a, b});
            collar_front.push_back(j);
            thin_lengths.push_back(shared.length);
        }
    }

    std::vector<const ModelComplex*> entities;
    for (const ModelComplex& m : models) entities.push_back(&m);
    for (const ModelComplex& c : collars) entities.push_back(&c);
    std::size_t ne = entities.size();

    std::vector<std::size_t> loff(ne, 0), foff(ne, 0), boff(ne, 0);
    std::vector<CurveId> coff(ne, 0);
    std::size_t nl = 0, nf = 0, nb = 0;
    CurveId nc = 0;
    for (std::size_t e = 0; e < ne; ++e) {
        loff[e] = nl;
        foff[e] = nf;
        boff[e] = nb;
        coff[e] = nc;
        nl += entities[e]->links().size();
        nf += entities[e]->faces().size();
        nb += entities[e]->blocks().size();
        CurveId top = 0;
        for (const LinkRec& l : entities[e]->links())
            for (CurveId c : l.absorbed) top = std::max(top, c + 1);
        nc += top;
    }

    std::vector<std::size_t> lroot(nl);
    std::iota(lroot.begin(), lroot.end(), 0);
    auto find = [&](std::size_t x) {
        while (lroot[x] != x) x = lroot[x] = lroot[lroot[x]];
        return x;
    };
    auto unite = [&](std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x == y) return false;
        lroot[std::max(x, y)] = std::min(x, y);
        return true;
    };

    std::map<std::size_t, detail::FaceGluing> glued;
    std::vector<int> tori(k + collars.size(), 0);

    for (std::size_t i = 0; i < k; ++i) {
        std::size_t le = 2 * i, re = 2 * i + 1;
        const FrontSnapshot& lf = models[le].stages().back();
        const FrontSnapshot& rf = models[re].stages().back();
        std::map<CurveId, CurveId> pairing = detail::checked_matching(lf, rf, thick_matchings[i]);
        std::optional<detail::FrontIso> iso = detail::match_fronts(lf.graph, rf.graph, pairing);
        if (!iso)
            fail(Errc::MatchingMismatch,
                 "thick surface " + std::to_string(i + 1) + ": matching does not join isomorphic decompositions");
        for (int v = 0; v < lf.graph.vertices(); ++v) {
            FaceSideRef keep = lf.slots.at(v);
            FaceSideRef pressed = rf.slots.at(iso->vertex[v]);
            std::array<int, 3> onto{};
            for (int sl = 0; sl < 3; ++sl) onto[iso->slots[v][sl]] = sl;
            glued.emplace(foff[re] + pressed.face,
                          detail::FaceGluing{foff[le] + keep.face, onto, (1 - pressed.side) ^ keep.side});
        }
        for (const auto& [cl, cr] : pairing)
            if (!unite(loff[le] + lf.links.at(cl), loff[re] + rf.links.at(cr))) ++tori[i];
    }

    for (std::size_t c = 0; c < collars.size(); ++c) {
        std::size_t ce = models.size() + c;
        std::size_t a = collar_bodies[c][0], b = collar_bodies[c][1];
        const FrontSnapshot& fa = models[a].minus_fronts()[collar_front[c]];
        const FrontSnapshot& fb = models[b].minus_fronts()[collar_front[c]];
        const FrontSnapshot& base = collars[c].minus_fronts().front();
        const FrontSnapshot& final_front = collars[c].stages().back();
        // Both ends land on a graph equal to the collar's, so vertices and
        // slots correspond identically.
        for (int v = 0; v < fa.graph.vertices(); ++v) {
            FaceSideRef keep = fa.slots.at(v);
            FaceSideRef pressed = base.slots.at(v);
            glued.emplace(foff[ce] + pressed.face,
                          detail::FaceGluing{foff[a] + keep.face, {0, 1, 2}, (1 - pressed.side) ^ keep.side});
        }
        for (const auto& [curve, link] : fa.links)
            if (!unite(loff[a] + link, loff[ce] + base.links.at(curve))) ++tori[k + c];
        for (int v = 0; v < fb.graph.vertices(); ++v) {
            FaceSideRef keep = fb.slots.at(v);
            FaceSideRef pressed = final_front.slots.at(v);
            glued.emplace(foff[ce] + pressed.face,
                          detail::FaceGluing{foff[b] + keep.face, {0, 1, 2}, (1 - pressed.side) ^ keep.side});
        }
        for (const auto& [curve, link] : fb.links)
            if (!unite(loff[b] + link, loff[ce] + final_front.links.at(curve))) ++tori[k + c];
    }

    std::vector<detail::FacePlacement> placed(nf);
    for (std::size_t f = 0; f < nf; ++f) placed[f] = detail::resolve_face(glued, f);
    std::vector<FaceId> new_face(nf, 0);
    FaceId next_face = 0;
    for (std::size_t f = 0; f < nf; ++f)
        if (placed[f].face == f) new_face[f] = next_face++;
    for (std::size_t f = 0; f < nf; ++f)
        if (placed[f].face != f) new_face[f] = new_face[placed[f].face];

    std::map<std::size_t, std::vector<std::size_t>> classes;
    for (std::size_t g = 0; g < nl; ++g) classes[find(g)].push_back(g);
    std::vector<LinkId> new_link(nl, 0);
    LinkId next_link = 0;
    for (const auto& [rep, members] : classes) {
        for (std::size_t g : members) new_link[g] = next_link;
        ++next_link;
    }

    ModelBuilder out;
    for (const auto& [rep, members] : classes) {
        std::vector<CurveId> absorbed;
        std::vector<Germ> germs;
        int created = 0;
        bool first = true;
        for (std::size_t g : members) {
            auto [e, local] = detail::locate(g, loff);
            const LinkRec& lr = entities[e]->links()[local];
            for (CurveId cv : lr.absorbed) absorbed.push_back(cv + coff[e]);
            created = first ? lr.created_stage : std::min(created, lr.created_stage);
            first = false;
            for (const Germ& gm : lr.germs) {
                const detail::FacePlacement& p = placed[foff[e] + gm.face];
                germs.push_back({new_face[foff[e] + gm.face], p.onto[gm.cuff], gm.flip != (p.parity == 1)});
            }
        }
        LinkId id = out.add_link(std::move(absorbed), created, std::move(germs));
        if (members.size() == 1) {
            auto [e, local] = detail::locate(members.front(), loff);
            if (auto stage = entities[e]->links()[local].retired_stage) out.retire_link(id, *stage);
        }
    }

    for (std::size_t f = 0; f < nf; ++f) {
        if (placed[f].face != f) continue;
        auto [e, local] = detail::locate(f, foff);
        const FaceRec& fr = entities[e]->faces()[local];
        std::array<LinkId, 3> cuffs{};
        for (int sl = 0; sl < 3; ++sl) cuffs[sl] = new_link[loff[e] + fr.cuffs[sl]];
        out.add_face(cuffs, fr.created_stage);
    }

    for (std::size_t e = 0; e < ne; ++e)
        for (const BlockRec& br : entities[e]->blocks()) {
            BlockRec nbk;
            nbk.kind = br.kind;
            nbk.stage = br.stage;
            nbk.twist = br.twist;
            auto remap = [&](const FaceSideRef& ref) {
                std::size_t g = foff[e] + ref.face;
                return FaceSideRef{new_face[g], ref.side ^ placed[g].parity};
            };
            for (const FaceSideRef& ref : br.bottom) nbk.bottom.push_back(remap(ref));
            for (const FaceSideRef& ref : br.top) nbk.top.push_back(remap(ref));
            for (LinkId l : br.vertical) nbk.vertical.push_back(new_link[loff[e] + l]);
            nbk.bottom_link = new_link[loff[e] + br.bottom_link];
            nbk.top_link = new_link[loff[e] + br.top_link];
            out.add_block(std::move(nbk));
        }

    out.set_closed(true);
    ModelComplex closed = out.finish();
    ValidationReport vr = validate_complex(closed);
    if (!vr.ok) fail(Errc::ValidationFailure, "assembled model: " + vr.problems.front());
    if (euler_characteristic(closed) != 0)
        fail(Errc::ValidationFailure, "assembled model has nonzero Euler characteristic");

    AssemblyReport report;
    report.complex = std::move(closed);
    report.curve_offsets = coff;
    for (std::size_t e = 0; e < ne; ++e) {
        std::vector<LinkId> lm;
        for (std::size_t l = 0; l < entities[e]->links().size(); ++l) lm.push_back(new_link[loff[e] + l]);
        std::vector<FaceId> fm;
        for (std::size_t f = 0; f < entities[e]->faces().size(); ++f) fm.push_back(new_face[foff[e] + f]);
        std::vector<BlockId> bm;
        for (std::size_t bl = 0; bl < entities[e]->blocks().size(); ++bl)
            bm.push_back(static_cast<BlockId>(boff[e] + bl));
        report.link_map.push_back(std::move(lm));
        report.face_map.push_back(std::move(fm));
        report.block_map.push_back(std::move(bm));
    }
    report.tori_crushed = std::move(tori);
    report.thin_lengths = std::move(thin_lengths);
    report.strongly_irreducible = s.strongly_irreducible;
    return report;
}

inline ModelComplex assemble_model(const SplittingDescriptor& s, const std::vector<ModelComplex>& models,
                                   const std::vector<CurveMatching>& thick_matchings,
                                   const std::vector<MovePath>& thin_paths) {
    return assemble(s, models, thick_matchings, thin_paths).complex;
}

// Per-loop disk verdicts for a model, word and structural evidence
// combined. The certificate is deterministic in its inputs.
struct LoopCertificate {
    LinkId link = 0;
    Verdict verdict;
    bool operator==(const LoopCertificate&) const = default;
};

struct KnottedCertificate {
    std::vector<LoopCertificate> loops;   // one entry per link, ascending id
    bool all_knotted = false;             // every loop came back NoDisk
    bool operator==(const KnottedCertificate&) const = default;
};

inline KnottedCertificate knotted_certificate(const ModelComplex& m, const CurveWordMarking& marking,
                                              const Attestations& a) {
    KnottedCertificate cert;
    cert.all_knotted = !m.links().empty();
    for (const LinkRec& l : m.links()) {
        Verdict v = combine_verdicts(structural_verdict(m, l.id, a), link_word_verdict(m, marking, l.id));
        if (v.status != DiskStatus::NoDisk) cert.all_knotted = false;
        cert.loops.push_back({l.id, std::move(v)});
    }
    return cert;
}

}  // namespace layered
