#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "layered/errors.hpp"
#include "layered/model_complex.hpp"
#include "layered/moves.hpp"
#include "layered/pants_graph.hpp"

/*
 * Fat spines for handlebodies and compression bodies.
 *
 * A spine is a blockless model complex: loose pants faces glued along links,
 * with the cyclic germ order at every link recorded on its LinkRec. The
 * boundary of a regular neighborhood is recovered combinatorially: with k
 * germs at a link, consecutive germs (cyclically) bound k annulus sectors,
 * and each sector contributes one boundary curve, a "lift" of the link. The
 * sector between germ i and germ i+1 runs from face_i, on the side that germ
 * i turns toward its successor, to face_{i+1}, on the side that germ i+1
 * turns toward its predecessor; an unflipped germ turns side 1 forward and
 * side 0 backward, a flipped germ the reverse. A germ list and its
 * flip-negated reverse read the same gluing from the two sides of the
 * normal circle and produce the same sectors. Collecting all sectors over
 * all links yields a trivalent graph on the uncovered (face, side) pairs
 * whose components are the boundary surfaces: components meeting a product
 * leaf's side-0 faces are lower boundary, the remaining component is the
 * outer boundary and carries the induced pants decomposition.
 *
 * Spine shapes are described by recursive SpineTree values. The genus two
 * handlebody spine is one pants with two cuffs identified: a one-holed torus
 * whose marked loops are the identified cuff pair (two germs) and the free
 * cuff (one germ). A product spine over a decomposition P of a closed
 * surface keeps one face per pants of P and one link per curve, every link
 * carrying one germ per end. An attach node glues a fresh pants F along a
 * disk of the complement: cuffs 0 and 1 of F wrap named boundary links of
 * the children (one child twice for a non-separating disk, two children once
 * each for a separating one), cuff 2 stays free. Attachment germs are
 * appended at the end of the target's cyclic order with no flip, which
 * splits an outer-boundary sector and leaves lower boundaries untouched.
 *
 * Layering replays a move path outward from the spine's outer boundary with
 * the same block bookkeeping as build_product_model. A link is retired only
 * when the move removes its last exposed lift; links with several lifts (the
 * identified cuff pair of a genus two spine, or any link under an A block's
 * vertical annuli) stay live until every lift is gone.
 */

namespace layered {

// Chain-shaped decomposition of the closed genus g surface: a self-loop at
// each end, alternating double and single edges in between. The genus two
// chain is the dumbbell.
inline PantsGraph chain_graph(int genus) {
    if (genus < 2) fail(Errc::GenusBelowTwo, "no pants decompositions below genus 2");
    const int n = 2 * genus - 2;
    std::vector<std::pair<Leg, Leg>> pairs;
    pairs.push_back({{0, 0}, {0, 1}});
    pairs.push_back({{n - 1, 0}, {n - 1, 1}});
    if (n == 2) {
        pairs.push_back({{0, 2}, {1, 2}});
        return new_pants_graph(n, pairs);
    }
    pairs.push_back({{0, 2}, {1, 0}});
    for (int i = 1; i + 1 < n; ++i) {
        if (i % 2 == 1) {
            pairs.push_back({{i, 1}, {i + 1, 0}});
            pairs.push_back({{i, 2}, {i + 1, 1}});
        } else {
            pairs.push_back({{i, 2}, {i + 1, i + 1 == n - 1 ? 2 : 0}});
        }
    }
    return new_pants_graph(n, pairs);
}

// Recursive spine description. Attachment targets name link ids in the
// child's own built spine (children are built before their parent, so their
// link ids are stable and enumerable).
struct SpineTree {
    enum class Kind { GenusTwoLeaf, ProductLeaf, Attach };

    struct Attachment {
        int child = 0;
        LinkId link = 0;
    };

    Kind kind = Kind::GenusTwoLeaf;
    std::optional<PantsGraph> piece;     // ProductLeaf: decomposition of the lower surface
    int piece_genus = 0;                 // ProductLeaf: chain_graph shortcut when piece is absent
    std::vector<SpineTree> children;     // Attach: 1 (non-separating) or 2 (separating)
    bool separating = false;
    std::array<Attachment, 2> attach{};  // Attach: targets for cuffs 0 and 1 of the new pants

    static SpineTree genus_two() { return SpineTree{}; }

    static SpineTree product(PantsGraph p) {
        SpineTree t;
        t.kind = Kind::ProductLeaf;
        t.piece = std::move(p);
        return t;
    }

    static SpineTree product(int genus) {
        SpineTree t;
        t.kind = Kind::ProductLeaf;
        t.piece_genus = genus;
        return t;
    }

    static SpineTree attach_one(SpineTree child, LinkId first, LinkId second) {
        SpineTree t;
        t.kind = Kind::Attach;
        t.children.push_back(std::move(child));
        t.attach = {Attachment{0, first}, Attachment{0, second}};
        return t;
    }

    static SpineTree attach_two(SpineTree left, LinkId left_link, SpineTree right, LinkId right_link) {
        SpineTree t;
        t.kind = Kind::Attach;
        t.children.push_back(std::move(left));
        t.children.push_back(std::move(right));
        t.separating = true;
        t.attach = {Attachment{0, left_link}, Attachment{1, right_link}};
        return t;
    }
};

namespace detail {

// Recompute the boundary fronts of a blockless spine from its germ data.
// minus_marks lists, per lower-boundary component, the (face, side) pairs
// known to lie on it (product leaf faces at side 0). Lifts are numbered
// lower boundaries first so that fresh curve ids picked above the outer
// boundary never collide with a lower lift.
inline void attach_spine_fronts(ModelBuilder& b, const std::vector<std::set<FaceSideRef>>& minus_marks) {
    b.clear_fronts();
    const ModelComplex& m = b.peek();

    struct Sector {
        LinkId link = 0;
        std::array<FaceSideRef, 2> ends;
        std::array<int, 2> slots;
    };
    std::vector<Sector> sectors;
    for (const auto& lr : m.links()) {
        if (lr.germs.empty()) fail(Errc::MalformedTree, "spine link without germs");
        const int k = static_cast<int>(lr.germs.size());
        for (int i = 0; i < k; ++i) {
            const Germ& g = lr.germs[i];
            const Germ& h = lr.germs[(i + 1) % k];
            FaceSideRef from{g.face, g.flip ? 0 : 1};
            FaceSideRef to{h.face, h.flip ? 1 : 0};
            sectors.push_back({lr.id, {from, to}, {g.cuff, h.cuff}});
        }
    }

    // Connected components of the boundary graph on uncovered (face, side)
    // pairs. A spine face is uncovered on both sides.
    std::map<FaceSideRef, int> comp;
    for (const auto& f : m.faces()) {
        comp[{f.id, 0}] = -1;
        comp[{f.id, 1}] = -1;
    }
    int comp_count = 0;
    for (auto& [ref, c] : comp) {
        if (c != -1) continue;
        int id = comp_count++;
        std::vector<FaceSideRef> stack{ref};
        c = id;
        while (!stack.empty()) {
            FaceSideRef at = stack.back();
            stack.pop_back();
            for (const Sector& s : sectors)
                for (int e = 0; e < 2; ++e)
                    if (s.ends[e] == at && comp.at(s.ends[1 - e]) == -1) {
                        comp[s.ends[1 - e]] = id;
                        stack.push_back(s.ends[1 - e]);
                    }
        }
    }

    // Lower boundary components in mark order, then the single outer one.
    std::vector<int> minus_comp;
    std::set<int> taken;
    for (const auto& marks : minus_marks) {
        if (marks.empty()) fail(Errc::MalformedTree, "lower boundary with no faces");
        int id = comp.at(*marks.begin());
        for (const auto& ref : marks)
            if (comp.at(ref) != id) fail(Errc::ValidationFailure, "lower boundary split across components");
        if (!taken.insert(id).second) fail(Errc::ValidationFailure, "two lower boundaries share a component");
        minus_comp.push_back(id);
    }
    std::vector<int> order = minus_comp;
    std::optional<int> plus_comp;
    int plus_count = 0;
    for (int id = 0; id < comp_count; ++id)
        if (!taken.count(id)) {
            ++plus_count;
            plus_comp = id;
        }

    std::vector<CurveId> sector_id(sectors.size(), 0);
    CurveId next = 1;
    if (plus_count == 1) order.push_back(*plus_comp);
    for (int id : order)
        for (std::size_t i = 0; i < sectors.size(); ++i)
            if (comp.at(sectors[i].ends[0]) == id) sector_id[i] = next++;

    for (std::size_t i = 0; i < sectors.size(); ++i)
        if (sector_id[i]) b.link(sectors[i].link).absorbed.push_back(sector_id[i]);
    for (const auto& lr : m.links()) std::sort(b.link(lr.id).absorbed.begin(), b.link(lr.id).absorbed.end());

    auto component_front = [&](int id) {
        std::vector<FaceSideRef> verts;
        for (const auto& [ref, c] : comp)
            if (c == id) verts.push_back(ref);
        std::sort(verts.begin(), verts.end());
        auto vertex_of = [&](const FaceSideRef& ref) {
            return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), ref) - verts.begin());
        };
        std::vector<std::pair<Leg, Leg>> pairs;
        std::vector<CurveId> ids;
        std::map<CurveId, LinkId> links;
        for (std::size_t i = 0; i < sectors.size(); ++i) {
            const Sector& s = sectors[i];
            if (comp.at(s.ends[0]) != id) continue;
            pairs.push_back({Leg{vertex_of(s.ends[0]), s.slots[0]}, Leg{vertex_of(s.ends[1]), s.slots[1]}});
            ids.push_back(sector_id[i]);
            links[sector_id[i]] = s.link;
        }
        std::map<int, FaceSideRef> slots;
        for (std::size_t v = 0; v < verts.size(); ++v) slots[static_cast<int>(v)] = verts[v];
        return FrontSnapshot{new_pants_graph(static_cast<int>(verts.size()), pairs, ids), std::move(slots),
                             std::move(links)};
    };

    for (int id : minus_comp) b.push_minus_front(component_front(id));
    if (plus_count == 1) b.push_stage(component_front(*plus_comp));
}

struct SubSpine {
    ModelComplex complex;
    std::vector<std::set<FaceSideRef>> minus_marks;
};

inline SubSpine build_spine_rec(const SpineTree& t) {
    switch (t.kind) {
        case SpineTree::Kind::GenusTwoLeaf: {
            if (!t.children.empty()) fail(Errc::MalformedTree, "leaf with children");
            ModelBuilder b;
            LinkId inner = b.add_link({}, 0);
            LinkId outer = b.add_link({}, 0);
            FaceId f = b.add_face({inner, inner, outer}, 0);
            b.append_germ(inner, {f, 0, true});
            b.append_germ(inner, {f, 1, false});
            b.append_germ(outer, {f, 2, false});
            return {b.finish(), {}};
        }
        case SpineTree::Kind::ProductLeaf: {
            if (!t.children.empty()) fail(Errc::MalformedTree, "leaf with children");
            PantsGraph p = t.piece ? *t.piece : chain_graph(t.piece_genus);
            ModelBuilder b;
            std::map<CurveId, LinkId> link_of;
            for (CurveId c : p.curve_ids()) link_of[c] = b.add_link({}, 0);
            std::set<FaceSideRef> marks;
            std::vector<FaceId> face_of(p.vertices());
            for (int v = 0; v < p.vertices(); ++v) {
                std::array<LinkId, 3> cuffs{};
                for (int s = 0; s < 3; ++s) cuffs[s] = link_of.at(p.curve_at(Leg{v, s}));
                face_of[v] = b.add_face(cuffs, 0);
                marks.insert({face_of[v], 0});
            }
            for (CurveId c : p.curve_ids()) {
                auto [lo, hi] = p.curve_legs(c);
                b.append_germ(link_of.at(c), {face_of[lo.vertex], lo.slot, true});
                b.append_germ(link_of.at(c), {face_of[hi.vertex], hi.slot, false});
            }
            return {b.finish(), {marks}};
        }
        case SpineTree::Kind::Attach: break;
    }

    if (t.children.size() != (t.separating ? 2u : 1u))
        fail(Errc::MalformedTree, t.separating ? "separating attach needs two children"
                                               : "non-separating attach needs one child");
    for (int i = 0; i < 2; ++i)
        if (t.attach[i].child != (t.separating ? i : 0))
            fail(Errc::MalformedTree, "attachment does not point at its child");

    std::vector<SubSpine> subs;
    for (const auto& c : t.children) subs.push_back(build_spine_rec(c));

    ModelBuilder b;
    std::vector<LinkId> link_base(subs.size(), 0);
    std::vector<FaceId> face_base(subs.size(), 0);
    std::vector<std::set<FaceSideRef>> marks;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const ModelComplex& sub = subs[i].complex;
        link_base[i] = static_cast<LinkId>(b.peek().links().size());
        face_base[i] = static_cast<FaceId>(b.peek().faces().size());
        for (const auto& lr : sub.links()) {
            LinkId id = b.add_link({}, 0);
            for (const Germ& g : lr.germs) b.append_germ(id, {g.face + face_base[i], g.cuff, g.flip});
        }
        for (const auto& fr : sub.faces())
            b.add_face({fr.cuffs[0] + link_base[i], fr.cuffs[1] + link_base[i], fr.cuffs[2] + link_base[i]}, 0);
        for (const auto& mk : subs[i].minus_marks) {
            std::set<FaceSideRef> moved;
            for (const auto& ref : mk) moved.insert({ref.face + face_base[i], ref.side});
            marks.push_back(std::move(moved));
        }
    }

    std::array<LinkId, 2> target{};
    for (int i = 0; i < 2; ++i) {
        const auto& at = t.attach[i];
        const ModelComplex& sub = subs[at.child].complex;
        if (at.link < 0 || static_cast<std::size_t>(at.link) >= sub.links().size())
            fail(Errc::AttachmentTargetNotBoundaryLoop,
                 "child spine has no boundary loop " + std::to_string(at.link));
        target[i] = at.link + link_base[at.child];
    }

    LinkId free_cuff = b.add_link({}, 0);
    FaceId f = b.add_face({target[0], target[1], free_cuff}, 0);
    b.append_germ(target[0], {f, 0, false});
    b.append_germ(target[1], {f, 1, false});
    b.append_germ(free_cuff, {f, 2, false});
    return {b.finish(), std::move(marks)};
}

}  // namespace detail

// Build the blockless spine complex of a SpineTree, with boundary fronts
// attached: one stage snapshot for the outer boundary, one lower front per
// product leaf in tree order.
inline ModelComplex build_fat_spine(const SpineTree& t) {
    detail::SubSpine sub = detail::build_spine_rec(t);
    ModelBuilder b(std::move(sub.complex));
    detail::attach_spine_fronts(b, sub.minus_marks);
    return b.finish();
}

// Recompute the fronts of a bare spine from its recorded germ data, reusing
// the stored lower fronts to tell lower boundaries from the outer one.
inline ModelComplex recompute_spine_fronts(const ModelComplex& spine) {
    if (!spine.blocks().empty()) fail(Errc::NotSingleBody, "fronts are recomputable on bare spines only");
    std::vector<std::set<FaceSideRef>> marks;
    for (const auto& f : spine.minus_fronts()) {
        std::set<FaceSideRef> mk;
        for (const auto& [v, ref] : f.slots) mk.insert(ref);
        marks.push_back(std::move(mk));
    }
    ModelBuilder b(spine);
    for (auto& lr : b.peek().links()) b.link(lr.id).absorbed.clear();
    detail::attach_spine_fronts(b, marks);
    return b.finish();
}

// The pants decomposition of the outer boundary: the last stage front of a
// spine or layered model.
inline const PantsGraph& induced_boundary_decomposition(const ModelComplex& m) {
    if (m.stages().empty()) fail(Errc::NotSingleBody, "no outer boundary front to read");
    return m.stages().back().graph;
}

// Attach one product block per move outward from the model's outer boundary.
// Works on spines and on already layered models; stage numbers continue from
// the existing front list.
inline ModelComplex layer_model(const ModelComplex& spine, const MovePath& path) {
    if (spine.stages().empty()) fail(Errc::NotSingleBody, "layering needs an outer boundary front");
    if (!(path.base == spine.stages().back().graph))
        fail(Errc::BaseMismatch, "path base is not the induced boundary decomposition");
    PathReport rep = validate_path(path);
    if (!rep.valid) fail(Errc::InvalidPath, "layering needs an applicable path: " + rep.message);

    std::set<CurveId> used_ids;
    for (const auto& lr : spine.links()) used_ids.insert(lr.absorbed.begin(), lr.absorbed.end());

    ModelBuilder b(spine);
    FrontSnapshot front = spine.stages().back();

    for (const Move& mv : path.moves) {
        int stage = static_cast<int>(b.peek().stages().size());
        MoveEffect e = move_effect(front.graph, mv);
        if (!used_ids.insert(e.created).second)
            fail(Errc::InvalidPath, "created curve id " + std::to_string(e.created) +
                                        " collides with an existing lift");

        LinkId old_link = front.links.at(e.retired);
        LinkId new_link = b.add_link({e.created}, stage);
        std::vector<LinkId> vertical;
        for (CurveId c : e.vertical) vertical.push_back(front.links.at(c));

        std::vector<FaceSideRef> bottom, top;
        for (int v : e.vertices) bottom.push_back(front.slots.at(v));
        front.links.erase(e.retired);
        front.links[e.created] = new_link;
        for (int v : e.vertices) {
            std::array<LinkId, 3> cuffs{};
            for (int s = 0; s < 3; ++s) cuffs[s] = front.links.at(e.after.curve_at(Leg{v, s}));
            FaceId f = b.add_face(cuffs, stage);
            top.push_back({f, 0});
            front.slots[v] = {f, 1};
        }

        b.add_block({0, mv.kind, stage, bottom, top, vertical, old_link, new_link, mv.twist});
        bool still_lifted = false;
        for (const auto& [c, l] : front.links)
            if (l == old_link) still_lifted = true;
        if (!still_lifted) b.retire_link(old_link, stage);

        front.graph = std::move(e.after);
        b.push_stage(front);
    }

    return b.finish();
}

enum class LoopClass { Interior, Boundary };

inline const char* loop_class_name(LoopClass c) { return c == LoopClass::Interior ? "Interior" : "Boundary"; }

// A loop is interior when blocks enclose it completely: every face carrying
// one of its cuffs is covered on both sides and no current front lifts it.
inline std::map<LinkId, LoopClass> classify_loops(const ModelComplex& m) {
    std::set<LinkId> lifted;
    if (!m.stages().empty())
        for (const auto& [c, l] : m.stages().back().links) lifted.insert(l);
    for (const auto& f : m.minus_fronts())
        for (const auto& [c, l] : f.links) lifted.insert(l);

    std::set<LinkId> open;
    for (const auto& f : m.faces())
        if (!f.cover[0] || !f.cover[1])
            for (LinkId c : f.cuffs) open.insert(c);

    std::map<LinkId, LoopClass> out;
    for (const auto& lr : m.links())
        out[lr.id] = lifted.count(lr.id) || open.count(lr.id) ? LoopClass::Boundary : LoopClass::Interior;
    return out;
}

// All spine shapes of the genus g handlebody, assembled from genus two
// leaves by attach nodes. tree_bound caps the list at every genus level
// (0 means exhaustive); the order is deterministic.
inline std::vector<SpineTree> enumerate_spine_trees(int genus, int tree_bound = 0) {
    if (genus < 2) fail(Errc::GenusBelowTwo, "no handlebody spines below genus 2");
    auto capped = [&](std::vector<SpineTree>& out) {
        return tree_bound > 0 && out.size() >= static_cast<std::size_t>(tree_bound);
    };
    if (genus == 2) return {SpineTree::genus_two()};

    std::vector<SpineTree> out;
    std::vector<SpineTree> smaller = enumerate_spine_trees(genus - 1, tree_bound);
    for (const SpineTree& child : smaller) {
        std::size_t links = build_fat_spine(child).links().size();
        for (std::size_t a = 0; a < links && !capped(out); ++a)
            for (std::size_t bid = 0; bid < links && !capped(out); ++bid)
                out.push_back(SpineTree::attach_one(child, static_cast<LinkId>(a), static_cast<LinkId>(bid)));
        if (capped(out)) return out;
    }
    for (int left = 2; left <= genus - 2; ++left) {
        std::vector<SpineTree> lhs = enumerate_spine_trees(left, tree_bound);
        std::vector<SpineTree> rhs = enumerate_spine_trees(genus - left, tree_bound);
        for (const SpineTree& lt : lhs) {
            std::size_t llinks = build_fat_spine(lt).links().size();
            for (const SpineTree& rt : rhs) {
                std::size_t rlinks = build_fat_spine(rt).links().size();
                for (std::size_t a = 0; a < llinks && !capped(out); ++a)
                    for (std::size_t bid = 0; bid < rlinks && !capped(out); ++bid)
                        out.push_back(SpineTree::attach_two(lt, static_cast<LinkId>(a), rt,
                                                            static_cast<LinkId>(bid)));
                if (capped(out)) return out;
            }
        }
    }
    return out;
}

// Canonical classes of decompositions induced by some fat spine of the genus
// g handlebody, sorted by canonical form.
inline std::vector<PantsGraph> spinal_set(int genus, int tree_bound = 0) {
    std::map<std::string, PantsGraph> classes;
    for (const SpineTree& t : enumerate_spine_trees(genus, tree_bound)) {
        ModelComplex spine = build_fat_spine(t);
        const PantsGraph& g = induced_boundary_decomposition(spine);
        classes.emplace(g.canonical_form(), g);
    }
    std::vector<PantsGraph> out;
    for (auto& [form, g] : classes) out.push_back(std::move(g));
    return out;
}

// Fewest blocks over any layering of any enumerated spine reaching the
// target class; a lower bound for the layer number, since the search is
// twist-blind and unmarked. Absent when no spinal class reaches the target
// within max_depth.
inline std::optional<int> layer_number_lower_bound(const PantsGraph& target, int genus, int max_depth,
                                                   int tree_bound = 0) {
    if (target.genus() != genus) fail(Errc::GenusMismatch, "target genus does not match");
    std::optional<int> best;
    for (const PantsGraph& s : spinal_set(genus, tree_bound)) {
        std::optional<int> d = bfs_distance(s, target, max_depth);
        if (d && (!best || *d < *best)) best = d;
    }
    return best;
}

}  // namespace layered
