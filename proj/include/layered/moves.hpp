#pragma once

/*
 * Elementary moves on pants graphs.
 *
 * An S move acts on a self-loop curve: the once-punctured torus it fills
 * admits a replacement loop, but the dual graph cannot change, so at this
 * level the move only retires the curve id and issues a fresh one. An A move
 * acts on a curve joining two distinct pants: the four outer legs of those
 * pants are re-paired across two replacement pants. Sorting the outer legs
 * lexicographically by (vertex, slot) as o1 < o2 < o3 < o4, re-pairing
 * Cross1 hands {o1, o3} to the lower replacement vertex and {o2, o4} to the
 * higher; Cross2 hands over {o1, o4} and {o2, o3}. The two replacement pants
 * reuse the indices of the two they consume, keep the outer curves' ids, and
 * meet along a fresh curve on slot 2 of each.
 *
 * Twists are integer annotations along the retired curve; they never alter
 * the graph, only downstream block labels.
 */

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "layered/pants_graph.hpp"

namespace layered {

enum class MoveKind { S, A };

enum class Repairing { Cross1, Cross2 };

inline const char* move_kind_name(MoveKind k) { return k == MoveKind::S ? "S" : "A"; }
inline const char* repairing_name(Repairing r) { return r == Repairing::Cross1 ? "X1" : "X2"; }

struct Move {
    CurveId target = 0;
    MoveKind kind = MoveKind::S;
    std::optional<Repairing> repairing;  // present iff kind == A
    int twist = 0;
    CurveId new_curve = 0;
};

struct MovePath {
    PantsGraph base;
    std::vector<Move> moves;
};

// One entry per curve of the graph: S for self-loops, A with both
// re-pairings otherwise.
struct MoveOption {
    CurveId curve = 0;
    MoveKind kind = MoveKind::S;
    std::vector<Repairing> repairings;
};

inline std::vector<MoveOption> applicable_moves(const PantsGraph& g) {
    std::vector<MoveOption> out;
    for (CurveId c : g.curve_ids()) {
        if (g.curve_kind(c) == CurveKind::SelfLoop)
            out.push_back({c, MoveKind::S, {}});
        else
            out.push_back({c, MoveKind::A, {Repairing::Cross1, Repairing::Cross2}});
    }
    return out;
}

// Everything a move does, in one record: the resulting graph plus the data
// the block builders need (which pants were consumed and which curves run
// vertically through the replacement).
struct MoveEffect {
    PantsGraph after;
    CurveId retired = 0;
    CurveId created = 0;
    std::vector<int> vertices;        // consumed (and reused) vertex indices, 1 for S, 2 for A
    std::vector<CurveId> vertical;    // cuffs crossing the move level: 1 for S, 4 for A (with multiplicity)
};

inline MoveEffect move_effect(const PantsGraph& g, const Move& m) {
    if (!g.has_curve(m.target)) fail(Errc::UnknownCurve, "move targets a curve the graph does not have");
    if (g.has_curve(m.new_curve)) fail(Errc::MoveNotApplicable, "new_curve id is already in use");
    CurveKind kind = g.curve_kind(m.target);

    if (m.kind == MoveKind::S) {
        if (m.repairing) fail(Errc::MoveNotApplicable, "S moves take no re-pairing");
        if (kind != CurveKind::SelfLoop) fail(Errc::MoveNotApplicable, "S move requires a self-loop curve");
        auto [l1, l2] = g.curve_legs(m.target);
        int v = l1.vertex;
        int third = 3 - l1.slot - l2.slot;
        CurveId vertical = g.curve_at(Leg{v, third});

        std::vector<std::pair<Leg, Leg>> matching;
        std::vector<CurveId> ids;
        for (CurveId c : g.curve_ids()) {
            matching.push_back(g.curve_legs(c));
            ids.push_back(c == m.target ? m.new_curve : c);
        }
        MoveEffect e{PantsGraph::build(g.vertices(), matching, ids), m.target, m.new_curve, {v}, {vertical}};
        return e;
    }

    if (!m.repairing) fail(Errc::MoveNotApplicable, "A moves need a re-pairing");
    if (kind != CurveKind::NonLoop) fail(Errc::MoveNotApplicable, "A move requires a curve joining two pants");

    auto [l1, l2] = g.curve_legs(m.target);
    int u = std::min(l1.vertex, l2.vertex);
    int v = std::max(l1.vertex, l2.vertex);

    std::array<Leg, 4> outer{};
    int k = 0;
    for (int vert : {u, v})
        for (int s = 0; s < 3; ++s) {
            Leg leg{vert, s};
            if (leg == l1 || leg == l2) continue;
            outer[k++] = leg;
        }
    std::sort(outer.begin(), outer.end());

    // Cross1 groups {o1,o3} on the lower vertex, Cross2 groups {o1,o4}.
    int mate_of_first = m.repairing == Repairing::Cross1 ? 2 : 3;
    std::array<std::array<Leg, 2>, 2> groups{};
    groups[0] = {outer[0], outer[mate_of_first]};
    groups[1] = {outer[mate_of_first == 2 ? 1 : 2], outer[mate_of_first == 2 ? 3 : 1]};
    if (groups[1][0] > groups[1][1]) std::swap(groups[1][0], groups[1][1]);

    std::map<Leg, Leg> reassigned;
    for (int gi = 0; gi < 2; ++gi)
        for (int slot = 0; slot < 2; ++slot) reassigned[groups[gi][slot]] = Leg{gi == 0 ? u : v, slot};

    auto map_leg = [&](Leg l) {
        auto it = reassigned.find(l);
        return it == reassigned.end() ? l : it->second;
    };

    std::vector<std::pair<Leg, Leg>> matching;
    std::vector<CurveId> ids;
    for (CurveId c : g.curve_ids()) {
        if (c == m.target) continue;
        auto [a, b] = g.curve_legs(c);
        matching.push_back({map_leg(a), map_leg(b)});
        ids.push_back(c);
    }
    matching.push_back({Leg{u, 2}, Leg{v, 2}});
    ids.push_back(m.new_curve);

    MoveEffect e{PantsGraph::build(g.vertices(), matching, ids),
                 m.target,
                 m.new_curve,
                 {u, v},
                 {g.curve_at(outer[0]), g.curve_at(outer[1]), g.curve_at(outer[2]), g.curve_at(outer[3])}};
    return e;
}

inline PantsGraph apply_move(const PantsGraph& g, const Move& m) { return move_effect(g, m).after; }

struct CurveLifetime {
    int created_stage = 0;                 // 0 for base curves, k for the curve made by move k
    std::optional<int> retired_stage;      // k for the curve retired by move k, absent if still exposed
};

struct PathReport {
    bool valid = true;
    int steps = 0;                         // length of the applicable prefix
    std::optional<int> first_invalid;      // 1-based step number of the first bad move
    std::string message;
    int genus = 0;
    std::map<CurveId, CurveLifetime> lifetimes;
    std::vector<PantsGraph> graphs;        // base graph followed by one graph per applied move
};

inline PathReport validate_path(const MovePath& p) {
    PathReport r;
    r.genus = p.base.genus();
    r.graphs.push_back(p.base);
    for (CurveId c : p.base.curve_ids()) r.lifetimes[c] = CurveLifetime{0, std::nullopt};
    for (std::size_t i = 0; i < p.moves.size(); ++i) {
        const Move& m = p.moves[i];
        try {
            MoveEffect e = move_effect(r.graphs.back(), m);
            int stage = static_cast<int>(i) + 1;
            r.lifetimes[e.retired].retired_stage = stage;
            r.lifetimes[e.created] = CurveLifetime{stage, std::nullopt};
            r.graphs.push_back(std::move(e.after));
            ++r.steps;
        } catch (const Error& err) {
            r.valid = false;
            r.first_invalid = static_cast<int>(i) + 1;
            r.message = std::string("step ") + std::to_string(i + 1) + ": " + err.what();
            return r;
        }
    }
    return r;
}

// Deterministic pseudo-random applicable path; twists are uniform in
// [-twist_bound, twist_bound].
inline MovePath random_path(const PantsGraph& g, int n, std::uint64_t seed, int twist_bound = 3) {
    if (n < 0) fail(Errc::InvalidPath, "path length must be non-negative");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> twist(-twist_bound, twist_bound);
    MovePath p{g, {}};
    PantsGraph cur = g;
    CurveId next_id = cur.max_curve_id() + 1;
    for (int i = 0; i < n; ++i) {
        auto options = applicable_moves(cur);
        std::vector<Move> flat;
        for (const auto& o : options) {
            if (o.kind == MoveKind::S)
                flat.push_back({o.curve, MoveKind::S, std::nullopt, 0, 0});
            else
                for (Repairing rp : o.repairings) flat.push_back({o.curve, MoveKind::A, rp, 0, 0});
        }
        std::uniform_int_distribution<std::size_t> pick(0, flat.size() - 1);
        Move m = flat[pick(rng)];
        m.twist = twist(rng);
        m.new_curve = next_id++;
        cur = apply_move(cur, m);
        p.moves.push_back(m);
    }
    return p;
}

// Shortest unmarked move count between the canonical classes of g1 and g2,
// or absent beyond max_depth. S moves never change the class, so the search
// expands A moves only.
inline std::optional<int> bfs_distance(const PantsGraph& g1, const PantsGraph& g2, int max_depth) {
    if (g1.genus() != g2.genus()) fail(Errc::GenusMismatch, "bfs_distance needs equal genus");
    std::string goal = g2.canonical_form();
    if (g1.canonical_form() == goal) return 0;

    std::map<std::string, int> dist{{g1.canonical_form(), 0}};
    std::queue<PantsGraph> frontier;
    frontier.push(g1);
    while (!frontier.empty()) {
        PantsGraph cur = std::move(frontier.front());
        frontier.pop();
        int d = dist.at(cur.canonical_form());
        if (d >= max_depth) continue;
        for (CurveId c : cur.curve_ids()) {
            if (cur.curve_kind(c) != CurveKind::NonLoop) continue;
            for (Repairing rp : {Repairing::Cross1, Repairing::Cross2}) {
                Move m{c, MoveKind::A, rp, 0, cur.max_curve_id() + 1};
                PantsGraph next = apply_move(cur, m);
                std::string key = next.canonical_form();
                if (key == goal) return d + 1;
                if (dist.emplace(key, d + 1).second) frontier.push(std::move(next));
            }
        }
    }
    return std::nullopt;
}

}  // namespace layered
