#pragma once

// Shared hand-built graphs for the test suite. The theta graph is two pants
// joined by three curves; the dumbbell is two pants with a self-loop each and
// one connecting curve. These are the two genus-2 classes.

#include <random>

#include "layered/moves.hpp"
#include "layered/pants_graph.hpp"

namespace fixtures {

inline layered::PantsGraph theta() {
    using layered::Leg;
    return layered::new_pants_graph(2, {{Leg{0, 0}, Leg{1, 0}}, {Leg{0, 1}, Leg{1, 1}}, {Leg{0, 2}, Leg{1, 2}}});
}

inline layered::PantsGraph dumbbell() {
    using layered::Leg;
    return layered::new_pants_graph(2, {{Leg{0, 0}, Leg{0, 1}}, {Leg{1, 0}, Leg{1, 1}}, {Leg{0, 2}, Leg{1, 2}}});
}

// Uniform random relabeling: permutes vertices, slots within each vertex and
// curve ids. The result must stay in the same canonical class.
inline layered::PantsGraph shuffled(const layered::PantsGraph& g, std::mt19937_64& rng) {
    int n = g.vertices();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::array<int, 3>> slots(n);
    for (int v = 0; v < n; ++v) {
        slots[v] = {0, 1, 2};
        std::shuffle(slots[v].begin(), slots[v].end(), rng);
    }
    std::map<layered::CurveId, layered::CurveId> rename;
    auto ids = g.curve_ids();
    std::vector<layered::CurveId> targets = ids;
    std::shuffle(targets.begin(), targets.end(), rng);
    for (std::size_t i = 0; i < ids.size(); ++i) rename[ids[i]] = targets[i] + 100;
    return g.relabeled(perm, slots, rename);
}

// Theta base with three crossing-2 A-moves retiring every original curve.
// Each step keeps the theta shape, so every later target stays a connecting
// curve and the path is applicable end to end.
inline layered::MovePath theta_three_a_path() {
    using namespace layered;
    PantsGraph t = theta();
    MovePath p{t, {}};
    auto ids = t.curve_ids();
    int twists[3] = {1, 0, -2};
    for (int i = 0; i < 3; ++i)
        p.moves.push_back(Move{ids[i], MoveKind::A, Repairing::Cross2, twists[i], t.max_curve_id() + 1 + i});
    return p;
}

// Random connected graph of the given genus: shuffle all 3n legs, pair them
// off consecutively and retry until the result is connected. A vertex has an
// odd number of legs, so no pairing can isolate one.
inline layered::PantsGraph random_graph(int genus, std::mt19937_64& rng) {
    using layered::Leg;
    int n = 2 * genus - 2;
    std::vector<Leg> legs;
    for (int v = 0; v < n; ++v)
        for (int s = 0; s < 3; ++s) legs.push_back(Leg{v, s});
    for (;;) {
        std::shuffle(legs.begin(), legs.end(), rng);
        std::vector<std::pair<Leg, Leg>> matching;
        for (std::size_t i = 0; i < legs.size(); i += 2) matching.push_back({legs[i], legs[i + 1]});
        try {
            return layered::new_pants_graph(n, matching);
        } catch (const layered::Error& e) {
            if (e.code() != layered::Errc::Disconnected) throw;
        }
    }
}

}  // namespace fixtures
