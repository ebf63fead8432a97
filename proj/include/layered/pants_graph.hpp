#pragma once

/*
 * A pants decomposition of a closed orientable surface of genus g >= 2 is
 * recorded as its dual trivalent multigraph: one vertex per pair of pants,
 * three leg slots per vertex, and a fixed-point-free involution pairing the
 * legs. Each leg pair is a decomposition curve and carries a stable opaque
 * id so that elementary moves can retire and create curves without touching
 * the rest of the graph. 2g-2 pants, 3g-3 curves.
 *
 * Values are immutable once built. Slot order within a vertex has no
 * geometric meaning; isomorphism (and canonical_form) is multigraph
 * isomorphism with vertex, slot and curve labels forgotten.
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "layered/errors.hpp"

namespace layered {

using CurveId = std::uint64_t;

struct Leg {
    int vertex = 0;
    int slot = 0;

    auto operator<=>(const Leg&) const = default;
};

enum class CurveKind { SelfLoop, NonLoop };

class PantsGraph {
public:
    // matching entries become curves; ids default to 0..#curves-1 in entry order.
    static PantsGraph build(int vertex_count, const std::vector<std::pair<Leg, Leg>>& matching,
                            const std::vector<CurveId>& curve_ids = {}) {
        if (vertex_count < 2) fail(Errc::GenusBelowTwo, "need at least two pants (genus >= 2)");
        if (vertex_count % 2 != 0)
            fail(Errc::OddVertexCount, "pants count must be even, got " + std::to_string(vertex_count));
        const int legs = 3 * vertex_count;
        if (static_cast<int>(matching.size()) * 2 != legs)
            fail(Errc::NotPerfectMatching, "expected " + std::to_string(legs / 2) + " leg pairs, got " +
                                               std::to_string(matching.size()));
        if (!curve_ids.empty() && curve_ids.size() != matching.size())
            fail(Errc::NotPerfectMatching, "curve id list does not match pair count");

        PantsGraph g;
        g.vertex_count_ = vertex_count;
        g.partner_.assign(legs, -1);
        g.leg_curve_.assign(legs, 0);
        for (std::size_t k = 0; k < matching.size(); ++k) {
            int a = leg_index(vertex_count, matching[k].first);
            int b = leg_index(vertex_count, matching[k].second);
            if (a == b) fail(Errc::NotPerfectMatching, "leg paired with itself");
            if (g.partner_[a] != -1 || g.partner_[b] != -1)
                fail(Errc::NotPerfectMatching, "leg covered twice");
            CurveId id = curve_ids.empty() ? static_cast<CurveId>(k) : curve_ids[k];
            if (g.curves_.count(id)) fail(Errc::NotPerfectMatching, "duplicate curve id " + std::to_string(id));
            g.partner_[a] = b;
            g.partner_[b] = a;
            g.leg_curve_[a] = id;
            g.leg_curve_[b] = id;
            g.curves_[id] = {std::min(a, b), std::max(a, b)};
        }
        for (int leg = 0; leg < legs; ++leg)
            if (g.partner_[leg] == -1) fail(Errc::NotPerfectMatching, "leg left unmatched");
        g.check_connected();
        return g;
    }

    int vertices() const { return vertex_count_; }
    int genus() const { return (vertex_count_ + 2) / 2; }
    int curve_count() const { return static_cast<int>(curves_.size()); }

    std::vector<CurveId> curve_ids() const {
        std::vector<CurveId> out;
        out.reserve(curves_.size());
        for (const auto& [id, legs] : curves_) out.push_back(id);
        return out;
    }

    bool has_curve(CurveId id) const { return curves_.count(id) != 0; }

    std::pair<Leg, Leg> curve_legs(CurveId id) const {
        auto it = curves_.find(id);
        if (it == curves_.end()) fail(Errc::UnknownCurve, "no curve " + std::to_string(id));
        return {leg_of(it->second.first), leg_of(it->second.second)};
    }

    CurveKind curve_kind(CurveId id) const {
        auto [a, b] = curve_legs(id);
        return a.vertex == b.vertex ? CurveKind::SelfLoop : CurveKind::NonLoop;
    }

    Leg partner(Leg leg) const { return leg_of(partner_[leg_index(vertex_count_, leg)]); }

    CurveId curve_at(Leg leg) const { return leg_curve_[leg_index(vertex_count_, leg)]; }

    // Loop count on the diagonal, edge multiplicities off it.
    std::vector<std::vector<int>> count_matrix() const {
        std::vector<std::vector<int>> m(vertex_count_, std::vector<int>(vertex_count_, 0));
        for (const auto& [id, legs] : curves_) {
            int a = legs.first / 3, b = legs.second / 3;
            if (a == b)
                m[a][a] += 1;
            else {
                m[a][b] += 1;
                m[b][a] += 1;
            }
        }
        return m;
    }

    // Minimal row-by-row encoding of the count matrix over all vertex orders.
    // Equal strings exactly for isomorphic leg-matched multigraphs.
    const std::string& canonical_form() const {
        if (!canonical_) canonical_ = compute_canonical();
        return *canonical_;
    }

    bool isomorphic_to(const PantsGraph& other) const { return canonical_form() == other.canonical_form(); }

    // Rebuilds the graph with permuted vertex ids, per-vertex slot permutations
    // and renamed curves. perm[v] is the new id of vertex v; slot_perms[v][s]
    // the new slot of (v, s). Used by tests and serialization round-trips.
    PantsGraph relabeled(const std::vector<int>& perm, const std::vector<std::array<int, 3>>& slot_perms,
                         const std::map<CurveId, CurveId>& curve_rename) const {
        std::vector<std::pair<Leg, Leg>> matching;
        std::vector<CurveId> ids;
        for (const auto& [id, legs] : curves_) {
            Leg a = leg_of(legs.first), b = leg_of(legs.second);
            Leg na{perm[a.vertex], slot_perms[a.vertex][a.slot]};
            Leg nb{perm[b.vertex], slot_perms[b.vertex][b.slot]};
            matching.push_back({na, nb});
            auto it = curve_rename.find(id);
            ids.push_back(it == curve_rename.end() ? id : it->second);
        }
        return build(vertex_count_, matching, ids);
    }

    CurveId max_curve_id() const {
        CurveId m = 0;
        for (const auto& [id, legs] : curves_) m = std::max(m, id);
        return m;
    }

    bool operator==(const PantsGraph& other) const {
        return vertex_count_ == other.vertex_count_ && partner_ == other.partner_ &&
               leg_curve_ == other.leg_curve_;
    }

private:
    PantsGraph() = default;

    static int leg_index(int vertex_count, Leg leg) {
        if (leg.vertex < 0 || leg.vertex >= vertex_count || leg.slot < 0 || leg.slot > 2)
            fail(Errc::NotPerfectMatching, "leg (" + std::to_string(leg.vertex) + "," +
                                               std::to_string(leg.slot) + ") out of range");
        return 3 * leg.vertex + leg.slot;
    }

    static Leg leg_of(int index) { return Leg{index / 3, index % 3}; }

    void check_connected() const {
        std::vector<bool> seen(vertex_count_, false);
        std::vector<int> stack{0};
        seen[0] = true;
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int s = 0; s < 3; ++s) {
                int w = partner_[3 * v + s] / 3;
                if (!seen[w]) {
                    seen[w] = true;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        if (reached != vertex_count_) fail(Errc::Disconnected, "pants graph is not connected");
    }

    std::string compute_canonical() const {
        const int n = vertex_count_;
        auto m = count_matrix();
        std::string best;
        std::string cur;
        std::vector<int> order;
        std::vector<bool> used(n, false);
        order.reserve(n);
        cur.reserve(n * (n + 1) / 2);

        // Depth-first over vertex orders. A branch is pruned when its emitted
        // prefix already exceeds the same-length prefix of the best complete
        // encoding; prefixes are compared in full against the current best so
        // that improvements found deeper in the tree tighten later pruning.
        auto dfs = [&](auto&& self, int k) -> void {
            if (k == n) {
                if (best.empty() || cur < best) best = cur;
                return;
            }
            std::vector<std::pair<std::string, int>> cands;
            cands.reserve(n - k);
            for (int v = 0; v < n; ++v) {
                if (used[v]) continue;
                std::string block;
                block.reserve(k + 1);
                for (int p = 0; p < k; ++p) block.push_back(static_cast<char>('0' + m[v][order[p]]));
                block.push_back(static_cast<char>('0' + m[v][v]));
                cands.emplace_back(std::move(block), v);
            }
            std::sort(cands.begin(), cands.end());
            for (auto& [block, v] : cands) {
                if (!best.empty()) {
                    int cmp = best.compare(0, cur.size() + block.size(), cur + block);
                    if (cmp < 0) break;  // blocks are sorted, the rest are no better
                }
                used[v] = true;
                order.push_back(v);
                cur += block;
                self(self, k + 1);
                cur.resize(cur.size() - block.size());
                order.pop_back();
                used[v] = false;
            }
        };
        dfs(dfs, 0);
        return "n" + std::to_string(n) + ":" + best;
    }

    int vertex_count_ = 0;
    std::vector<int> partner_;
    std::vector<CurveId> leg_curve_;
    std::map<CurveId, std::pair<int, int>> curves_;  // id -> leg indices, low first
    mutable std::optional<std::string> canonical_;
};

inline PantsGraph new_pants_graph(int vertex_count, const std::vector<std::pair<Leg, Leg>>& matching,
                                  const std::vector<CurveId>& curve_ids = {}) {
    return PantsGraph::build(vertex_count, matching, curve_ids);
}

// One representative per isomorphism class of pants decompositions of the
// genus-g surface. Enumerates degree-3 count matrices (loops at most one per
// vertex) and keeps one graph per canonical form; meant for desk-scale genus.
inline std::vector<PantsGraph> enumerate_pants_graphs(int genus) {
    if (genus < 2) fail(Errc::GenusBelowTwo, "no pants decompositions below genus 2");
    const int n = 2 * genus - 2;

    std::vector<PantsGraph> out;
    std::set<std::string> seen;
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    std::vector<int> deg(n, 3);

    auto connected = [&]() {
        std::vector<bool> vis(n, false);
        std::vector<int> stack{0};
        vis[0] = true;
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w)
                if (w != v && m[v][w] > 0 && !vis[w]) {
                    vis[w] = true;
                    ++reached;
                    stack.push_back(w);
                }
        }
        return reached == n;
    };

    // Symmetry filter: every class has a labeling whose vertices are sorted by
    // (loops, incident multiplicities, neighbour profile) non-increasing, so
    // matrices violating that order are skipped without canonicalizing.
    auto invariant_sorted = [&]() {
        std::vector<std::array<int, 4>> inv(n, {0, 0, 0, 0});
        for (int v = 0; v < n; ++v) {
            inv[v][0] = m[v][v];
            int k = 1;
            for (int w = 0; w < n; ++w)
                if (w != v && m[v][w] > 0) inv[v][k++] = m[v][w];
            std::sort(inv[v].begin() + 1, inv[v].begin() + k, std::greater<>());
        }
        std::vector<std::vector<std::array<int, 4>>> prof(n);
        for (int v = 0; v < n; ++v) {
            for (int w = 0; w < n; ++w)
                for (int e = 0; e < (w == v ? 0 : m[v][w]); ++e) prof[v].push_back(inv[w]);
            std::sort(prof[v].begin(), prof[v].end(), std::greater<>());
        }
        for (int v = 0; v + 1 < n; ++v) {
            if (inv[v] < inv[v + 1]) return false;
            if (inv[v] == inv[v + 1] && prof[v] < prof[v + 1]) return false;
        }
        return true;
    };

    auto emit = [&]() {
        if (!invariant_sorted() || !connected()) return;
        std::vector<std::pair<Leg, Leg>> matching;
        std::vector<int> next_slot(n, 0);
        for (int i = 0; i < n; ++i) {
            for (int l = 0; l < m[i][i]; ++l) {
                matching.push_back({Leg{i, next_slot[i]}, Leg{i, next_slot[i] + 1}});
                next_slot[i] += 2;
            }
            for (int j = i + 1; j < n; ++j)
                for (int e = 0; e < m[i][j]; ++e) {
                    matching.push_back({Leg{i, next_slot[i]++}, Leg{j, next_slot[j]++}});
                }
        }
        PantsGraph g = new_pants_graph(n, matching);
        if (seen.insert(g.canonical_form()).second) out.push_back(std::move(g));
    };

    // Fill loops and the upper triangle row by row; deg[] tracks what each
    // vertex still needs.
    auto fill_row = [&](auto&& self, int i, int j, int remaining) -> void {
        if (j == n) {
            if (remaining != 0) return;
            if (i + 1 == n)
                emit();
            else
                self(self, i + 1, -1, 0);
            return;
        }
        if (j == -1) {
            int max_loops = i == 0 ? 1 : m[i - 1][i - 1];
            for (int loops = 0; 2 * loops <= deg[i] && loops <= max_loops; ++loops) {
                m[i][i] = loops;
                self(self, i, i + 1, deg[i] - 2 * loops);
                m[i][i] = 0;
            }
            return;
        }
        int cap = std::min(remaining, deg[j]);
        for (int e = 0; e <= cap; ++e) {
            m[i][j] = m[j][i] = e;
            deg[j] -= e;
            self(self, i, j + 1, remaining - e);
            deg[j] += e;
            m[i][j] = m[j][i] = 0;
        }
    };
    fill_row(fill_row, 0, -1, 0);

    std::sort(out.begin(), out.end(),
              [](const PantsGraph& a, const PantsGraph& b) { return a.canonical_form() < b.canonical_form(); });
    return out;
}

}  // namespace layered
