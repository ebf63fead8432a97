#pragma once

// Independent brute-force oracle used to pin expected class counts before the
// library's own enumeration existed. Works directly on leg matchings and tests
// isomorphism by exhaustive vertex-permutation search; it shares no code with
// the library's canonical-form or degree-matrix machinery.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

// A multigraph on n vertices as a symmetric count matrix; m[i][i] counts loops.
using CountMatrix = std::vector<std::vector<int>>;

inline CountMatrix matrix_from_matching(int n, const std::vector<int>& partner) {
    CountMatrix m(n, std::vector<int>(n, 0));
    for (int leg = 0; leg < 3 * n; ++leg) {
        int other = partner[leg];
        if (other < leg) continue;
        int a = leg / 3, b = other / 3;
        if (a == b)
            m[a][a] += 1;
        else {
            m[a][b] += 1;
            m[b][a] += 1;
        }
    }
    return m;
}

inline bool matrices_isomorphic(const CountMatrix& a, const CountMatrix& b) {
    int n = static_cast<int>(a.size());
    if (static_cast<int>(b.size()) != n) return false;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i; j < n && ok; ++j)
                if (a[i][j] != b[perm[i]][perm[j]]) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

inline bool matching_connected(int n, const std::vector<int>& partner) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int s = 0; s < 3; ++s) {
            int w = partner[3 * v + s] / 3;
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n;
}

// Enumerates every perfect matching on the 3n legs, keeps the connected ones,
// and returns one count matrix per isomorphism class.
inline std::vector<CountMatrix> connected_classes(int n) {
    std::vector<CountMatrix> classes;
    std::vector<int> partner(3 * n, -1);
    auto rec = [&](auto&& self, int first_free) -> void {
        while (first_free < 3 * n && partner[first_free] != -1) ++first_free;
        if (first_free == 3 * n) {
            if (!matching_connected(n, partner)) return;
            CountMatrix m = matrix_from_matching(n, partner);
            for (const auto& c : classes)
                if (matrices_isomorphic(m, c)) return;
            classes.push_back(std::move(m));
            return;
        }
        for (int other = first_free + 1; other < 3 * n; ++other) {
            if (partner[other] != -1) continue;
            partner[first_free] = other;
            partner[other] = first_free;
            self(self, first_free + 1);
            partner[first_free] = -1;
            partner[other] = -1;
        }
    };
    rec(rec, 0);
    return classes;
}

}  // namespace oracle
