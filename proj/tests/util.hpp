#pragma once

#include <random>
#include <set>
#include <vector>

#include "kcode/layered_kc.hpp"

namespace kcode::testutil {

// Random valid abstract layered sequence: depth-bounded, weight <= 1.
inline std::vector<LayeredRequest> random_layered_sequence(std::mt19937_64& rng, int max_depth,
                                                           int max_requests, int max_extra = 4) {
    std::vector<LayeredRequest> seq{{}};
    std::vector<int> depth{0};
    DyadicWeight w;
    for (int tries = 0; tries < max_requests * 3 &&
                        static_cast<int>(seq.size()) <= max_requests; ++tries) {
        int p = static_cast<int>(rng() % seq.size());
        if (depth[p] >= max_depth) continue;
        int len = seq[p].length + 1 + static_cast<int>(rng() % max_extra);
        if (!w.plus_pow2(len).leq_one()) continue;
        w = w.plus_pow2(len);
        seq.push_back({{}, p, len});
        depth.push_back(depth[p] + 1);
    }
    return seq;
}

inline bool prefix_free(const std::vector<BitString>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[i].comparable_with(v[j])) return false;
    return true;
}

// '1' positions of the subsolver traces respect arrival order within each
// set: older codes keep strictly larger positions than newer ones.
inline bool trace_monotone(const LayeredSolver& solver) {
    for (const auto& set : solver.sets()) {
        for (std::size_t a = 0; a + 1 < set.size(); ++a) {
            const auto older = solver.subsolver(set[a].code).trace().positions;
            for (std::size_t b = a + 1; b < set.size(); ++b) {
                const auto newer = solver.subsolver(set[b].code).trace().positions;
                if (older.empty() || newer.empty()) continue;
                if (!(*older.begin() > *newer.rbegin())) return false;
            }
        }
    }
    return true;
}

}  // namespace kcode::testutil
