#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dproc/config_graph.hpp"

namespace dproc {

// All perfect point-matchings with no intra-vertex pair, as pair lists
// (normalized, sorted; pass each to the callback). Returns false if the
// callback aborted the walk.
inline bool for_each_config_graph(const DegreeSequence& ds,
                                  const std::function<bool(const std::vector<std::pair<int, int>>&)>& cb) {
    if (ds.total_degree() % 2 != 0) return true;
    PointMap pm(ds);
    int total = pm.total_points();
    std::vector<int> partner(total, -1);
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(total / 2);

    std::function<bool(int)> rec = [&](int p) -> bool {
        while (p < total && partner[p] >= 0) ++p;
        if (p == total) return cb(pairs);
        for (int q = p + 1; q < total; ++q) {
            if (partner[q] >= 0 || pm.vertex_of(q) == pm.vertex_of(p)) continue;
            partner[p] = q;
            partner[q] = p;
            pairs.emplace_back(p, q);
            bool keep = rec(p + 1);
            pairs.pop_back();
            partner[p] = -1;
            partner[q] = -1;
            if (!keep) return false;
        }
        return true;
    };
    return rec(0);
}

// All simple graphs with the exact degree sequence, emitted as sorted
// vertex-pair edge lists.
inline bool for_each_simple_graph(const DegreeSequence& ds,
                                  const std::function<bool(const std::vector<std::pair<int, int>>&)>& cb) {
    if (ds.total_degree() % 2 != 0) return true;
    int n = ds.n();
    std::vector<std::pair<int, int>> all_pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) all_pairs.emplace_back(u, v);
    int np = static_cast<int>(all_pairs.size());
    std::vector<int> residual(ds.degrees().begin(), ds.degrees().end());
    // capacity[i]: how much degree the pairs i.. can still absorb at a vertex
    std::vector<std::vector<int>> capacity(n, std::vector<int>(np + 1, 0));
    for (int u = 0; u < n; ++u)
        for (int i = np - 1; i >= 0; --i)
            capacity[u][i] = capacity[u][i + 1] +
                             (all_pairs[i].first == u || all_pairs[i].second == u ? 1 : 0);

    std::vector<std::pair<int, int>> chosen;
    std::function<bool(int, long long)> rec = [&](int i, long long remaining) -> bool {
        if (remaining == 0) {
            for (int v = 0; v < n; ++v)
                if (residual[v] != 0) return true;
            return cb(chosen);
        }
        if (i == np) return true;
        for (int v = 0; v < n; ++v)
            if (residual[v] > capacity[v][i]) return true;  // prune
        auto [u, v] = all_pairs[i];
        if (!rec(i + 1, remaining)) return false;
        if (residual[u] > 0 && residual[v] > 0) {
            --residual[u];
            --residual[v];
            chosen.push_back(all_pairs[i]);
            bool keep = rec(i + 1, remaining - 2);
            chosen.pop_back();
            ++residual[u];
            ++residual[v];
            if (!keep) return false;
        }
        return true;
    };
    return rec(0, ds.total_degree());
}

// Non-decreasing degree multisets with entries in 1..max_delta and
// m = sum/2 in [1, max_m].
inline void for_each_degree_multiset(int max_m, int max_delta,
                                     const std::function<void(const std::vector<int>&)>& cb) {
    std::vector<int> cur;
    std::function<void(int, long long)> rec = [&](int min_deg, long long sum) {
        if (sum > 0 && sum % 2 == 0 && !cur.empty()) cb(cur);
        for (int d = min_deg; d <= max_delta; ++d) {
            if (sum + d > 2LL * max_m) break;
            cur.push_back(d);
            rec(d, sum + d);
            cur.pop_back();
        }
    };
    rec(1, 0);
}

}  // namespace dproc
