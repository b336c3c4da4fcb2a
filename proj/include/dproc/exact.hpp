#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "dproc/config_graph.hpp"
#include "dproc/enumerate.hpp"
#include "dproc/process.hpp"
#include "dproc/rational.hpp"

namespace dproc {

inline long long tri(long long g) { return g * (g - 1) / 2; }

// Common denominator scale for Z-products: lcm of tri(g), g = 2..gamma0.
// Z(sigma) * L^m is then an integer, so sums and comparisons stay integral.
inline Int z_scale(int gamma0) {
    Int l = 1;
    for (int g = 2; g <= gamma0; ++g) l = boost::multiprecision::lcm(l, Int(tri(g)));
    return l;
}

inline int unsaturated_at_start(const DegreeSequence& ds) {
    int c = 0;
    for (int d : ds.degrees())
        if (d > 0) ++c;
    return c;
}

struct GammaProfile {
    std::vector<int> gamma;  // Gamma_0..Gamma_m
};

inline GammaProfile make_gamma_profile(const DegreeSequence& ds, const EdgeSequence& seq) {
    return GammaProfile{gamma_profile(ds, seq)};
}

// Z(sigma) = prod_i 2 / (Gamma_i (Gamma_i - 1)) over i = 0..m-1.
inline Rational z_sigma(const DegreeSequence& ds, const EdgeSequence& seq) {
    auto gamma = gamma_profile(ds, seq);
    int m = static_cast<int>(seq.edges.size());
    Rational z = 1;
    for (int i = 0; i < m; ++i) {
        if (gamma[i] < 2) throw std::domain_error("malformed edge sequence: Gamma_i < 2");
        z *= Rational(Int(1), Int(tri(gamma[i])));
    }
    return z;
}

// Z(sigma) * L^m as an integer, with L = z_scale(gamma0).
template <class I>
inline I z_sigma_scaled(const std::vector<int>& gamma, const std::vector<I>& factor_of_gamma) {
    int m = static_cast<int>(gamma.size()) - 1;
    I v = 1;
    for (int i = 0; i < m; ++i) {
        if (gamma[i] < 2) throw std::domain_error("malformed edge sequence: Gamma_i < 2");
        v *= factor_of_gamma[gamma[i]];
    }
    return v;
}

namespace detail {

using u128 = unsigned __int128;

struct Incidence {
    std::vector<uint64_t> inc;   // per vertex: bitmask of incident edge indices
    std::vector<int> deg;        // target degrees
    int gamma0 = 0;
    int m = 0;
};

inline Incidence build_incidence(const DegreeSequence& ds,
                                 const std::vector<std::pair<int, int>>& vertex_edges) {
    Incidence x;
    x.m = static_cast<int>(vertex_edges.size());
    if (x.m > 63) throw std::invalid_argument("edge count too large for subset DP");
    x.deg.assign(ds.degrees().begin(), ds.degrees().end());
    x.inc.assign(ds.n(), 0);
    for (int e = 0; e < x.m; ++e) {
        x.inc[vertex_edges[e].first] |= 1ULL << e;
        x.inc[vertex_edges[e].second] |= 1ULL << e;
    }
    x.gamma0 = unsaturated_at_start(ds);
    return x;
}

inline std::vector<uint8_t> gamma_table(const Incidence& x) {
    size_t sz = size_t{1} << x.m;
    std::vector<uint8_t> gamma(sz);
    int n = static_cast<int>(x.inc.size());
    for (size_t mask = 0; mask < sz; ++mask) {
        int g = 0;
        for (int v = 0; v < n; ++v)
            if (x.deg[v] > 0 && std::popcount(x.inc[v] & mask) < x.deg[v]) ++g;
        gamma[mask] = static_cast<uint8_t>(g);
    }
    return gamma;
}

// Subset DP: W(S) = sum_{e in S} W(S \ e) * factor(Gamma(S \ e)); returns
// W(full) with W scaled by L^|S|.
template <class I>
inline I z_subset_dp(const Incidence& x, const std::vector<I>& factor) {
    size_t sz = size_t{1} << x.m;
    auto gamma = gamma_table(x);
    std::vector<I> w(sz);
    w[0] = 1;
    for (size_t mask = 1; mask < sz; ++mask) {
        I acc = 0;
        uint64_t rest = mask;
        while (rest) {
            uint64_t bit = rest & (0 - rest);
            rest ^= bit;
            size_t prev = mask ^ bit;
            int g = gamma[prev];
            if (g < 2) throw std::domain_error("Gamma < 2 inside subset DP");
            acc += w[prev] * factor[g];
        }
        w[mask] = acc;
    }
    return w[sz - 1];
}

// Upper bound on the scaled DP value, used to pick the 128-bit fast path.
inline bool fits_u128(const Int& l, int gamma0, int m) {
    Int bound = 1;
    for (int i = 1; i <= m; ++i) bound *= i;  // m! orderings
    for (int i = 0; i < m; ++i) {
        int g = std::max(2, gamma0 - 2 * i);
        bound *= l / tri(g);
    }
    return bound < (Int(1) << 126);
}

}  // namespace detail

// Z(G) = sum over all edge orderings of Z(sigma), via subset DP.
inline Rational z_graph(const ConfigGraph& g, int max_m = 24) {
    if (!g.complete()) throw std::invalid_argument("z_graph needs a complete configuration-graph");
    int m = static_cast<int>(g.edge_count());
    if (m > max_m) throw std::invalid_argument("z_graph subset DP budget exceeded (m > " +
                                               std::to_string(max_m) + ")");
    const auto& ds = g.degree_sequence();
    std::vector<std::pair<int, int>> ve;
    ve.reserve(g.pairs().size());
    for (auto [p, q] : g.pairs()) ve.emplace_back(g.vertex_of(p), g.vertex_of(q));
    auto x = detail::build_incidence(ds, ve);
    Int l = z_scale(x.gamma0);
    Int denom = 1;
    for (int i = 0; i < m; ++i) denom *= l;
    if (l <= Int(UINT64_MAX) && detail::fits_u128(l, x.gamma0, m)) {
        std::vector<detail::u128> factor(x.gamma0 + 1, 0);
        uint64_t lu = l.convert_to<uint64_t>();
        for (int gg = 2; gg <= x.gamma0; ++gg) factor[gg] = lu / tri(gg);
        detail::u128 v = detail::z_subset_dp(x, factor);
        Int vi = Int(static_cast<uint64_t>(v >> 64));
        vi <<= 64;
        vi += static_cast<uint64_t>(v);
        return Rational(vi, denom);
    }
    std::vector<Int> factor(x.gamma0 + 1, 0);
    for (int gg = 2; gg <= x.gamma0; ++gg) factor[gg] = l / tri(gg);
    Int v = detail::z_subset_dp(x, factor);
    return Rational(v, denom);
}

// Independent route: explicit DFS over all m! edge orderings.
inline Rational z_graph_bruteforce(const ConfigGraph& g, int max_m = 10) {
    if (!g.complete()) throw std::invalid_argument("z_graph needs a complete configuration-graph");
    int m = static_cast<int>(g.edge_count());
    if (m > max_m) throw std::invalid_argument("permutation sum budget exceeded (m > " +
                                               std::to_string(max_m) + ")");
    const auto& ds = g.degree_sequence();
    std::vector<std::pair<int, int>> ve;
    for (auto [p, q] : g.pairs()) ve.emplace_back(g.vertex_of(p), g.vertex_of(q));
    int gamma0 = unsaturated_at_start(ds);
    Int l = z_scale(gamma0);
    std::vector<Int> factor(gamma0 + 1, 0);
    for (int gg = 2; gg <= gamma0; ++gg) factor[gg] = l / tri(gg);
    std::vector<int> residual(ds.degrees().begin(), ds.degrees().end());
    std::vector<bool> used(m, false);
    Int total = 0;
    int gamma = gamma0;
    std::function<void(int, const Int&)> rec = [&](int placed, const Int& acc) {
        if (placed == m) {
            total += acc;
            return;
        }
        if (gamma < 2) throw std::domain_error("Gamma < 2 in permutation sum");
        Int next = acc * factor[gamma];
        for (int e = 0; e < m; ++e) {
            if (used[e]) continue;
            auto [u, v] = ve[e];
            if (residual[u] <= 0 || residual[v] <= 0) continue;
            used[e] = true;
            int drop = 0;
            if (--residual[u] == 0) ++drop;
            if (--residual[v] == 0) ++drop;
            gamma -= drop;
            rec(placed + 1, next);
            gamma += drop;
            ++residual[u];
            ++residual[v];
            used[e] = false;
        }
    };
    rec(0, Int(1));
    Int denom = 1;
    for (int i = 0; i < m; ++i) denom *= l;
    return Rational(total, denom);
}

// Unconditional probability that the standard process produces exactly G
// (edge set and completion), summed over orderings via the subset DP with
// per-step factor 1/|Q_i|.
inline Rational prob_standard(const MultiGraph& g, const DegreeSequence& ds, int max_m = 24) {
    if (!g.is_simple()) throw std::invalid_argument("prob_standard needs a simple graph");
    if (g.n() != ds.n()) throw std::invalid_argument("vertex count mismatch");
    if (g.degrees() != ds.degrees()) throw std::invalid_argument("degree sequence mismatch");
    int m = static_cast<int>(g.edge_count());
    if (m > max_m) throw std::invalid_argument("prob_standard subset DP budget exceeded");
    auto x = detail::build_incidence(ds, g.edges());
    size_t sz = size_t{1} << m;
    int n = ds.n();
    // |Q(mask)| = C(unsat,2) - #(mask edges with both endpoints unsaturated)
    std::vector<long long> q(sz);
    for (size_t mask = 0; mask < sz; ++mask) {
        int unsat = 0;
        for (int v = 0; v < n; ++v)
            if (x.deg[v] > 0 && std::popcount(x.inc[v] & mask) < x.deg[v]) ++unsat;
        long long adj_unsat = 0;
        uint64_t rest = mask;
        while (rest) {
            int e = std::countr_zero(rest);
            rest &= rest - 1;
            auto [u, v] = g.edges()[e];
            bool uu = x.deg[u] > 0 && std::popcount(x.inc[u] & mask) < x.deg[u];
            bool vv = x.deg[v] > 0 && std::popcount(x.inc[v] & mask) < x.deg[v];
            if (uu && vv) ++adj_unsat;
        }
        q[mask] = tri(unsat) - adj_unsat;
    }
    std::vector<Rational> w(sz);
    w[0] = 1;
    for (size_t mask = 1; mask < sz; ++mask) {
        Rational acc = 0;
        uint64_t rest = mask;
        while (rest) {
            uint64_t bit = rest & (0 - rest);
            rest ^= bit;
            size_t prev = mask ^ bit;
            if (q[prev] <= 0) throw std::domain_error("empty choice set inside prob_standard DP");
            acc += w[prev] * Rational(Int(1), Int(q[prev]));
        }
        w[mask] = acc;
    }
    return w[sz - 1];
}

// First-principles probability that the relaxed process chooses exactly this
// point-level trajectory: per step 1/C(Gamma,2) for the vertex pair and
// 1/(free_u * free_v) for the point choices.
inline Rational relaxed_trajectory_prob(const DegreeSequence& ds, const EdgeSequence& seq) {
    PointMap pm(ds);
    std::vector<int> residual(ds.degrees().begin(), ds.degrees().end());
    int gamma = unsaturated_at_start(ds);
    Rational p = 1;
    for (auto [a, b] : seq.edges) {
        int u = pm.vertex_of(a), v = pm.vertex_of(b);
        if (u == v || residual[u] <= 0 || residual[v] <= 0)
            throw std::invalid_argument("invalid trajectory");
        if (gamma < 2) throw std::domain_error("trajectory continues with Gamma < 2");
        p *= Rational(Int(1), Int(tri(gamma)) * residual[u] * residual[v]);
        if (--residual[u] == 0) --gamma;
        if (--residual[v] == 0) --gamma;
    }
    return p;
}

// P(relaxed process produces configuration-graph G) = Z(G) / prod d_j!.
inline Rational p_relaxed_graph(const ConfigGraph& g) {
    Rational z = z_graph(g);
    Int f = 1;
    for (int d : g.degree_sequence().degrees())
        for (int i = 2; i <= d; ++i) f *= i;
    return z / Rational(f);
}

namespace detail {

inline Rational completion_relaxed_rec(std::vector<int>& counts, int delta,
                                       std::map<std::vector<int>, Rational>& memo) {
    long long gamma = 0;
    for (int r = 1; r <= delta; ++r) gamma += counts[r];
    if (gamma == 0) return 1;
    if (gamma == 1) return 0;
    auto it = memo.find(counts);
    if (it != memo.end()) return it->second;
    Rational acc = 0;
    for (int r = 1; r <= delta; ++r) {
        if (counts[r] == 0) continue;
        for (int s = r; s <= delta; ++s) {
            long long ways;
            if (s == r) {
                if (counts[r] < 2) continue;
                ways = static_cast<long long>(counts[r]) * (counts[r] - 1) / 2;
            } else {
                if (counts[s] == 0) continue;
                ways = static_cast<long long>(counts[r]) * counts[s];
            }
            --counts[r];
            --counts[s];
            if (r - 1 >= 1) ++counts[r - 1];
            if (s - 1 >= 1) ++counts[s - 1];
            Rational sub = completion_relaxed_rec(counts, delta, memo);
            if (r - 1 >= 1) --counts[r - 1];
            if (s - 1 >= 1) --counts[s - 1];
            ++counts[r];
            ++counts[s];
            acc += Rational(Int(ways)) * sub;
        }
    }
    acc /= Rational(Int(tri(gamma)));
    return memo[counts] = acc;
}

}  // namespace detail

// Exact completion probability of the unconditional process.
inline Rational completion_prob_exact(const DegreeSequence& ds, Variant variant,
                                      size_t state_budget = size_t{1} << 22) {
    if (variant == Variant::relaxed) {
        int delta = ds.delta();
        std::vector<int> counts(delta + 1, 0);
        for (int d : ds.degrees())
            if (d > 0) ++counts[d];
        std::map<std::vector<int>, Rational> memo;
        return detail::completion_relaxed_rec(counts, delta, memo);
    }
    // standard: DP over edge-set states
    int n = ds.n();
    if (n > 11) throw std::invalid_argument("standard completion DP limited to n <= 11");
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    int np = static_cast<int>(pairs.size());
    std::unordered_map<uint64_t, Rational> memo;
    std::function<Rational(uint64_t)> rec = [&](uint64_t mask) -> Rational {
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        if (memo.size() > state_budget)
            throw std::runtime_error("standard completion DP state budget exceeded");
        std::vector<int> residual(ds.degrees().begin(), ds.degrees().end());
        for (int e = 0; e < np; ++e)
            if (mask >> e & 1) {
                --residual[pairs[e].first];
                --residual[pairs[e].second];
            }
        bool all_sat = true;
        for (int v = 0; v < n; ++v)
            if (residual[v] > 0) all_sat = false;
        if (all_sat) return memo[mask] = 1;
        std::vector<int> q;
        for (int e = 0; e < np; ++e) {
            if (mask >> e & 1) continue;
            if (residual[pairs[e].first] > 0 && residual[pairs[e].second] > 0) q.push_back(e);
        }
        if (q.empty()) return memo[mask] = 0;
        Rational acc = 0;
        for (int e : q) acc += rec(mask | (1ULL << e));
        acc /= Rational(Int(static_cast<long long>(q.size())));
        memo[mask] = acc;
        return memo[mask];
    };
    return rec(0);
}

struct SaturationTimes {
    int t_a = 0, t_b = 0, t_x = 0, t_y = 0;
};

// t_p = last step at which a point of p's vertex other than p is chosen
// (0 when the vertex has no other point). max(sigma(p), t_p) is the step at
// which the vertex saturates.
inline SaturationTimes saturation_times(const DegreeSequence& ds, const EdgeSequence& seq,
                                        int a, int b, int x, int y) {
    PointMap pm(ds);
    auto t_of = [&](int p) {
        int v = pm.vertex_of(p);
        int first = pm.first_pid(v);
        int t = 0;
        for (int c = 0; c < ds.degree(v); ++c) {
            int pid = first + c;
            if (pid == p) continue;
            int s = seq.step_of_point(pid);
            if (s == 0) throw std::invalid_argument("point not found in sequence");
            t = std::max(t, s);
        }
        if (seq.step_of_point(p) == 0) throw std::invalid_argument("point not found in sequence");
        return t;
    };
    return SaturationTimes{t_of(a), t_of(b), t_of(x), t_of(y)};
}

// Exact total variation distance between the conditioned standard process and
// the uniform law on simple graphs with degree sequence ds.
inline Rational tv_distance_exact(const DegreeSequence& ds, long long graph_budget = 2000000) {
    if (!is_graphic(ds)) throw std::invalid_argument("degree sequence is not graphic");
    long long m = ds.m();
    if (m > 24) throw std::invalid_argument("tv_distance budget exceeded (m > 24)");
    std::vector<Rational> probs;
    long long count = 0;
    for_each_simple_graph(ds, [&](const std::vector<std::pair<int, int>>& edges) {
        if (++count > graph_budget) throw std::runtime_error("tv_distance graph budget exceeded");
        probs.push_back(prob_standard(MultiGraph(ds.n(), edges), ds));
        return true;
    });
    if (probs.empty()) throw std::invalid_argument("no simple graph realizes the sequence");
    Rational completion = 0;
    for (const auto& p : probs) completion += p;
    Rational uniform(Int(1), Int(static_cast<long long>(probs.size())));
    Rational tv = 0;
    for (const auto& p : probs) tv += abs(p / completion - uniform);
    return tv / 2;
}

}  // namespace dproc
