#pragma once

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dproc/enumerate.hpp"
#include "dproc/exact.hpp"
#include "dproc/process.hpp"
#include "dproc/switching.hpp"

namespace dproc {

struct SuiteResult {
    std::string suite;
    long long checked = 0;
    long long violations = 0;
    std::vector<std::string> lines;  // JSON lines (violations and summaries)
    bool pass() const { return violations == 0 && checked > 0; }
};

namespace detail {

inline std::string anchor_json(const PointMap& pm, const SwitchAnchor& an) {
    auto pt = [&](int pid) {
        Point p = pm.point(pid);
        return std::to_string(p.vertex) + "." + std::to_string(p.copy);
    };
    return "\"" + pt(an.a) + "," + pt(an.b) + "|" + pt(an.x) + "," + pt(an.y) + "\"";
}

inline std::string degrees_json(const DegreeSequence& ds) {
    std::string s = "\"";
    for (int i = 0; i < ds.n(); ++i) s += (i ? " " : "") + std::to_string(ds.degree(i));
    return s + "\"";
}

// All unordered anchors of a complete configuration-graph: pairs of
// vertex-disjoint edges (e, f) with max deg(e) < min deg(f).
inline std::vector<SwitchAnchor> graph_anchors(const ConfigGraph& g) {
    std::vector<SwitchAnchor> out;
    const auto& pr = g.pairs();
    for (size_t i = 0; i < pr.size(); ++i) {
        auto [a, b] = pr[i];
        int da = g.point_degree(a), db = g.point_degree(b);
        for (size_t j = 0; j < pr.size(); ++j) {
            if (i == j) continue;
            auto [x, y] = pr[j];
            int dx = g.point_degree(x), dy = g.point_degree(y);
            if (std::max(da, db) >= std::min(dx, dy)) continue;
            int va = g.vertex_of(a), vb = g.vertex_of(b);
            int vx = g.vertex_of(x), vy = g.vertex_of(y);
            if (va == vx || va == vy || vb == vx || vb == vy) continue;
            // roles are forced (the small edge comes first), so each
            // unordered anchor appears exactly once
            out.push_back(SwitchAnchor{a, b, x, y, std::max(da, db)});
        }
    }
    return out;
}

inline bool anchors_possible(const std::vector<int>& degrees) {
    std::vector<int> d(degrees);
    std::sort(d.begin(), d.end());
    int n = static_cast<int>(d.size());
    return n >= 4 && d[1] < d[n - 2];
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Cluster switching sweep (Z(C+) >= Z(C-)) with Eq-style side checks
// ---------------------------------------------------------------------------

struct ClusterSweepOptions {
    int max_m = 6;
    int max_delta = 4;
    Rational zeta_val = Rational(1, 16);
    bool track_good = false;       // also evaluate good clusters
    bool emit_all = false;         // one JSON line per cluster pair
    std::function<void(const std::string&)> sink;  // receives JSON lines
};

struct ClusterSweepResult {
    long long graphs = 0;
    long long clusters = 0;
    long long violations = 0;
    long long good_clusters = 0;
    long long good_ratio_not_strict = 0;  // good clusters with Z(C+) == Z(C-)
    Rational min_ratio{-1};
    Rational min_good_ratio{-1};
    long long small_edge_drop_violations = 0;  // Eq-style X_k(G+) = X_k(G-) + 1
    long long spread_violations = 0;           // member X_k spread within 4*Delta
};

inline ClusterSweepResult sweep_cluster_switch(const ClusterSweepOptions& opt) {
    ClusterSweepResult res;
    for_each_degree_multiset(opt.max_m, opt.max_delta, [&](const std::vector<int>& degs) {
        if (!detail::anchors_possible(degs)) return;
        DegreeSequence ds(degs);
        PointMap pm(ds);
        int delta = ds.delta();
        for_each_config_graph(ds, [&](const std::vector<std::pair<int, int>>& pairs) {
            ConfigGraph g(ds, pairs);
            ++res.graphs;
            for (const auto& an : detail::graph_anchors(g)) {
                Cluster cp = enumerate_cluster(g, an, ClusterKind::upper);
                if (!(cp.members.front() == g)) continue;  // canonical representative only
                Cluster cm = switching_partner(cp);
                ++res.clusters;
                Rational zp = cluster_z(cp), zm = cluster_z(cm);
                Rational ratio = zp / zm;
                if (res.min_ratio < 0 || ratio < res.min_ratio) res.min_ratio = ratio;
                bool ok = zp >= zm;
                if (!ok) ++res.violations;
                // member-wise switching drops X_k by exactly one for every
                // k admitted by the anchor degrees
                int k_lo = an.k;
                int k_hi = std::min(g.point_degree(an.x), g.point_degree(an.y)) - 1;
                for (size_t i = 0; i < cp.members.size(); ++i) {
                    ConfigGraph sw = switch_graph(cp.members[i], an);
                    for (int k = k_lo; k <= k_hi; ++k)
                        if (small_edge_count(cp.members[i], k) != small_edge_count(sw, k) + 1)
                            ++res.small_edge_drop_violations;
                }
                // member X_k spread within C+ union C- is at most 4*Delta
                for (int k = 1; k < delta; ++k) {
                    long long lo = 1LL << 40, hi = -1;
                    for (const auto& mem : cp.members) {
                        long long v = small_edge_count(mem, k);
                        lo = std::min(lo, v);
                        hi = std::max(hi, v);
                    }
                    for (const auto& mem : cm.members) {
                        long long v = small_edge_count(mem, k);
                        lo = std::min(lo, v);
                        hi = std::max(hi, v);
                    }
                    if (hi - lo > 4LL * delta) ++res.spread_violations;
                }
                bool good = false;
                if (opt.track_good) {
                    good = is_good_cluster(cp, opt.zeta_val);
                    if (good) {
                        ++res.good_clusters;
                        if (!(zp > zm)) ++res.good_ratio_not_strict;
                        if (res.min_good_ratio < 0 || ratio < res.min_good_ratio)
                            res.min_good_ratio = ratio;
                    }
                }
                if (opt.sink && (opt.emit_all || !ok)) {
                    std::ostringstream line;
                    line << "{\"lemma\":\"cluster-switch\",\"degrees\":"
                         << detail::degrees_json(ds)
                         << ",\"anchor\":" << detail::anchor_json(pm, an)
                         << ",\"members\":" << cp.members.size() << ",\"ratio\":\""
                         << rational_string(ratio) << "\",\"pass\":" << (ok ? "true" : "false");
                    if (opt.track_good) line << ",\"good\":" << (good ? "true" : "false");
                    line << "}";
                    opt.sink(line.str());
                }
            }
            return true;
        });
    });
    return res;
}

// ---------------------------------------------------------------------------
// Random anchored instances
// ---------------------------------------------------------------------------

struct AnchoredInstance {
    DegreeSequence ds;
    ConfigGraph graph;     // in G_{ab,xy}
    SwitchAnchor anchor;
};

inline std::optional<AnchoredInstance> random_anchored_instance(Rng& rng, int target_m,
                                                                int max_delta) {
    if (max_delta < 2 || target_m < 4) return std::nullopt;
    int k = 1 + rng.below_int(max_delta - 1);
    auto rand_in = [&](int lo, int hi) { return lo + rng.below_int(hi - lo + 1); };
    std::vector<int> degs = {rand_in(1, k), rand_in(1, k), rand_in(k + 1, max_delta),
                             rand_in(k + 1, max_delta)};
    long long sum = degs[0] + degs[1] + degs[2] + degs[3];
    long long target = 2LL * target_m;
    if (sum > target) return std::nullopt;
    while (sum < target) {
        int d = rand_in(1, std::min<long long>(max_delta, target - sum));
        degs.push_back(d);
        sum += d;
    }
    DegreeSequence ds(degs);
    PointMap pm(ds);
    SwitchAnchor an{pm.pid(Point{1, 1}), pm.pid(Point{2, 1}), pm.pid(Point{3, 1}),
                    pm.pid(Point{4, 1}), k};
    // anchor edges first, then a uniform matching of the rest without
    // intra-vertex pairs (rejection)
    std::vector<int> rest;
    for (int p = 0; p < pm.total_points(); ++p)
        if (p != an.a && p != an.b && p != an.x && p != an.y) rest.push_back(p);
    for (int attempt = 0; attempt < 300; ++attempt) {
        rng.shuffle(rest);
        bool ok = true;
        for (size_t i = 0; i + 1 < rest.size(); i += 2)
            if (pm.vertex_of(rest[i]) == pm.vertex_of(rest[i + 1])) {
                ok = false;
                break;
            }
        if (!ok) continue;
        std::vector<std::pair<int, int>> pairs = {{an.a, an.b}, {an.x, an.y}};
        for (size_t i = 0; i + 1 < rest.size(); i += 2) pairs.emplace_back(rest[i], rest[i + 1]);
        return AnchoredInstance{ds, ConfigGraph(ds, pairs), an};
    }
    return std::nullopt;
}

inline EdgeSequence random_ordering(const ConfigGraph& g, Rng& rng) {
    EdgeSequence seq;
    seq.edges = g.pairs();
    rng.shuffle(seq.edges);
    return seq;
}

// ---------------------------------------------------------------------------
// Twin sweeps
// ---------------------------------------------------------------------------

struct TwinSweepResult {
    long long instances = 0;
    long long bx_twins = 0, ay_twins = 0, quadruplets = 0;
    long long z_violations = 0;        // Gamma/Z equality failures
    long long time_swap_violations = 0;  // t_b/t_x (t_a/t_y) exchange failures
    long long roundtrip_violations = 0;
    long long commute_violations = 0;
};

inline TwinSweepResult sweep_twins(long long instances, int max_m, int max_delta, uint64_t seed) {
    TwinSweepResult res;
    Rng rng(seed);
    while (res.instances < instances) {
        int m = 4 + rng.below_int(std::max(1, max_m - 3));
        auto inst = random_anchored_instance(rng, m, max_delta);
        if (!inst) continue;
        ++res.instances;
        const auto& ds = inst->ds;
        EdgeSequence seq = random_ordering(inst->graph, rng);
        auto st = saturation_times(ds, seq, inst->anchor.a, inst->anchor.b, inst->anchor.x,
                                   inst->anchor.y);
        auto check_twin = [&](const std::optional<EdgeSequence>& tw, bool is_bx) {
            if (!tw) return;
            if (is_bx)
                ++res.bx_twins;
            else
                ++res.ay_twins;
            if (gamma_profile(ds, seq) != gamma_profile(ds, *tw)) ++res.z_violations;
            else if (z_sigma(ds, seq) != z_sigma(ds, *tw)) ++res.z_violations;
            auto st2 = saturation_times(ds, *tw, inst->anchor.a, inst->anchor.b, inst->anchor.x,
                                        inst->anchor.y);
            if (is_bx) {
                if (!(st2.t_b == st.t_x && st2.t_x == st.t_b && st2.t_a == st.t_a &&
                      st2.t_y == st.t_y))
                    ++res.time_swap_violations;
                auto back = bx_twin(ds, *tw, inst->anchor);
                if (!back || !(*back == seq)) ++res.roundtrip_violations;
            } else {
                if (!(st2.t_a == st.t_y && st2.t_y == st.t_a && st2.t_b == st.t_b &&
                      st2.t_x == st.t_x))
                    ++res.time_swap_violations;
                auto back = ay_twin(ds, *tw, inst->anchor);
                if (!back || !(*back == seq)) ++res.roundtrip_violations;
            }
        };
        auto bx = bx_twin(ds, seq, inst->anchor);
        auto ay = ay_twin(ds, seq, inst->anchor);
        check_twin(bx, true);
        check_twin(ay, false);
        if (bx && ay) {
            ++res.quadruplets;
            auto p1 = ay_twin(ds, *bx, inst->anchor);
            auto p2 = bx_twin(ds, *ay, inst->anchor);
            if (!p1 || !p2 || !(*p1 == *p2)) ++res.commute_violations;
        }
    }
    return res;
}

struct TwinPartitionSweepResult {
    long long cluster_pairs = 0;
    long long violations = 0;
    long long twins_seen = 0;
};

// Exhaustive Lemma-style partition check over cluster pairs of small
// instances plus sampled anchored instances at larger m.
inline TwinPartitionSweepResult sweep_twin_partition(int exhaustive_max_m, int sampled_max_m,
                                                     long long sampled_per_m, uint64_t seed,
                                                     long long sequence_budget = 2000000) {
    TwinPartitionSweepResult res;
    auto run_pair = [&](const ConfigGraph& g, const SwitchAnchor& an) {
        Cluster cp = enumerate_cluster(g, an, ClusterKind::upper);
        if (!(cp.members.front() == g)) return;
        long long m = g.edge_count();
        Int fact = 1;
        for (long long i = 2; i <= m; ++i) fact *= i;
        if (fact * Int(2 * cp.members.size()) > sequence_budget) return;
        auto rep = verify_twin_partition(cp, sequence_budget);
        ++res.cluster_pairs;
        res.twins_seen += rep.twins_plus + rep.twins_minus;
        if (!(rep.z_sum_equal && rep.nontwin_times_ok && rep.late_xy_nontwin_ok &&
              rep.quadruplets_commute && rep.twin_z_equal &&
              rep.twins_plus == rep.twins_minus))
            ++res.violations;
    };
    for_each_degree_multiset(exhaustive_max_m, 4, [&](const std::vector<int>& degs) {
        if (!detail::anchors_possible(degs)) return;
        DegreeSequence ds(degs);
        for_each_config_graph(ds, [&](const std::vector<std::pair<int, int>>& pairs) {
            ConfigGraph g(ds, pairs);
            for (const auto& an : detail::graph_anchors(g)) run_pair(g, an);
            return true;
        });
    });
    Rng rng(seed);
    for (int m = exhaustive_max_m + 1; m <= sampled_max_m; ++m) {
        long long done = 0;
        long long attempts = 0;
        while (done < sampled_per_m && attempts < sampled_per_m * 60) {
            ++attempts;
            auto inst = random_anchored_instance(rng, m, 4);
            if (!inst) continue;
            long long before = res.cluster_pairs;
            run_pair(inst->graph, inst->anchor);
            if (res.cluster_pairs > before) ++done;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Counterpart / bar-swap and edge-sequence switching sweeps
// ---------------------------------------------------------------------------

struct CounterpartSweepResult {
    long long sequences = 0;
    long long violations = 0;
};

inline CounterpartSweepResult sweep_counterpart_properties(long long instances, int max_m,
                                                           int max_delta, uint64_t seed) {
    CounterpartSweepResult res;
    Rng rng(seed);
    while (res.sequences < instances) {
        auto inst = random_anchored_instance(rng, 4 + rng.below_int(std::max(1, max_m - 3)),
                                             max_delta);
        if (!inst) continue;
        ++res.sequences;
        const auto& ds = inst->ds;
        const auto& an = inst->anchor;
        EdgeSequence seq = random_ordering(inst->graph, rng);
        EdgeSequence cp = counterpart(seq, an);
        EdgeSequence br = bar(seq, an);
        bool ok = true;
        // involution and inverse-direction counterpart
        ok = ok && bar(br, an) == seq;
        ok = ok && counterpart(cp, an) == seq;
        // bar and counterpart commute
        ok = ok && bar(cp, an) == counterpart(br, an);
        // saturation times agree across sigma, sigma', bar sigma, bar sigma'
        auto t0 = saturation_times(ds, seq, an.a, an.b, an.x, an.y);
        for (const auto& s : {cp, br, bar(cp, an)}) {
            auto t1 = saturation_times(ds, s, an.a, an.b, an.x, an.y);
            ok = ok && t0.t_a == t1.t_a && t0.t_b == t1.t_b && t0.t_x == t1.t_x &&
                 t0.t_y == t1.t_y;
        }
        ok = ok && family_of(cp, an) == Family::lower && family_of(br, an) == Family::upper;
        if (!ok) ++res.violations;
    }
    return res;
}

struct CompleteSwitchSweepResult {
    long long pairs = 0;
    long long applicable = 0;    // precondition t_a <= t_y, t_b <= t_x
    long long part_i_violations = 0;
    long long gap_pairs = 0;
    long long part_ii_violations = 0;
};

// Exhaustive over all orderings of all graphs/anchors of tiny instances,
// then sampled orderings on random larger instances.
inline CompleteSwitchSweepResult sweep_completeswitch(int exhaustive_max_m, int sampled_max_m,
                                                      long long sampled_count,
                                                      const Rational& zeta_val, uint64_t seed) {
    CompleteSwitchSweepResult res;
    auto check_sequence = [&](const DegreeSequence& ds, const EdgeSequence& seq,
                              const SwitchAnchor& an) {
        ++res.pairs;
        auto st = saturation_times(ds, seq, an.a, an.b, an.x, an.y);
        if (!(st.t_a <= st.t_y && st.t_b <= st.t_x)) return;
        ++res.applicable;
        auto rep = verify_completeswitch(ds, seq, an, zeta_val);
        if (!rep.part_i) ++res.part_i_violations;
        if (rep.gap_applies) {
            ++res.gap_pairs;
            if (!rep.part_ii) ++res.part_ii_violations;
        }
    };
    for_each_degree_multiset(exhaustive_max_m, 4, [&](const std::vector<int>& degs) {
        if (!detail::anchors_possible(degs)) return;
        DegreeSequence ds(degs);
        for_each_config_graph(ds, [&](const std::vector<std::pair<int, int>>& pairs) {
            ConfigGraph g(ds, pairs);
            auto anchors = detail::graph_anchors(g);
            if (anchors.empty()) return true;
            std::vector<int> idx(pairs.size());
            for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
            std::sort(idx.begin(), idx.end());
            do {
                EdgeSequence seq;
                for (int i : idx) seq.edges.push_back(pairs[i]);
                for (const auto& an : anchors) check_sequence(ds, seq, an);
            } while (std::next_permutation(idx.begin(), idx.end()));
            return true;
        });
    });
    Rng rng(seed);
    long long sampled = 0;
    while (sampled < sampled_count) {
        int m = exhaustive_max_m + 1 + rng.below_int(std::max(1, sampled_max_m - exhaustive_max_m));
        auto inst = random_anchored_instance(rng, m, 4);
        if (!inst) continue;
        ++sampled;
        check_sequence(inst->ds, random_ordering(inst->graph, rng), inst->anchor);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Theta injection sweep
// ---------------------------------------------------------------------------

struct ThetaSweepResult {
    long long triples = 0;
    long long violations = 0;
};

inline ThetaSweepResult sweep_theta_injection(int max_len) {
    ThetaSweepResult res;
    for (int d_lo = 1; d_lo <= max_len; ++d_lo)
        for (int d_hi = d_lo + 1; d_lo + d_hi <= max_len; ++d_hi)
            for (int t = d_hi; t < d_lo + d_hi; ++t) {
                ++res.triples;
                auto t1 = enumerate_theta1(t, d_lo, d_hi);
                auto t2 = enumerate_theta2(t, d_lo, d_hi);
                bool ok = Int(t1.size()) == theta1_count(t, d_lo, d_hi) &&
                          Int(t2.size()) == theta2_count(t, d_lo, d_hi) &&
                          t1.size() <= t2.size();
                std::set<std::vector<uint8_t>> images;
                for (const auto& s1 : t1) {
                    if (!is_theta1(s1, d_lo, d_hi)) ok = false;
                    ThetaSequence s2 = theta_injection(s1, d_lo, d_hi);
                    if (!is_theta2(s2, d_lo, d_hi)) ok = false;
                    if (!images.insert(s2.word).second) ok = false;  // injectivity
                    auto inv = theta_injection_inverse(s2, d_lo, d_hi);
                    if (!inv || inv->word != s1.word) ok = false;
                }
                if (!ok) ++res.violations;
            }
    return res;
}

// ---------------------------------------------------------------------------
// Relaxed-process normalization (exact, two independent routes)
// ---------------------------------------------------------------------------

struct NormalizationSweepResult {
    long long sequences = 0;
    long long graphs = 0;
    long long violations = 0;
    long long trajectory_checks = 0;
};

// For every degree multiset with m <= max_m, Delta <= max_delta:
//   sum_G Z(G)/prod d_j!  ==  P(relaxed completes)   (residual DP route)
// and on a few graphs per sequence, the trajectory-sum oracle equals
// Z(G)/prod d_j! and conditioned probabilities are proportional to Z(G).
inline NormalizationSweepResult sweep_relaxed_normalization(int max_m, int max_delta,
                                                            int oracle_graphs_per_seq = 2,
                                                            int oracle_max_m = 4) {
    NormalizationSweepResult res;
    for_each_degree_multiset(max_m, max_delta, [&](const std::vector<int>& degs) {
        DegreeSequence ds(degs);
        ++res.sequences;
        Int dfact = 1;
        for (int d : degs)
            for (int i = 2; i <= d; ++i) dfact *= i;
        Rational z_total = 0;
        long long count = 0;
        int oracle_left = oracle_graphs_per_seq;
        for_each_config_graph(ds, [&](const std::vector<std::pair<int, int>>& pairs) {
            ConfigGraph g(ds, pairs);
            ++count;
            Rational z = z_graph(g);
            z_total += z;
            if (oracle_left > 0 && ds.m() <= oracle_max_m) {
                --oracle_left;
                ++res.trajectory_checks;
                // trajectory-sum oracle: sum over all orderings of the
                // stepwise process probability
                Rational p_oracle = 0;
                std::vector<int> idx(pairs.size());
                for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
                do {
                    EdgeSequence seq;
                    for (int i : idx) seq.edges.push_back(pairs[i]);
                    p_oracle += relaxed_trajectory_prob(ds, seq);
                } while (std::next_permutation(idx.begin(), idx.end()));
                if (p_oracle * Rational(dfact) != z) ++res.violations;
            }
            return true;
        });
        res.graphs += count;
        Rational completion = completion_prob_exact(ds, Variant::relaxed);
        if (z_total != completion * Rational(dfact)) ++res.violations;
    });
    return res;
}

// ---------------------------------------------------------------------------
// Counting sweeps (U_G, L_G)
// ---------------------------------------------------------------------------

struct CountingSweepResult {
    long long instances = 0;
    long long violations = 0;
};

inline long long brute_force_upper_count(const ConfigGraph& g, int k) {
    // ordered anchors (ab, xy): ordered point pairs of a small edge and an
    // ordered large edge, all four vertices distinct
    long long count = 0;
    const auto& pr = g.pairs();
    for (size_t i = 0; i < pr.size(); ++i) {
        auto [p, q] = pr[i];
        if (classify_degrees(g.point_degree(p), g.point_degree(q), k) != EdgeClass::small)
            continue;
        for (size_t j = 0; j < pr.size(); ++j) {
            if (i == j) continue;
            auto [r, s] = pr[j];
            if (classify_degrees(g.point_degree(r), g.point_degree(s), k) != EdgeClass::large)
                continue;
            count += 4;  // (pq|rs), (pq|sr), (qp|rs), (qp|sr)
        }
    }
    return count;
}

inline long long brute_force_lower_count(const ConfigGraph& g, int k) {
    // ordered pairs (ax, by) of mixed edges on four distinct vertices with
    // deg(a) <= k < deg(x) and deg(b) <= k < deg(y)
    long long count = 0;
    const auto& pr = g.pairs();
    for (size_t i = 0; i < pr.size(); ++i) {
        for (size_t j = 0; j < pr.size(); ++j) {
            if (i == j) continue;
            auto [p, q] = pr[i];
            auto [r, s] = pr[j];
            if (classify_degrees(g.point_degree(p), g.point_degree(q), k) != EdgeClass::mixed)
                continue;
            if (classify_degrees(g.point_degree(r), g.point_degree(s), k) != EdgeClass::mixed)
                continue;
            int vs[4] = {g.vertex_of(p), g.vertex_of(q), g.vertex_of(r), g.vertex_of(s)};
            bool distinct = true;
            for (int u = 0; u < 4; ++u)
                for (int v = u + 1; v < 4; ++v)
                    if (vs[u] == vs[v]) distinct = false;
            if (distinct) ++count;
        }
    }
    // ordered (i,j) pairs count each unordered pair twice, which is exactly
    // the convention's factor of two
    return count;
}

inline CountingSweepResult sweep_counting(long long instances, int max_m, int max_delta,
                                          uint64_t seed) {
    CountingSweepResult res;
    Rng rng(seed);
    while (res.instances < instances) {
        auto inst = random_anchored_instance(rng, 4 + rng.below_int(std::max(1, max_m - 3)),
                                             max_delta);
        if (!inst) continue;
        ++res.instances;
        const ConfigGraph& g = inst->graph;
        int delta = inst->ds.delta();
        for (int k = 1; k < delta; ++k) {
            if (count_upper(g, k) != brute_force_upper_count(g, k)) ++res.violations;
            if (count_lower(g, k) != brute_force_lower_count(g, k)) ++res.violations;
            // bracketing of L_G via the mixed-edge count
            long long mixed = inst->ds.small_point_count(k) - 2 * small_edge_count(g, k);
            long long upper = mixed * (mixed - 1) / 2;
            long long lower = upper - mixed * 2 * delta;
            long long lg = count_lower(g, k) / 2;
            if (lg > upper || lg < lower) ++res.violations;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Desk-scale cluster-count comparison and good-choice density on sampled
// configuration-graphs near mu
// ---------------------------------------------------------------------------

// Sample a complete configuration-graph (no loops, multi-edges fine) with
// X_k within gamma*mu of mu.
inline std::optional<ConfigGraph> sample_near_mu(const DegreeSequence& ds, int k, double gamma,
                                                 Rng& rng, int max_tries = 20000) {
    double mu_d = to_double(mu(ds, k));
    for (int i = 0; i < max_tries; ++i) {
        RawPairing raw = sample_config_model(ds, rng);
        PointMap pm(ds);
        bool loopless = true;
        for (auto [p, q] : raw.pairs)
            if (pm.vertex_of(p) == pm.vertex_of(q)) {
                loopless = false;
                break;
            }
        if (!loopless) continue;
        ConfigGraph g(ds, raw.pairs);
        double xk = static_cast<double>(small_edge_count(g, k));
        if (std::fabs(xk - mu_d) <= gamma * mu_d) return g;
    }
    return std::nullopt;
}

struct ClusterCountSweepResult {
    long long samples = 0;
    long long bracket_violations = 0;  // L_G outside its combinatorial bracket
    double max_ratio_deviation = 0;    // max |L_G/U_H - 1| over sampled pairs
};

inline ClusterCountSweepResult sweep_cluster_counts(const DegreeSequence& ds, int k, double gamma,
                                                    int samples, uint64_t seed) {
    ClusterCountSweepResult res;
    Rng rng(seed);
    long long min_l = -1, max_l = -1, min_u = -1, max_u = -1;
    int delta = ds.delta();
    for (int i = 0; i < samples; ++i) {
        auto g = sample_near_mu(ds, k, gamma, rng);
        if (!g) continue;
        ++res.samples;
        long long lg = count_lower(*g, k), ug = count_upper(*g, k);
        long long mixed = ds.small_point_count(k) - 2 * small_edge_count(*g, k);
        long long upper = mixed * (mixed - 1) / 2;
        long long lower = upper - mixed * 2 * delta;
        if (lg / 2 > upper || lg / 2 < lower) ++res.bracket_violations;
        if (min_l < 0 || lg < min_l) min_l = lg;
        if (lg > max_l) max_l = lg;
        if (min_u < 0 || ug < min_u) min_u = ug;
        if (ug > max_u) max_u = ug;
    }
    if (res.samples > 0 && min_u > 0) {
        double hi = static_cast<double>(max_l) / min_u;
        double lo = static_cast<double>(min_l) / max_u;
        res.max_ratio_deviation = std::max(std::fabs(hi - 1.0), std::fabs(lo - 1.0));
    }
    return res;
}

struct GoodChoiceSweepResult {
    long long sequences = 0;
    long long violations = 0;  // good fraction below one half
    double min_fraction = 1.0;
};

// For sampled G near mu and random orderings sigma, good (ab, xy) choices
// among (small, large) edge pairs stay at least one half.
inline GoodChoiceSweepResult sweep_good_choices(const DegreeSequence& ds, int k,
                                                const Rational& zeta_val, double gamma,
                                                int graphs, int orderings_per_graph,
                                                uint64_t seed) {
    GoodChoiceSweepResult res;
    Rng rng(seed);
    PointMap pm(ds);
    for (int gi = 0; gi < graphs; ++gi) {
        auto g = sample_near_mu(ds, k, gamma, rng);
        if (!g) continue;
        long long m = g->edge_count();
        long long threshold = good_step_threshold(m, zeta_val);
        // vertex adjacency for condition (i)
        std::vector<std::set<int>> adj(ds.n());
        std::vector<std::pair<int, int>> small_edges, large_edges;
        for (auto [p, q] : g->pairs()) {
            int u = g->vertex_of(p), v = g->vertex_of(q);
            adj[u].insert(v);
            adj[v].insert(u);
            EdgeClass c = classify_degrees(ds.degree(u), ds.degree(v), k);
            if (c == EdgeClass::small) small_edges.emplace_back(u, v);
            if (c == EdgeClass::large) large_edges.emplace_back(u, v);
        }
        for (int s = 0; s < orderings_per_graph; ++s) {
            EdgeSequence seq = random_ordering(*g, rng);
            ++res.sequences;
            std::vector<long long> sat_step(ds.n(), 0);
            for (size_t i = 0; i < seq.edges.size(); ++i) {
                long long step = static_cast<long long>(i) + 1;
                sat_step[pm.vertex_of(seq.edges[i].first)] = step;
                sat_step[pm.vertex_of(seq.edges[i].second)] = step;
            }
            long long total = 0, good = 0;
            for (auto [a, b] : small_edges) {
                bool early = sat_step[a] <= threshold && sat_step[b] <= threshold;
                for (auto [x, y] : large_edges) {
                    ++total;
                    if (!early) continue;
                    if (adj[a].count(x) || adj[a].count(y) || adj[b].count(x) ||
                        adj[b].count(y))
                        continue;
                    ++good;
                }
            }
            if (total == 0) continue;
            double frac = static_cast<double>(good) / total;
            res.min_fraction = std::min(res.min_fraction, frac);
            if (2 * good < total) ++res.violations;
        }
    }
    return res;
}

}  // namespace dproc
