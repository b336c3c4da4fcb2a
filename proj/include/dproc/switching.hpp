#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "dproc/config_graph.hpp"
#include "dproc/exact.hpp"

namespace dproc {

// Anchor points a,b,x,y (pids) with cut degree k: deg(A),deg(B) <= k and
// deg(X),deg(Y) > k, all four vertices distinct.
struct SwitchAnchor {
    int a = 0, b = 0, x = 0, y = 0;
    int k = 1;
};

inline void validate_anchor(const DegreeSequence& ds, const PointMap& pm,
                            const SwitchAnchor& an) {
    int va = pm.vertex_of(an.a), vb = pm.vertex_of(an.b);
    int vx = pm.vertex_of(an.x), vy = pm.vertex_of(an.y);
    if (va == vb || vx == vy || va == vx || va == vy || vb == vx || vb == vy)
        throw std::invalid_argument("anchor vertices must be distinct");
    if (an.k < 1 || an.k >= ds.delta()) throw std::invalid_argument("anchor k out of range");
    if (ds.degree(va) > an.k || ds.degree(vb) > an.k)
        throw std::invalid_argument("deg(A), deg(B) must be <= k");
    if (ds.degree(vx) <= an.k || ds.degree(vy) <= an.k)
        throw std::invalid_argument("deg(X), deg(Y) must be > k");
}

enum class Family { upper, lower };

inline bool has_pair(const ConfigGraph& g, int p, int q) {
    return g.partner(p) == q;
}

inline Family family_of(const ConfigGraph& g, const SwitchAnchor& an) {
    if (has_pair(g, an.a, an.b) && has_pair(g, an.x, an.y)) return Family::upper;
    if (has_pair(g, an.a, an.x) && has_pair(g, an.b, an.y)) return Family::lower;
    throw std::invalid_argument("anchor edges absent from graph");
}

inline Family family_of(const EdgeSequence& seq, const SwitchAnchor& an) {
    auto has = [&](int p, int q) { return seq.contains_edge({p, q}); };
    if (has(an.a, an.b) && has(an.x, an.y)) return Family::upper;
    if (has(an.a, an.x) && has(an.b, an.y)) return Family::lower;
    throw std::invalid_argument("anchor edges absent from sequence");
}

namespace detail {

inline std::vector<std::pair<int, int>> replace_anchor_pairs(
    const std::vector<std::pair<int, int>>& pairs, std::pair<int, int> out1,
    std::pair<int, int> out2, std::pair<int, int> in1, std::pair<int, int> in2) {
    auto norm = [](std::pair<int, int> e) {
        return std::make_pair(std::min(e.first, e.second), std::max(e.first, e.second));
    };
    std::vector<std::pair<int, int>> next;
    next.reserve(pairs.size());
    bool f1 = false, f2 = false;
    for (auto e : pairs) {
        if (!f1 && e == norm(out1)) {
            f1 = true;
            continue;
        }
        if (!f2 && e == norm(out2)) {
            f2 = true;
            continue;
        }
        next.push_back(e);
    }
    if (!f1 || !f2) throw std::invalid_argument("anchor edges absent from graph");
    next.push_back(norm(in1));
    next.push_back(norm(in2));
    return next;
}

}  // namespace detail

// The switching operation: replace ab, xy with ax, by.
inline ConfigGraph switch_graph(const ConfigGraph& g, const SwitchAnchor& an) {
    validate_anchor(g.degree_sequence(), g.points(), an);
    auto pairs = detail::replace_anchor_pairs(g.pairs(), {an.a, an.b}, {an.x, an.y},
                                              {an.a, an.x}, {an.b, an.y});
    return ConfigGraph(g.degree_sequence(), std::move(pairs));
}

// Inverse replacement: ax, by back to ab, xy.
inline ConfigGraph switch_back(const ConfigGraph& g, const SwitchAnchor& an) {
    validate_anchor(g.degree_sequence(), g.points(), an);
    auto pairs = detail::replace_anchor_pairs(g.pairs(), {an.a, an.x}, {an.b, an.y},
                                              {an.a, an.b}, {an.x, an.y});
    return ConfigGraph(g.degree_sequence(), std::move(pairs));
}

enum class ClusterKind { upper, lower };

struct Cluster {
    ClusterKind kind = ClusterKind::upper;
    SwitchAnchor anchor;
    std::vector<ConfigGraph> members;  // sorted by pair lists
};

// The full equivalence class of G under the cluster relation: external edges
// and the external neighbor point set stay fixed, everything incident to
// A,B,X,Y except the anchor edges is rewired in all possible ways.
inline Cluster enumerate_cluster(const ConfigGraph& g, const SwitchAnchor& an, ClusterKind kind,
                                 size_t member_budget = 200000) {
    const auto& ds = g.degree_sequence();
    const auto& pm = g.points();
    validate_anchor(ds, pm, an);
    Family fam = family_of(g, an);
    if ((kind == ClusterKind::upper) != (fam == Family::upper))
        throw std::invalid_argument("graph does not carry the anchor edges of this kind");
    if (!g.complete()) throw std::invalid_argument("cluster enumeration needs a complete graph");

    std::set<int> abxy_vertices = {pm.vertex_of(an.a), pm.vertex_of(an.b), pm.vertex_of(an.x),
                                   pm.vertex_of(an.y)};
    auto internal = [&](int pid) { return abxy_vertices.count(pm.vertex_of(pid)) > 0; };

    std::vector<std::pair<int, int>> fixed;   // edges not incident to A,B,X,Y
    std::vector<int> ext_neighbors;           // external points matched into A,B,X,Y
    for (auto [p, q] : g.pairs()) {
        bool ip = internal(p), iq = internal(q);
        if (!ip && !iq) {
            fixed.emplace_back(p, q);
        } else if (ip != iq) {
            ext_neighbors.push_back(ip ? q : p);
        }
    }
    std::sort(ext_neighbors.begin(), ext_neighbors.end());

    std::pair<int, int> anchor1, anchor2;
    if (kind == ClusterKind::upper) {
        anchor1 = {an.a, an.b};
        anchor2 = {an.x, an.y};
    } else {
        anchor1 = {an.a, an.x};
        anchor2 = {an.b, an.y};
    }

    std::vector<int> free_pts;  // points of A,B,X,Y other than a,b,x,y
    for (int v : abxy_vertices)
        for (int c = 0; c < ds.degree(v); ++c) {
            int pid = pm.first_pid(v) + c;
            if (pid != an.a && pid != an.b && pid != an.x && pid != an.y) free_pts.push_back(pid);
        }

    Cluster cluster;
    cluster.kind = kind;
    cluster.anchor = an;

    std::vector<bool> used(free_pts.size(), false);
    std::vector<std::pair<int, int>> rewired;
    auto emit = [&]() {
        if (cluster.members.size() >= member_budget)
            throw std::runtime_error("cluster member budget exceeded");
        std::vector<std::pair<int, int>> all = fixed;
        all.push_back(anchor1);
        all.push_back(anchor2);
        all.insert(all.end(), rewired.begin(), rewired.end());
        cluster.members.emplace_back(ds, std::move(all));
    };
    // leftover internal points pair up across distinct vertices
    std::function<void()> pair_leftover = [&]() {
        size_t i = 0;
        while (i < free_pts.size() && used[i]) ++i;
        if (i == free_pts.size()) {
            emit();
            return;
        }
        used[i] = true;
        for (size_t j = i + 1; j < free_pts.size(); ++j) {
            if (used[j] || pm.vertex_of(free_pts[j]) == pm.vertex_of(free_pts[i])) continue;
            used[j] = true;
            rewired.emplace_back(free_pts[i], free_pts[j]);
            pair_leftover();
            rewired.pop_back();
            used[j] = false;
        }
        used[i] = false;
    };
    // each external neighbor point matches some free internal point
    std::function<void(size_t)> assign_ext = [&](size_t idx) {
        if (idx == ext_neighbors.size()) {
            pair_leftover();
            return;
        }
        for (size_t j = 0; j < free_pts.size(); ++j) {
            if (used[j]) continue;
            used[j] = true;
            rewired.emplace_back(ext_neighbors[idx], free_pts[j]);
            assign_ext(idx + 1);
            rewired.pop_back();
            used[j] = false;
        }
    };
    assign_ext(0);
    std::sort(cluster.members.begin(), cluster.members.end());
    return cluster;
}

// Member-wise anchor replacement; a bijection between switching partners.
inline Cluster switching_partner(const Cluster& c) {
    Cluster out;
    out.kind = c.kind == ClusterKind::upper ? ClusterKind::lower : ClusterKind::upper;
    out.anchor = c.anchor;
    out.members.reserve(c.members.size());
    for (const auto& g : c.members)
        out.members.push_back(c.kind == ClusterKind::upper ? switch_graph(g, c.anchor)
                                                           : switch_back(g, c.anchor));
    std::sort(out.members.begin(), out.members.end());
    return out;
}

inline Rational cluster_z(const Cluster& c) {
    Rational z = 0;
    for (const auto& g : c.members) z += z_graph(g);
    return z;
}

// U_G: number of upper clusters containing G under the ordered-anchor
// convention, via the closed form 4 * ell * (ell + m - sum_{j<=k} j n_j).
inline long long count_upper(const ConfigGraph& g, int k) {
    if (!g.complete()) throw std::invalid_argument("count_upper needs a complete graph");
    long long ell = small_edge_count(g, k);
    long long m = g.edge_count();
    long long small_pts = g.degree_sequence().small_point_count(k);
    return 4 * ell * (ell + m - small_pts);
}

// L_G: twice the number of vertex-disjoint pairs of mixed edges, counted
// directly.
inline long long count_lower(const ConfigGraph& g, int k) {
    if (!g.complete()) throw std::invalid_argument("count_lower needs a complete graph");
    std::vector<std::pair<int, int>> mixed;  // vertex pairs of mixed edges
    for (auto [p, q] : g.pairs()) {
        int dp = g.point_degree(p), dq = g.point_degree(q);
        if (classify_degrees(dp, dq, k) == EdgeClass::mixed)
            mixed.emplace_back(g.vertex_of(p), g.vertex_of(q));
    }
    long long pairs = 0;
    for (size_t i = 0; i < mixed.size(); ++i)
        for (size_t j = i + 1; j < mixed.size(); ++j) {
            auto [a, b] = mixed[i];
            auto [c, d] = mixed[j];
            if (a != c && a != d && b != c && b != d) ++pairs;
        }
    return 2 * pairs;
}

inline Rational zeta(const Rational& xi, int delta) {
    if (xi <= 0 || xi >= 1) throw std::invalid_argument("xi must lie in (0,1)");
    if (delta < 1) throw std::invalid_argument("delta must be positive");
    Int d3 = Int(delta) * delta * delta;
    return xi * xi / Rational(16 * d3);
}

// floor((1 - zeta) m): the last step by which A and B must saturate.
inline long long good_step_threshold(long long m, const Rational& z) {
    Rational t = (Rational(1) - z) * m;
    Int fl = boost::multiprecision::numerator(t) / boost::multiprecision::denominator(t);
    return fl.convert_to<long long>();
}

// Good edge-sequence: (i) no A,B point adjacent to any X,Y point in the
// graph, (ii) A and B both saturated within the first floor((1-zeta)m) steps.
inline bool is_good_sequence(const DegreeSequence& ds, const EdgeSequence& seq,
                             const SwitchAnchor& an, const Rational& zeta_val) {
    PointMap pm(ds);
    validate_anchor(ds, pm, an);
    int va = pm.vertex_of(an.a), vb = pm.vertex_of(an.b);
    int vx = pm.vertex_of(an.x), vy = pm.vertex_of(an.y);
    long long m = seq.size();
    long long threshold = good_step_threshold(m, zeta_val);
    long long sat_a = 0, sat_b = 0;
    for (size_t i = 0; i < seq.edges.size(); ++i) {
        auto [p, q] = seq.edges[i];
        int u = pm.vertex_of(p), v = pm.vertex_of(q);
        bool u_ab = u == va || u == vb, v_ab = v == va || v == vb;
        bool u_xy = u == vx || u == vy, v_xy = v == vx || v == vy;
        if ((u_ab && v_xy) || (u_xy && v_ab)) return false;  // condition (i)
        long long step = static_cast<long long>(i) + 1;
        if (u == va || v == va) sat_a = std::max(sat_a, step);
        if (u == vb || v == vb) sat_b = std::max(sat_b, step);
    }
    return sat_a <= threshold && sat_b <= threshold;
}

namespace detail {

// Z-mass restricted to orderings whose A,B-incident edges all appear within
// the first `threshold` steps (that is exactly the good condition (ii)).
template <class I>
inline I z_good_subset_dp(const Incidence& x, const std::vector<I>& factor, uint64_t ab_edges,
                          long long threshold) {
    size_t sz = size_t{1} << x.m;
    auto gamma = gamma_table(x);
    std::vector<I> w(sz);
    w[0] = 1;
    for (size_t mask = 1; mask < sz; ++mask) {
        I acc = 0;
        int step = std::popcount(static_cast<uint64_t>(mask));  // this edge lands at `step`
        uint64_t rest = mask;
        while (rest) {
            uint64_t bit = rest & (0 - rest);
            rest ^= bit;
            if ((bit & ab_edges) && step > threshold) continue;
            size_t prev = mask ^ bit;
            int g = gamma[prev];
            if (g < 2) throw std::domain_error("Gamma < 2 inside subset DP");
            acc += w[prev] * factor[g];
        }
        w[mask] = acc;
    }
    return w[sz - 1];
}

struct ScaledZ {
    Int l;                       // per-instance scale
    std::vector<Int> factor;     // factor[g] = l / tri(g)
    int gamma0 = 0;

    explicit ScaledZ(const DegreeSequence& ds) {
        gamma0 = unsaturated_at_start(ds);
        l = z_scale(gamma0);
        factor.assign(gamma0 + 1, 0);
        for (int g = 2; g <= gamma0; ++g) factor[g] = l / tri(g);
    }

    Int z_of_graph(const ConfigGraph& g) const {
        std::vector<std::pair<int, int>> ve;
        ve.reserve(g.pairs().size());
        for (auto [p, q] : g.pairs()) ve.emplace_back(g.vertex_of(p), g.vertex_of(q));
        auto x = build_incidence(g.degree_sequence(), ve);
        return z_subset_dp(x, factor);
    }

    Int z_of_sequence(const DegreeSequence& ds, const EdgeSequence& seq) const {
        auto gamma = gamma_profile(ds, seq);
        return z_sigma_scaled(gamma, factor);
    }

    // Z-mass of good-(ii) orderings of g w.r.t. the anchor's A,B vertices.
    Int z_good_of_graph(const ConfigGraph& g, const SwitchAnchor& an, long long threshold) const {
        const auto& pm = g.points();
        int va = pm.vertex_of(an.a), vb = pm.vertex_of(an.b);
        std::vector<std::pair<int, int>> ve;
        ve.reserve(g.pairs().size());
        uint64_t ab_edges = 0;
        int e = 0;
        for (auto [p, q] : g.pairs()) {
            int u = g.vertex_of(p), v = g.vertex_of(q);
            ve.emplace_back(u, v);
            if (u == va || u == vb || v == va || v == vb) ab_edges |= 1ULL << e;
            ++e;
        }
        auto x = build_incidence(g.degree_sequence(), ve);
        return z_good_subset_dp(x, factor, ab_edges, threshold);
    }

    Rational to_rational(const Int& v, int m) const {
        Int denom = 1;
        for (int i = 0; i < m; ++i) denom *= l;
        return Rational(v, denom);
    }
};

// Graph-level good condition (i): no edge joins {A,B} and {X,Y}.
inline bool no_ab_xy_adjacency(const ConfigGraph& g, const SwitchAnchor& an) {
    const auto& pm = g.points();
    int va = pm.vertex_of(an.a), vb = pm.vertex_of(an.b);
    int vx = pm.vertex_of(an.x), vy = pm.vertex_of(an.y);
    for (auto [p, q] : g.pairs()) {
        int u = g.vertex_of(p), v = g.vertex_of(q);
        bool u_ab = u == va || u == vb, v_ab = v == va || v == vb;
        bool u_xy = u == vx || u == vy, v_xy = v == vx || v == vy;
        if ((u_ab && v_xy) || (u_xy && v_ab)) return false;
    }
    return true;
}

}  // namespace detail

// Good upper cluster: good edge-sequences carry at least a quarter of Z(C+).
inline bool is_good_cluster(const Cluster& c, const Rational& zeta_val) {
    if (c.kind != ClusterKind::upper) throw std::invalid_argument("good clusters are upper");
    if (c.members.empty()) throw std::invalid_argument("empty cluster");
    const auto& ds = c.members.front().degree_sequence();
    long long m = c.members.front().edge_count();
    long long threshold = good_step_threshold(m, zeta_val);
    detail::ScaledZ scale(ds);
    Int total = 0, good = 0;
    for (const auto& g : c.members) {
        total += scale.z_of_graph(g);
        if (detail::no_ab_xy_adjacency(g, c.anchor))
            good += scale.z_good_of_graph(g, c.anchor, threshold);
    }
    return 4 * good >= total;
}

struct ClusterSwitchReport {
    Rational z_plus, z_minus, ratio;
    bool pass = false;
    bool good = false;
};

// Lemma-style comparison of a cluster pair: Z(C+) vs Z(C-).
inline ClusterSwitchReport verify_cluster_switch(const Cluster& c_plus,
                                                 const Rational& zeta_val = Rational(1, 16)) {
    if (c_plus.kind != ClusterKind::upper)
        throw std::invalid_argument("verify_cluster_switch expects an upper cluster");
    Cluster c_minus = switching_partner(c_plus);
    ClusterSwitchReport rep;
    rep.z_plus = cluster_z(c_plus);
    rep.z_minus = cluster_z(c_minus);
    rep.ratio = rep.z_plus / rep.z_minus;
    rep.pass = rep.z_plus >= rep.z_minus;
    rep.good = is_good_cluster(c_plus, zeta_val);
    return rep;
}

// ---------------------------------------------------------------------------
// Theta words and the canonical injection
// ---------------------------------------------------------------------------

// Word over {lo, hi} stored as bits (0 = lo = B/A letter, 1 = hi = X/Y
// letter), with the distinguished position t (1-based).
struct ThetaSequence {
    std::vector<uint8_t> word;
    int t = 0;
};

namespace detail {

inline Int comb_rank(const std::vector<uint8_t>& bits, int ones) {
    Int r = 0;
    int need = ones;
    int len = static_cast<int>(bits.size());
    for (int i = 0; i < len && need > 0; ++i) {
        if (bits[i]) {
            r += binomial(len - i - 1, need);
            --need;
        }
    }
    return r;
}

inline std::vector<uint8_t> comb_unrank(Int r, int len, int ones) {
    std::vector<uint8_t> bits(len, 0);
    int need = ones;
    for (int i = 0; i < len; ++i) {
        if (need == 0) break;
        Int zero_count = binomial(len - i - 1, need);
        if (r < zero_count) {
            bits[i] = 0;
        } else {
            bits[i] = 1;
            r -= zero_count;
            --need;
        }
    }
    return bits;
}

}  // namespace detail

inline void check_theta_params(int t, int d_lo, int d_hi) {
    if (!(0 < d_lo && d_lo < d_hi && d_hi <= t && t < d_hi + d_lo))
        throw std::invalid_argument("theta parameters must satisfy 0 < d_b < d_x <= t < d_x + d_b");
}

inline bool is_theta1(const ThetaSequence& s, int d_lo, int d_hi) {
    int len = d_lo + d_hi;
    if (static_cast<int>(s.word.size()) != len || s.t < 1 || s.t > len) return false;
    int ones = 0;
    for (uint8_t b : s.word) ones += b;
    if (ones != d_hi) return false;
    if (s.word[len - 1] != 0) return false;          // last char is lo
    if (s.word[s.t - 1] != 1) return false;          // t-th char is hi
    for (int i = s.t; i < len; ++i)
        if (s.word[i] != 0) return false;            // all after t are lo
    return true;
}

inline bool is_theta2(const ThetaSequence& s, int d_lo, int d_hi) {
    int len = d_lo + d_hi;
    if (static_cast<int>(s.word.size()) != len || s.t < 1 || s.t > len) return false;
    int ones = 0;
    for (uint8_t b : s.word) ones += b;
    if (ones != d_hi) return false;
    if (s.word[len - 1] != 1) return false;          // last char is hi
    if (s.word[s.t - 1] != 0) return false;          // t-th char is lo
    for (int i = s.t; i < len; ++i)
        if (s.word[i] != 1) return false;            // all after t are hi
    return true;
}

inline Int theta1_count(int t, int d_lo, int d_hi) {
    check_theta_params(t, d_lo, d_hi);
    return binomial(t - 1, d_hi - 1);
}

inline Int theta2_count(int t, int d_lo, int d_hi) {
    check_theta_params(t, d_lo, d_hi);
    return binomial(t - 1, d_lo - 1);
}

// Canonical injection Theta1 -> Theta2: both sets enumerated in lexicographic
// order (lo < hi) and matched by rank.
inline ThetaSequence theta_injection(const ThetaSequence& s1, int d_lo, int d_hi) {
    check_theta_params(s1.t, d_lo, d_hi);
    if (!is_theta1(s1, d_lo, d_hi)) throw std::invalid_argument("word not in Theta1");
    int len = d_lo + d_hi;
    std::vector<uint8_t> prefix(s1.word.begin(), s1.word.begin() + s1.t - 1);
    Int rank = detail::comb_rank(prefix, d_hi - 1);
    // Theta2 word: prefix with t - d_lo his, then lo at t, his afterwards.
    auto prefix2 = detail::comb_unrank(rank, s1.t - 1, s1.t - d_lo);
    ThetaSequence s2;
    s2.t = s1.t;
    s2.word = prefix2;
    s2.word.push_back(0);
    s2.word.resize(len, 1);
    return s2;
}

// Inverse of the canonical injection on its image; nullopt outside the image.
inline std::optional<ThetaSequence> theta_injection_inverse(const ThetaSequence& s2, int d_lo,
                                                            int d_hi) {
    check_theta_params(s2.t, d_lo, d_hi);
    if (!is_theta2(s2, d_lo, d_hi)) throw std::invalid_argument("word not in Theta2");
    std::vector<uint8_t> prefix(s2.word.begin(), s2.word.begin() + s2.t - 1);
    Int rank = detail::comb_rank(prefix, s2.t - d_lo);
    if (rank >= theta1_count(s2.t, d_lo, d_hi)) return std::nullopt;
    int len = d_lo + d_hi;
    auto prefix1 = detail::comb_unrank(rank, s2.t - 1, d_hi - 1);
    ThetaSequence s1;
    s1.t = s2.t;
    s1.word = prefix1;
    s1.word.push_back(1);
    s1.word.resize(len, 0);
    return s1;
}

inline std::vector<ThetaSequence> enumerate_theta1(int t, int d_lo, int d_hi) {
    check_theta_params(t, d_lo, d_hi);
    std::vector<ThetaSequence> out;
    Int count = theta1_count(t, d_lo, d_hi);
    for (Int r = 0; r < count; ++r) {
        ThetaSequence s;
        s.t = t;
        s.word = detail::comb_unrank(r, t - 1, d_hi - 1);
        s.word.push_back(1);
        s.word.resize(d_lo + d_hi, 0);
        out.push_back(std::move(s));
    }
    return out;
}

inline std::vector<ThetaSequence> enumerate_theta2(int t, int d_lo, int d_hi) {
    check_theta_params(t, d_lo, d_hi);
    std::vector<ThetaSequence> out;
    Int count = theta2_count(t, d_lo, d_hi);
    for (Int r = 0; r < count; ++r) {
        ThetaSequence s;
        s.t = t;
        s.word = detail::comb_unrank(r, t - 1, t - d_lo);
        s.word.push_back(0);
        s.word.resize(d_lo + d_hi, 1);
        out.push_back(std::move(s));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Counterparts, bar-swaps and twins
// ---------------------------------------------------------------------------

// Counterpart: replace ab with ax and xy with by in place (upper to lower),
// or the inverse replacement (lower to upper).
inline EdgeSequence counterpart(const EdgeSequence& seq, const SwitchAnchor& an) {
    Family fam = family_of(seq, an);
    EdgeSequence out = seq;
    auto put = [&](std::pair<int, int> from, std::pair<int, int> to) {
        int step = seq.step_of_edge(from);
        out.edges[step - 1] = {std::min(to.first, to.second), std::max(to.first, to.second)};
    };
    if (fam == Family::upper) {
        put({an.a, an.b}, {an.a, an.x});
        put({an.x, an.y}, {an.b, an.y});
    } else {
        put({an.a, an.x}, {an.a, an.b});
        put({an.b, an.y}, {an.x, an.y});
    }
    return out;
}

// Bar-swap: exchange the positions of the two anchor edges.
inline EdgeSequence bar(const EdgeSequence& seq, const SwitchAnchor& an) {
    Family fam = family_of(seq, an);
    std::pair<int, int> e1, e2;
    if (fam == Family::upper) {
        e1 = {an.a, an.b};
        e2 = {an.x, an.y};
    } else {
        e1 = {an.a, an.x};
        e2 = {an.b, an.y};
    }
    int s1 = seq.step_of_edge(e1), s2 = seq.step_of_edge(e2);
    EdgeSequence out = seq;
    std::swap(out.edges[s1 - 1], out.edges[s2 - 1]);
    return out;
}

namespace detail {

// Shared core of the BX- and AY-twin constructions. lo_pt/hi_pt are the
// anchor points whose vertices swap saturation steps (b,x for BX; a,y for
// AY). Returns nullopt when no twin exists.
inline std::optional<EdgeSequence> twin_core(const DegreeSequence& ds, const EdgeSequence& seq,
                                             const SwitchAnchor& an, int lo_pt, int hi_pt) {
    PointMap pm(ds);
    validate_anchor(ds, pm, an);
    family_of(seq, an);  // throws when the anchor edges are absent
    int lo_v = pm.vertex_of(lo_pt), hi_v = pm.vertex_of(hi_pt);

    // anchor edge positions (1-based steps)
    int lo_anchor_step = seq.step_of_point(lo_pt);
    int hi_anchor_step = seq.step_of_point(hi_pt);

    auto t_of = [&](int vert, int except_pt) {
        int t = 0;
        for (int c = 0; c < ds.degree(vert); ++c) {
            int pid = pm.first_pid(vert) + c;
            if (pid == except_pt) continue;
            t = std::max(t, seq.step_of_point(pid));
        }
        return t;
    };
    int t_lo = t_of(lo_v, lo_pt);
    int t_hi = t_of(hi_v, hi_pt);
    if (t_lo == t_hi) return std::nullopt;  // only possible via a lo-hi edge

    // word slots: edges incident to lo_v or hi_v, excluding the two anchor
    // edges and lo-hi edges, in sequence order
    struct Slot {
        int step;       // 1-based
        int side;       // endpoint index carrying the letter vertex
        uint8_t letter; // 0 = lo, 1 = hi
    };
    std::vector<Slot> slots;
    int d_lo = 0, d_hi = 0;
    for (size_t i = 0; i < seq.edges.size(); ++i) {
        int step = static_cast<int>(i) + 1;
        if (step == lo_anchor_step || step == hi_anchor_step) continue;
        auto [p, q] = seq.edges[i];
        int u = pm.vertex_of(p), v = pm.vertex_of(q);
        bool u_lo = u == lo_v, v_lo = v == lo_v, u_hi = u == hi_v, v_hi = v == hi_v;
        if ((u_lo && v_hi) || (u_hi && v_lo)) continue;  // lo-hi edge
        if (u_lo || v_lo) {
            slots.push_back({step, u_lo ? 0 : 1, 0});
            ++d_lo;
        } else if (u_hi || v_hi) {
            slots.push_back({step, u_hi ? 0 : 1, 1});
            ++d_hi;
        }
    }

    std::vector<uint8_t> word(slots.size());
    for (size_t i = 0; i < slots.size(); ++i) word[i] = slots[i].letter;

    ThetaSequence from, to;
    if (t_hi < t_lo) {
        // forward construction; d_lo >= 1 is forced by t_lo being a word slot
        int t = 0;
        for (size_t i = 0; i < word.size(); ++i)
            if (word[i] == 1) t = static_cast<int>(i) + 1;
        from.word = word;
        from.t = t;
        to = theta_injection(from, d_lo, d_hi);
    } else {
        // backward direction: reconstruct the unique preimage if one exists
        if (d_lo == 0) return std::nullopt;
        int t = 0;
        for (size_t i = 0; i < word.size(); ++i)
            if (word[i] == 0) t = static_cast<int>(i) + 1;
        if (t < d_hi) return std::nullopt;  // Theta1 empty for these parameters
        from.word = word;
        from.t = t;
        auto inv = theta_injection_inverse(from, d_lo, d_hi);
        if (!inv) return std::nullopt;
        to = *inv;
    }

    // build the twin: swap the two anchor points, flip letters per `to`
    EdgeSequence out = seq;
    auto replace_pt = [&](int step, int old_pt, int new_pt) {
        auto& e = out.edges[step - 1];
        if (e.first == old_pt)
            e.first = new_pt;
        else
            e.second = new_pt;
        if (e.first > e.second) std::swap(e.first, e.second);
    };
    replace_pt(lo_anchor_step, lo_pt, hi_pt);
    replace_pt(hi_anchor_step, hi_pt, lo_pt);

    // mark letter endpoints; temporary ids -1 (lo slot) and -2 (hi slot)
    for (size_t i = 0; i < slots.size(); ++i) {
        auto& e = out.edges[slots[i].step - 1];
        int& end = slots[i].side == 0 ? e.first : e.second;
        end = to.word[i] == 0 ? -1 : -2;
    }
    // lo-hi edges also surrender their labels to the relabeling pools
    for (size_t i = 0; i < seq.edges.size(); ++i) {
        int step = static_cast<int>(i) + 1;
        if (step == lo_anchor_step || step == hi_anchor_step) continue;
        auto [p, q] = seq.edges[i];
        int u = pm.vertex_of(p), v = pm.vertex_of(q);
        if ((u == lo_v && v == hi_v) || (u == hi_v && v == lo_v)) {
            auto& e = out.edges[i];
            if (pm.vertex_of(seq.edges[i].first) == lo_v) {
                e.first = -1;
                e.second = -2;
            } else {
                e.first = -2;
                e.second = -1;
            }
        }
    }

    // relabel: points of lo_v except lo_pt keep their relative order
    std::vector<int> lo_labels, hi_labels;
    {
        std::vector<std::pair<int, int>> lo_steps, hi_steps;  // (step, pid)
        for (int c = 0; c < ds.degree(lo_v); ++c) {
            int pid = pm.first_pid(lo_v) + c;
            if (pid == lo_pt) continue;
            lo_steps.emplace_back(seq.step_of_point(pid), pid);
        }
        for (int c = 0; c < ds.degree(hi_v); ++c) {
            int pid = pm.first_pid(hi_v) + c;
            if (pid == hi_pt) continue;
            hi_steps.emplace_back(seq.step_of_point(pid), pid);
        }
        std::sort(lo_steps.begin(), lo_steps.end());
        std::sort(hi_steps.begin(), hi_steps.end());
        for (auto [s, pid] : lo_steps) lo_labels.push_back(pid);
        for (auto [s, pid] : hi_steps) hi_labels.push_back(pid);
    }
    size_t lo_next = 0, hi_next = 0;
    for (auto& e : out.edges) {
        for (int* end : {&e.first, &e.second}) {
            if (*end == -1) *end = lo_labels[lo_next++];
            else if (*end == -2) *end = hi_labels[hi_next++];
        }
        if (e.first > e.second) std::swap(e.first, e.second);
    }
    if (lo_next != lo_labels.size() || hi_next != hi_labels.size())
        throw std::logic_error("twin relabeling mismatch");
    return out;
}

}  // namespace detail

// BX-twin: defined when t_x < t_b (the construction) or t_b < t_x with the
// word in the image of the canonical injection (its inverse).
inline std::optional<EdgeSequence> bx_twin(const DegreeSequence& ds, const EdgeSequence& seq,
                                           const SwitchAnchor& an) {
    return detail::twin_core(ds, seq, an, an.b, an.x);
}

inline std::optional<EdgeSequence> ay_twin(const DegreeSequence& ds, const EdgeSequence& seq,
                                           const SwitchAnchor& an) {
    return detail::twin_core(ds, seq, an, an.a, an.y);
}

// ---------------------------------------------------------------------------
// Sequence-level verifiers
// ---------------------------------------------------------------------------

struct CompleteSwitchReport {
    Rational lhs, rhs;   // Z(sigma)+Z(bar sigma) vs Z(sigma')+Z(bar sigma')
    bool part_i = false;
    bool gap_applies = false;
    Rational ratio;
    bool part_ii = true;  // vacuous when the gap condition fails
    long long gap = 0;
    Rational gap_threshold;
};

inline CompleteSwitchReport verify_completeswitch(const DegreeSequence& ds,
                                                  const EdgeSequence& sigma,
                                                  const SwitchAnchor& an,
                                                  const Rational& zeta_val) {
    if (family_of(sigma, an) != Family::upper)
        throw std::invalid_argument("verify_completeswitch expects sigma in P+");
    auto st = saturation_times(ds, sigma, an.a, an.b, an.x, an.y);
    if (!(st.t_a <= st.t_y && st.t_b <= st.t_x))
        throw std::invalid_argument("precondition t_a <= t_y and t_b <= t_x violated");
    EdgeSequence sigma_p = counterpart(sigma, an);
    EdgeSequence sigma_bar = bar(sigma, an);
    EdgeSequence sigma_p_bar = bar(sigma_p, an);
    CompleteSwitchReport rep;
    rep.lhs = z_sigma(ds, sigma) + z_sigma(ds, sigma_bar);
    rep.rhs = z_sigma(ds, sigma_p) + z_sigma(ds, sigma_p_bar);
    rep.part_i = rep.lhs >= rep.rhs;
    rep.ratio = rep.lhs / rep.rhs;
    long long m = sigma.size();
    long long s_ab = sigma.step_of_edge({an.a, an.b});
    long long s_xy = sigma.step_of_edge({an.x, an.y});
    rep.gap = std::min({s_xy, static_cast<long long>(st.t_x), static_cast<long long>(st.t_y)}) -
              std::max({s_ab, static_cast<long long>(st.t_a), static_cast<long long>(st.t_b)});
    rep.gap_threshold = zeta_val * m / 3;
    rep.gap_applies = Rational(rep.gap) >= rep.gap_threshold;
    if (rep.gap_applies) rep.part_ii = rep.lhs > rep.rhs;
    return rep;
}

struct TwinPartitionReport {
    long long sequences_plus = 0, sequences_minus = 0;
    long long twins_plus = 0, twins_minus = 0;
    long long quadruplets = 0;
    bool z_sum_equal = false;       // Lemma part (i)
    bool nontwin_times_ok = true;   // part (iii)
    bool late_xy_nontwin_ok = true; // part (iv)
    bool quadruplets_commute = true;
    bool twin_z_equal = true;       // twin pairs have equal Z and Gamma profile
};

// Exhaustive check over P+ union P- of a cluster pair.
inline TwinPartitionReport verify_twin_partition(const Cluster& c_plus,
                                                 long long sequence_budget = 30000000) {
    if (c_plus.kind != ClusterKind::upper)
        throw std::invalid_argument("verify_twin_partition expects an upper cluster");
    const auto& ds = c_plus.members.front().degree_sequence();
    const SwitchAnchor& an = c_plus.anchor;
    PointMap pm(ds);
    Cluster c_minus = switching_partner(c_plus);
    long long m = c_plus.members.front().edge_count();
    Int fact = 1;
    for (long long i = 2; i <= m; ++i) fact *= i;
    Int total_seqs = fact * Int(c_plus.members.size() + c_minus.members.size());
    if (total_seqs > sequence_budget)
        throw std::runtime_error("twin partition sequence budget exceeded");

    detail::ScaledZ scale(ds);
    Int z_twins_plus = 0, z_twins_minus = 0;
    TwinPartitionReport rep;

    auto xy_after_ab = [&](const EdgeSequence& seq) {
        int va = pm.vertex_of(an.a), vb = pm.vertex_of(an.b);
        int vx = pm.vertex_of(an.x), vy = pm.vertex_of(an.y);
        int last_ab = 0, first_xy = static_cast<int>(seq.edges.size()) + 1;
        for (size_t i = 0; i < seq.edges.size(); ++i) {
            auto [p, q] = seq.edges[i];
            int u = pm.vertex_of(p), v = pm.vertex_of(q);
            int step = static_cast<int>(i) + 1;
            if (u == va || u == vb || v == va || v == vb) last_ab = std::max(last_ab, step);
            if (u == vx || u == vy || v == vx || v == vy) first_xy = std::min(first_xy, step);
        }
        return first_xy > last_ab;
    };

    auto process_family = [&](const Cluster& c, bool plus) {
        for (const auto& g : c.members) {
            std::vector<std::pair<int, int>> base(g.pairs());
            std::vector<int> idx(base.size());
            for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
            do {
                EdgeSequence seq;
                seq.edges.reserve(base.size());
                for (int i : idx) seq.edges.push_back(base[i]);
                if (plus)
                    ++rep.sequences_plus;
                else
                    ++rep.sequences_minus;
                auto bx = bx_twin(ds, seq, an);
                auto ay = ay_twin(ds, seq, an);
                bool in_t = bx.has_value() || ay.has_value();
                auto st = saturation_times(ds, seq, an.a, an.b, an.x, an.y);
                if (in_t) {
                    Int z = scale.z_of_sequence(ds, seq);
                    if (plus) {
                        ++rep.twins_plus;
                        z_twins_plus += z;
                    } else {
                        ++rep.twins_minus;
                        z_twins_minus += z;
                    }
                    for (const auto& tw : {bx, ay}) {
                        if (!tw) continue;
                        if (gamma_profile(ds, seq) != gamma_profile(ds, *tw) ||
                            scale.z_of_sequence(ds, *tw) != z)
                            rep.twin_z_equal = false;
                        if (family_of(*tw, an) == family_of(seq, an)) rep.twin_z_equal = false;
                        const auto& opposite = plus ? c_minus : c_plus;
                        ConfigGraph tg = tw->to_config_graph(ds);
                        if (!std::binary_search(opposite.members.begin(), opposite.members.end(),
                                                tg))
                            rep.twin_z_equal = false;
                    }
                    if (bx && ay) {
                        ++rep.quadruplets;
                        auto p1 = ay_twin(ds, *bx, an);
                        auto p2 = bx_twin(ds, *ay, an);
                        if (!p1 || !p2 || !(*p1 == *p2)) rep.quadruplets_commute = false;
                    }
                } else {
                    if (!(st.t_a <= st.t_y && st.t_b <= st.t_x)) rep.nontwin_times_ok = false;
                }
                if (xy_after_ab(seq) && in_t) rep.late_xy_nontwin_ok = false;
            } while (std::next_permutation(idx.begin(), idx.end()));
        }
    };
    process_family(c_plus, true);
    process_family(c_minus, false);
    rep.z_sum_equal = z_twins_plus == z_twins_minus;
    return rep;
}

}  // namespace dproc
