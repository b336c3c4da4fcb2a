#pragma once

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dproc/degree_sequence.hpp"

namespace dproc {

// A labeled point v_i^j: vertex i, copy j, both 1-based as in the text formats.
struct Point {
    int vertex = 0;
    int copy = 0;
    bool operator==(const Point& o) const { return vertex == o.vertex && copy == o.copy; }
};

// Flat point indexing: points of vertex i occupy a contiguous block.
class PointMap {
  public:
    explicit PointMap(const DegreeSequence& ds) {
        offsets_.reserve(ds.n() + 1);
        offsets_.push_back(0);
        for (int v = 0; v < ds.n(); ++v) offsets_.push_back(offsets_.back() + ds.degree(v));
        vertex_of_.resize(offsets_.back());
        for (int v = 0; v < ds.n(); ++v)
            for (int p = offsets_[v]; p < offsets_[v + 1]; ++p) vertex_of_[p] = v;
    }
    int total_points() const { return offsets_.back(); }
    int vertex_of(int pid) const { return vertex_of_[pid]; }
    int pid(const Point& pt) const { return offsets_[pt.vertex - 1] + pt.copy - 1; }
    Point point(int pid) const {
        int v = vertex_of_[pid];
        return Point{v + 1, pid - offsets_[v] + 1};
    }
    int first_pid(int vertex0) const { return offsets_[vertex0]; }

  private:
    std::vector<int> offsets_;
    std::vector<int> vertex_of_;
};

enum class EdgeClass { small, large, mixed };

// Loopless multigraph with degrees bounded by a degree sequence.
class MultiGraph {
  public:
    MultiGraph() = default;
    MultiGraph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
        edges_.reserve(edges.size());
        for (auto [u, v] : edges) {
            if (u == v) throw std::invalid_argument("loop in multigraph");
            if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("vertex out of range");
            edges_.emplace_back(std::min(u, v), std::max(u, v));
        }
        std::sort(edges_.begin(), edges_.end());
    }

    int n() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    long long edge_count() const { return static_cast<long long>(edges_.size()); }

    std::vector<int> degrees() const {
        std::vector<int> d(n_, 0);
        for (auto [u, v] : edges_) {
            ++d[u];
            ++d[v];
        }
        return d;
    }

    bool is_simple() const {
        for (size_t i = 1; i < edges_.size(); ++i)
            if (edges_[i] == edges_[i - 1]) return false;
        return true;
    }

    bool has_edge(int u, int v) const {
        auto e = std::minmax(u, v);
        return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(e.first, e.second));
    }

    // Edge-list text: one "u v" line per edge, 1-based vertices.
    std::string to_edge_list() const {
        std::ostringstream out;
        out << n_ << "\n";
        for (auto [u, v] : edges_) out << u + 1 << " " << v + 1 << "\n";
        return out.str();
    }

    static MultiGraph from_edge_list(const std::string& text) {
        std::istringstream in(text);
        int n;
        if (!(in >> n)) throw std::invalid_argument("edge list missing vertex count");
        std::vector<std::pair<int, int>> es;
        int u, v;
        while (in >> u >> v) es.emplace_back(u - 1, v - 1);
        return MultiGraph(n, std::move(es));
    }

    bool operator==(const MultiGraph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

  private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
};

// Point-level matching with no intra-vertex pairs; may be partial.
// Pairs are stored normalized (lo < hi) and sorted, so equality is structural.
class ConfigGraph {
  public:
    ConfigGraph() = default;

    ConfigGraph(DegreeSequence ds, std::vector<std::pair<int, int>> pairs)
        : ds_(std::move(ds)), pm_(ds_) {
        partner_.assign(pm_.total_points(), -1);
        pairs_.reserve(pairs.size());
        for (auto [p, q] : pairs) add_pair(p, q);
        normalize();
    }

    const DegreeSequence& degree_sequence() const { return ds_; }
    const PointMap& points() const { return pm_; }
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    long long edge_count() const { return static_cast<long long>(pairs_.size()); }
    int partner(int pid) const { return partner_[pid]; }
    bool matched(int pid) const { return partner_[pid] >= 0; }

    bool complete() const {
        return static_cast<long long>(pairs_.size()) * 2 == pm_.total_points();
    }

    int vertex_of(int pid) const { return pm_.vertex_of(pid); }
    int point_degree(int pid) const { return ds_.degree(pm_.vertex_of(pid)); }

    MultiGraph project() const {
        std::vector<std::pair<int, int>> es;
        es.reserve(pairs_.size());
        for (auto [p, q] : pairs_) es.emplace_back(pm_.vertex_of(p), pm_.vertex_of(q));
        return MultiGraph(ds_.n(), std::move(es));
    }

    // "i.p-j.q" tokens, 1-based, degree header line first.
    std::string serialize() const {
        std::ostringstream out;
        for (int v = 0; v < ds_.n(); ++v) out << (v ? " " : "") << ds_.degree(v);
        out << "\n";
        bool first = true;
        for (auto [p, q] : pairs_) {
            Point a = pm_.point(p), b = pm_.point(q);
            out << (first ? "" : " ") << a.vertex << "." << a.copy << "-" << b.vertex << "." << b.copy;
            first = false;
        }
        out << "\n";
        return out.str();
    }

    static ConfigGraph parse(const std::string& text) {
        std::istringstream in(text);
        std::string header;
        if (!std::getline(in, header)) throw std::invalid_argument("missing degree header");
        DegreeSequence ds = DegreeSequence::parse(header);
        PointMap pm(ds);
        std::vector<std::pair<int, int>> prs;
        std::string tok;
        while (in >> tok) {
            auto dash = tok.find('-');
            if (dash == std::string::npos) throw std::invalid_argument("bad pair token " + tok);
            auto parse_pt = [&](const std::string& s) {
                auto dot = s.find('.');
                if (dot == std::string::npos) throw std::invalid_argument("bad point token " + s);
                Point pt{std::stoi(s.substr(0, dot)), std::stoi(s.substr(dot + 1))};
                if (pt.vertex < 1 || pt.vertex > ds.n() || pt.copy < 1 ||
                    pt.copy > ds.degree(pt.vertex - 1))
                    throw std::invalid_argument("point out of range " + s);
                return pm.pid(pt);
            };
            prs.emplace_back(parse_pt(tok.substr(0, dash)), parse_pt(tok.substr(dash + 1)));
        }
        return ConfigGraph(std::move(ds), std::move(prs));
    }

    bool operator==(const ConfigGraph& o) const {
        return ds_ == o.ds_ && pairs_ == o.pairs_;
    }
    bool operator<(const ConfigGraph& o) const { return pairs_ < o.pairs_; }

  private:
    void add_pair(int p, int q) {
        if (p < 0 || q < 0 || p >= pm_.total_points() || q >= pm_.total_points())
            throw std::invalid_argument("point id out of range");
        if (p == q) throw std::invalid_argument("point matched to itself");
        if (pm_.vertex_of(p) == pm_.vertex_of(q))
            throw std::invalid_argument("intra-vertex pair");
        if (partner_[p] >= 0 || partner_[q] >= 0)
            throw std::invalid_argument("point matched twice");
        partner_[p] = q;
        partner_[q] = p;
        pairs_.emplace_back(std::min(p, q), std::max(p, q));
    }
    void normalize() { std::sort(pairs_.begin(), pairs_.end()); }

    DegreeSequence ds_;
    PointMap pm_{DegreeSequence{}};
    std::vector<std::pair<int, int>> pairs_;
    std::vector<int> partner_;
};

// Raw configuration-model pairing: perfect matching on all points where
// intra-vertex pairs (loops) are permitted.
struct RawPairing {
    DegreeSequence ds;
    std::vector<std::pair<int, int>> pairs;  // pid pairs
};

inline EdgeClass classify_degrees(int du, int dv, int k) {
    bool su = du <= k, sv = dv <= k;
    if (su && sv) return EdgeClass::small;
    if (!su && !sv) return EdgeClass::large;
    return EdgeClass::mixed;
}

inline long long small_edge_count(const MultiGraph& g, const std::vector<int>& deg, int k) {
    long long c = 0;
    for (auto [u, v] : g.edges())
        if (deg[u] <= k && deg[v] <= k) ++c;
    return c;
}

inline long long small_edge_count(const MultiGraph& g, int k) {
    return small_edge_count(g, g.degrees(), k);
}

inline long long small_edge_count(const ConfigGraph& g, int k) {
    long long c = 0;
    for (auto [p, q] : g.pairs())
        if (g.point_degree(p) <= k && g.point_degree(q) <= k) ++c;
    return c;
}

// Raw pairings count loops as edges too (both endpoints in one small vertex).
inline long long small_edge_count(const RawPairing& g, int k) {
    PointMap pm(g.ds);
    long long c = 0;
    for (auto [p, q] : g.pairs)
        if (g.ds.degree(pm.vertex_of(p)) <= k && g.ds.degree(pm.vertex_of(q)) <= k) ++c;
    return c;
}

inline EdgeClass classify_edge(const MultiGraph& g, std::pair<int, int> e, int k) {
    if (!g.has_edge(e.first, e.second)) throw std::invalid_argument("edge not in graph");
    auto deg = g.degrees();
    return classify_degrees(deg[e.first], deg[e.second], k);
}

inline EdgeClass classify_edge(const ConfigGraph& g, std::pair<int, int> pid_edge, int k) {
    auto e = std::minmax(pid_edge.first, pid_edge.second);
    if (!std::binary_search(g.pairs().begin(), g.pairs().end(),
                            std::make_pair(e.first, e.second)))
        throw std::invalid_argument("edge not in graph");
    return classify_degrees(g.point_degree(e.first), g.point_degree(e.second), k);
}

// Point-level neighborhood: matched partners outside S of points in S.
inline std::set<int> neighbors(const ConfigGraph& g, const std::set<int>& s) {
    std::set<int> out;
    for (int p : s) {
        int q = g.partner(p);
        if (q >= 0 && !s.count(q)) out.insert(q);
    }
    return out;
}

// An ordered trajectory of point-pair edges.
struct EdgeSequence {
    std::vector<std::pair<int, int>> edges;  // pid pairs in process order

    long long size() const { return static_cast<long long>(edges.size()); }

    // 1-based step at which `pid` is matched; 0 if never.
    int step_of_point(int pid) const {
        for (size_t i = 0; i < edges.size(); ++i)
            if (edges[i].first == pid || edges[i].second == pid) return static_cast<int>(i) + 1;
        return 0;
    }

    int step_of_edge(std::pair<int, int> e) const {
        auto [a, b] = std::minmax(e.first, e.second);
        for (size_t i = 0; i < edges.size(); ++i) {
            auto [p, q] = std::minmax(edges[i].first, edges[i].second);
            if (p == a && q == b) return static_cast<int>(i) + 1;
        }
        return 0;
    }

    bool contains_edge(std::pair<int, int> e) const { return step_of_edge(e) != 0; }

    ConfigGraph to_config_graph(const DegreeSequence& ds) const {
        return ConfigGraph(ds, edges);
    }

    bool operator==(const EdgeSequence& o) const { return edges == o.edges; }
};

// Gamma_0..Gamma_m: unsaturated-vertex counts along a trajectory.
inline std::vector<int> gamma_profile(const DegreeSequence& ds, const EdgeSequence& seq) {
    PointMap pm(ds);
    std::vector<int> residual(ds.degrees().begin(), ds.degrees().end());
    int unsat = 0;
    for (int r : residual)
        if (r > 0) ++unsat;
    std::vector<int> gamma;
    gamma.reserve(seq.edges.size() + 1);
    gamma.push_back(unsat);
    for (auto [p, q] : seq.edges) {
        int u = pm.vertex_of(p), v = pm.vertex_of(q);
        if (u == v) throw std::invalid_argument("loop in edge sequence");
        if (residual[u] <= 0 || residual[v] <= 0)
            throw std::invalid_argument("edge sequence violates degree bounds");
        if (--residual[u] == 0) --unsat;
        if (--residual[v] == 0) --unsat;
        gamma.push_back(unsat);
    }
    return gamma;
}

}  // namespace dproc
