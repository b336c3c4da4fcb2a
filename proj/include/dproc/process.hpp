#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dproc/config_graph.hpp"
#include "dproc/rng.hpp"

namespace dproc {

enum class Variant { standard, relaxed };

struct RelaxedResult {
    ConfigGraph graph;
    EdgeSequence trajectory;
    bool completed = false;
    int steps = 0;
};

struct StandardResult {
    MultiGraph graph;  // always simple
    std::vector<std::pair<int, int>> trajectory;  // vertex pairs in order
    bool completed = false;
    int steps = 0;
};

// Relaxed process: each step picks a uniform pair of distinct unsaturated
// vertices, then a uniform unmatched point inside each. Multi-edges can
// occur, loops cannot. Stops when fewer than 2 unsaturated vertices remain.
inline RelaxedResult run_relaxed(const DegreeSequence& ds, Rng& rng) {
    int n = ds.n();
    PointMap pm(ds);
    std::vector<int> residual(ds.degrees().begin(), ds.degrees().end());
    std::vector<int> unsat;  // vertex ids with residual > 0
    std::vector<int> pos(n, -1);
    for (int v = 0; v < n; ++v)
        if (residual[v] > 0) {
            pos[v] = static_cast<int>(unsat.size());
            unsat.push_back(v);
        }
    // unmatched copy indices per vertex (0-based copies)
    std::vector<std::vector<int>> free_copies(n);
    for (int v = 0; v < n; ++v)
        for (int c = 0; c < ds.degree(v); ++c) free_copies[v].push_back(c);

    auto remove_unsat = [&](int v) {
        int i = pos[v], last = static_cast<int>(unsat.size()) - 1;
        std::swap(unsat[i], unsat[last]);
        pos[unsat[i]] = i;
        unsat.pop_back();
        pos[v] = -1;
    };

    EdgeSequence seq;
    while (unsat.size() >= 2) {
        int i = rng.below_int(static_cast<int>(unsat.size()));
        int j = rng.below_int(static_cast<int>(unsat.size()) - 1);
        if (j >= i) ++j;
        int u = unsat[i], v = unsat[j];
        auto pick = [&](int w) {
            auto& fc = free_copies[w];
            int idx = rng.below_int(static_cast<int>(fc.size()));
            int copy = fc[idx];
            std::swap(fc[idx], fc.back());
            fc.pop_back();
            return pm.first_pid(w) + copy;
        };
        int p = pick(u), q = pick(v);
        seq.edges.emplace_back(std::min(p, q), std::max(p, q));
        if (--residual[u] == 0) remove_unsat(u);
        if (--residual[v] == 0) remove_unsat(v);
    }
    RelaxedResult res;
    res.steps = static_cast<int>(seq.edges.size());
    res.completed = unsat.empty();
    res.graph = ConfigGraph(ds, seq.edges);
    res.trajectory = std::move(seq);
    return res;
}

// Standard process: each step picks uniformly among addable simple edges
// (both endpoints unsaturated and not already adjacent). Stops when none.
inline StandardResult run_standard(const DegreeSequence& ds, Rng& rng) {
    int n = ds.n();
    int delta = ds.delta();
    std::vector<int> residual(ds.degrees().begin(), ds.degrees().end());
    std::vector<int> unsat;
    std::vector<int> pos(n, -1);
    for (int v = 0; v < n; ++v)
        if (residual[v] > 0) {
            pos[v] = static_cast<int>(unsat.size());
            unsat.push_back(v);
        }
    std::vector<std::vector<int>> adj(n);

    auto adjacent = [&](int u, int v) {
        const auto& a = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
        int w = adj[u].size() <= adj[v].size() ? v : u;
        for (int x : a)
            if (x == w) return true;
        return false;
    };
    auto remove_unsat = [&](int v) {
        int i = pos[v], last = static_cast<int>(unsat.size()) - 1;
        std::swap(unsat[i], unsat[last]);
        pos[unsat[i]] = i;
        unsat.pop_back();
        pos[v] = -1;
    };

    std::vector<std::pair<int, int>> traj;
    std::vector<std::pair<int, int>> endgame;
    for (;;) {
        int g = static_cast<int>(unsat.size());
        if (g < 2) break;
        int u = -1, v = -1;
        if (g > delta + 2) {
            // rejection: a uniform unsaturated pair is non-adjacent with
            // probability >= 1 - delta/(g-1)
            for (;;) {
                int i = rng.below_int(g);
                int j = rng.below_int(g - 1);
                if (j >= i) ++j;
                if (!adjacent(unsat[i], unsat[j])) {
                    u = unsat[i];
                    v = unsat[j];
                    break;
                }
            }
        } else {
            endgame.clear();
            for (int i = 0; i < g; ++i)
                for (int j = i + 1; j < g; ++j)
                    if (!adjacent(unsat[i], unsat[j])) endgame.emplace_back(unsat[i], unsat[j]);
            if (endgame.empty()) break;  // stuck
            auto e = endgame[rng.below_int(static_cast<int>(endgame.size()))];
            u = e.first;
            v = e.second;
        }
        traj.emplace_back(std::min(u, v), std::max(u, v));
        adj[u].push_back(v);
        adj[v].push_back(u);
        if (--residual[u] == 0) remove_unsat(u);
        if (--residual[v] == 0) remove_unsat(v);
    }
    StandardResult res;
    res.steps = static_cast<int>(traj.size());
    res.completed = unsat.empty();
    res.graph = MultiGraph(n, traj);
    res.trajectory = std::move(traj);
    return res;
}

// Rejection loop: rerun the process until it completes.
inline RelaxedResult run_relaxed_conditioned(const DegreeSequence& ds, Rng& rng,
                                             int max_retries = 1000, int* retries_out = nullptr) {
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        RelaxedResult r = run_relaxed(ds, rng);
        if (r.completed) {
            if (retries_out) *retries_out = attempt;
            return r;
        }
    }
    throw std::runtime_error("relaxed process retry budget exhausted");
}

inline StandardResult run_standard_conditioned(const DegreeSequence& ds, Rng& rng,
                                               int max_retries = 1000, int* retries_out = nullptr) {
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        StandardResult r = run_standard(ds, rng);
        if (r.completed) {
            if (retries_out) *retries_out = attempt;
            return r;
        }
    }
    throw std::runtime_error("standard process retry budget exhausted");
}

// Uniform perfect matching on all 2m points; loops and multi-edges allowed.
inline RawPairing sample_config_model(const DegreeSequence& ds, Rng& rng) {
    if (ds.total_degree() % 2 != 0) throw std::invalid_argument("odd total degree");
    PointMap pm(ds);
    int total = pm.total_points();
    std::vector<int> pts(total);
    for (int i = 0; i < total; ++i) pts[i] = i;
    RawPairing out{ds, {}};
    out.pairs.reserve(total / 2);
    int live = total;
    while (live > 1) {
        int p = pts[live - 1];
        int idx = rng.below_int(live - 1);
        int q = pts[idx];
        pts[idx] = pts[live - 2];
        live -= 2;
        out.pairs.emplace_back(std::min(p, q), std::max(p, q));
    }
    return out;
}

// Uniform simple graph with degree sequence ds, by configuration-model
// rejection. Restarts as soon as a loop or multi-edge appears; each accepted
// pairing projects to a simple graph, and every simple graph corresponds to
// the same number of pairings, so the output is exactly uniform.
inline MultiGraph sample_uniform_simple(const DegreeSequence& ds, Rng& rng,
                                        long long max_attempts = 1000000,
                                        long long* attempts_out = nullptr) {
    if (ds.total_degree() % 2 != 0) throw std::invalid_argument("odd total degree");
    int n = ds.n();
    int total = static_cast<int>(ds.total_degree());
    std::vector<int> vertex_of(total);
    {
        int p = 0;
        for (int v = 0; v < n; ++v)
            for (int c = 0; c < ds.degree(v); ++c) vertex_of[p++] = v;
    }
    std::vector<int> pts(total);
    std::vector<int> adj_head(n, -1);
    std::vector<int> adj_next(total, -1);
    std::vector<int> adj_to(total, -1);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(total / 2);

    for (long long attempt = 1; attempt <= max_attempts; ++attempt) {
        for (int i = 0; i < total; ++i) pts[i] = i;
        for (int v = 0; v < n; ++v) adj_head[v] = -1;
        edges.clear();
        int live = total;
        int slot = 0;
        bool ok = true;
        while (live > 1) {
            int p = pts[live - 1];
            int idx = rng.below_int(live - 1);
            int q = pts[idx];
            pts[idx] = pts[live - 2];
            live -= 2;
            int u = vertex_of[p], v = vertex_of[q];
            if (u == v) {
                ok = false;
                break;
            }
            bool dup = false;
            for (int e = adj_head[u]; e != -1; e = adj_next[e])
                if (adj_to[e] == v) {
                    dup = true;
                    break;
                }
            if (dup) {
                ok = false;
                break;
            }
            adj_to[slot] = v;
            adj_next[slot] = adj_head[u];
            adj_head[u] = slot;
            ++slot;
            adj_to[slot] = u;
            adj_next[slot] = adj_head[v];
            adj_head[v] = slot;
            ++slot;
            edges.emplace_back(u, v);
        }
        if (ok) {
            if (attempts_out) *attempts_out = attempt;
            return MultiGraph(n, edges);
        }
    }
    throw std::runtime_error("uniform sampler retry budget exhausted");
}

}  // namespace dproc
