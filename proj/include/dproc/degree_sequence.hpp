#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dproc/rational.hpp"

namespace dproc {

// Degree vector d_1..d_n with entries in 1..Delta. A lenient mode admits
// zero entries (residual sequences where saturated vertices keep degree 0).
class DegreeSequence {
  public:
    DegreeSequence() = default;

    explicit DegreeSequence(std::vector<int> degrees, bool lenient = false)
        : degrees_(std::move(degrees)) {
        int lo = lenient ? 0 : 1;
        for (int d : degrees_) {
            if (d < lo) throw std::invalid_argument("degree below " + std::to_string(lo));
        }
    }

    // Text format: whitespace-separated tokens, each either a plain degree or
    // a "degree:count" block, e.g. "2 2 2 2" or "1:500 7:500".
    static DegreeSequence parse(const std::string& text, bool lenient = false) {
        std::istringstream in(text);
        std::string tok;
        std::vector<int> degs;
        while (in >> tok) {
            auto colon = tok.find(':');
            if (colon == std::string::npos) {
                degs.push_back(std::stoi(tok));
            } else {
                int j = std::stoi(tok.substr(0, colon));
                long long c = std::stoll(tok.substr(colon + 1));
                if (c < 0) throw std::invalid_argument("negative count in " + tok);
                degs.insert(degs.end(), c, j);
            }
        }
        if (degs.empty()) throw std::invalid_argument("empty degree sequence");
        return DegreeSequence(std::move(degs), lenient);
    }

    int n() const { return static_cast<int>(degrees_.size()); }
    int degree(int v) const { return degrees_[v]; }
    const std::vector<int>& degrees() const { return degrees_; }

    int delta() const {
        return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
    }

    long long total_degree() const {
        return std::accumulate(degrees_.begin(), degrees_.end(), 0LL);
    }

    bool even_sum() const { return total_degree() % 2 == 0; }

    long long m() const {
        long long t = total_degree();
        if (t % 2 != 0) throw std::domain_error("odd degree sum has no edge count");
        return t / 2;
    }

    std::map<int, long long> degree_counts() const {
        std::map<int, long long> c;
        for (int d : degrees_) ++c[d];
        return c;
    }

    // Sum_{j<=k} j*n_j
    long long small_point_count(int k) const {
        long long s = 0;
        for (int d : degrees_)
            if (d <= k) s += d;
        return s;
    }

    long long count_at_most(int k) const {
        long long s = 0;
        for (int d : degrees_)
            if (d <= k) ++s;
        return s;
    }

    bool operator==(const DegreeSequence& o) const { return degrees_ == o.degrees_; }

  private:
    std::vector<int> degrees_;
};

// Erdos-Gallai criterion; zero degrees are harmless here.
inline bool is_graphic(const DegreeSequence& ds) {
    if (!ds.even_sum()) return false;
    std::vector<long long> d(ds.degrees().begin(), ds.degrees().end());
    std::sort(d.rbegin(), d.rend());
    int n = static_cast<int>(d.size());
    std::vector<long long> prefix(n + 1, 0);
    for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + d[i];
    for (int k = 1; k <= n; ++k) {
        long long rhs = static_cast<long long>(k) * (k - 1);
        for (int i = k; i < n; ++i) rhs += std::min<long long>(d[i], k);
        if (prefix[k] > rhs) return false;
    }
    return true;
}

// mu(d,k) = (sum_{j<=k} j n_j)^2 / (4m), kept exact.
inline Rational mu(const DegreeSequence& ds, int k) {
    if (k < 1 || k >= ds.delta()) throw std::invalid_argument("k must satisfy 1 <= k < Delta");
    long long m = ds.m();
    if (m <= 0) throw std::invalid_argument("mu needs m > 0");
    Int s = ds.small_point_count(k);
    return Rational(s * s, Int(4) * m);
}

// Eq-style membership sum_{j<=k} n_j / n in [xi, 1-xi].
inline bool window_check(const DegreeSequence& ds, int k, const Rational& xi) {
    if (k < 1 || k >= ds.delta()) throw std::invalid_argument("k must satisfy 1 <= k < Delta");
    if (xi <= 0 || xi >= 1) throw std::invalid_argument("xi must lie in (0,1)");
    Rational frac(Int(ds.count_at_most(k)), Int(ds.n()));
    return frac >= xi && frac <= Rational(1) - xi;
}

struct RegularityWindow {
    int k = 1;
    Rational xi;
    bool satisfied_by(const DegreeSequence& ds) const { return window_check(ds, k, xi); }
};

}  // namespace dproc
