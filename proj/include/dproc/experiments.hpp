#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dproc/rng.hpp"

namespace dproc {

// Seeded trial fan-out: trial i always draws from stream i+1 of the seed, so
// results are independent of worker count and scheduling.
template <class Row, class F>
inline std::vector<Row> run_trials(long long trials, int workers, uint64_t seed, F&& fn) {
    std::vector<Row> out(trials);
    if (workers < 1) workers = 1;
    std::atomic<long long> next{0};
    auto work = [&]() {
        for (;;) {
            long long i = next.fetch_add(1);
            if (i >= trials) break;
            Rng rng(seed, static_cast<uint64_t>(i) + 1);
            out[i] = fn(i, rng);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (int w = 0; w < workers; ++w) threads.emplace_back(work);
        for (auto& t : threads) t.join();
    }
    return out;
}

inline int default_workers() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

struct SampleStats {
    long long n = 0;
    double mean = 0;
    double variance = 0;  // sample variance
    double stddev() const { return std::sqrt(variance); }
    double stderr_mean() const { return n > 1 ? std::sqrt(variance / n) : 0; }
};

inline SampleStats sample_stats(const std::vector<double>& xs) {
    SampleStats s;
    s.n = static_cast<long long>(xs.size());
    if (s.n == 0) return s;
    double sum = 0;
    for (double x : xs) sum += x;
    s.mean = sum / s.n;
    if (s.n > 1) {
        double acc = 0;
        for (double x : xs) acc += (x - s.mean) * (x - s.mean);
        s.variance = acc / (s.n - 1);
    }
    return s;
}

// Pearson chi-square statistic against the uniform law over k categories.
inline double chi_square_uniform(const std::vector<long long>& counts) {
    long long total = 0;
    for (long long c : counts) total += c;
    double expect = static_cast<double>(total) / counts.size();
    double stat = 0;
    for (long long c : counts) stat += (c - expect) * (c - expect) / expect;
    return stat;
}

// RFC-4180 field quoting.
inline std::string csv_escape(const std::string& field) {
    bool needs = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

inline std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ",";
        out += csv_escape(fields[i]);
    }
    out += "\n";
    return out;
}

// Distinguisher: label a graph "uniform" iff |X_k - mu| <= beta * mu.
inline bool label_uniform(double xk, double mu, double beta) {
    return std::fabs(xk - mu) <= beta * mu;
}

// beta from the midpoint of the two class means on a calibration split.
inline double calibrate_beta(const std::vector<double>& uniform_xs,
                             const std::vector<double>& process_xs, double mu) {
    if (uniform_xs.empty() || process_xs.empty())
        throw std::invalid_argument("calibration needs both classes");
    double mid = (sample_stats(uniform_xs).mean + sample_stats(process_xs).mean) / 2;
    return std::fabs(mid - mu) / mu;
}

}  // namespace dproc
