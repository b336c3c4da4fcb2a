#pragma once

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dproc/rational.hpp"

namespace dproc {

// Asymptotic degree fractions r_1..r_Delta (exact rationals summing to 1).
struct LimitProfile {
    std::vector<Rational> r;  // r[j-1] = r_j

    int delta() const { return static_cast<int>(r.size()); }

    void validate() const {
        if (r.empty()) throw std::invalid_argument("empty profile");
        Rational sum = 0;
        for (const auto& v : r) {
            if (v < 0) throw std::invalid_argument("negative profile entry");
            sum += v;
        }
        if (sum != 1) throw std::invalid_argument("profile fractions must sum to 1");
    }

    // T = (1/2) sum j r_j, the limiting edge density.
    Rational edge_density() const {
        Rational t = 0;
        for (int j = 1; j <= delta(); ++j) t += Rational(j) * r[j - 1];
        return t / 2;
    }

    // "j:p/q" tokens, e.g. "1:1/2 7:1/2".
    static LimitProfile parse(const std::string& text) {
        std::istringstream in(text);
        std::string tok;
        std::map<int, Rational> entries;
        int delta = 0;
        while (in >> tok) {
            auto colon = tok.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("profile token needs j:value form: " + tok);
            int j = std::stoi(tok.substr(0, colon));
            if (j < 1) throw std::invalid_argument("profile degree must be >= 1");
            entries[j] = parse_rational(tok.substr(colon + 1));
            delta = std::max(delta, j);
        }
        LimitProfile p;
        p.r.assign(delta, Rational(0));
        for (auto& [j, v] : entries) p.r[j - 1] = v;
        p.validate();
        return p;
    }
};

// mu_hat_k = (sum_{j<=k} j r_j)^2 / (2 sum_j j r_j).
inline Rational mu_hat(const LimitProfile& p, int k) {
    p.validate();
    if (k < 1 || k >= p.delta()) throw std::invalid_argument("k must satisfy 1 <= k < Delta");
    Rational num = 0, den = 0;
    for (int j = 1; j <= p.delta(); ++j) {
        if (j <= k) num += Rational(j) * p.r[j - 1];
        den += Rational(j) * p.r[j - 1];
    }
    return num * num / (2 * den);
}

struct SufficientCondition {
    bool holds = false;
    Rational margin;  // (sum j r_j)^2 - k^2 (2 Delta + 1), compared in squares
};

// sum_j j r_j > k sqrt(2 Delta + 1), evaluated exactly by comparing squares.
inline SufficientCondition sufficient_condition(const LimitProfile& p, int k) {
    p.validate();
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    Rational s = 0;
    for (int j = 1; j <= p.delta(); ++j) s += Rational(j) * p.r[j - 1];
    Rational lhs_sq = s * s;
    Rational rhs_sq = Rational(static_cast<long long>(k) * k * (2 * p.delta() + 1));
    return SufficientCondition{lhs_sq > rhs_sq, lhs_sq - rhs_sq};
}

struct OdeTrajectory {
    double T = 0;
    double delta_guard = 0;       // integration stops at T - delta_guard
    double step = 0;
    int max_degree = 0;
    std::vector<double> t;        // grid
    std::vector<double> lambda;   // cumulative selection intensity
    std::vector<double> u;        // unsaturated fraction
    std::vector<std::vector<double>> u_j;        // per degree j = 1..Delta
    std::vector<std::vector<double>> x;          // x_{a,b}, (a,b) lex with a <= b
    std::vector<std::pair<int, int>> x_index;    // (a,b) per column
    std::vector<double> x_final;                 // x_{a,b}(T) with tail extrapolation
    double tail_error = 0;                       // total extrapolated tail mass
};

namespace detail {

// u_j(lambda) = r_j e^{-lambda} sum_{l<j} lambda^l / l!
inline void closed_form_u(const std::vector<double>& r, double lambda, std::vector<double>& out) {
    int delta = static_cast<int>(r.size());
    out.resize(delta);
    double e = std::exp(-lambda);
    double term = 1.0;
    double partial = 1.0;  // sum_{l<j} lambda^l / l!
    for (int j = 1; j <= delta; ++j) {
        out[j - 1] = r[j - 1] * e * partial;
        term *= lambda / j;
        partial += term;
    }
}

}  // namespace detail

// Fixed-step RK4 on the coupled (lambda, x_{a,b}) system with u_j supplied by
// the closed form. Stops at T - delta_guard; x_{a,b}(T) is then extrapolated
// with a per-pair power-law tail.
inline OdeTrajectory integrate(const LimitProfile& p, double step,
                               double delta_guard_fraction = 1e-3) {
    p.validate();
    int delta = p.delta();
    double T = to_double(p.edge_density());
    if (T <= 0) throw std::invalid_argument("profile has no edges");
    if (step <= 0) throw std::invalid_argument("step must be positive");
    double t_end = T * (1.0 - delta_guard_fraction);
    if (t_end / step < 1000) throw std::invalid_argument("step too coarse: fewer than 1000 grid points");

    std::vector<double> r(delta);
    for (int j = 0; j < delta; ++j) r[j] = to_double(p.r[j]);

    std::vector<std::pair<int, int>> xi;
    for (int a = 1; a <= delta; ++a)
        for (int b = a; b <= delta; ++b) xi.emplace_back(a, b);
    int nx = static_cast<int>(xi.size());

    std::vector<double> uj_buf;
    auto derivs = [&](double lambda, std::vector<double>& dx, double& dlambda) {
        detail::closed_form_u(r, lambda, uj_buf);
        double u = 0;
        for (double v : uj_buf) u += v;
        if (u <= 0) throw std::runtime_error("u(t) hit zero before the endpoint guard");
        dlambda = 2.0 / u;
        for (int i = 0; i < nx; ++i) {
            auto [a, b] = xi[i];
            double f = (a == b ? 1.0 : 2.0) * uj_buf[a - 1] * uj_buf[b - 1] / (u * u);
            dx[i] = f;
        }
    };

    OdeTrajectory out;
    out.T = T;
    out.delta_guard = T - t_end;
    out.step = step;
    out.max_degree = delta;
    out.x_index = xi;

    double lambda = 0;
    std::vector<double> x(nx, 0.0);
    std::vector<double> k1x(nx), k2x(nx), k3x(nx), k4x(nx), xtmp(nx);
    double k1l, k2l, k3l, k4l;

    double t = 0;
    auto record = [&]() {
        detail::closed_form_u(r, lambda, uj_buf);
        double u = 0;
        for (double v : uj_buf) u += v;
        out.t.push_back(t);
        out.lambda.push_back(lambda);
        out.u.push_back(u);
        out.u_j.push_back(uj_buf);
        out.x.push_back(x);
    };
    record();
    long long steps = static_cast<long long>(std::floor(t_end / step));
    for (long long i = 0; i < steps; ++i) {
        double h = step;
        derivs(lambda, k1x, k1l);
        derivs(lambda + 0.5 * h * k1l, k2x, k2l);
        derivs(lambda + 0.5 * h * k2l, k3x, k3l);
        derivs(lambda + h * k3l, k4x, k4l);
        lambda += h / 6.0 * (k1l + 2 * k2l + 2 * k3l + k4l);
        for (int j = 0; j < nx; ++j)
            x[j] += h / 6.0 * (k1x[j] + 2 * k2x[j] + 2 * k3x[j] + k4x[j]);
        t += h;
        record();
    }

    // invariants along the grid
    for (size_t i = 0; i < out.t.size(); ++i) {
        double lower = 2.0 * (T - out.t[i]) / delta;
        if (out.u[i] < lower - 1e-9)
            throw std::runtime_error("invariant u(t) >= 2(T-t)/Delta violated");
        if (i > 0 && out.u[i] > out.u[i - 1] + 1e-12)
            throw std::runtime_error("u(t) failed to be non-increasing");
    }

    // power-law tail per pair: g(s) ~ C (T-s)^p fitted from the last two
    // derivative samples, integrated over [t_end, T]
    double d_end = T - t;
    std::vector<double> g_end(nx), g_prev(nx);
    double dl_unused;
    derivs(lambda, g_end, dl_unused);
    {
        // second derivative sample roughly twice as far from T
        size_t idx = out.t.size() - 1;
        while (idx > 0 && T - out.t[idx] < 2.0 * d_end) --idx;
        double lam_prev = out.lambda[idx];
        detail::closed_form_u(r, lam_prev, uj_buf);
        double u = 0;
        for (double v : uj_buf) u += v;
        for (int i = 0; i < nx; ++i) {
            auto [a, b] = xi[i];
            g_prev[i] = (a == b ? 1.0 : 2.0) * uj_buf[a - 1] * uj_buf[b - 1] / (u * u);
        }
        double d_prev = T - out.t[idx];
        out.x_final.resize(nx);
        out.tail_error = 0;
        for (int i = 0; i < nx; ++i) {
            double tail;
            if (g_end[i] <= 0) {
                tail = 0;
            } else if (g_prev[i] <= 0) {
                tail = g_end[i] * d_end;
            } else {
                double ratio = g_prev[i] / g_end[i];
                double pexp = ratio > 1 ? std::log(ratio) / std::log(d_prev / d_end) : 0.0;
                if (pexp < 0) pexp = 0;
                tail = g_end[i] * d_end / (pexp + 1.0);
            }
            out.x_final[i] = x[i] + tail;
            out.tail_error += tail;
        }
    }
    return out;
}

// rho_k = sum_{a<=b<=k} x_{a,b}(T).
inline double rho_k(const OdeTrajectory& traj, int k) {
    double s = 0;
    for (size_t i = 0; i < traj.x_index.size(); ++i)
        if (traj.x_index[i].second <= k) s += traj.x_final[i];
    return s;
}

// Closed-form u_j at a given lambda.
inline std::vector<double> u_closed_form(const LimitProfile& p, double lambda) {
    std::vector<double> r(p.delta());
    for (int j = 0; j < p.delta(); ++j) r[j] = to_double(p.r[j]);
    std::vector<double> out;
    detail::closed_form_u(r, lambda, out);
    return out;
}

// Independent numeric route: integrate the refinement u_{j,l} (degree-j
// vertices selected l times so far), whose totals must reproduce the closed
// form. Returns per-grid-point u_j values on the same grid spacing.
inline std::vector<std::vector<double>> integrate_u_by_counts(const LimitProfile& p, double step,
                                                              double t_end) {
    p.validate();
    int delta = p.delta();
    std::vector<double> r(delta);
    for (int j = 0; j < delta; ++j) r[j] = to_double(p.r[j]);
    // state: y[j][l], l = 0..j-1
    std::vector<std::vector<double>> y(delta);
    for (int j = 1; j <= delta; ++j) {
        y[j - 1].assign(j, 0.0);
        y[j - 1][0] = r[j - 1];
    }
    auto flat_deriv = [&](const std::vector<std::vector<double>>& s,
                          std::vector<std::vector<double>>& d) {
        double u = 0;
        for (auto& row : s)
            for (double v : row) u += v;
        if (u <= 0) throw std::runtime_error("u hit zero in count-system integration");
        double rate = 2.0 / u;
        for (int j = 1; j <= delta; ++j) {
            for (int l = 0; l < j; ++l) {
                double in = l > 0 ? rate * s[j - 1][l - 1] : 0.0;
                d[j - 1][l] = in - rate * s[j - 1][l];
            }
        }
    };
    std::vector<std::vector<double>> out;
    auto record = [&]() {
        std::vector<double> uj(delta);
        for (int j = 1; j <= delta; ++j) {
            double s = 0;
            for (double v : y[j - 1]) s += v;
            uj[j - 1] = s;
        }
        out.push_back(std::move(uj));
    };
    record();
    auto d1 = y, d2 = y, d3 = y, d4 = y, tmp = y;
    long long steps = static_cast<long long>(std::floor(t_end / step));
    for (long long i = 0; i < steps; ++i) {
        double h = step;
        flat_deriv(y, d1);
        for (size_t a = 0; a < y.size(); ++a)
            for (size_t b = 0; b < y[a].size(); ++b) tmp[a][b] = y[a][b] + 0.5 * h * d1[a][b];
        flat_deriv(tmp, d2);
        for (size_t a = 0; a < y.size(); ++a)
            for (size_t b = 0; b < y[a].size(); ++b) tmp[a][b] = y[a][b] + 0.5 * h * d2[a][b];
        flat_deriv(tmp, d3);
        for (size_t a = 0; a < y.size(); ++a)
            for (size_t b = 0; b < y[a].size(); ++b) tmp[a][b] = y[a][b] + h * d3[a][b];
        flat_deriv(tmp, d4);
        for (size_t a = 0; a < y.size(); ++a)
            for (size_t b = 0; b < y[a].size(); ++b)
                y[a][b] += h / 6.0 * (d1[a][b] + 2 * d2[a][b] + 2 * d3[a][b] + d4[a][b]);
        record();
    }
    return out;
}

// Trajectory CSV: t, u, u_1..u_Delta, lambda, x_{a,b} in (a,b)-lex order.
inline std::string trajectory_csv(const OdeTrajectory& traj) {
    std::ostringstream out;
    out << "t,u";
    for (int j = 1; j <= traj.max_degree; ++j) out << ",u_" << j;
    out << ",lambda";
    for (auto [a, b] : traj.x_index) out << ",x_" << a << "_" << b;
    out << "\n";
    out << std::setprecision(12);
    for (size_t i = 0; i < traj.t.size(); ++i) {
        out << traj.t[i] << "," << traj.u[i];
        for (double v : traj.u_j[i]) out << "," << v;
        out << "," << traj.lambda[i];
        for (double v : traj.x[i]) out << "," << v;
        out << "\n";
    }
    return out.str();
}

}  // namespace dproc
