#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "implicitize/curve.hpp"
#include "implicitize/detail.hpp"
#include "implicitize/geometry.hpp"

namespace implicitize {

/// Deterministic uniform doubles in [0,1) from a mt19937_64 stream. The
/// mapping is fixed here (53 high bits) instead of using
/// std::uniform_real_distribution, whose output is implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  private:
    std::mt19937_64 gen_;
};

/// Point uniform in the triangle (1,0),(0,0),(0,1).
inline std::pair<double, double> random_point_in_triangle(Rng& rng) {
    double a = rng.uniform(), b = rng.uniform();
    if (a + b > 1.0) {
        a = 1.0 - a;
        b = 1.0 - b;
    }
    return {a, b};
}

/// Polynomial Bezier curve (weight 1) of the given degree with control
/// points uniform in the standard triangle.
inline ParametricCurve random_curve_in_triangle(Rng& rng, int degree) {
    Eigen::Matrix2Xd pts(2, degree + 1);
    for (int j = 0; j <= degree; ++j) {
        auto [x, y] = random_point_in_triangle(rng);
        pts(0, j) = x;
        pts(1, j) = y;
    }
    return ParametricCurve::from_points(pts);
}

/// Rational curve with control points in the triangle and weights in
/// [0.5, 1.5].
inline ParametricCurve random_rational_curve(Rng& rng, int degree) {
    Eigen::Matrix<double, 3, Eigen::Dynamic> c(3, degree + 1);
    for (int j = 0; j <= degree; ++j) {
        auto [x, y] = random_point_in_triangle(rng);
        const double w = rng.uniform(0.5, 1.5);
        c(0, j) = w * x;
        c(1, j) = w * y;
        c(2, j) = w;
    }
    return ParametricCurve(std::move(c));
}

struct CompareRow {
    Method method;
    int m;
    double mean_max_error;
};

struct CompareConfig {
    int curve_count = 100;
    int curve_degree = 10;
    int m_min = 1;
    int m_max = 10;
    std::uint64_t seed = 1;
    int error_samples = 1001;
    std::vector<Method> methods = {Method::monomial, Method::bernstein, Method::lagrange_uniform,
                                   Method::chebyshev};
};

/// The comparison experiment: mean of the max algebraic error over
/// curve_count random degree-n curves, per (method, m). Rows are ordered by
/// method then m; the result depends only on the config.
inline std::vector<CompareRow> compare_methods(const CompareConfig& cfg) {
    Rng rng(cfg.seed);
    std::vector<ParametricCurve> curves;
    curves.reserve(cfg.curve_count);
    for (int i = 0; i < cfg.curve_count; ++i)
        curves.push_back(random_curve_in_triangle(rng, cfg.curve_degree));
    const auto frame = BarycentricFrame::standard(2);

    const int n_m = cfg.m_max - cfg.m_min + 1;
    std::vector<std::vector<double>> errors(cfg.methods.size() * n_m,
                                            std::vector<double>(cfg.curve_count, 0.0));
    detail::parallel_for(cfg.curve_count, [&](int ci) {
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
            for (int m = cfg.m_min; m <= cfg.m_max; ++m) {
                const auto D = build_D(curves[ci], m, frame, cfg.methods[mi]);
                const auto r = min_singular(D);
                errors[mi * n_m + (m - cfg.m_min)][ci] =
                    algebraic_error_max(curves[ci], *r.solution, cfg.error_samples);
            }
        }
    });

    std::vector<CompareRow> rows;
    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        for (int m = cfg.m_min; m <= cfg.m_max; ++m) {
            const auto& e = errors[mi * n_m + (m - cfg.m_min)];
            double mean = 0.0;
            for (double v : e) mean += v;
            mean /= e.size();
            rows.push_back({cfg.methods[mi], m, mean});
        }
    }
    return rows;
}

struct ConvergenceConfig {
    Method method = Method::chebyshev;
    int m = 1;
    double h_start = 0.5;
    double h_ratio = 0.5;
    int steps = 8;
    int error_samples = 1001;
    /// errors within 100x of the 1e-14 roundoff floor are excluded from the
    /// slope fit
    double floor = 1e-12;
};

struct ConvergenceResult {
    std::vector<double> h;
    std::vector<double> max_error;
    std::vector<bool> at_floor;
    double slope = 0.0;  // least-squares slope of log(err) vs log(h), pre-floor
    int fitted_points = 0;
};

/// Implicitize shrinking left segments [0,h] of the curve (fixed frame) and
/// fit the convergence order of the max algebraic error.
inline ConvergenceResult convergence_study(const ParametricCurve& curve,
                                           const ConvergenceConfig& cfg) {
    const auto frame = BarycentricFrame::standard(2);
    ConvergenceResult out;
    double h = cfg.h_start;
    for (int i = 0; i < cfg.steps; ++i, h *= cfg.h_ratio) {
        const auto seg = curve_segment(curve, h);
        const auto D = build_D(seg, cfg.m, frame, cfg.method);
        const auto r = min_singular(D);
        const double err = algebraic_error_max(seg, *r.solution, cfg.error_samples);
        out.h.push_back(h);
        out.max_error.push_back(err);
        out.at_floor.push_back(err < cfg.floor);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int c = 0;
    for (std::size_t i = 0; i < out.h.size(); ++i) {
        if (out.at_floor[i]) continue;
        const double x = std::log(out.h[i]), y = std::log(out.max_error[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++c;
    }
    out.fitted_points = c;
    if (c >= 2) out.slope = (c * sxy - sx * sy) / (c * sxx - sx * sx);
    return out;
}

/// Sign changes of q(p(t)) over nsamples uniform parameters (zero samples
/// are skipped). The paper relates this count to the convergence rate for
/// the Chebyshev method; it is reported, never asserted.
inline int error_sign_changes(const ParametricCurve& curve, const ImplicitPolynomial& q,
                              int nsamples = 1001) {
    int changes = 0;
    int prev = 0;
    for (int i = 0; i < nsamples; ++i) {
        const double t = static_cast<double>(i) / (nsamples - 1);
        const double v = q.eval(eval_curve(curve, t));
        const int s = (v > 0.0) - (v < 0.0);
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

}  // namespace implicitize
