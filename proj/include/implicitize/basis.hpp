#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "implicitize/detail.hpp"

namespace implicitize {

enum class BasisKind {
    bernstein,
    lagrange_uniform,
    lagrange_chebyshev,
    chebyshev,
    legendre,
    monomial,
};

/// Scaling of the shifted Legendre functions: sup_normalized has P_j(1) = 1
/// (max modulus 1 on [0,1]); orthonormal has unit L2 norm on [0,1],
/// i.e. sqrt(2j+1) * P_j(2t-1).
enum class LegendreScaling { sup_normalized, orthonormal };

/// A univariate polynomial basis of L = degree+1 functions on [0,1].
/// Polynomial families are degree-ordered; Lagrange families are ordered by
/// ascending node.
struct BasisFamily {
    BasisKind kind = BasisKind::bernstein;
    int degree = 0;
    LegendreScaling scaling = LegendreScaling::sup_normalized;

    int size() const { return degree + 1; }
};

/// Chebyshev points on [0,1]: t_j = (1 - cos((j-1)pi/(L-1)))/2, j = 1..L.
/// Strictly increasing, t_1 = 0 and t_L = 1.
inline std::vector<double> chebyshev_points(int count) {
    if (count < 2) throw std::invalid_argument("chebyshev_points: need at least 2 points");
    std::vector<double> t(count);
    const int n = count - 1;
    for (int j = 0; j <= n; ++j) {
        t[j] = 0.5 * (1.0 - std::cos(j * std::numbers::pi / n));
    }
    t.front() = 0.0;
    t.back() = 1.0;
    return t;
}

namespace detail {

/// Values of the shifted Legendre polynomials P_0..P_deg at t in [0,1],
/// sup-normalized (P_j(1) = 1).
inline std::vector<double> shifted_legendre_values(int deg, double t) {
    std::vector<double> p(deg + 1);
    const double x = 2.0 * t - 1.0;
    p[0] = 1.0;
    if (deg >= 1) p[1] = x;
    for (int j = 1; j < deg; ++j) {
        p[j + 1] = ((2.0 * j + 1.0) * x * p[j] - j * p[j - 1]) / (j + 1.0);
    }
    return p;
}

/// All Bernstein basis values B_0^d(t)..B_d^d(t) by the stable recurrence.
inline std::vector<double> bernstein_values(int deg, double t) {
    std::vector<double> b(deg + 1, 0.0);
    b[0] = 1.0;
    const double u = 1.0 - t;
    for (int i = 1; i <= deg; ++i) {
        b[i] = t * b[i - 1];
        for (int j = i - 1; j >= 1; --j) b[j] = t * b[j - 1] + u * b[j];
        b[0] = u * b[0];
    }
    return b;
}

struct LagrangeNodes {
    std::vector<double> nodes;
    std::vector<double> weights;  // barycentric weights, arbitrary scale
};

inline LagrangeNodes lagrange_uniform_nodes(int deg) {
    if (deg < 1) throw std::invalid_argument("lagrange basis needs degree >= 1");
    LagrangeNodes ln;
    ln.nodes.resize(deg + 1);
    ln.weights.resize(deg + 1);
    for (int j = 0; j <= deg; ++j) {
        ln.nodes[j] = static_cast<double>(j) / deg;
        ln.weights[j] = (j % 2 == 0 ? 1.0 : -1.0) * binomial(deg, j);
    }
    // rescale so the largest weight is 1 (the formula is scale invariant)
    double wmax = 0.0;
    for (double w : ln.weights) wmax = std::max(wmax, std::abs(w));
    for (double& w : ln.weights) w /= wmax;
    return ln;
}

inline LagrangeNodes lagrange_chebyshev_nodes(int deg) {
    if (deg < 1) throw std::invalid_argument("lagrange basis needs degree >= 1");
    LagrangeNodes ln;
    ln.nodes = chebyshev_points(deg + 1);
    ln.weights.resize(deg + 1);
    for (int j = 0; j <= deg; ++j) {
        double d = (j == 0 || j == deg) ? 0.5 : 1.0;
        ln.weights[j] = (j % 2 == 0 ? d : -d);
    }
    return ln;
}

/// Cardinal basis values by the barycentric interpolation formula.
inline std::vector<double> lagrange_values(const LagrangeNodes& ln, double t) {
    const int L = static_cast<int>(ln.nodes.size());
    std::vector<double> v(L, 0.0);
    for (int j = 0; j < L; ++j) {
        if (t == ln.nodes[j]) {
            v[j] = 1.0;
            return v;
        }
    }
    double denom = 0.0;
    for (int j = 0; j < L; ++j) {
        v[j] = ln.weights[j] / (t - ln.nodes[j]);
        denom += v[j];
    }
    for (int j = 0; j < L; ++j) v[j] /= denom;
    return v;
}

}  // namespace detail

/// Evaluate all L basis functions of the family at t in [0,1].
inline std::vector<double> eval_basis(const BasisFamily& family, double t) {
    if (t < 0.0 || t > 1.0) throw std::domain_error("eval_basis: t outside [0,1]");
    const int d = family.degree;
    switch (family.kind) {
        case BasisKind::bernstein:
            return detail::bernstein_values(d, t);
        case BasisKind::lagrange_uniform:
            return detail::lagrange_values(detail::lagrange_uniform_nodes(d), t);
        case BasisKind::lagrange_chebyshev:
            return detail::lagrange_values(detail::lagrange_chebyshev_nodes(d), t);
        case BasisKind::chebyshev: {
            std::vector<double> v(d + 1);
            const double x = 2.0 * t - 1.0;
            v[0] = 1.0;
            if (d >= 1) v[1] = x;
            for (int j = 1; j < d; ++j) v[j + 1] = 2.0 * x * v[j] - v[j - 1];
            return v;
        }
        case BasisKind::legendre: {
            auto v = detail::shifted_legendre_values(d, t);
            if (family.scaling == LegendreScaling::orthonormal) {
                for (int j = 0; j <= d; ++j) v[j] *= std::sqrt(2.0 * j + 1.0);
            }
            return v;
        }
        case BasisKind::monomial: {
            std::vector<double> v(d + 1);
            v[0] = 1.0;
            for (int j = 1; j <= d; ++j) v[j] = v[j - 1] * t;
            return v;
        }
    }
    throw std::logic_error("eval_basis: unknown basis kind");
}

/// Chebyshev interpolation coefficients from samples at chebyshev_points(L),
/// ascending-node order, by a direct DCT-I. The returned c satisfy
/// f(t) ~ sum_j c_j T_j(2t-1) and are exact (to roundoff) for polynomial
/// samples of degree <= L-1.
inline std::vector<double> dct1_chebyshev_coeffs(std::span<const double> samples) {
    const int L = static_cast<int>(samples.size());
    if (L < 2) throw std::invalid_argument("dct1_chebyshev_coeffs: need at least 2 samples");
    const int n = L - 1;
    std::vector<double> c(L);
    // ascending t-samples are reversed Chebyshev-Lobatto x-samples, which
    // flips the sign of every odd coefficient
    for (int j = 0; j <= n; ++j) {
        double acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            double term = samples[i] * std::cos(j * i * std::numbers::pi / n);
            if (i == 0 || i == n) term *= 0.5;
            acc += term;
        }
        c[j] = (j % 2 == 0 ? 2.0 : -2.0) * acc / n;
    }
    c[0] *= 0.5;
    c[n] *= 0.5;
    return c;
}

/// Gauss rule on [0,1] with positive weights; integrates polynomials of
/// degree <= exact_degree. For gauss_chebyshev_rule the weight function
/// 1/sqrt(t(1-t)) is implied and the weights sum to pi instead of 1.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int exact_degree = 0;
};

/// Gauss-Legendre rule on [0,1]; nodes by Newton iteration on P_n.
inline QuadratureRule gauss_legendre_rule(int npoints) {
    if (npoints < 1 || npoints > 512) throw std::invalid_argument("gauss_legendre_rule: npoints must be in [1,512]");
    QuadratureRule rule;
    rule.nodes.resize(npoints);
    rule.weights.resize(npoints);
    rule.exact_degree = 2 * npoints - 1;
    const int n = npoints;
    for (int i = 1; i <= n; ++i) {
        double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // P_n(x) and P'_n(x) on [-1,1]
            double p0 = 1.0, p1 = x;
            for (int j = 1; j < n; ++j) {
                double p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = -p1 / dp;
            x += dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // map [-1,1] -> [0,1]; i ascending gives x descending
        rule.nodes[n - i] = 0.5 * (1.0 + x);
        rule.weights[n - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

/// Gauss-Chebyshev rule for int_0^1 f(t)/sqrt(t(1-t)) dt; all weights pi/n.
inline QuadratureRule gauss_chebyshev_rule(int npoints) {
    if (npoints < 1) throw std::invalid_argument("gauss_chebyshev_rule: npoints must be >= 1");
    QuadratureRule rule;
    rule.nodes.resize(npoints);
    rule.weights.assign(npoints, std::numbers::pi / npoints);
    rule.exact_degree = 2 * npoints - 1;
    for (int k = 1; k <= npoints; ++k) {
        double x = std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * npoints));
        rule.nodes[npoints - k] = 0.5 * (1.0 + x);
    }
    return rule;
}

/// Legendre expansion coefficients of f from samples at the rule's nodes:
/// c_j = <f, P_j> / <P_j, P_j> by quadrature. f_degree is the declared
/// polynomial degree of the sampled function; the rule must integrate
/// degree f_degree + count - 1 exactly.
inline std::vector<double> legendre_coeffs(std::span<const double> samples,
                                           const QuadratureRule& rule,
                                           int count,
                                           LegendreScaling scaling,
                                           int f_degree) {
    if (count < 1) throw std::invalid_argument("legendre_coeffs: count must be >= 1");
    if (samples.size() != rule.nodes.size())
        throw std::invalid_argument("legendre_coeffs: samples do not match rule nodes");
    if (rule.exact_degree < f_degree + count - 1)
        throw std::invalid_argument("legendre_coeffs: quadrature rule too weak for declared degree");
    std::vector<double> c(count, 0.0);
    const int npts = static_cast<int>(rule.nodes.size());
    for (int i = 0; i < npts; ++i) {
        auto p = detail::shifted_legendre_values(count - 1, rule.nodes[i]);
        const double wf = rule.weights[i] * samples[i];
        for (int j = 0; j < count; ++j) c[j] += wf * p[j];
    }
    for (int j = 0; j < count; ++j) {
        // <P_j, P_j> = 1/(2j+1) on [0,1] in the sup-normalized scaling
        c[j] *= (scaling == LegendreScaling::sup_normalized) ? (2.0 * j + 1.0)
                                                             : std::sqrt(2.0 * j + 1.0);
    }
    return c;
}

/// Product of two polynomials in Bernstein form. Result degree is capped at
/// 120 to keep the binomial-ratio coefficients accurate.
inline std::vector<double> bernstein_multiply(std::span<const double> a, std::span<const double> b) {
    const int d1 = static_cast<int>(a.size()) - 1;
    const int d2 = static_cast<int>(b.size()) - 1;
    if (d1 < 0 || d2 < 0) throw std::invalid_argument("bernstein_multiply: empty input");
    const int d = d1 + d2;
    if (d > 120) throw std::invalid_argument("bernstein_multiply: unsupported degree (result > 120)");
    std::vector<double> c(d + 1, 0.0);
    for (int k = 0; k <= d; ++k) {
        const double denom = detail::binomial(d, k);
        double acc = 0.0;
        const int ilo = std::max(0, k - d2);
        const int ihi = std::min(d1, k);
        for (int i = ilo; i <= ihi; ++i) {
            acc += detail::binomial(d1, i) * detail::binomial(d2, k - i) * a[i] * b[k - i];
        }
        c[k] = acc / denom;
    }
    return c;
}

/// Degree elevation by r, as r successive single-step elevations (each a
/// convex combination, so values are preserved to roundoff at any r).
inline std::vector<double> bernstein_degree_elevate(std::span<const double> coeffs, int r) {
    if (r < 0) throw std::invalid_argument("bernstein_degree_elevate: r must be >= 0");
    std::vector<double> c(coeffs.begin(), coeffs.end());
    for (int step = 0; step < r; ++step) {
        const int d = static_cast<int>(c.size()) - 1;
        std::vector<double> e(d + 2);
        e[0] = c[0];
        e[d + 1] = c[d];
        for (int j = 1; j <= d; ++j) {
            const double a = static_cast<double>(j) / (d + 1);
            e[j] = a * c[j - 1] + (1.0 - a) * c[j];
        }
        c = std::move(e);
    }
    return c;
}

/// Left de Casteljau segment: coefficients on [0,h] reparametrized to [0,1].
inline std::vector<double> bernstein_subdivide_left(std::span<const double> coeffs, double h) {
    if (!(h > 0.0) || h > 1.0) throw std::invalid_argument("bernstein_subdivide_left: h must be in (0,1]");
    std::vector<double> work(coeffs.begin(), coeffs.end());
    const int d = static_cast<int>(work.size()) - 1;
    std::vector<double> out(d + 1);
    out[0] = work[0];
    for (int r = 1; r <= d; ++r) {
        for (int i = 0; i <= d - r; ++i) work[i] = (1.0 - h) * work[i] + h * work[i + 1];
        out[r] = work[0];
    }
    return out;
}

/// Value of a polynomial in Bernstein form at t (de Casteljau).
inline double bernstein_eval(std::span<const double> coeffs, double t) {
    std::vector<double> work(coeffs.begin(), coeffs.end());
    const int d = static_cast<int>(work.size()) - 1;
    for (int r = 1; r <= d; ++r)
        for (int i = 0; i <= d - r; ++i) work[i] = (1.0 - t) * work[i] + t * work[i + 1];
    return work[0];
}

/// Monomial coefficients (in t on [0,1]) of a polynomial in Bernstein form.
inline std::vector<double> bernstein_to_monomial(std::span<const double> coeffs) {
    const int d = static_cast<int>(coeffs.size()) - 1;
    std::vector<double> mono(d + 1, 0.0);
    for (int k = 0; k <= d; ++k) {
        const double cnk = detail::binomial(d, k);
        double acc = 0.0;
        for (int j = 0; j <= k; ++j) {
            const double term = cnk * detail::binomial(k, j) * coeffs[j];
            acc += ((k - j) % 2 == 0) ? term : -term;
        }
        mono[k] = acc;
    }
    return mono;
}

/// Bernstein coefficients from monomial coefficients on [0,1].
inline std::vector<double> monomial_to_bernstein(std::span<const double> mono) {
    const int d = static_cast<int>(mono.size()) - 1;
    std::vector<double> c(d + 1, 0.0);
    for (int j = 0; j <= d; ++j) {
        double acc = 0.0;
        for (int k = 0; k <= j; ++k) {
            acc += mono[k] * detail::binomial(j, k) / detail::binomial(d, k);
        }
        c[j] = acc;
    }
    return c;
}

}  // namespace implicitize
