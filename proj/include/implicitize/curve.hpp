#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "implicitize/basis.hpp"
#include "implicitize/detail.hpp"
#include "implicitize/geometry.hpp"

namespace implicitize {

enum class Method {
    bernstein,
    lagrange_uniform,
    lagrange_chebyshev,
    chebyshev,
    legendre,
    legendre_orthonormal,
    monomial,
    weak_unit,
    weak_chebyshev,
};

enum class WeakWeight { unit, chebyshev };

inline bool is_weak(Method m) { return m == Method::weak_unit || m == Method::weak_chebyshev; }

inline std::string method_name(Method m) {
    switch (m) {
        case Method::bernstein: return "bernstein";
        case Method::lagrange_uniform: return "lagrange-uniform";
        case Method::lagrange_chebyshev: return "lagrange-chebyshev";
        case Method::chebyshev: return "chebyshev";
        case Method::legendre: return "legendre";
        case Method::legendre_orthonormal: return "legendre-orthonormal";
        case Method::monomial: return "monomial";
        case Method::weak_unit: return "weak-unit";
        case Method::weak_chebyshev: return "weak-chebyshev";
    }
    return "?";
}

struct BuildOptions {
    /// Number of basis functions L; 0 means the default mn+1. Values above
    /// mn+1 (oversampling / degree elevation) are supported for the
    /// Bernstein and Lagrange methods only.
    int basis_size = 0;
};

/// The L x M matrix D_alpha of a D-type method (column k holds the
/// coefficients of q_k(p(t)) in the alpha basis), or the M x M weak matrix.
struct CoefficientMatrix {
    Eigen::MatrixXd entries;
    Method method = Method::bernstein;
    int curve_degree = 0;     // n
    int implicit_degree = 0;  // m
    std::optional<BarycentricFrame> frame;

    int rows() const { return static_cast<int>(entries.rows()); }
    int cols() const { return static_cast<int>(entries.cols()); }
};

namespace detail {

/// Bernstein rows (3 x (n+1)) of the barycentric components of the curve.
inline Eigen::MatrixXd barycentric_components(const ParametricCurve& curve,
                                              const BarycentricFrame& frame) {
    if (frame.dim() != 2) throw std::invalid_argument("build_D: curve needs a planar frame");
    return frame.map() * curve.coeffs;
}

/// Barycentric coordinates of p(t) for a row matrix of component coeffs.
inline Eigen::Vector3d eval_rows(const Eigen::MatrixXd& rows, double t) {
    Eigen::Vector3d v;
    for (int r = 0; r < 3; ++r) {
        std::vector<double> row(rows.row(r).begin(), rows.row(r).end());
        v[r] = bernstein_eval(row, t);
    }
    return v;
}

/// All M values q_k(lambda) for |k| = m, descending lexicographic order.
inline void multinomial_values(int m, const Eigen::Vector3d& lam,
                               const std::vector<std::array<int, 4>>& mis, double* out) {
    std::vector<double> p1(m + 1), p2(m + 1), p3(m + 1);
    p1[0] = p2[0] = p3[0] = 1.0;
    for (int e = 1; e <= m; ++e) {
        p1[e] = p1[e - 1] * lam[0];
        p2[e] = p2[e - 1] * lam[1];
        p3[e] = p3[e - 1] * lam[2];
    }
    for (std::size_t k = 0; k < mis.size(); ++k) {
        out[k] = multinomial<4>(m, mis[k]) * p1[mis[k][0]] * p2[mis[k][1]] * p3[mis[k][2]];
    }
}

inline std::vector<double> eigen_row(const Eigen::MatrixXd& m, int r) {
    return std::vector<double>(m.row(r).begin(), m.row(r).end());
}

}  // namespace detail

/// Build the D_alpha matrix of Algorithm 1 for the chosen basis. Column k
/// holds the expansion of q_k(p(t)) (a degree-mn polynomial) in the basis
/// of degree L-1.
inline CoefficientMatrix build_D(const ParametricCurve& curve, int m,
                                 const BarycentricFrame& frame, Method method,
                                 const BuildOptions& options = {}) {
    if (m < 1) throw std::invalid_argument("build_D: m must be >= 1");
    if (is_weak(method)) throw std::invalid_argument("build_D: weak methods use build_weak");
    const int n = curve.degree();
    const int deg = m * n;  // degree of q_k(p(t))
    if (deg + 1 > 400) throw std::invalid_argument("build_D: unsupported degree (mn+1 > 400)");
    int L = deg + 1;
    if (options.basis_size != 0) {
        if (options.basis_size < L)
            throw std::invalid_argument("build_D: basis size must be >= mn+1");
        if (options.basis_size > L && method != Method::bernstein &&
            method != Method::lagrange_uniform && method != Method::lagrange_chebyshev)
            throw std::invalid_argument("build_D: oversampling only supported for Bernstein/Lagrange");
        L = options.basis_size;
    }
    const auto mis = detail::multi_indices(m, 3);
    const int M = static_cast<int>(mis.size());
    const Eigen::MatrixXd lam = detail::barycentric_components(curve, frame);

    CoefficientMatrix D;
    D.method = method;
    D.curve_degree = n;
    D.implicit_degree = m;
    D.frame = frame;
    D.entries.resize(L, M);

    switch (method) {
        case Method::bernstein: {
            // powers of each component in Bernstein form, lam_c^e of degree e*n
            std::array<std::vector<std::vector<double>>, 3> pow;
            for (int c = 0; c < 3; ++c) {
                pow[c].resize(m + 1);
                pow[c][0] = {1.0};
                std::vector<double> base = detail::eigen_row(lam, c);
                for (int e = 1; e <= m; ++e) pow[c][e] = bernstein_multiply(pow[c][e - 1], base);
            }
            for (int k = 0; k < M; ++k) {
                auto col = bernstein_multiply(pow[0][mis[k][0]], pow[1][mis[k][1]]);
                col = bernstein_multiply(col, pow[2][mis[k][2]]);
                if (L > deg + 1) col = bernstein_degree_elevate(col, L - 1 - deg);
                const double w = detail::multinomial<4>(m, mis[k]);
                for (int j = 0; j < L; ++j) D.entries(j, k) = w * col[j];
            }
            break;
        }
        case Method::lagrange_uniform:
        case Method::lagrange_chebyshev: {
            std::vector<double> nodes;
            if (method == Method::lagrange_uniform) {
                nodes.resize(L);
                for (int j = 0; j < L; ++j) nodes[j] = static_cast<double>(j) / (L - 1);
            } else {
                nodes = chebyshev_points(L);
            }
            std::vector<double> vals(M);
            for (int j = 0; j < L; ++j) {
                const Eigen::Vector3d v = detail::eval_rows(lam, nodes[j]);
                detail::multinomial_values(m, v, mis, vals.data());
                for (int k = 0; k < M; ++k) D.entries(j, k) = vals[k];
            }
            break;
        }
        case Method::chebyshev: {
            const auto nodes = chebyshev_points(L);
            Eigen::MatrixXd samples(L, M);
            std::vector<double> vals(M);
            for (int j = 0; j < L; ++j) {
                const Eigen::Vector3d v = detail::eval_rows(lam, nodes[j]);
                detail::multinomial_values(m, v, mis, vals.data());
                for (int k = 0; k < M; ++k) samples(j, k) = vals[k];
            }
            std::vector<double> colbuf(L);
            for (int k = 0; k < M; ++k) {
                for (int j = 0; j < L; ++j) colbuf[j] = samples(j, k);
                const auto c = dct1_chebyshev_coeffs(colbuf);
                for (int j = 0; j < L; ++j) D.entries(j, k) = c[j];
            }
            break;
        }
        case Method::legendre:
        case Method::legendre_orthonormal: {
            const bool orth = (method == Method::legendre_orthonormal);
            const int npts = (deg + L + 1) / 2 + 1;
            const auto rule = gauss_legendre_rule(npts);
            // P(j,i) = scale_j * P_j(t_i) * w_i, F(i,k) = q_k(p(t_i)), D = P F
            Eigen::MatrixXd P(L, npts), F(npts, M);
            std::vector<double> vals(M);
            for (int i = 0; i < npts; ++i) {
                const auto pj = detail::shifted_legendre_values(L - 1, rule.nodes[i]);
                for (int j = 0; j < L; ++j) P(j, i) = pj[j] * rule.weights[i];
                const Eigen::Vector3d v = detail::eval_rows(lam, rule.nodes[i]);
                detail::multinomial_values(m, v, mis, vals.data());
                for (int k = 0; k < M; ++k) F(i, k) = vals[k];
            }
            for (int j = 0; j < L; ++j) {
                const double scale = orth ? std::sqrt(2.0 * j + 1.0) : (2.0 * j + 1.0);
                P.row(j) *= scale;
            }
            D.entries = P * F;
            break;
        }
        case Method::monomial: {
            std::array<std::vector<std::vector<double>>, 3> pow;
            for (int c = 0; c < 3; ++c) {
                pow[c].resize(m + 1);
                pow[c][0] = {1.0};
                auto base = bernstein_to_monomial(detail::eigen_row(lam, c));
                for (int e = 1; e <= m; ++e) {
                    // plain convolution in the monomial basis
                    const auto& a = pow[c][e - 1];
                    std::vector<double> prod(a.size() + base.size() - 1, 0.0);
                    for (std::size_t i = 0; i < a.size(); ++i)
                        for (std::size_t l = 0; l < base.size(); ++l) prod[i + l] += a[i] * base[l];
                    pow[c][e] = std::move(prod);
                }
            }
            for (int k = 0; k < M; ++k) {
                const auto& a = pow[0][mis[k][0]];
                const auto& b = pow[1][mis[k][1]];
                const auto& c = pow[2][mis[k][2]];
                std::vector<double> ab(a.size() + b.size() - 1, 0.0);
                for (std::size_t i = 0; i < a.size(); ++i)
                    for (std::size_t l = 0; l < b.size(); ++l) ab[i + l] += a[i] * b[l];
                std::vector<double> col(ab.size() + c.size() - 1, 0.0);
                for (std::size_t i = 0; i < ab.size(); ++i)
                    for (std::size_t l = 0; l < c.size(); ++l) col[i + l] += ab[i] * c[l];
                const double w = detail::multinomial<4>(m, mis[k]);
                for (int j = 0; j < L; ++j)
                    D.entries(j, k) = w * (j < static_cast<int>(col.size()) ? col[j] : 0.0);
            }
            break;
        }
        default:
            throw std::logic_error("build_D: unhandled method");
    }
    return D;
}

/// Build the weak-method Gram matrix M_w with entries
/// <q_k o p, q_l o p>_w by Gauss quadrature exact for the degree-2mn
/// integrand. Symmetric by construction.
inline CoefficientMatrix build_weak(const ParametricCurve& curve, int m,
                                    const BarycentricFrame& frame, WeakWeight weight) {
    if (m < 1) throw std::invalid_argument("build_weak: m must be >= 1");
    const int n = curve.degree();
    const int deg = m * n;
    const int npts = deg + 2;  // exact through degree 2*deg+3
    if (npts > 512) throw std::invalid_argument("build_weak: unsupported degree (quadrature cap)");
    const QuadratureRule rule =
        (weight == WeakWeight::unit) ? gauss_legendre_rule(npts) : gauss_chebyshev_rule(npts);
    const auto mis = detail::multi_indices(m, 3);
    const int M = static_cast<int>(mis.size());
    const Eigen::MatrixXd lam = detail::barycentric_components(curve, frame);

    CoefficientMatrix W;
    W.method = (weight == WeakWeight::unit) ? Method::weak_unit : Method::weak_chebyshev;
    W.curve_degree = n;
    W.implicit_degree = m;
    W.frame = frame;
    W.entries = Eigen::MatrixXd::Zero(M, M);
    std::vector<double> vals(M);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const Eigen::Vector3d v = detail::eval_rows(lam, rule.nodes[i]);
        detail::multinomial_values(m, v, mis, vals.data());
        const double w = rule.weights[i];
        for (int k = 0; k < M; ++k)
            for (int l = 0; l < M; ++l) W.entries(k, l) += w * vals[k] * vals[l];
    }
    return W;
}

/// Solution of an implicitization run: the unit coefficient vector, the full
/// spectrum (descending), and diagnostics. For matrices carrying geometric
/// metadata the vector is also wrapped as an ImplicitPolynomial.
struct ImplicitizationResult {
    Eigen::VectorXd b;
    Eigen::VectorXd sigma;   // descending, >= 0
    int selected_index = 0;  // position in sigma
    double bound = 0.0;      // filled by error_bound
    std::string method;
    std::optional<ImplicitPolynomial> solution;

    double sigma_min() const { return sigma[sigma.size() - 1]; }
    double sigma_max() const { return sigma[0]; }
    double selected_sigma() const { return sigma[selected_index]; }
};

namespace detail {

inline void fix_sign(Eigen::VectorXd& v) {
    int imax = 0;
    for (int i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    if (v[imax] < 0.0) v = -v;
}

inline void attach_solution(ImplicitizationResult& r, const CoefficientMatrix& mat) {
    if (!mat.frame) return;
    const int dim = mat.frame->dim();
    if (r.b.size() == implicit_basis_size(mat.implicit_degree, dim)) {
        r.solution = ImplicitPolynomial(mat.implicit_degree, *mat.frame, r.b);
    }
}

}  // namespace detail

/// SVD of a D-type matrix; returns the right singular vector of the
/// (index_from_smallest)-th smallest singular value (default the smallest).
/// The spectrum has length M: when L < M it is padded with exact zeros for
/// the directions outside the row space.
inline ImplicitizationResult min_singular(const CoefficientMatrix& D, int index_from_smallest = 0) {
    if (is_weak(D.method)) throw std::invalid_argument("min_singular: needs a D-type matrix");
    const int M = D.cols();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(D.entries, Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) throw std::runtime_error("min_singular: SVD did not converge");
    const int nsv = static_cast<int>(svd.singularValues().size());
    ImplicitizationResult r;
    r.method = method_name(D.method);
    r.sigma = Eigen::VectorXd::Zero(M);
    r.sigma.head(nsv) = svd.singularValues();
    if (index_from_smallest < 0 || index_from_smallest >= M)
        throw std::invalid_argument("min_singular: singular vector index out of range");
    r.selected_index = M - 1 - index_from_smallest;
    r.b = svd.matrixV().col(r.selected_index);
    detail::fix_sign(r.b);
    detail::attach_solution(r, D);
    return r;
}

/// Symmetric eigendecomposition of a weak matrix; returns the eigenvector of
/// the (index_from_smallest)-th smallest eigenvalue. Reported sigma are the
/// eigenvalues clamped to >= 0, descending.
inline ImplicitizationResult min_eigen(const CoefficientMatrix& Mw, int index_from_smallest = 0) {
    if (!is_weak(Mw.method)) throw std::invalid_argument("min_eigen: needs a weak-type matrix");
    if (Mw.rows() != Mw.cols()) throw std::invalid_argument("min_eigen: matrix not square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Mw.entries);
    if (es.info() != Eigen::Success) throw std::runtime_error("min_eigen: eigensolver did not converge");
    const int M = Mw.cols();
    if (index_from_smallest < 0 || index_from_smallest >= M)
        throw std::invalid_argument("min_eigen: eigenvector index out of range");
    ImplicitizationResult r;
    r.method = method_name(Mw.method);
    r.sigma.resize(M);
    for (int i = 0; i < M; ++i) r.sigma[i] = std::max(es.eigenvalues()[M - 1 - i], 0.0);
    r.selected_index = M - 1 - index_from_smallest;
    r.b = es.eigenvectors().col(index_from_smallest);
    detail::fix_sign(r.b);
    detail::attach_solution(r, Mw);
    return r;
}

/// Max of |q(p(t))| over nsamples uniform parameters (endpoints included),
/// evaluated through the same homogeneous-to-barycentric path as the
/// matrix builders.
inline double algebraic_error_max(const ParametricCurve& curve, const ImplicitPolynomial& q,
                                  int nsamples = 1001) {
    if (nsamples < 2) throw std::invalid_argument("algebraic_error_max: nsamples must be >= 2");
    double worst = 0.0;
    for (int i = 0; i < nsamples; ++i) {
        const double t = static_cast<double>(i) / (nsamples - 1);
        const Eigen::Vector3d p = eval_curve(curve, t);
        worst = std::max(worst, std::abs(q.eval(p)));
    }
    return worst;
}

/// Upper bound max_t ||alpha(t)||_2 * sigma_selected on the maximal
/// algebraic error; the norm factor is estimated over 2001 uniform samples.
inline double error_bound(const CoefficientMatrix& D, const ImplicitizationResult& result) {
    if (is_weak(D.method)) throw std::invalid_argument("error_bound: needs a D-type matrix");
    BasisFamily family;
    family.degree = D.rows() - 1;
    switch (D.method) {
        case Method::bernstein: family.kind = BasisKind::bernstein; break;
        case Method::lagrange_uniform: family.kind = BasisKind::lagrange_uniform; break;
        case Method::lagrange_chebyshev: family.kind = BasisKind::lagrange_chebyshev; break;
        case Method::chebyshev: family.kind = BasisKind::chebyshev; break;
        case Method::legendre:
            family.kind = BasisKind::legendre;
            family.scaling = LegendreScaling::sup_normalized;
            break;
        case Method::legendre_orthonormal:
            family.kind = BasisKind::legendre;
            family.scaling = LegendreScaling::orthonormal;
            break;
        case Method::monomial: family.kind = BasisKind::monomial; break;
        default: throw std::logic_error("error_bound: unhandled method");
    }
    double maxnorm = 0.0;
    const int samples = 2001;
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / (samples - 1);
        const auto a = eval_basis(family, t);
        double s = 0.0;
        for (double v : a) s += v * v;
        maxnorm = std::max(maxnorm, std::sqrt(s));
    }
    return maxnorm * result.selected_sigma();
}

/// Number of singular values <= tol * sigma_max (the numerical kernel).
inline int kernel_dimension(const CoefficientMatrix& D, double tol) {
    if (!(tol > 0.0) || tol >= 1.0) throw std::invalid_argument("kernel_dimension: tol must be in (0,1)");
    const int M = D.cols();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(D.entries);
    const int nsv = static_cast<int>(svd.singularValues().size());
    Eigen::VectorXd sigma = Eigen::VectorXd::Zero(M);
    sigma.head(nsv) = svd.singularValues();
    const double smax = sigma[0];
    if (smax == 0.0) return M;
    int count = 0;
    for (int i = 0; i < M; ++i)
        if (sigma[i] <= tol * smax) ++count;
    return count;
}

/// D^T D as a weak-type matrix (exactly symmetric).
inline CoefficientMatrix gram_product(const CoefficientMatrix& D) {
    if (is_weak(D.method)) throw std::invalid_argument("gram_product: needs a D-type matrix");
    CoefficientMatrix G;
    G.method = Method::weak_unit;
    G.curve_degree = D.curve_degree;
    G.implicit_degree = D.implicit_degree;
    G.frame = D.frame;
    Eigen::MatrixXd S = D.entries.transpose() * D.entries;
    G.entries = 0.5 * (S + S.transpose());
    return G;
}

}  // namespace implicitize
