#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "implicitize/basis.hpp"
#include "implicitize/curve.hpp"
#include "implicitize/detail.hpp"
#include "implicitize/geometry.hpp"

namespace implicitize {

enum class SurfaceMethod {
    tensor_bernstein,
    tensor_lagrange_uniform,
    tensor_chebyshev,
    tensor_legendre_orthonormal,
    tri_bernstein,
    tri_lagrange,
    weak_unit,
};

inline bool is_weak(SurfaceMethod m) { return m == SurfaceMethod::weak_unit; }

inline std::string method_name(SurfaceMethod m) {
    switch (m) {
        case SurfaceMethod::tensor_bernstein: return "tensor-bernstein";
        case SurfaceMethod::tensor_lagrange_uniform: return "tensor-lagrange-uniform";
        case SurfaceMethod::tensor_chebyshev: return "tensor-chebyshev";
        case SurfaceMethod::tensor_legendre_orthonormal: return "tensor-legendre-orthonormal";
        case SurfaceMethod::tri_bernstein: return "tri-bernstein";
        case SurfaceMethod::tri_lagrange: return "tri-lagrange";
        case SurfaceMethod::weak_unit: return "weak-unit";
    }
    return "?";
}

/// D matrix (or weak matrix) for surface implicitization. Tensor methods
/// index rows by j = j1*L2 + j2 over the bidegree-(mn1, mn2) basis;
/// triangular methods index the total-degree-mn basis in descending
/// lexicographic multi-index order.
struct SurfaceCoefficientMatrix {
    Eigen::MatrixXd entries;
    SurfaceMethod method = SurfaceMethod::tensor_bernstein;
    std::array<int, 2> patch_degrees = {0, 0};
    int implicit_degree = 0;
    std::optional<BarycentricFrame> frame;

    int rows() const { return static_cast<int>(entries.rows()); }
    int cols() const { return static_cast<int>(entries.cols()); }
};

namespace detail {

/// Tensor-product Bernstein multiplication on [0,1]^2.
inline Eigen::MatrixXd tensor_bernstein_multiply(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const int d1 = static_cast<int>(a.rows()) - 1, e1 = static_cast<int>(b.rows()) - 1;
    const int d2 = static_cast<int>(a.cols()) - 1, e2 = static_cast<int>(b.cols()) - 1;
    if (d1 + e1 > 120 || d2 + e2 > 120)
        throw std::invalid_argument("tensor_bernstein_multiply: unsupported degree");
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d1 + e1 + 1, d2 + e2 + 1);
    for (int k1 = 0; k1 <= d1 + e1; ++k1) {
        for (int k2 = 0; k2 <= d2 + e2; ++k2) {
            double acc = 0.0;
            const int i1lo = std::max(0, k1 - e1), i1hi = std::min(d1, k1);
            const int i2lo = std::max(0, k2 - e2), i2hi = std::min(d2, k2);
            for (int i1 = i1lo; i1 <= i1hi; ++i1) {
                const double w1 = binomial(d1, i1) * binomial(e1, k1 - i1);
                for (int i2 = i2lo; i2 <= i2hi; ++i2) {
                    const double w2 = binomial(d2, i2) * binomial(e2, k2 - i2);
                    acc += w1 * w2 * a(i1, i2) * b(k1 - i1, k2 - i2);
                }
            }
            c(k1, k2) = acc / (binomial(d1 + e1, k1) * binomial(d2 + e2, k2));
        }
    }
    return c;
}

/// Triangular Bernstein-Bezier multiplication; coefficients indexed by
/// multi_indices(degree, 3).
struct TriPoly {
    int degree = 0;
    Eigen::VectorXd coeffs;  // length C(degree+2, 2)
};

inline int tri_index(int degree, int k1, int k2) {
    // position of (k1,k2,degree-k1-k2) in descending lexicographic order
    int idx = 0;
    for (int a = degree; a > k1; --a) idx += degree - a + 1;
    idx += (degree - k1) - k2;
    return idx;
}

inline TriPoly tri_bernstein_multiply(const TriPoly& f, const TriPoly& g) {
    const int d1 = f.degree, d2 = g.degree, d = d1 + d2;
    if (d > 120) throw std::invalid_argument("tri_bernstein_multiply: unsupported degree");
    const auto mis1 = multi_indices(d1, 3);
    const auto mis2 = multi_indices(d2, 3);
    TriPoly out;
    out.degree = d;
    out.coeffs = Eigen::VectorXd::Zero(static_cast<int>(multi_indices(d, 3).size()));
    for (std::size_t i = 0; i < mis1.size(); ++i) {
        const double wi = multinomial<4>(d1, mis1[i]) * f.coeffs[static_cast<int>(i)];
        for (std::size_t j = 0; j < mis2.size(); ++j) {
            const double v = wi * multinomial<4>(d2, mis2[j]) * g.coeffs[static_cast<int>(j)];
            const int k1 = mis1[i][0] + mis2[j][0];
            const int k2 = mis1[i][1] + mis2[j][1];
            out.coeffs[tri_index(d, k1, k2)] += v;
        }
    }
    const auto mis = multi_indices(d, 3);
    for (std::size_t k = 0; k < mis.size(); ++k)
        out.coeffs[static_cast<int>(k)] /= multinomial<4>(d, mis[k]);
    return out;
}

/// All M values q_k(lambda) for a 4-component barycentric tuple.
inline void multinomial_values4(int m, const Eigen::Vector4d& lam,
                                const std::vector<std::array<int, 4>>& mis, double* out) {
    std::vector<double> p1(m + 1), p2(m + 1), p3(m + 1), p4(m + 1);
    p1[0] = p2[0] = p3[0] = p4[0] = 1.0;
    for (int e = 1; e <= m; ++e) {
        p1[e] = p1[e - 1] * lam[0];
        p2[e] = p2[e - 1] * lam[1];
        p3[e] = p3[e - 1] * lam[2];
        p4[e] = p4[e - 1] * lam[3];
    }
    for (std::size_t k = 0; k < mis.size(); ++k) {
        out[k] = multinomial<4>(m, mis[k]) * p1[mis[k][0]] * p2[mis[k][1]] * p3[mis[k][2]] *
                 p4[mis[k][3]];
    }
}

/// Barycentric components of a tensor patch: grids of lam_i = A * (g,h).
inline std::array<Eigen::MatrixXd, 4> barycentric_components(const TensorPatch& patch,
                                                             const BarycentricFrame& frame) {
    if (frame.dim() != 3) throw std::invalid_argument("surface build: needs a spatial frame");
    std::array<Eigen::MatrixXd, 4> lam;
    const Eigen::MatrixXd& A = frame.map();
    for (int i = 0; i < 4; ++i) {
        lam[i] = Eigen::MatrixXd::Zero(patch.coeffs[0].rows(), patch.coeffs[0].cols());
        for (int c = 0; c < 4; ++c) lam[i] += A(i, c) * patch.coeffs[c];
    }
    return lam;
}

inline std::array<TriPoly, 4> barycentric_components(const TriangularPatch& patch,
                                                     const BarycentricFrame& frame) {
    if (frame.dim() != 3) throw std::invalid_argument("surface build: needs a spatial frame");
    std::array<TriPoly, 4> lam;
    const Eigen::MatrixXd& A = frame.map();
    for (int i = 0; i < 4; ++i) {
        lam[i].degree = patch.degree;
        lam[i].coeffs = Eigen::VectorXd::Zero(patch.coeffs.cols());
        for (int c = 0; c < 4; ++c) lam[i].coeffs += A(i, c) * patch.coeffs.row(c).transpose();
    }
    return lam;
}

inline Eigen::Vector4d eval_tensor_rows(const std::array<Eigen::MatrixXd, 4>& lam, double s,
                                        double t) {
    const auto bs = bernstein_values(static_cast<int>(lam[0].rows()) - 1, s);
    const auto bt = bernstein_values(static_cast<int>(lam[0].cols()) - 1, t);
    const Eigen::Map<const Eigen::VectorXd> vs(bs.data(), bs.size());
    const Eigen::Map<const Eigen::VectorXd> vt(bt.data(), bt.size());
    Eigen::Vector4d v;
    for (int c = 0; c < 4; ++c) v[c] = vs.dot(lam[c] * vt);
    return v;
}

inline Eigen::Vector4d eval_tri_rows(const std::array<TriPoly, 4>& lam, double s, double t) {
    const auto bv = triangular_bernstein_values(lam[0].degree, s, t);
    const Eigen::Map<const Eigen::VectorXd> v(bv.data(), bv.size());
    Eigen::Vector4d out;
    for (int c = 0; c < 4; ++c) out[c] = lam[c].coeffs.dot(v);
    return out;
}

}  // namespace detail

/// D matrix for a tensor-product patch; rows indexed j = j1*L2 + j2 with
/// L1 = mn1+1, L2 = mn2+1.
inline SurfaceCoefficientMatrix build_D_tensor(const TensorPatch& patch, int m,
                                               const BarycentricFrame& frame, SurfaceMethod method) {
    if (m < 1) throw std::invalid_argument("build_D_tensor: m must be >= 1");
    const int n1 = patch.degree_s(), n2 = patch.degree_t();
    if (m * std::max(n1, n2) > 60) throw std::invalid_argument("build_D_tensor: degree cap exceeded");
    const int L1 = m * n1 + 1, L2 = m * n2 + 1, L = L1 * L2;
    const auto mis = detail::multi_indices(m, 4);
    const int M = static_cast<int>(mis.size());
    const auto lam = detail::barycentric_components(patch, frame);

    SurfaceCoefficientMatrix D;
    D.method = method;
    D.patch_degrees = {n1, n2};
    D.implicit_degree = m;
    D.frame = frame;
    D.entries.resize(L, M);

    switch (method) {
        case SurfaceMethod::tensor_bernstein: {
            std::array<std::vector<Eigen::MatrixXd>, 4> pow;
            for (int c = 0; c < 4; ++c) {
                pow[c].resize(m + 1);
                pow[c][0] = Eigen::MatrixXd::Ones(1, 1);
                for (int e = 1; e <= m; ++e)
                    pow[c][e] = detail::tensor_bernstein_multiply(pow[c][e - 1], lam[c]);
            }
            for (int k = 0; k < M; ++k) {
                Eigen::MatrixXd col = detail::tensor_bernstein_multiply(pow[0][mis[k][0]], pow[1][mis[k][1]]);
                col = detail::tensor_bernstein_multiply(col, pow[2][mis[k][2]]);
                col = detail::tensor_bernstein_multiply(col, pow[3][mis[k][3]]);
                const double w = detail::multinomial<4>(m, mis[k]);
                for (int j1 = 0; j1 < L1; ++j1)
                    for (int j2 = 0; j2 < L2; ++j2) D.entries(j1 * L2 + j2, k) = w * col(j1, j2);
            }
            break;
        }
        case SurfaceMethod::tensor_lagrange_uniform: {
            std::vector<double> vals(M);
            for (int j1 = 0; j1 < L1; ++j1) {
                const double s = static_cast<double>(j1) / (L1 - 1);
                for (int j2 = 0; j2 < L2; ++j2) {
                    const double t = static_cast<double>(j2) / (L2 - 1);
                    const Eigen::Vector4d v = detail::eval_tensor_rows(lam, s, t);
                    detail::multinomial_values4(m, v, mis, vals.data());
                    for (int k = 0; k < M; ++k) D.entries(j1 * L2 + j2, k) = vals[k];
                }
            }
            break;
        }
        case SurfaceMethod::tensor_chebyshev: {
            const auto ns = chebyshev_points(L1);
            const auto nt = chebyshev_points(L2);
            std::vector<double> vals(M);
            std::vector<Eigen::MatrixXd> samples(M, Eigen::MatrixXd(L1, L2));
            for (int j1 = 0; j1 < L1; ++j1)
                for (int j2 = 0; j2 < L2; ++j2) {
                    const Eigen::Vector4d v = detail::eval_tensor_rows(lam, ns[j1], nt[j2]);
                    detail::multinomial_values4(m, v, mis, vals.data());
                    for (int k = 0; k < M; ++k) samples[k](j1, j2) = vals[k];
                }
            // separable transform: DCT-I along s, then along t
            std::vector<double> buf;
            for (int k = 0; k < M; ++k) {
                Eigen::MatrixXd c1(L1, L2);
                for (int j2 = 0; j2 < L2; ++j2) {
                    buf.assign(samples[k].col(j2).begin(), samples[k].col(j2).end());
                    const auto c = dct1_chebyshev_coeffs(buf);
                    for (int j1 = 0; j1 < L1; ++j1) c1(j1, j2) = c[j1];
                }
                for (int j1 = 0; j1 < L1; ++j1) {
                    buf.assign(c1.row(j1).begin(), c1.row(j1).end());
                    const auto c = dct1_chebyshev_coeffs(buf);
                    for (int j2 = 0; j2 < L2; ++j2) D.entries(j1 * L2 + j2, k) = c[j2];
                }
            }
            break;
        }
        case SurfaceMethod::tensor_legendre_orthonormal: {
            const int na = (m * n1 + L1 + 1) / 2 + 1, nb = (m * n2 + L2 + 1) / 2 + 1;
            const auto ra = gauss_legendre_rule(na), rb = gauss_legendre_rule(nb);
            Eigen::MatrixXd Ps(L1, na), Pt(L2, nb);
            for (int i = 0; i < na; ++i) {
                const auto p = detail::shifted_legendre_values(L1 - 1, ra.nodes[i]);
                for (int j = 0; j < L1; ++j)
                    Ps(j, i) = std::sqrt(2.0 * j + 1.0) * p[j] * ra.weights[i];
            }
            for (int i = 0; i < nb; ++i) {
                const auto p = detail::shifted_legendre_values(L2 - 1, rb.nodes[i]);
                for (int j = 0; j < L2; ++j)
                    Pt(j, i) = std::sqrt(2.0 * j + 1.0) * p[j] * rb.weights[i];
            }
            std::vector<double> vals(M);
            std::vector<Eigen::MatrixXd> F(M, Eigen::MatrixXd(na, nb));
            for (int a = 0; a < na; ++a)
                for (int b = 0; b < nb; ++b) {
                    const Eigen::Vector4d v = detail::eval_tensor_rows(lam, ra.nodes[a], rb.nodes[b]);
                    detail::multinomial_values4(m, v, mis, vals.data());
                    for (int k = 0; k < M; ++k) F[k](a, b) = vals[k];
                }
            for (int k = 0; k < M; ++k) {
                const Eigen::MatrixXd C = Ps * F[k] * Pt.transpose();  // L1 x L2
                for (int j1 = 0; j1 < L1; ++j1)
                    for (int j2 = 0; j2 < L2; ++j2) D.entries(j1 * L2 + j2, k) = C(j1, j2);
            }
            break;
        }
        default:
            throw std::invalid_argument("build_D_tensor: not a tensor method");
    }
    return D;
}

/// D matrix for a triangular patch over the total-degree-mn basis,
/// L = C(mn+2, 2). The Lagrange variant samples the uniform barycentric
/// grid {(i/d, j/d) : i+j <= d}, d = mn, which is unisolvent.
inline SurfaceCoefficientMatrix build_D_triangular(const TriangularPatch& patch, int m,
                                                   const BarycentricFrame& frame,
                                                   SurfaceMethod method) {
    if (m < 1) throw std::invalid_argument("build_D_triangular: m must be >= 1");
    const int n = patch.degree;
    if (m * n > 30) throw std::invalid_argument("build_D_triangular: degree cap exceeded");
    const int d = m * n;
    const auto rows_mis = detail::multi_indices(d, 3);
    const int L = static_cast<int>(rows_mis.size());
    const auto mis = detail::multi_indices(m, 4);
    const int M = static_cast<int>(mis.size());
    const auto lam = detail::barycentric_components(patch, frame);

    SurfaceCoefficientMatrix D;
    D.method = method;
    D.patch_degrees = {n, n};
    D.implicit_degree = m;
    D.frame = frame;
    D.entries.resize(L, M);

    switch (method) {
        case SurfaceMethod::tri_bernstein: {
            std::array<std::vector<detail::TriPoly>, 4> pow;
            for (int c = 0; c < 4; ++c) {
                pow[c].resize(m + 1);
                pow[c][0].degree = 0;
                pow[c][0].coeffs = Eigen::VectorXd::Ones(1);
                for (int e = 1; e <= m; ++e)
                    pow[c][e] = detail::tri_bernstein_multiply(pow[c][e - 1], lam[c]);
            }
            for (int k = 0; k < M; ++k) {
                detail::TriPoly col = detail::tri_bernstein_multiply(pow[0][mis[k][0]], pow[1][mis[k][1]]);
                col = detail::tri_bernstein_multiply(col, pow[2][mis[k][2]]);
                col = detail::tri_bernstein_multiply(col, pow[3][mis[k][3]]);
                D.entries.col(k) = detail::multinomial<4>(m, mis[k]) * col.coeffs;
            }
            break;
        }
        case SurfaceMethod::tri_lagrange: {
            std::vector<double> vals(M);
            for (int j = 0; j < L; ++j) {
                // node (i/d, j/d) from the row multi-index (i, j, d-i-j)
                const double s = d == 0 ? 0.0 : static_cast<double>(rows_mis[j][0]) / d;
                const double t = d == 0 ? 0.0 : static_cast<double>(rows_mis[j][1]) / d;
                const Eigen::Vector4d v = detail::eval_tri_rows(lam, s, t);
                detail::multinomial_values4(m, v, mis, vals.data());
                for (int k = 0; k < M; ++k) D.entries(j, k) = vals[k];
            }
            break;
        }
        default:
            throw std::invalid_argument("build_D_triangular: not a triangular method");
    }
    return D;
}

/// Weak matrix int_Omega q_k(p) q_l(p) for a tensor patch (product Gauss
/// rule) or a triangular patch (square-collapse rule s = x(1-y), t = y with
/// Jacobian 1-y; exact for the degree-2mn integrand).
inline SurfaceCoefficientMatrix weak_matrix_surface(const TensorPatch& patch, int m,
                                                    const BarycentricFrame& frame) {
    if (m < 1) throw std::invalid_argument("weak_matrix_surface: m must be >= 1");
    const int n1 = patch.degree_s(), n2 = patch.degree_t();
    if (m * std::max(n1, n2) > 60)
        throw std::invalid_argument("weak_matrix_surface: degree cap exceeded");
    const auto ra = gauss_legendre_rule(m * n1 + 2), rb = gauss_legendre_rule(m * n2 + 2);
    const auto mis = detail::multi_indices(m, 4);
    const int M = static_cast<int>(mis.size());
    const auto lam = detail::barycentric_components(patch, frame);

    SurfaceCoefficientMatrix W;
    W.method = SurfaceMethod::weak_unit;
    W.patch_degrees = {n1, n2};
    W.implicit_degree = m;
    W.frame = frame;
    W.entries = Eigen::MatrixXd::Zero(M, M);
    std::vector<double> vals(M);
    for (std::size_t a = 0; a < ra.nodes.size(); ++a)
        for (std::size_t b = 0; b < rb.nodes.size(); ++b) {
            const Eigen::Vector4d v = detail::eval_tensor_rows(lam, ra.nodes[a], rb.nodes[b]);
            detail::multinomial_values4(m, v, mis, vals.data());
            const double w = ra.weights[a] * rb.weights[b];
            for (int k = 0; k < M; ++k)
                for (int l = 0; l < M; ++l) W.entries(k, l) += w * vals[k] * vals[l];
        }
    return W;
}

inline SurfaceCoefficientMatrix weak_matrix_surface(const TriangularPatch& patch, int m,
                                                    const BarycentricFrame& frame) {
    if (m < 1) throw std::invalid_argument("weak_matrix_surface: m must be >= 1");
    const int n = patch.degree;
    if (m * n > 30) throw std::invalid_argument("weak_matrix_surface: degree cap exceeded");
    const auto rule = gauss_legendre_rule(m * n + 2);
    const auto mis = detail::multi_indices(m, 4);
    const int M = static_cast<int>(mis.size());
    const auto lam = detail::barycentric_components(patch, frame);

    SurfaceCoefficientMatrix W;
    W.method = SurfaceMethod::weak_unit;
    W.patch_degrees = {n, n};
    W.implicit_degree = m;
    W.frame = frame;
    W.entries = Eigen::MatrixXd::Zero(M, M);
    std::vector<double> vals(M);
    for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
        const double x = rule.nodes[a];
        for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
            const double y = rule.nodes[b];
            const double s = x * (1.0 - y), t = y;
            const Eigen::Vector4d v = detail::eval_tri_rows(lam, s, t);
            detail::multinomial_values4(m, v, mis, vals.data());
            const double w = rule.weights[a] * rule.weights[b] * (1.0 - y);
            for (int k = 0; k < M; ++k)
                for (int l = 0; l < M; ++l) W.entries(k, l) += w * vals[k] * vals[l];
        }
    }
    return W;
}

inline ImplicitizationResult min_singular(const SurfaceCoefficientMatrix& D,
                                          int index_from_smallest = 0) {
    if (is_weak(D.method)) throw std::invalid_argument("min_singular: needs a D-type matrix");
    CoefficientMatrix c;
    c.entries = D.entries;
    c.method = Method::bernstein;  // placeholder tag; solve path is shared
    c.implicit_degree = D.implicit_degree;
    c.frame = D.frame;
    auto r = min_singular(c, index_from_smallest);
    r.method = method_name(D.method);
    return r;
}

inline ImplicitizationResult min_eigen(const SurfaceCoefficientMatrix& Mw,
                                       int index_from_smallest = 0) {
    if (!is_weak(Mw.method)) throw std::invalid_argument("min_eigen: needs a weak-type matrix");
    CoefficientMatrix c;
    c.entries = Mw.entries;
    c.method = Method::weak_unit;
    c.implicit_degree = Mw.implicit_degree;
    c.frame = Mw.frame;
    auto r = min_eigen(c, index_from_smallest);
    r.method = method_name(Mw.method);
    return r;
}

/// Max |q(p(s,t))| over a uniform grid: grid x grid points for tensor
/// patches, the triangular grid of the same density for triangular patches.
inline double algebraic_error_max_surface(const TensorPatch& patch, const ImplicitPolynomial& q,
                                          int grid = 33) {
    if (grid < 2) throw std::invalid_argument("algebraic_error_max_surface: grid must be >= 2");
    double worst = 0.0;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            const double s = static_cast<double>(i) / (grid - 1);
            const double t = static_cast<double>(j) / (grid - 1);
            const Eigen::Vector4d p = eval_tensor_patch(patch, s, t);
            worst = std::max(worst, std::abs(q.eval(p)));
        }
    return worst;
}

inline double algebraic_error_max_surface(const TriangularPatch& patch, const ImplicitPolynomial& q,
                                          int grid = 33) {
    if (grid < 2) throw std::invalid_argument("algebraic_error_max_surface: grid must be >= 2");
    double worst = 0.0;
    const int d = grid - 1;
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d - i; ++j) {
            const double s = static_cast<double>(i) / d;
            const double t = static_cast<double>(j) / d;
            const Eigen::Vector4d p = eval_triangular_patch(patch, s, t);
            worst = std::max(worst, std::abs(q.eval(p)));
        }
    return worst;
}

}  // namespace implicitize
