#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "implicitize/basis.hpp"
#include "implicitize/detail.hpp"

namespace implicitize {

/// Rational parametric curve in homogeneous form (g1, g2, h) on [0,1];
/// one row of Bernstein coefficients per component.
struct ParametricCurve {
    Eigen::Matrix<double, 3, Eigen::Dynamic> coeffs;

    ParametricCurve() = default;
    explicit ParametricCurve(Eigen::Matrix<double, 3, Eigen::Dynamic> c) : coeffs(std::move(c)) {
        if (coeffs.cols() < 2) throw std::invalid_argument("ParametricCurve: degree must be >= 1");
        if (coeffs.row(2).cwiseAbs().maxCoeff() == 0.0)
            throw std::invalid_argument("ParametricCurve: weight component h is identically zero");
    }

    int degree() const { return static_cast<int>(coeffs.cols()) - 1; }

    /// Polynomial curve (h == 1) from affine control points, one (x,y) per column.
    static ParametricCurve from_points(const Eigen::Matrix2Xd& points) {
        Eigen::Matrix<double, 3, Eigen::Dynamic> c(3, points.cols());
        c.topRows(2) = points;
        c.row(2).setOnes();
        return ParametricCurve(c);
    }
};

/// Homogeneous point (g1(t), g2(t), h(t)) by de Casteljau per component.
inline Eigen::Vector3d eval_curve(const ParametricCurve& curve, double t) {
    Eigen::Vector3d v;
    for (int r = 0; r < 3; ++r) {
        std::vector<double> row(curve.coeffs.row(r).begin(), curve.coeffs.row(r).end());
        v[r] = bernstein_eval(row, t);
    }
    return v;
}

/// Restriction of the curve to [0,h], reparametrized to [0,1].
inline ParametricCurve curve_segment(const ParametricCurve& curve, double h) {
    Eigen::Matrix<double, 3, Eigen::Dynamic> c(3, curve.coeffs.cols());
    for (int r = 0; r < 3; ++r) {
        std::vector<double> row(curve.coeffs.row(r).begin(), curve.coeffs.row(r).end());
        auto left = bernstein_subdivide_left(row, h);
        for (int j = 0; j < c.cols(); ++j) c(r, j) = left[j];
    }
    return ParametricCurve(std::move(c));
}

/// Reference simplex for the implicit Bernstein basis: a triangle in the
/// plane (dim 2) or tetrahedron in 3-space (dim 3). The barycentric map is
/// linear on homogeneous tuples; coordinates of an affine point (weight 1)
/// sum to 1. The "homogeneous" frame is the identity map, i.e. barycentric
/// coordinates are the homogeneous coordinates themselves.
class BarycentricFrame {
  public:
    static BarycentricFrame simplex(const Eigen::MatrixXd& vertices) {
        // vertices: dim x (dim+1)
        const int dim = static_cast<int>(vertices.rows());
        if (dim != 2 && dim != 3) throw std::invalid_argument("BarycentricFrame: dim must be 2 or 3");
        if (vertices.cols() != dim + 1)
            throw std::invalid_argument("BarycentricFrame: need dim+1 vertices");
        Eigen::MatrixXd B(dim + 1, dim + 1);
        B.topRows(dim) = vertices;
        B.row(dim).setOnes();
        Eigen::MatrixXd Bn = B;
        for (int c = 0; c < Bn.cols(); ++c) Bn.col(c) /= Bn.col(c).norm();
        if (std::abs(Bn.determinant()) < 1e-12)
            throw std::invalid_argument("BarycentricFrame: degenerate simplex");
        BarycentricFrame f;
        f.dim_ = dim;
        f.vertices_ = vertices;
        f.to_bary_ = B.inverse();
        return f;
    }

    /// Identity frame: barycentric coordinates = homogeneous coordinates.
    static BarycentricFrame homogeneous(int dim) {
        if (dim != 2 && dim != 3) throw std::invalid_argument("BarycentricFrame: dim must be 2 or 3");
        BarycentricFrame f;
        f.dim_ = dim;
        f.to_bary_ = Eigen::MatrixXd::Identity(dim + 1, dim + 1);
        f.homogeneous_ = true;
        return f;
    }

    /// The frame used throughout the experiments: triangle (1,0),(0,0),(0,1)
    /// for curves, unit tetrahedron for surfaces.
    static BarycentricFrame standard(int dim) {
        if (dim == 2) {
            Eigen::MatrixXd v(2, 3);
            v << 1, 0, 0,
                 0, 0, 1;
            return simplex(v);
        }
        Eigen::MatrixXd v(3, 4);
        v << 0, 1, 0, 0,
             0, 0, 1, 0,
             0, 0, 0, 1;
        return simplex(v);
    }

    int dim() const { return dim_; }
    bool is_homogeneous() const { return homogeneous_; }
    const Eigen::MatrixXd& vertices() const { return vertices_; }
    const Eigen::MatrixXd& map() const { return to_bary_; }

    /// Barycentric coordinates of a homogeneous tuple (length dim+1).
    Eigen::VectorXd to_barycentric(const Eigen::VectorXd& point) const {
        if (point.size() != dim_ + 1)
            throw std::invalid_argument("to_barycentric: wrong point dimension");
        return to_bary_ * point;
    }

    bool operator==(const BarycentricFrame& o) const {
        return dim_ == o.dim_ && homogeneous_ == o.homogeneous_ &&
               (homogeneous_ || vertices_ == o.vertices_);
    }

  private:
    int dim_ = 2;
    bool homogeneous_ = false;
    Eigen::MatrixXd vertices_;
    Eigen::MatrixXd to_bary_;
};

inline Eigen::VectorXd to_barycentric(const BarycentricFrame& frame, const Eigen::VectorXd& point) {
    return frame.to_barycentric(point);
}

/// Number of basis functions of a total-degree-m polynomial: C(m+dim, dim).
inline int implicit_basis_size(int m, int dim) {
    if (m < 1) throw std::invalid_argument("implicit_basis_size: m must be >= 1");
    if (dim != 2 && dim != 3) throw std::invalid_argument("implicit_basis_size: dim must be 2 or 3");
    return static_cast<int>(std::llround(detail::binomial(m + dim, dim)));
}

/// Convergence rate of degree-m approximate implicitization: curves (dim 2)
/// k = (m+1)(m+2)/2 - 1, surfaces (dim 3)
/// k = floor(sqrt(9 + 12m^3 + 72m^2 + 132m)/6 - 1/2).
inline int convergence_rate(int m, int dim) {
    if (m < 1) throw std::invalid_argument("convergence_rate: m must be >= 1");
    if (dim == 2) return (m + 1) * (m + 2) / 2 - 1;
    if (dim == 3) {
        double v = 9.0 + 12.0 * m * m * m + 72.0 * m * m + 132.0 * m;
        return static_cast<int>(std::floor(std::sqrt(v) / 6.0 - 0.5));
    }
    throw std::invalid_argument("convergence_rate: dim must be 2 or 3");
}

/// Total-degree-m polynomial in the barycentric Bernstein basis of a frame:
/// q(u) = sum_k b_k C(m,k) u^k over multi-indices |k| = m in descending
/// lexicographic order; the coefficient vector has unit 2-norm.
struct ImplicitPolynomial {
    int degree = 1;
    int dim = 2;
    BarycentricFrame frame = BarycentricFrame::standard(2);
    Eigen::VectorXd b;

    ImplicitPolynomial() = default;
    ImplicitPolynomial(int m, BarycentricFrame fr, Eigen::VectorXd coeffs)
        : degree(m), dim(fr.dim()), frame(std::move(fr)), b(std::move(coeffs)) {
        if (b.size() != implicit_basis_size(degree, dim))
            throw std::invalid_argument("ImplicitPolynomial: coefficient count != C(m+dim, dim)");
        if (std::abs(b.norm() - 1.0) > 1e-6)
            throw std::invalid_argument("ImplicitPolynomial: coefficients must have unit 2-norm");
        b /= b.norm();
    }

    /// q at a homogeneous tuple (length dim+1).
    double eval(const Eigen::VectorXd& point) const {
        const Eigen::VectorXd lam = frame.to_barycentric(point);
        const auto mis = detail::multi_indices(degree, dim + 1);
        // powers of each barycentric coordinate up to m
        Eigen::MatrixXd pow(dim + 2, degree + 1);
        for (int c = 0; c <= dim; ++c) {
            pow(c, 0) = 1.0;
            for (int e = 1; e <= degree; ++e) pow(c, e) = pow(c, e - 1) * lam[c];
        }
        double acc = 0.0;
        for (int k = 0; k < static_cast<int>(mis.size()); ++k) {
            const auto& mi = mis[k];
            double term = detail::multinomial<4>(degree, mi);
            for (int c = 0; c <= dim; ++c) term *= pow(c, mi[c]);
            acc += b[k] * term;
        }
        return acc;
    }

    /// q at an affine point (weight 1 appended).
    double eval_affine(const Eigen::VectorXd& point) const {
        Eigen::VectorXd h(point.size() + 1);
        h.head(point.size()) = point;
        h[point.size()] = 1.0;
        return eval(h);
    }
};

inline double eval_implicit(const ImplicitPolynomial& q, const Eigen::VectorXd& homogeneous_point) {
    return q.eval(homogeneous_point);
}

/// Rational tensor-product patch in homogeneous form (g1,g2,g3,h) of
/// bidegree (n1,n2); one (n1+1)x(n2+1) coefficient grid per component.
struct TensorPatch {
    std::array<Eigen::MatrixXd, 4> coeffs;

    TensorPatch() = default;
    explicit TensorPatch(std::array<Eigen::MatrixXd, 4> c) : coeffs(std::move(c)) {
        for (int i = 1; i < 4; ++i) {
            if (coeffs[i].rows() != coeffs[0].rows() || coeffs[i].cols() != coeffs[0].cols())
                throw std::invalid_argument("TensorPatch: component grids differ in size");
        }
        if (coeffs[0].rows() < 2 || coeffs[0].cols() < 2)
            throw std::invalid_argument("TensorPatch: bidegree must be >= (1,1)");
        if (coeffs[3].cwiseAbs().maxCoeff() == 0.0)
            throw std::invalid_argument("TensorPatch: weight component h is identically zero");
    }

    int degree_s() const { return static_cast<int>(coeffs[0].rows()) - 1; }
    int degree_t() const { return static_cast<int>(coeffs[0].cols()) - 1; }
};

inline Eigen::Vector4d eval_tensor_patch(const TensorPatch& patch, double s, double t) {
    const auto bs = detail::bernstein_values(patch.degree_s(), s);
    const auto bt = detail::bernstein_values(patch.degree_t(), t);
    const Eigen::Map<const Eigen::VectorXd> vs(bs.data(), bs.size());
    const Eigen::Map<const Eigen::VectorXd> vt(bt.data(), bt.size());
    Eigen::Vector4d out;
    for (int c = 0; c < 4; ++c) out[c] = vs.dot(patch.coeffs[c] * vt);
    return out;
}

/// Rational triangular Bernstein-Bezier patch of total degree n over the
/// unit parameter triangle {s,t >= 0, s+t <= 1}; coefficients are indexed by
/// multi-indices |k| = n in descending lexicographic order (4 x N matrix,
/// N = C(n+2,2)).
struct TriangularPatch {
    int degree = 1;
    Eigen::Matrix<double, 4, Eigen::Dynamic> coeffs;

    TriangularPatch() = default;
    TriangularPatch(int n, Eigen::Matrix<double, 4, Eigen::Dynamic> c) : degree(n), coeffs(std::move(c)) {
        if (n < 1) throw std::invalid_argument("TriangularPatch: degree must be >= 1");
        const auto N = detail::multi_indices(n, 3).size();
        if (static_cast<std::size_t>(coeffs.cols()) != N)
            throw std::invalid_argument("TriangularPatch: coefficient count != C(n+2,2)");
        if (coeffs.row(3).cwiseAbs().maxCoeff() == 0.0)
            throw std::invalid_argument("TriangularPatch: weight component h is identically zero");
    }
};

/// Values of all triangular Bernstein basis functions of total degree n at
/// barycentric (s, t, 1-s-t), in descending lexicographic multi-index order.
inline std::vector<double> triangular_bernstein_values(int n, double s, double t) {
    const double u = 1.0 - s - t;
    const auto mis = detail::multi_indices(n, 3);
    std::vector<double> ps(n + 1, 1.0), pt(n + 1, 1.0), pu(n + 1, 1.0);
    for (int e = 1; e <= n; ++e) {
        ps[e] = ps[e - 1] * s;
        pt[e] = pt[e - 1] * t;
        pu[e] = pu[e - 1] * u;
    }
    std::vector<double> v(mis.size());
    for (std::size_t k = 0; k < mis.size(); ++k) {
        v[k] = detail::multinomial<4>(n, mis[k]) * ps[mis[k][0]] * pt[mis[k][1]] * pu[mis[k][2]];
    }
    return v;
}

inline Eigen::Vector4d eval_triangular_patch(const TriangularPatch& patch, double s, double t) {
    const auto bv = triangular_bernstein_values(patch.degree, s, t);
    const Eigen::Map<const Eigen::VectorXd> v(bv.data(), bv.size());
    return patch.coeffs * v;
}

/// Bounding simplex of the affine control points, inflated by 10%.
/// Control weights must be nonzero.
inline BarycentricFrame auto_frame(const ParametricCurve& curve) {
    const int n = curve.degree();
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (int j = 0; j <= n; ++j) {
        const double w = curve.coeffs(2, j);
        if (w == 0.0) throw std::invalid_argument("auto_frame: control weight is zero");
        const double x = curve.coeffs(0, j) / w, y = curve.coeffs(1, j) / w;
        xmin = std::min(xmin, x); xmax = std::max(xmax, x);
        ymin = std::min(ymin, y); ymax = std::max(ymax, y);
    }
    double w = std::max(xmax - xmin, 1e-6), h = std::max(ymax - ymin, 1e-6);
    xmin -= 0.05 * w; ymin -= 0.05 * h;
    w *= 1.1; h *= 1.1;
    Eigen::MatrixXd v(2, 3);
    v << xmin, xmin + 2.0 * w, xmin,
         ymin, ymin,           ymin + 2.0 * h;
    return BarycentricFrame::simplex(v);
}

inline BarycentricFrame auto_frame_box(double xmin, double xmax, double ymin, double ymax,
                                       double zmin, double zmax) {
    double w = std::max(xmax - xmin, 1e-6), h = std::max(ymax - ymin, 1e-6),
           d = std::max(zmax - zmin, 1e-6);
    xmin -= 0.05 * w; ymin -= 0.05 * h; zmin -= 0.05 * d;
    w *= 1.1; h *= 1.1; d *= 1.1;
    Eigen::MatrixXd v(3, 4);
    v << xmin, xmin + 3.0 * w, xmin,           xmin,
         ymin, ymin,           ymin + 3.0 * h, ymin,
         zmin, zmin,           zmin,           zmin + 3.0 * d;
    return BarycentricFrame::simplex(v);
}

inline BarycentricFrame auto_frame(const TensorPatch& patch) {
    double lo[3] = {1e300, 1e300, 1e300}, hi[3] = {-1e300, -1e300, -1e300};
    for (int i = 0; i < patch.coeffs[0].rows(); ++i)
        for (int j = 0; j < patch.coeffs[0].cols(); ++j) {
            const double w = patch.coeffs[3](i, j);
            if (w == 0.0) throw std::invalid_argument("auto_frame: control weight is zero");
            for (int c = 0; c < 3; ++c) {
                const double x = patch.coeffs[c](i, j) / w;
                lo[c] = std::min(lo[c], x);
                hi[c] = std::max(hi[c], x);
            }
        }
    return auto_frame_box(lo[0], hi[0], lo[1], hi[1], lo[2], hi[2]);
}

inline BarycentricFrame auto_frame(const TriangularPatch& patch) {
    double lo[3] = {1e300, 1e300, 1e300}, hi[3] = {-1e300, -1e300, -1e300};
    for (int j = 0; j < patch.coeffs.cols(); ++j) {
        const double w = patch.coeffs(3, j);
        if (w == 0.0) throw std::invalid_argument("auto_frame: control weight is zero");
        for (int c = 0; c < 3; ++c) {
            const double x = patch.coeffs(c, j) / w;
            lo[c] = std::min(lo[c], x);
            hi[c] = std::max(hi[c], x);
        }
    }
    return auto_frame_box(lo[0], hi[0], lo[1], hi[1], lo[2], hi[2]);
}

}  // namespace implicitize
