#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "implicitize/geometry.hpp"

using namespace implicitize;
using Catch::Approx;

namespace {

std::mt19937_64 rng(7151);
double urand(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

ParametricCurve circle_arc() {
    Eigen::Matrix<double, 3, Eigen::Dynamic> c(3, 3);
    // (2t, 1-t^2, 1+t^2) in Bernstein form
    c << 0, 1, 2,
         1, 1, 0,
         1, 1, 2;
    return ParametricCurve(c);
}

ParametricCurve diagonal_line() {
    Eigen::Matrix<double, 3, Eigen::Dynamic> c(3, 2);
    c << 0, 1,
         0, 1,
         1, 1;
    return ParametricCurve(c);
}

}  // namespace

TEST_CASE("eval_curve") {
    const auto circle = circle_arc();
    const Eigen::Vector3d p0 = eval_curve(circle, 0.0);
    CHECK(p0.isApprox(Eigen::Vector3d(0, 1, 1)));
    const Eigen::Vector3d p1 = eval_curve(circle, 1.0);
    CHECK(p1.isApprox(Eigen::Vector3d(2, 0, 2)));
    CHECK(p1[0] / p1[2] == Approx(1.0));
    CHECK(p1[1] / p1[2] == Approx(0.0).margin(1e-15));

    const Eigen::Vector3d q = eval_curve(diagonal_line(), 0.3);
    CHECK(q.isApprox(Eigen::Vector3d(0.3, 0.3, 1.0)));
}

TEST_CASE("eval_curve matches a monomial Horner oracle") {
    for (int deg : {2, 5, 9, 15}) {
        Eigen::Matrix<double, 3, Eigen::Dynamic> c(3, deg + 1);
        for (int r = 0; r < 3; ++r)
            for (int j = 0; j <= deg; ++j) c(r, j) = urand(-1.0, 1.0);
        c(2, 0) = 1.0;  // keep h nonzero
        const ParametricCurve curve(c);
        for (int rep = 0; rep < 20; ++rep) {
            const double t = urand();
            const Eigen::Vector3d v = eval_curve(curve, t);
            for (int r = 0; r < 3; ++r) {
                std::vector<double> row(c.row(r).begin(), c.row(r).end());
                const auto mono = bernstein_to_monomial(row);
                double acc = 0.0, cond = 0.0;
                for (auto it = mono.rbegin(); it != mono.rend(); ++it) {
                    acc = acc * t + *it;
                    cond = cond * t + std::abs(*it);
                }
                // relative to the Horner condition sum of the oracle
                REQUIRE(std::abs(v[r] - acc) <= 1e-12 * std::max(1.0, cond));
            }
        }
    }
}

TEST_CASE("curve validation") {
    Eigen::Matrix<double, 3, Eigen::Dynamic> c(3, 2);
    c.setZero();
    c(0, 1) = 1.0;
    CHECK_THROWS_AS(ParametricCurve(c), std::invalid_argument);  // h == 0
    Eigen::Matrix<double, 3, Eigen::Dynamic> one(3, 1);
    one << 1, 1, 1;
    CHECK_THROWS_AS(ParametricCurve(one), std::invalid_argument);  // degree 0
}

TEST_CASE("to_barycentric on the standard triangle") {
    const auto frame = BarycentricFrame::standard(2);
    CHECK(frame.to_barycentric(Eigen::Vector3d(1, 0, 1)).isApprox(Eigen::Vector3d(1, 0, 0)));
    CHECK(frame.to_barycentric(Eigen::Vector3d(0, 0, 1)).isApprox(Eigen::Vector3d(0, 1, 0)));
    const Eigen::Vector3d centroid(1.0 / 3.0, 1.0 / 3.0, 1.0);
    const Eigen::VectorXd lam = frame.to_barycentric(centroid);
    CHECK(lam[0] == Approx(1.0 / 3.0));
    CHECK(lam[1] == Approx(1.0 / 3.0));
    CHECK(lam[2] == Approx(1.0 / 3.0));
}

TEST_CASE("frame vertices map to unit vectors") {
    Eigen::MatrixXd v(2, 3);
    v << 0.3, 2.1, -0.7,
         0.1, 0.4, 1.9;
    const auto frame = BarycentricFrame::simplex(v);
    for (int i = 0; i < 3; ++i) {
        Eigen::Vector3d pt(v(0, i), v(1, i), 1.0);
        const Eigen::VectorXd lam = frame.to_barycentric(pt);
        for (int j = 0; j < 3; ++j) REQUIRE(lam[j] == Approx(i == j ? 1.0 : 0.0).margin(1e-14));
    }
}

TEST_CASE("degenerate frames are rejected") {
    Eigen::MatrixXd v(2, 3);
    v << 0, 1, 2,
         0, 1, 2;  // collinear
    CHECK_THROWS_AS(BarycentricFrame::simplex(v), std::invalid_argument);
}

TEST_CASE("implicit basis ordering and size") {
    CHECK(implicit_basis_size(2, 2) == 6);
    CHECK(implicit_basis_size(1, 2) == 3);
    CHECK(implicit_basis_size(3, 3) == 20);

    const auto mis = detail::multi_indices(2, 3);
    REQUIRE(mis.size() == 6);
    // the order of the m=2 basis: u^2, 2uv, 2uw, v^2, 2vw, w^2
    CHECK(mis[0] == std::array<int, 4>{2, 0, 0, 0});
    CHECK(mis[1] == std::array<int, 4>{1, 1, 0, 0});
    CHECK(mis[2] == std::array<int, 4>{1, 0, 1, 0});
    CHECK(mis[3] == std::array<int, 4>{0, 2, 0, 0});
    CHECK(mis[4] == std::array<int, 4>{0, 1, 1, 0});
    CHECK(mis[5] == std::array<int, 4>{0, 0, 2, 0});
}

TEST_CASE("eval_implicit") {
    SECTION("degree 1 vertex") {
        const auto frame = BarycentricFrame::standard(2);
        Eigen::VectorXd b(3);
        b << 1, 0, 0;
        const ImplicitPolynomial q(1, frame, b);
        CHECK(q.eval(Eigen::Vector3d(1, 0, 1)) == Approx(1.0));
    }
    SECTION("circle solution vanishes on the curve") {
        const auto frame = BarycentricFrame::homogeneous(2);
        Eigen::VectorXd b(6);
        const double s = 1.0 / std::sqrt(3.0);
        b << s, 0, 0, s, 0, -s;
        const ImplicitPolynomial q(2, frame, b);
        CHECK(std::abs(q.eval(Eigen::Vector3d(0, 1, 1))) < 1e-15);
        const auto circle = circle_arc();
        for (double t : {0.1, 0.35, 0.62, 0.97})
            REQUIRE(std::abs(q.eval(eval_curve(circle, t))) < 1e-14);
    }
    SECTION("partition of unity") {
        const auto frame = BarycentricFrame::standard(2);
        const int M = implicit_basis_size(2, 2);
        Eigen::VectorXd b = Eigen::VectorXd::Constant(M, 1.0 / std::sqrt(double(M)));
        const ImplicitPolynomial q(2, frame, b);
        for (int i = 0; i < 50; ++i) {
            const double x = urand(-0.2, 1.2), y = urand(-0.2, 1.2);
            REQUIRE(q.eval(Eigen::Vector3d(x, y, 1.0)) ==
                    Approx(1.0 / std::sqrt(6.0)).margin(1e-12));
        }
    }
    SECTION("unit norm is required") {
        Eigen::VectorXd b(3);
        b << 1, 1, 1;
        CHECK_THROWS_AS(ImplicitPolynomial(1, BarycentricFrame::standard(2), b),
                        std::invalid_argument);
    }
}

TEST_CASE("convergence_rate tables") {
    const int curve_rates[] = {2, 5, 9, 14, 20, 27, 35, 44};
    for (int m = 1; m <= 8; ++m) {
        CHECK(convergence_rate(m, 2) == curve_rates[m - 1]);
        CHECK(convergence_rate(m, 2) == (m + 1) * (m + 2) / 2 - 1);
    }
    const int surface_rates[] = {2, 3, 5, 7, 10, 12, 14, 17};
    for (int m = 1; m <= 8; ++m) CHECK(convergence_rate(m, 3) == surface_rates[m - 1]);
    CHECK(convergence_rate(5, 3) == 10);
}

TEST_CASE("curve_segment") {
    const auto circle = circle_arc();
    SECTION("identity split") {
        const auto seg = curve_segment(circle, 1.0);
        CHECK(seg.coeffs.isApprox(circle.coeffs));
    }
    SECTION("half split endpoint") {
        const auto seg = curve_segment(circle, 0.5);
        const Eigen::Vector3d p = eval_curve(seg, 1.0);
        CHECK(p.isApprox(Eigen::Vector3d(1.0, 0.75, 1.25)));
    }
    SECTION("line segment") {
        const auto seg = curve_segment(diagonal_line(), 0.25);
        CHECK(eval_curve(seg, 1.0).isApprox(Eigen::Vector3d(0.25, 0.25, 1.0)));
    }
    SECTION("reparametrization identity") {
        const double h = 0.73;
        const auto seg = curve_segment(circle, h);
        for (int i = 0; i < 20; ++i) {
            const double s = urand();
            REQUIRE((eval_curve(seg, s) - eval_curve(circle, h * s)).cwiseAbs().maxCoeff() <=
                    1e-12);
        }
    }
    CHECK_THROWS_AS(curve_segment(circle, 0.0), std::invalid_argument);
}

TEST_CASE("patch evaluation") {
    SECTION("bilinear tensor patch") {
        std::array<Eigen::MatrixXd, 4> c;
        for (auto& g : c) g = Eigen::MatrixXd::Zero(2, 2);
        c[0] << 0, 0, 1, 1;  // s
        c[1] << 0, 1, 0, 1;  // t
        c[2] << 0, 0, 0, 1;  // st
        c[3].setOnes();
        const TensorPatch patch(std::move(c));
        for (int i = 0; i < 10; ++i) {
            const double s = urand(), t = urand();
            const Eigen::Vector4d p = eval_tensor_patch(patch, s, t);
            REQUIRE(p[0] == Approx(s).margin(1e-15));
            REQUIRE(p[1] == Approx(t).margin(1e-15));
            REQUIRE(p[2] == Approx(s * t).margin(1e-14));
            REQUIRE(p[3] == Approx(1.0));
        }
    }
    SECTION("triangular plane patch") {
        Eigen::Matrix<double, 4, Eigen::Dynamic> c(4, 3);
        // components (s, t, 1-s-t, 1) in the degree-1 B-B basis
        c << 1, 0, 0,
             0, 1, 0,
             0, 0, 1,
             1, 1, 1;
        const TriangularPatch patch(1, c);
        const Eigen::Vector4d p = eval_triangular_patch(patch, 0.2, 0.3);
        CHECK(p.isApprox(Eigen::Vector4d(0.2, 0.3, 0.5, 1.0)));
    }
}

TEST_CASE("auto frame contains the curve") {
    const auto circle = circle_arc();
    const auto frame = auto_frame(circle);
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const Eigen::Vector3d p = eval_curve(circle, t);
        const Eigen::VectorXd lam = frame.to_barycentric(p);
        for (int i = 0; i < 3; ++i) REQUIRE(lam[i] / p[2] >= -1e-12);
    }
}
