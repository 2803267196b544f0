#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "implicitize/basis.hpp"

using namespace implicitize;

namespace {

// test-side RNG, independent of the library's
std::mt19937_64 rng(20240901);
double urand(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

// monomial-basis oracle: convolution product and Horner evaluation
std::vector<double> mono_multiply(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

double mono_eval(const std::vector<double>& c, double t) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
}

}  // namespace

TEST_CASE("eval_basis endpoint values") {
    CHECK(eval_basis({BasisKind::bernstein, 2}, 0.0) == std::vector<double>{1.0, 0.0, 0.0});
    auto cheb = eval_basis({BasisKind::chebyshev, 2}, 1.0);
    CHECK(cheb[0] == Catch::Approx(1.0));
    CHECK(cheb[1] == Catch::Approx(1.0));
    CHECK(cheb[2] == Catch::Approx(1.0));
    auto lag = eval_basis({BasisKind::lagrange_uniform, 2}, 0.5);
    CHECK(lag[0] == Catch::Approx(0.0).margin(1e-15));
    CHECK(lag[1] == Catch::Approx(1.0));
    CHECK(lag[2] == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("eval_basis rejects parameters outside the domain") {
    CHECK_THROWS_AS(eval_basis({BasisKind::bernstein, 2}, -0.1), std::domain_error);
    CHECK_THROWS_AS(eval_basis({BasisKind::chebyshev, 2}, 1.1), std::domain_error);
}

TEST_CASE("partition of unity for Bernstein and Lagrange families") {
    for (int deg : {1, 2, 5, 13, 30, 60}) {
        for (auto kind : {BasisKind::bernstein, BasisKind::lagrange_chebyshev}) {
            for (int i = 0; i < 100; ++i) {
                const double t = urand();
                const auto v = eval_basis({kind, deg}, t);
                double sum = 0.0;
                for (double x : v) sum += x;
                REQUIRE(std::abs(sum - 1.0) <= 1e-11);
            }
        }
    }
    // Uniform nodes: cardinal values grow like the Lebesgue constant
    // (~1e15 at degree 60), so sums of their double representations cannot
    // meet an absolute 1e-11 at high degree. The fixed tolerance is checked
    // through degree 20; above that the sharp bound eps * sum|l_j(t)| is.
    for (int deg : {1, 2, 5, 13, 20}) {
        for (int i = 0; i < 100; ++i) {
            const double t = urand();
            const auto v = eval_basis({BasisKind::lagrange_uniform, deg}, t);
            double sum = 0.0;
            for (double x : v) sum += x;
            REQUIRE(std::abs(sum - 1.0) <= 1e-11);
        }
    }
    for (int deg : {30, 60}) {
        for (int i = 0; i < 100; ++i) {
            const double t = urand();
            const auto v = eval_basis({BasisKind::lagrange_uniform, deg}, t);
            double sum = 0.0, lebesgue = 0.0;
            for (double x : v) {
                sum += x;
                lebesgue += std::abs(x);
            }
            REQUIRE(std::abs(sum - 1.0) <= std::max(1e-11, 16.0 * 2.3e-16 * lebesgue));
        }
    }
}

TEST_CASE("chebyshev_points") {
    CHECK_THROWS_AS(chebyshev_points(1), std::invalid_argument);
    CHECK(chebyshev_points(2) == std::vector<double>{0.0, 1.0});
    auto t3 = chebyshev_points(3);
    CHECK(t3[1] == Catch::Approx(0.5));
    auto t5 = chebyshev_points(5);
    const double r = std::sqrt(2.0) / 2.0;
    CHECK(t5[1] == Catch::Approx((1.0 - r) / 2.0));
    CHECK(t5[2] == Catch::Approx(0.5));
    CHECK(t5[3] == Catch::Approx((1.0 + r) / 2.0));
    CHECK(t5[4] == 1.0);
    for (std::size_t i = 1; i < t5.size(); ++i) REQUIRE(t5[i] > t5[i - 1]);
}

TEST_CASE("dct1_chebyshev_coeffs reproduces known expansions") {
    SECTION("constant") {
        std::vector<double> samples(6, 1.0);
        auto c = dct1_chebyshev_coeffs(samples);
        CHECK(c[0] == Catch::Approx(1.0));
        for (int j = 1; j < 6; ++j) CHECK(std::abs(c[j]) < 1e-14);
    }
    SECTION("shifted T1") {
        auto pts = chebyshev_points(4);
        std::vector<double> samples(4);
        for (int i = 0; i < 4; ++i) samples[i] = 2.0 * pts[i] - 1.0;
        auto c = dct1_chebyshev_coeffs(samples);
        CHECK(std::abs(c[0]) < 1e-15);
        CHECK(c[1] == Catch::Approx(1.0));
        CHECK(std::abs(c[2]) < 1e-15);
        CHECK(std::abs(c[3]) < 1e-15);
    }
    SECTION("t^2 at 3 nodes") {
        auto pts = chebyshev_points(3);
        std::vector<double> samples(3);
        for (int i = 0; i < 3; ++i) samples[i] = pts[i] * pts[i];
        auto c = dct1_chebyshev_coeffs(samples);
        CHECK(c[0] == Catch::Approx(3.0 / 8.0));
        CHECK(c[1] == Catch::Approx(0.5));
        CHECK(c[2] == Catch::Approx(1.0 / 8.0));
    }
}

TEST_CASE("chebyshev interpolation round trip") {
    for (int deg : {3, 10, 30}) {
        std::vector<double> mono(deg + 1);
        for (auto& c : mono) c = urand(-1.0, 1.0);
        const int L = deg + 1;
        auto pts = chebyshev_points(L);
        std::vector<double> samples(L);
        for (int i = 0; i < L; ++i) samples[i] = mono_eval(mono, pts[i]);
        auto coef = dct1_chebyshev_coeffs(samples);
        double scale = 0.0;
        for (double c : mono) scale = std::max(scale, std::abs(c));
        for (int i = 0; i < 50; ++i) {
            const double t = urand();
            const auto basis = eval_basis({BasisKind::chebyshev, deg}, t);
            double v = 0.0;
            for (int j = 0; j <= deg; ++j) v += coef[j] * basis[j];
            REQUIRE(std::abs(v - mono_eval(mono, t)) <= 1e-10 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("legendre_coeffs projections") {
    SECTION("constant") {
        auto rule = gauss_legendre_rule(4);
        std::vector<double> samples(rule.nodes.size(), 1.0);
        auto c = legendre_coeffs(samples, rule, 4, LegendreScaling::sup_normalized, 0);
        CHECK(c[0] == Catch::Approx(1.0));
        for (int j = 1; j < 4; ++j) CHECK(std::abs(c[j]) < 1e-14);
    }
    SECTION("t in 2 terms") {
        auto rule = gauss_legendre_rule(3);
        std::vector<double> samples(rule.nodes.size());
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) samples[i] = rule.nodes[i];
        auto c = legendre_coeffs(samples, rule, 2, LegendreScaling::sup_normalized, 1);
        CHECK(c[0] == Catch::Approx(0.5));
        CHECK(c[1] == Catch::Approx(0.5));
    }
    SECTION("t^2 in 3 terms") {
        auto rule = gauss_legendre_rule(4);
        std::vector<double> samples(rule.nodes.size());
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            samples[i] = rule.nodes[i] * rule.nodes[i];
        auto c = legendre_coeffs(samples, rule, 3, LegendreScaling::sup_normalized, 2);
        CHECK(c[0] == Catch::Approx(1.0 / 3.0));
        CHECK(c[1] == Catch::Approx(0.5));
        CHECK(c[2] == Catch::Approx(1.0 / 6.0));
    }
    SECTION("rule too weak") {
        auto rule = gauss_legendre_rule(2);
        std::vector<double> samples(rule.nodes.size(), 1.0);
        CHECK_THROWS_AS(legendre_coeffs(samples, rule, 4, LegendreScaling::sup_normalized, 4),
                        std::invalid_argument);
    }
}

TEST_CASE("bernstein_multiply") {
    SECTION("constants") {
        std::vector<double> a{1.0, 1.0}, b{1.0, 1.0, 1.0};
        CHECK(bernstein_multiply(a, b) == std::vector<double>{1.0, 1.0, 1.0, 1.0});
    }
    SECTION("t times t") {
        std::vector<double> a{0.0, 1.0};
        auto c = bernstein_multiply(a, a);
        REQUIRE(c.size() == 3);
        CHECK(std::abs(c[0]) < 1e-15);
        CHECK(std::abs(c[1]) < 1e-15);
        CHECK(c[2] == Catch::Approx(1.0));
    }
    SECTION("(1-t) times t") {
        std::vector<double> a{1.0, 0.0}, b{0.0, 1.0};
        auto c = bernstein_multiply(a, b);
        CHECK(std::abs(c[0]) < 1e-15);
        CHECK(c[1] == Catch::Approx(0.5));
        CHECK(std::abs(c[2]) < 1e-15);
    }
    SECTION("agrees with monomial convolution") {
        for (int rep = 0; rep < 30; ++rep) {
            const int d1 = 1 + static_cast<int>(urand(0, 14.999));
            const int d2 = 1 + static_cast<int>(urand(0, 14.999));
            std::vector<double> a(d1 + 1), b(d2 + 1);
            for (auto& v : a) v = urand(-1.0, 1.0);
            for (auto& v : b) v = urand(-1.0, 1.0);
            const auto prod = bernstein_multiply(a, b);
            const auto oracle = mono_multiply(bernstein_to_monomial(a), bernstein_to_monomial(b));
            const auto got = bernstein_to_monomial(prod);
            double scale = 0.0;
            for (double v : oracle) scale = std::max(scale, std::abs(v));
            for (std::size_t i = 0; i < oracle.size(); ++i)
                REQUIRE(std::abs(got[i] - oracle[i]) <= 1e-12 * std::max(1.0, scale));
        }
    }
    SECTION("degree cap") {
        std::vector<double> a(80, 1.0), b(60, 1.0);
        CHECK_THROWS_AS(bernstein_multiply(a, b), std::invalid_argument);
    }
}

TEST_CASE("bernstein_degree_elevate") {
    CHECK(bernstein_degree_elevate(std::vector<double>{1.0, 1.0}, 1) ==
          std::vector<double>{1.0, 1.0, 1.0});
    auto e = bernstein_degree_elevate(std::vector<double>{0.0, 1.0}, 1);
    CHECK(e[1] == Catch::Approx(0.5));
    CHECK(e[2] == Catch::Approx(1.0));

    SECTION("coefficients approach samples of the polynomial") {
        auto c = bernstein_degree_elevate(std::vector<double>{0.0, 1.0}, 98);
        REQUIRE(c.size() == 100);
        for (int j = 0; j < 100; ++j) REQUIRE(c[j] == Catch::Approx(j / 99.0).margin(1e-12));
    }
    SECTION("values preserved") {
        std::vector<double> c(7);
        for (auto& v : c) v = urand(-2.0, 2.0);
        auto e = bernstein_degree_elevate(c, 23);
        for (int i = 0; i < 50; ++i) {
            const double t = urand();
            REQUIRE(std::abs(bernstein_eval(c, t) - bernstein_eval(e, t)) <= 1e-12);
        }
    }
}

TEST_CASE("bernstein_subdivide_left") {
    std::vector<double> c{0.3, -0.2, 0.9};
    CHECK(bernstein_subdivide_left(c, 1.0) == c);
    auto lin = bernstein_subdivide_left(std::vector<double>{0.0, 1.0}, 0.5);
    CHECK(lin[0] == 0.0);
    CHECK(lin[1] == Catch::Approx(0.5));
    auto sq = bernstein_subdivide_left(std::vector<double>{0.0, 0.0, 1.0}, 0.5);
    CHECK(std::abs(sq[0]) < 1e-15);
    CHECK(std::abs(sq[1]) < 1e-15);
    CHECK(sq[2] == Catch::Approx(0.25));
    CHECK_THROWS_AS(bernstein_subdivide_left(c, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(bernstein_subdivide_left(c, 1.5), std::invalid_argument);

    SECTION("left segment reproduces values") {
        std::vector<double> r(9);
        for (auto& v : r) v = urand(-1.0, 1.0);
        const double h = 0.37;
        auto left = bernstein_subdivide_left(r, h);
        for (int i = 0; i < 50; ++i) {
            const double s = urand();
            REQUIRE(std::abs(bernstein_eval(left, s) - bernstein_eval(r, h * s)) <= 1e-13);
        }
    }
}

TEST_CASE("gauss_legendre_rule") {
    CHECK_THROWS_AS(gauss_legendre_rule(0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_legendre_rule(513), std::invalid_argument);

    auto r1 = gauss_legendre_rule(1);
    CHECK(r1.nodes[0] == Catch::Approx(0.5));
    CHECK(r1.weights[0] == Catch::Approx(1.0));

    auto r2 = gauss_legendre_rule(2);
    CHECK(r2.nodes[0] == Catch::Approx(0.5 - 0.5 / std::sqrt(3.0)));
    CHECK(r2.nodes[1] == Catch::Approx(0.5 + 0.5 / std::sqrt(3.0)));
    CHECK(r2.weights[0] == Catch::Approx(0.5));
    CHECK(r2.weights[1] == Catch::Approx(0.5));

    SECTION("t^4 with 3 points") {
        auto r = gauss_legendre_rule(3);
        double acc = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i)
            acc += r.weights[i] * std::pow(r.nodes[i], 4);
        CHECK(std::abs(acc - 0.2) <= 1e-15);
    }
    SECTION("exactness through degree 2n-1") {
        for (int n : {1, 2, 5, 12, 33, 60}) {
            auto r = gauss_legendre_rule(n);
            double wsum = 0.0;
            for (double w : r.weights) wsum += w;
            REQUIRE(std::abs(wsum - 1.0) <= 1e-14);
            for (int k = 0; k <= 2 * n - 1; ++k) {
                double acc = 0.0;
                for (std::size_t i = 0; i < r.nodes.size(); ++i)
                    acc += r.weights[i] * std::pow(r.nodes[i], k);
                const double exact = 1.0 / (k + 1);
                REQUIRE(std::abs(acc - exact) <= 1e-13 * exact);
            }
        }
    }
}

TEST_CASE("gauss_chebyshev_rule") {
    CHECK_THROWS_AS(gauss_chebyshev_rule(0), std::invalid_argument);
    auto r = gauss_chebyshev_rule(5);
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        m0 += r.weights[i];
        m1 += r.weights[i] * r.nodes[i];
        m2 += r.weights[i] * r.nodes[i] * r.nodes[i];
    }
    CHECK(std::abs(m0 - std::numbers::pi) <= 1e-14);
    CHECK(m1 == Catch::Approx(std::numbers::pi / 2.0));
    CHECK(m2 == Catch::Approx(3.0 * std::numbers::pi / 8.0));
}

TEST_CASE("monomial conversions invert each other") {
    std::vector<double> c(11);
    for (auto& v : c) v = urand(-1.0, 1.0);
    auto back = monomial_to_bernstein(bernstein_to_monomial(c));
    for (std::size_t i = 0; i < c.size(); ++i) REQUIRE(back[i] == Catch::Approx(c[i]).margin(1e-10));
}
