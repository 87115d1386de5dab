#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "cusp/errors.hpp"
#include "cusp/quadrature.hpp"
#include "cusp/specfun.hpp"

using namespace cusp;

namespace {

// (2/3) int_0^1 (H + x^2)^{(j-2)/3} dx by tanh-sinh.
double basic_integral(double H, int j) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return 2.0 / 3.0 * ts.integrate([&](double x) { return std::pow(H + x * x, (j - 2) / 3.0); }, 0.0, 1.0);
}

// Direct power series of 2F1, valid for |z| < 1.
double series_2f1(double p, double q, double r, double z) {
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < 5000 && std::abs(term) > 1e-18 * std::abs(sum); ++n) {
        term *= (p + n) * (q + n) / ((r + n) * (n + 1.0)) * z;
        sum += term;
    }
    return sum;
}

}  // namespace

TEST_CASE("gamma") {
    CHECK(cusp::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cusp::gamma(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(cusp::gamma(-1.0 / 6.0) == doctest::Approx(-6.0 * cusp::gamma(5.0 / 6.0)).epsilon(1e-13));
    CHECK_THROWS_AS(cusp::gamma(0.0), InputError);
    CHECK_THROWS_AS(cusp::gamma(-3.0), InputError);
    for (double x = 0.05; x < 5.0; x += 0.37) {
        CHECK(cusp::gamma(x + 1) == doctest::Approx(x * cusp::gamma(x)).epsilon(1e-12));
        CHECK(cusp::gamma(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-12));
    }
    for (double x = -9.7; x < 10.0; x += 1.3) CHECK(cusp::gamma(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-12));
}

TEST_CASE("hyp2f1") {
    CHECK(hyp2f1(0.3, 0.7, 1.5, 0.0) == 1.0);
    for (double z : {-5.0, -0.9, -0.2, 0.5}) CHECK(hyp2f1(0.5, 0.0, 5.0 / 6.0, z) == 1.0);
    for (double z : {-0.9, -0.6, -0.3, 0.4, 0.8})
        CHECK(hyp2f1(2.0 / 3.0, 0.5, 1.5, z) == doctest::Approx(series_2f1(2.0 / 3.0, 0.5, 1.5, z)).epsilon(1e-10));
    // z = -1 / H at H = 1 against the Euler integral 2F1(a, 1/2; 3/2; -1) = int_0^1 (1 + t^2)^{-a} dt.
    boost::math::quadrature::tanh_sinh<double> ts;
    for (double a : {2.0 / 3.0, 1.0 / 3.0}) {
        const double oracle = ts.integrate([&](double t) { return std::pow(1 + t * t, -a); }, 0.0, 1.0);
        CHECK(hyp2f1(a, 0.5, 1.5, -1.0) == doctest::Approx(oracle).epsilon(1e-10));
    }
    // Connection formula region.
    for (double H : {0.5, 0.1, 0.01}) {
        for (double a : {2.0 / 3.0, 1.0 / 3.0}) {
            const double oracle = ts.integrate([&](double t) { return std::pow(1 + t * t / H, -a); }, 0.0, 1.0);
            CHECK(hyp2f1(a, 0.5, 1.5, -1.0 / H) == doctest::Approx(oracle).epsilon(1e-10));
        }
    }
    CHECK_THROWS_AS(hyp2f1(0.5, 0.5, -2.0, 0.1), InputError);
    CHECK_THROWS_AS(hyp2f1(0.5, 0.5, 1.5, 1.0), InputError);
}

TEST_CASE("Puiseux constants") {
    const auto [C0, C1] = constants();
    const double sp = std::sqrt(std::numbers::pi) / 3.0;
    CHECK(C0 == doctest::Approx(sp * std::tgamma(1.0 / 6.0) / std::tgamma(2.0 / 3.0)).epsilon(1e-13));
    CHECK(C1 == doctest::Approx(sp * std::tgamma(-1.0 / 6.0) / std::tgamma(1.0 / 3.0)).epsilon(1e-13));
    CHECK(C0 > 0);
    CHECK(C1 < 0);
    CHECK(C0 == doctest::Approx(2.42866).epsilon(1e-5));
    CHECK(C1 == doctest::Approx(-1.49366).epsilon(1e-5));
}

TEST_CASE("reference_Jj against quadrature") {
    CHECK(reference_Jj(1.0, 0) == doctest::Approx(basic_integral(1.0, 0)).epsilon(1e-9));
    CHECK(reference_Jj(1.0, 1) == doctest::Approx(basic_integral(1.0, 1)).epsilon(1e-9));
    for (double H = 1e-3; H <= 2.0; H *= 1.9)
        for (int j : {0, 1}) CHECK(std::abs(reference_Jj(H, j) - basic_integral(H, j)) < 1e-8);
    CHECK_THROWS_AS(reference_Jj(0.0, 0), InputError);
    CHECK_THROWS_AS(reference_Jj(-1.0, 1), InputError);
}

TEST_CASE("J_j minus its singular term converges as H -> 0") {
    const auto [C0, C1] = constants();
    for (int j : {0, 1}) {
        const double C = j == 0 ? C0 : C1;
        double prev = 0.0;
        for (int e = 2; e <= 8; ++e) {
            const double H = std::pow(10.0, -e);
            const double rem = reference_Jj(H, j) - C * std::pow(H, (2.0 * j - 1.0) / 6.0);
            CHECK(std::abs(rem) < 3.0);
            if (e > 4) CHECK(std::abs(rem - prev) < 1e-2);
            prev = rem;
        }
    }
}
