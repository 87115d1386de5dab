#include <doctest.h>

#include <random>

#include "cusp/asymptotics.hpp"
#include "cusp/brieskorn.hpp"
#include "cusp/specfun.hpp"

using namespace cusp;

namespace {

Polynomial mono(double c, int i, int j) { return Polynomial::monomial(c, i, j); }

RationalSeries rs(std::initializer_list<Rational> c) {
    RationalSeries s(4);
    std::size_t k = 0;
    for (const auto& v : c) s[k++] = v;
    return s;
}

Polynomial random_density(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Polynomial f = Polynomial::constant(0.5 + 0.5 * (u(rng) + 1));
    for (int i = 0; i <= 5; ++i)
        for (int j = 0; i + j <= 5; ++j)
            if (i + j > 0) f.add_term(0.6 * u(rng), {i, j, 0});
    return f;
}

// alpha(H(x, y)) + beta(H(x, y)) y with H = y^3 - x^2.
Polynomial recombine(const BrieskornPair& p) {
    const Polynomial H = Polynomial::variable(1).pow(3) - Polynomial::variable(0).pow(2);
    Polynomial out;
    const auto a = p.alpha_real(), b = p.beta_real();
    for (std::size_t k = 0; k <= a.order(); ++k) out = out + a[k] * H.pow(static_cast<int>(k));
    for (std::size_t k = 0; k <= b.order(); ++k) out = out + b[k] * H.pow(static_cast<int>(k)) * Polynomial::variable(1);
    return out;
}

}  // namespace

TEST_CASE("reduction of basis monomials") {
    CHECK(reduce(Polynomial::constant(1)).alpha == rs({1}));
    CHECK(reduce(Polynomial::constant(1)).beta == rs({0}));
    CHECK(reduce(mono(1, 0, 1)).alpha == rs({0}));
    CHECK(reduce(mono(1, 0, 1)).beta == rs({1}));
    CHECK(reduce(mono(1, 0, 3)).alpha == rs({0, Rational(2, 5)}));
    CHECK(reduce(mono(1, 0, 3)).beta == rs({0}));
    CHECK(reduce(mono(1, 0, 2)).alpha == rs({0}));
    CHECK(reduce(mono(1, 0, 2)).beta == rs({0}));
    CHECK(reduce(mono(1, 2, 0)).alpha == rs({0, Rational(-3, 5)}));
    CHECK(reduce(mono(1, 1, 4)).alpha == rs({0}));
    CHECK(reduce(mono(1, 4, 1)).beta == rs({0, 0, Rational(27, 91)}));
}

TEST_CASE("batch reduction") {
    CHECK(reduce_batch({}).empty());
    const auto out = reduce_batch({Density::constant(1), Density(mono(1, 0, 1))});
    REQUIRE(out.size() == 2);
    CHECK(out[0].alpha == rs({1}));
    CHECK(out[1].beta == rs({1}));
}

TEST_CASE("linearity is exact") {
    std::mt19937 rng(9);
    for (int t = 0; t < 5; ++t) {
        const Polynomial f = random_density(rng), g = random_density(rng);
        const BrieskornPair pf = reduce(f), pg = reduce(g), ps = reduce(3.0 * f + (-2.0) * g);
        const RationalSeries ea = Rational(3) * pf.alpha + Rational(-2) * pg.alpha;
        const RationalSeries eb = Rational(3) * pf.beta + Rational(-2) * pg.beta;
        for (std::size_t k = 0; k <= 4; ++k) {
            CHECK(to_double(ps.alpha)[k] == doctest::Approx(to_double(ea)[k]).epsilon(1e-14));
            CHECK(to_double(ps.beta)[k] == doctest::Approx(to_double(eb)[k]).epsilon(1e-14));
        }
    }
}

TEST_CASE("quadrature oracle for the basis monomials") {
    const auto [C0, C1] = constants();
    const auto hi = PuiseuxFitConfig::high_order();
    const PuiseuxFit y3 = fit_one_dof(mono(1, 0, 3), hi);
    CHECK(y3.triple.a[1] == doctest::Approx(C0 * 0.4).epsilon(1e-6));
    CHECK(std::abs(y3.triple.a[0]) < 1e-8);
    const PuiseuxFit x2 = fit_one_dof(mono(1, 2, 0), hi);
    CHECK(x2.triple.a[1] == doctest::Approx(-C0 * 0.6).epsilon(1e-6));
    const PuiseuxFit y2 = fit_one_dof(mono(1, 0, 2), hi);
    for (double H : {0.1, 0.01}) {
        CHECK(std::abs(y2.triple.a.evaluate(H)) < 1e-6);
        CHECK(std::abs(y2.triple.b.evaluate(H)) < 1e-6);
    }
}

TEST_CASE("the reduction residual is relatively exact") {
    std::mt19937 rng(17);
    for (int t = 0; t < 3; ++t) {
        const Polynomial f = random_density(rng);
        const Polynomial r = f - recombine(reduce(f));
        const PuiseuxFit fit = fit_one_dof(r, PuiseuxFitConfig::high_order());
        for (std::size_t k = 0; k <= 2; ++k) {
            CHECK(std::abs(fit.triple.a[k]) < 1e-6);
            CHECK(std::abs(fit.triple.b[k]) < 1e-6);
        }
    }
}
