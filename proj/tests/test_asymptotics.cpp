#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cusp/asymptotics.hpp"
#include "cusp/brieskorn.hpp"
#include "cusp/errors.hpp"
#include "cusp/specfun.hpp"

using namespace cusp;

namespace {

Polynomial mono(double c, int i, int j) { return Polynomial::monomial(c, i, j); }

std::vector<std::pair<double, double>> log_samples(double alpha, double beta, double lin, int M = 10) {
    std::vector<std::pair<double, double>> s;
    for (int m = 0; m <= M; ++m) {
        const double x = 0.1 * std::pow(2.0, -m);
        s.push_back({x, alpha * std::log(x) + beta + lin * x});
    }
    return s;
}

}  // namespace

TEST_CASE("Puiseux fit roundtrip on synthetic data") {
    const PuiseuxTriple t{{2.4, 0.0, 0.0}, {-1.5, 0.0, 0.0}, {0.3, 1.0, 0.0}};
    std::vector<std::pair<double, double>> s;
    for (double h : geometric_grid(0.1, 4.0, 11)) s.push_back({h, t.evaluate(h)});
    const PuiseuxFit f = fit_puiseux(s, 2);
    CHECK(f.triple.a[0] == doctest::Approx(2.4).epsilon(1e-8));
    CHECK(f.triple.b[0] == doctest::Approx(-1.5).epsilon(1e-8));
    CHECK(f.triple.c[0] == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(f.triple.c[1] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(!f.ill_conditioned);
    std::vector<std::pair<double, double>> few(s.begin(), s.begin() + 5);
    CHECK_THROWS_AS(fit_puiseux(few, 2), InputError);
}

TEST_CASE("Puiseux constants from one-DOF passage times") {
    const auto [C0, C1] = constants();
    const PuiseuxFit one = fit_one_dof(Polynomial::constant(1), {});
    CHECK(one.triple.a[0] == doctest::Approx(C0).epsilon(1e-5));
    CHECK(std::abs(one.triple.b[0]) < 1e-5);
    const PuiseuxFit y = fit_one_dof(mono(1, 0, 1), {});
    CHECK(std::abs(y.triple.a[0]) < 1e-5 * C0);
    CHECK(y.triple.b[0] == doctest::Approx(C1).epsilon(1e-4));
}

TEST_CASE("fits are stable under section offset and grid perturbation") {
    const Polynomial f = mono(1, 0, 0) + mono(0.3, 0, 1) + mono(0.2, 2, 1);
    PuiseuxFitConfig base;
    const PuiseuxFit ref = fit_one_dof(f, base);
    PuiseuxFitConfig moved = base;
    moved.x0 = 0.8;
    const PuiseuxFit m = fit_one_dof(f, moved);
    CHECK(std::abs(m.triple.a[0] - ref.triple.a[0]) < 1e-5);
    CHECK(std::abs(m.triple.b[0] - ref.triple.b[0]) < 1e-5);
    for (double scale : {0.8, 1.2}) {
        PuiseuxFitConfig p = base;
        p.H_max *= scale;
        const PuiseuxFit q = fit_one_dof(f, p);
        CHECK(std::abs(q.triple.a[0] - ref.triple.a[0]) < 1e-4);
        CHECK(std::abs(q.triple.b[0] - ref.triple.b[0]) < 1e-4);
    }
}

TEST_CASE("Brieskorn and quadrature agree on random densities") {
    const auto [C0, C1] = constants();
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 3; ++t) {
        Polynomial f = Polynomial::constant(1.0);
        for (int i = 0; i <= 4; ++i)
            for (int j = 0; i + j <= 4; ++j)
                if (i + j > 0) f.add_term(0.5 * u(rng), {i, j, 0});
        const BrieskornPair p = reduce(f);
        const PuiseuxFit fit = fit_one_dof(f, PuiseuxFitConfig::high_order());
        for (std::size_t k = 0; k <= 2; ++k) {
            CHECK(std::abs(fit.triple.a[k] - C0 * p.alpha_real()[k]) <= 1e-3 * std::max(1.0, std::abs(fit.triple.a[k])));
            CHECK(std::abs(fit.triple.b[k] - C1 * p.beta_real()[k]) <= 1e-3 * std::max(1.0, std::abs(fit.triple.b[k])));
        }
    }
}

TEST_CASE("log coefficient extraction") {
    CHECK(extract_log_coeff(log_samples(2, 3, 0)).alpha == doctest::Approx(2.0).epsilon(1e-12));
    const LogCoefficient lc = extract_log_coeff(log_samples(2, 3, 1));
    CHECK(std::abs(lc.alpha - 2.0) < 1e-8);
    CHECK(lc.converged);
    CHECK_THROWS_AS(extract_log_coeff(log_samples(2, 3, 0, 4)), InputError);
    std::vector<std::pair<double, double>> power;
    for (int m = 0; m <= 10; ++m) {
        const double s = 0.1 * std::pow(2.0, -m);
        power.push_back({s, std::pow(s, -0.5)});
    }
    CHECK(!extract_log_coeff(power).converged);
}

TEST_CASE("node model passage times") {
    for (double H : {0.5, 0.1, 1e-3}) {
        CHECK(node_passage(Polynomial::constant(1), H) == doctest::Approx(-std::log(H)).epsilon(1e-12));
        CHECK(node_passage(mono(1, 1, 1), H) == doctest::Approx(-H * std::log(H)).epsilon(1e-12));
        CHECK(node_passage(mono(1, 0, 1), H) == doctest::Approx(1 - H).epsilon(1e-12));
    }
    CHECK_THROWS_AS(node_passage(Polynomial::constant(1), 1.5), InputError);
    std::vector<std::pair<double, double>> s;
    for (int m = 0; m <= 8; ++m) {
        const double H = 0.05 * std::pow(2.0, -m);
        s.push_back({H, node_passage(Polynomial::constant(1), H)});
    }
    CHECK(extract_log_coeff(s).alpha == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("complex periods of the node model") {
    const double tp = 2 * std::numbers::pi;
    const ComplexPeriod one = node_complex_period(Polynomial::constant(1), 0.3);
    CHECK(one.residue.imag() == doctest::Approx(-tp).epsilon(1e-14));
    CHECK(std::abs(one.contour - one.residue) < 1e-10);
    const ComplexPeriod xy = node_complex_period(mono(1, 0, 0) + mono(1, 1, 1), 0.3);
    CHECK(std::abs(std::abs(xy.residue.imag()) - tp * 1.3) < 1e-12);
    CHECK(std::abs(xy.contour - xy.residue) < 1e-10);
    CHECK(std::abs(node_complex_period(mono(1, 1, 0), 0.3).residue) == 0.0);

    std::mt19937 rng(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 10; ++t) {
        Polynomial f;
        for (int i = 0; i <= 4; ++i)
            for (int j = 0; i + j <= 4; ++j) f.add_term(u(rng), {i, j, 0});
        const ComplexPeriod c = node_complex_period(f, 0.2 + 0.5 * std::abs(u(rng)));
        CHECK(std::abs(c.contour - c.residue) < 1e-10);
    }
}

TEST_CASE("log coefficient equals the residue prediction") {
    for (const Polynomial& f : {Polynomial::constant(1), mono(1, 0, 0) + mono(1, 1, 1),
                                mono(1, 0, 0) + mono(1, 1, 1) + mono(1, 2, 2), mono(1, 0, 2)}) {
        const ResidueRuleReport r = verify_residue_rule(f, {0.01, 0.05});
        CHECK(r.pass);
        CHECK(r.sign == 1);
    }
    const ResidueRuleReport r = verify_residue_rule(mono(1, 0, 0) + mono(1, 1, 1) + mono(1, 2, 2), {0.01, 0.05});
    CHECK(r.rows[0].extracted == doctest::Approx(-(1 + 0.01 + 1e-4)).epsilon(1e-4));
    CHECK(r.rows[1].extracted == doctest::Approx(-(1 + 0.05 + 0.0025)).epsilon(1e-4));
    const ResidueRuleReport y2 = verify_residue_rule(mono(1, 0, 2), {0.01, 0.05});
    for (const auto& row : y2.rows) CHECK(std::abs(row.extracted) < 1e-6);
}

TEST_CASE("hyperbolic log coefficient") {
    const auto one = FibrationModel::make(ModelKind::CuspLocal, Density::constant(1));
    const auto two = FibrationModel::make(ModelKind::CuspLocal, Density::constant(2));
    const LogCoefficient loop = hyperbolic_log_coeff(one, -1.0);
    const LogCoefficient pass = hyperbolic_log_coeff(one, -1.0, LogApproach::passage_inside);
    CHECK(loop.converged);
    CHECK(std::abs(loop.alpha - pass.alpha) < 1e-3);
    CHECK(hyperbolic_log_coeff(two, -1.0).alpha == doctest::Approx(2 * loop.alpha).epsilon(1e-8));
    const LogCoefficient outside = hyperbolic_log_coeff(one, -1.0, LogApproach::passage_outside);
    CHECK(outside.alpha == doctest::Approx(2 * loop.alpha).epsilon(1e-4));
    double prev = loop.alpha;
    for (double l = -0.9; l <= -0.5 + 1e-9; l += 0.1) {
        const double a = hyperbolic_log_coeff(one, l).alpha;
        CHECK(std::abs(a - prev) < 0.05);
        prev = a;
    }
}
