#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "cusp/errors.hpp"
#include "cusp/quadrature.hpp"
#include "cusp/specfun.hpp"

using namespace cusp;

namespace {

Polynomial mono(double c, int i, int j, int k = 0) { return Polynomial::monomial(c, i, j, k); }
FibrationModel model(ModelKind k, const Polynomial& f) { return FibrationModel::make(k, Density(f)); }

// (1/2 pi) int int_{V} f dx dy over {x^2 + W(y) < H, y in [lo, hi]} by nested tanh-sinh.
double area_oracle(const FibrationModel& m, double H, double l, double lo, double hi) {
    boost::math::quadrature::tanh_sinh<double> ts;
    auto inner = [&](double y) {
        const double r = H - m.potential(y, l);
        if (r <= 0) return 0.0;
        const double xm = std::sqrt(r);
        return ts.integrate([&](double x) { return m.density(x, y, l); }, -xm, xm);
    };
    return ts.integrate(inner, lo, hi) / (2 * std::numbers::pi);
}

}  // namespace

TEST_CASE("oval bounds") {
    const auto local = model(ModelKind::CuspLocal, Polynomial::constant(1));
    const Oval o = oval_bounds(local, 0.0, -3.0);
    CHECK(std::abs(o.lower) < 1e-14);
    CHECK(o.upper == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK_THROWS_AS(oval_bounds(local, 0.0, 0.0), InputError);
    const double hyp = 2.0 / (3.0 * std::sqrt(3.0));
    CHECK_THROWS_AS(oval_bounds(local, hyp, -1.0, OvalKind::narrow), InputError);

    const auto compact = model(ModelKind::CuspCompact, Polynomial::constant(1));
    const Oval w = oval_bounds(compact, 0.0, 0.0, OvalKind::wide);
    CHECK(w.lower == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(w.upper) < 1e-6);
}

TEST_CASE("passage time: one-DOF closed forms") {
    for (double H : {0.1, 0.5, 1.0}) {
        CHECK(std::abs(passage_time(model(ModelKind::OneDof, Polynomial::constant(1)), H, 0.0) - reference_Jj(H, 0)) < 1e-8);
        CHECK(std::abs(passage_time(model(ModelKind::OneDof, mono(1, 0, 1)), H, 0.0) - reference_Jj(H, 1)) < 1e-8);
    }
    const auto [C0, C1] = constants();
    double prev = 0;
    for (int e = 2; e <= 8; ++e) {
        const double H = std::pow(10.0, -e);
        const double rem = passage_time(model(ModelKind::OneDof, Polynomial::constant(1)), H, 0.0) - C0 * std::pow(H, -1.0 / 6.0);
        CHECK(std::abs(rem) < 2.0);
        if (e > 3) CHECK(std::abs(rem - prev) < 1e-2);
        prev = rem;
    }
}

TEST_CASE("passage time: direct line-integral oracle") {
    // -(1/3) int_1^{-1} f(x, y(x)) y(x)^{-2} dx with y = (H + x^2)^{1/3}.
    boost::math::quadrature::tanh_sinh<double> ts;
    const Polynomial f = mono(1, 0, 0) + mono(0.4, 1, 1) + mono(-0.3, 2, 0) + mono(0.2, 0, 3);
    for (double H : {0.05, 0.3, 0.9}) {
        auto integrand = [&](double x) {
            const double y = std::cbrt(H + x * x);
            return f(x, y) / (y * y);
        };
        const double oracle = ts.integrate(integrand, -1.0, 1.0) / 3.0;
        CHECK(passage_time(model(ModelKind::OneDof, f), H, 0.0) == doctest::Approx(oracle).epsilon(1e-10));
    }
}

TEST_CASE("area derivative equals the passage time (one DOF)") {
    const Density f(mono(1, 0, 0) + mono(0.3, 0, 1) + mono(0.2, 2, 0));
    const auto m = FibrationModel::make(ModelKind::OneDof, f);
    for (double H : {0.05, 0.2, 0.6}) {
        const double h = 1e-4;
        const double d = (one_dof_area(f, H + h, 1.0) - one_dof_area(f, H - h, 1.0)) / (2 * h);
        CHECK(d == doctest::Approx(passage_time(m, H, 0.0)).epsilon(1e-5));
    }
}

TEST_CASE("loop period and action") {
    const auto one = model(ModelKind::CuspLocal, Polynomial::constant(1));
    const auto two = model(ModelKind::CuspLocal, Polynomial::constant(2));
    const double h = 1e-4;
    const double d = 2 * std::numbers::pi * (loop_action(one, h, -3) - loop_action(one, -h, -3)) / (2 * h);
    CHECK(loop_period(one, 0.0, -3.0) == doctest::Approx(d).epsilon(1e-5));
    CHECK(loop_period(two, 0.0, -3.0) == doctest::Approx(2 * loop_period(one, 0.0, -3.0)).epsilon(1e-12));
    CHECK(loop_action(two, 0.0, -3.0) == doctest::Approx(2 * loop_action(one, 0.0, -3.0)).epsilon(1e-12));
    CHECK(loop_action(one, 0.0, -3.0) == doctest::Approx(area_oracle(one, 0.0, -3.0, 0.0, std::sqrt(3.0))).epsilon(1e-4));

    // Near the elliptic branch the action vanishes; near the hyperbolic one the period blows up.
    CHECK(loop_action(one, -2.0 + 1e-4, -3.0) < 1e-4);
    const double hyp = 2.0;
    double prev = 0.0;
    for (int m = 2; m <= 8; ++m) {
        const double p = loop_period(one, hyp - std::pow(10.0, -m), -3.0);
        CHECK(p > prev);
        prev = p;
    }
    CHECK(prev > 2 * loop_period(one, 0.0, -3.0));
    CHECK_THROWS_AS(loop_action(one, 2.5, -3.0), InputError);
}

TEST_CASE("derivative identity on a swallow-tail grid") {
    for (const Polynomial& f : {Polynomial::constant(1), mono(1, 0, 0) + mono(0.1, 0, 1) + mono(0.05, 2, 0)}) {
        const auto m = model(ModelKind::CuspLocal, f);
        for (int j = 0; j < 5; ++j) {
            const double l = -0.5 + 0.1 * j;
            const double hyp = 2 * std::pow(-l, 1.5) / (3 * std::sqrt(3.0));
            for (int i = 1; i <= 5; ++i) {
                const double H = -hyp + 2 * hyp * i / 6.0;
                const double s = 1e-3 * hyp;
                const auto I = [&](double h) { return loop_action(m, h, l); };
                const double d = 2 * std::numbers::pi * (I(H - 2 * s) - 8 * I(H - s) + 8 * I(H + s) - I(H + 2 * s)) / (12 * s);
                CHECK(loop_period(m, H, l) == doctest::Approx(d).epsilon(1e-5));
            }
        }
    }
}

TEST_CASE("wide action") {
    const auto compact = model(ModelKind::CuspCompact, Polynomial::constant(1));
    CHECK(wide_action(compact, 0.03, 0.01, 1) - wide_action(compact, 0.03, 0.01, 0) == doctest::Approx(0.01).epsilon(1e-12));
    const Oval o = oval_bounds(compact, 0.05, 0.0, OvalKind::wide);
    CHECK(wide_action(compact, 0.05, 0.0, 0) == doctest::Approx(area_oracle(compact, 0.05, 0.0, o.lower, o.upper)).epsilon(1e-4));
    CHECK_THROWS_AS(wide_action(model(ModelKind::CuspLocal, Polynomial::constant(1)), 0.0, -0.5, 0), InputError);
    // Continuity across the hyperbolic branch.
    const double l = -0.03, hyp = 2 * std::pow(0.03, 1.5) / (3 * std::sqrt(3.0));
    const double above = wide_action(compact, hyp + 1e-9, l, 0), below = wide_action(compact, hyp - 1e-9, l, 0);
    CHECK(std::isfinite(above));
    CHECK(std::abs(above - below) < 1e-6);
}

TEST_CASE("separatrix action") {
    const auto one = model(ModelKind::CuspLocal, Polynomial::constant(1));
    // Loop of x^2 + y^3 - y = hyp, from y = -1/sqrt3 to the other root.
    const double hyp = 2.0 / (3.0 * std::sqrt(3.0));
    const double y_hi = 2.0 / std::sqrt(3.0);
    CHECK(separatrix_action(one, -1.0) == doctest::Approx(area_oracle(one, hyp, -1.0, -1.0 / std::sqrt(3.0), y_hi)).epsilon(1e-4));
    double prev = 0.0;
    for (double l = -0.1; l >= -1.0; l -= 0.1) {
        const double h = separatrix_action(one, l);
        CHECK(h > prev);
        prev = h;
    }
    CHECK(separatrix_action(one, -1e-4) < 1e-5);
    CHECK_THROWS_AS(separatrix_action(one, 0.1), InputError);
}

TEST_CASE("linearity in the density") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    const Polynomial f = mono(1, 0, 0) + mono(u(rng), 0, 1) + mono(u(rng), 1, 1);
    const Polynomial g = mono(1, 0, 0) + mono(u(rng), 2, 0) + mono(u(rng), 0, 2);
    const double a = 0.7, b = 1.3;
    const auto mf = model(ModelKind::CuspLocal, f), mg = model(ModelKind::CuspLocal, g);
    const auto mh = model(ModelKind::CuspLocal, a * f + b * g);
    for (auto fn : {&loop_period, &loop_action, &passage_time}) {
        const double lhs = fn(mh, 0.05, -0.5, {});
        CHECK(lhs == doctest::Approx(a * fn(mf, 0.05, -0.5, {}) + b * fn(mg, 0.05, -0.5, {})).epsilon(1e-10));
    }
}

TEST_CASE("action chart") {
    const auto m = model(ModelKind::CuspLocal, mono(1, 0, 0) + mono(0.1, 0, 1));
    const GridSpec g = GridSpec::default_for(m);
    const ActionChart a = action_chart(m, g, {}, 4), b = action_chart(m, g, {}, 1);
    REQUIRE(a.rows.size() == 81);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].I == a.rows[i].lambda);
        if (a.rows[i].stratum == Stratum::narrow) CHECK(a.rows[i].I_circ > 0);
        const auto& r = a.rows[i];
        const auto& q = b.rows[i];
        auto same = [](double x, double y) { return (std::isnan(x) && std::isnan(y)) || x == y; };
        CHECK((r.stratum == q.stratum && same(r.Pi, q.Pi) && same(r.Pi_circ, q.Pi_circ) && same(r.I_circ, q.I_circ) &&
               same(r.I_mu, q.I_mu)));
    }
    std::ostringstream os;
    write_csv(os, a);
    CHECK(os.str().rfind("H,lambda,stratum,Pi,Pi_circ,I,I_circ,I_mu\n", 0) == 0);
}
