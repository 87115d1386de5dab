#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cusp/flows.hpp"

using namespace cusp;

namespace {

Polynomial mono(double c, int i, int j, int k = 0) { return Polynomial::monomial(c, i, j, k); }

SymplecticModel make(ModelKind k, const Polynomial& f) { return SymplecticModel(FibrationModel::make(k, Density(f))); }

// Density of the pushforward of f dx^dy under the fiber-preserving Moser flow of eta.
Polynomial moser_density(const FibrationModel& m, const Polynomial& eta) {
    const Polynomial H = m.hamiltonian();
    return m.density.poly + H.derivative(0) * eta.derivative(1) - H.derivative(1) * eta.derivative(0);
}

}  // namespace

TEST_CASE("hamiltonian field") {
    const SymplecticModel one = make(ModelKind::CuspLocal, Polynomial::constant(1));
    const auto v = hamiltonian_field(one, Generator::H, {1, 1, 0, 0});
    CHECK(v == std::array<double, 4>{-3, 2, 0, 1});
    CHECK(field_residual(one, Generator::H, {1, 1, 0, 0}, v) < 1e-12);
    CHECK(hamiltonian_field(one, Generator::F, {0.3, -0.2, 0.1, 2.0}) == std::array<double, 4>{0, 0, 0, 1});

    const SymplecticModel f = make(ModelKind::CuspLocal, mono(1, 0, 0) + mono(0.2, 0, 1) + mono(0.3, 1, 0, 1));
    const SymplecticModel f2 = make(ModelKind::CuspLocal, 2.0 * (mono(1, 0, 0) + mono(0.2, 0, 1) + mono(0.3, 1, 0, 1)));
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int i = 0; i < 20; ++i) {
        const PhasePoint p{u(rng), u(rng), u(rng), u(rng)};
        for (auto G : {Generator::H, Generator::F}) {
            const auto a = hamiltonian_field(f, G, p), b = hamiltonian_field_solve(f, G, p);
            CHECK(field_residual(f, G, p, a) < 1e-12);
            for (int k = 0; k < 4; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-12);
        }
        const auto a = hamiltonian_field(f, Generator::H, p), b = hamiltonian_field(f2, Generator::H, p);
        CHECK(b[0] == doctest::Approx(a[0] / 2));
        CHECK(b[1] == doctest::Approx(a[1] / 2));
    }
    const SymplecticModel zero = make(ModelKind::CuspLocal, mono(1, 1, 0));
    CHECK_THROWS_AS(hamiltonian_field(zero, Generator::H, {0, 0.5, 0, 0}), InputError);
}

TEST_CASE("flows") {
    const SymplecticModel sm = make(ModelKind::CuspLocal, mono(1, 0, 0) + mono(0.1, 0, 1));
    const PhasePoint p = torus_point(sm, 0.0, -0.3, Stratum::narrow);
    CHECK(flow(sm, p, Generator::H, 0.0) == p);
    CHECK(phase_distance(flow(sm, p, Generator::F, 2 * std::numbers::pi), p) < 1e-14);
    const double H0 = sm.value(Generator::H, p);
    double drift = 0.0;
    PhasePoint q = p;
    for (int k = 1; k <= 50; ++k) {
        q = flow(sm, q, Generator::H, 1.0);
        drift = std::max(drift, std::abs(sm.value(Generator::H, q) - H0));
        CHECK(q[2] == p[2]);
    }
    CHECK(drift < 1e-9);
    // Backward flow undoes the forward flow.
    CHECK(phase_distance(flow(sm, flow(sm, p, Generator::H, 3.0), Generator::H, -3.0), p) < 1e-9);
    // Commuting flows.
    const PhasePoint a = flow(sm, flow(sm, p, Generator::H, 1.3), Generator::F, 0.7);
    const PhasePoint b = flow(sm, flow(sm, p, Generator::F, 0.7), Generator::H, 1.3);
    CHECK(phase_distance(a, b) < 1e-8);
    // Unbounded orbit outside the swallow-tail leaves the domain.
    try {
        flow(sm, {0.0, -2.0, -0.3, 0.0}, Generator::H, 1e3);
        CHECK(false);
    } catch (const DomainExit& e) {
        CHECK(e.exit_time() > 0);
    }
}

TEST_CASE("period lattice") {
    const auto ident = lattice_from_actions([](double H, double) { return H; }, [](double, double F) { return F; }, 0.1,
                                            0.2, 1e-3);
    CHECK((ident.basis / (2 * std::numbers::pi) - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-12);

    const SymplecticModel one = make(ModelKind::CuspLocal, Polynomial::constant(1));
    const PeriodLattice L = period_lattice(one, 0.0, -0.5, Stratum::narrow);
    CHECK(L.basis(1, 0) == doctest::Approx(loop_period(one.model, 0.0, -0.5)).epsilon(1e-4));
    const PeriodLattice coarse = period_lattice(one, 0.0, -0.5, Stratum::narrow, 1e-3);
    CHECK((coarse.basis - L.basis).cwiseAbs().maxCoeff() < 1e-5);
    CHECK_THROWS_AS(period_lattice(one, 0.0, -0.5, Stratum::outside), InputError);
    CHECK_THROWS(period_lattice(one, 0.0, -0.5, Stratum::wide));

    for (const Polynomial& f : {Polynomial::constant(1), mono(1, 0, 0) + mono(0.1, 0, 1)}) {
        const SymplecticModel sm = make(ModelKind::CuspLocal, f);
        for (double H : {-0.1, 0.05}) {
            const PeriodLattice P = period_lattice(sm, H, -0.5, Stratum::narrow);
            const PhasePoint p = torus_point(sm, H, -0.5, Stratum::narrow);
            CHECK(verify_lattice(sm, p, 0.0, 0.0) == 0.0);
            for (int r = 0; r < 2; ++r) {
                CHECK(verify_lattice(sm, p, P.basis(r, 0), P.basis(r, 1)) < 1e-6);
                CHECK(verify_lattice(sm, p, 0.5 * P.basis(r, 0), 0.5 * P.basis(r, 1)) > 1e-2);
            }
            CHECK(verify_lattice(sm, p, 0.37 * P.basis(1, 0), 0.37 * P.basis(1, 1)) > 1e-2);
        }
    }
}

TEST_CASE("trajectory dump") {
    const SymplecticModel sm = make(ModelKind::CuspLocal, Polynomial::constant(1));
    const auto rows = trajectory(sm, {1.0, 0.0, -0.3, 0.0}, Generator::H, 1.0, 11);
    REQUIRE(rows.size() == 11);
    CHECK(rows.back().t == 1.0);
    for (const auto& r : rows) CHECK(r.H == doctest::Approx(1.0).epsilon(1e-10));
    std::ostringstream os;
    write_trajectory_csv(os, rows);
    CHECK(os.str().rfind("t,x,y,lambda,phi,H,F\n", 0) == 0);
    CHECK_THROWS_AS(trajectory(sm, {1.0, 0.0, -0.3, 0.0}, Generator::H, 1.0, 1), InputError);
}

TEST_CASE("transport map") {
    const auto m1 = FibrationModel::make(ModelKind::CuspLocal, Density(mono(1, 0, 0) + mono(0.1, 0, 1)));
    auto m2 = m1;
    m2.density.poly = moser_density(m1, mono(0.05, 1, 1));
    const SymplecticModel s1(m1), s2(m2);

    const PhasePoint Q = flow(s1, {1.0, 0.1, -0.1, s1.section_angle(0.1, -0.1) + 0.3}, Generator::H, 0.7);
    const TransportResult same = transport_map(s1, s1, Q);
    CHECK(phase_distance(same.image, Q) < 1e-9);
    CHECK(std::abs(same.t - same.t_tilde) < 1e-9);

    const PhasePoint onN{1.0, 0.2, 0.1, s1.section_angle(0.2, 0.1)};
    const TransportResult fixed = transport_map(s1, s2, onN);
    CHECK(std::abs(fixed.image[0] - 1.0) < 1e-12);
    CHECK(std::abs(fixed.image[1] - 0.2) < 1e-12);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double lambdas[] = {-0.3, -0.1, 0.1, 0.2};
    for (int i = 0; i < 8; ++i) {
        const double l = lambdas[i % 4], y = -0.5 + 0.6 * u(rng);
        const PhasePoint q = flow(s1, {1.0, y, l, s1.section_angle(y, l) + u(rng)}, Generator::H, 0.2 + u(rng));
        const PullbackCheck c = transport_pullback(s1, s2, q);
        CHECK(c.residual < 1e-4);
        CHECK(c.fiber_deviation < 1e-9);
    }
    CHECK_THROWS_AS(transport_map(s1, make(ModelKind::CuspCompact, Polynomial::constant(1)), Q), InputError);
}
