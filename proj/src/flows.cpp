#include "cusp/flows.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include <boost/numeric/odeint.hpp>

namespace cusp {

namespace ode = boost::numeric::odeint;

namespace {

using State = std::array<double, 4>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_density(double f) {
    if (!(std::abs(f) > 1e-14)) throw InputError("symplectic form is degenerate at this point (f = 0)");
}

struct FieldSystem {
    const SymplecticModel* sm;
    double sign;
    void operator()(const State& p, State& dp, double) const {
        const auto v = hamiltonian_field(*sm, Generator::H, p);
        for (int i = 0; i < 4; ++i) dp[i] = sign * v[i];
    }
};

// Integrates the H-field over |t| in the direction of sign(t).
State integrate_H(const SymplecticModel& sm, State p, double t, const FlowOptions& opt) {
    if (t == 0.0) return p;
    const FieldSystem sys{&sm, t > 0 ? 1.0 : -1.0};
    auto stepper = ode::make_controlled(opt.abs_tol, opt.rel_tol, ode::runge_kutta_dopri5<State>());
    const double T = std::abs(t);
    ode::integrate_adaptive(stepper, sys, p, 0.0, T, std::min(1e-3, T), [&](const State& q, double s) {
        if (!sm.in_domain(q)) {
            const double exit = t < 0 ? -s : s;
            throw DomainExit("flow leaves the model domain at time " + std::to_string(exit), exit);
        }
    });
    return p;
}

}  // namespace

SymplecticModel::SymplecticModel(FibrationModel m) : model(std::move(m)) {
    gauge = model.density.poly.antiderivative(0);
    gauge_l = gauge.derivative(2);
    H = model.hamiltonian();
    H_x = H.derivative(0);
    H_y = H.derivative(1);
    H_l = H.derivative(2);
    const Polynomial x0 = Polynomial::constant(model.x0);
    section_phi = -1.0 * gauge_l.antiderivative(1).compose({x0, Polynomial::variable(1), Polynomial::variable(2)});
}

double SymplecticModel::value(Generator G, const PhasePoint& p) const {
    return G == Generator::H ? H(p[0], p[1], p[2]) : p[2];
}

std::array<double, 4> SymplecticModel::gradient(Generator G, const PhasePoint& p) const {
    if (G == Generator::F) return {0.0, 0.0, 1.0, 0.0};
    return {H_x(p[0], p[1], p[2]), H_y(p[0], p[1], p[2]), H_l(p[0], p[1], p[2]), 0.0};
}

Eigen::Matrix4d SymplecticModel::omega(const PhasePoint& p) const {
    const double f = density(p), xl = gauge_l(p[0], p[1], p[2]);
    Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
    M(0, 1) = f;
    M(1, 0) = -f;
    M(2, 1) = xl;
    M(1, 2) = -xl;
    M(2, 3) = 1.0;
    M(3, 2) = -1.0;
    return M;
}

bool SymplecticModel::in_domain(const PhasePoint& p) const {
    return std::abs(p[0]) <= phase_radius && std::abs(p[1]) <= phase_radius && std::isfinite(p[3]);
}

double SymplecticModel::section_angle(double y, double lambda) const { return section_phi(0.0, y, lambda); }

std::array<double, 4> hamiltonian_field(const SymplecticModel& sm, Generator G, const PhasePoint& p) {
    if (G == Generator::F) return {0.0, 0.0, 0.0, 1.0};
    const double f = sm.density(p);
    require_density(f);
    const auto g = sm.gradient(G, p);
    const double xl = sm.gauge_l(p[0], p[1], p[2]);
    return {-g[1] / f, g[0] / f, 0.0, g[2] - xl * g[0] / f};
}

std::array<double, 4> hamiltonian_field_solve(const SymplecticModel& sm, Generator G, const PhasePoint& p) {
    require_density(sm.density(p));
    const Eigen::Matrix4d Mt = sm.omega(p).transpose();
    const auto g = sm.gradient(G, p);
    const Eigen::Vector4d rhs(-g[0], -g[1], -g[2], -g[3]);
    const Eigen::Vector4d v = Mt.fullPivLu().solve(rhs);
    return {v[0], v[1], v[2], v[3]};
}

double field_residual(const SymplecticModel& sm, Generator G, const PhasePoint& p, const std::array<double, 4>& v) {
    const Eigen::Matrix4d M = sm.omega(p);
    const auto g = sm.gradient(G, p);
    double r = 0.0;
    for (int j = 0; j < 4; ++j) {
        double s = g[j];
        for (int i = 0; i < 4; ++i) s += v[i] * M(i, j);
        r = std::max(r, std::abs(s));
    }
    return r;
}

PhasePoint flow(const SymplecticModel& sm, const PhasePoint& p, Generator G, double t, const FlowOptions& opt) {
    if (G == Generator::F) return {p[0], p[1], p[2], p[3] + t};
    return integrate_H(sm, p, t, opt);
}

PhasePoint flow2(const SymplecticModel& sm, const PhasePoint& p, double t1, double t2, const FlowOptions& opt) {
    return flow(sm, flow(sm, p, Generator::H, t1, opt), Generator::F, t2, opt);
}

std::vector<TrajectoryRow> trajectory(const SymplecticModel& sm, const PhasePoint& p, Generator G, double t_end,
                                      int samples, const FlowOptions& opt) {
    if (samples < 2) throw InputError("trajectory: need at least two samples");
    std::vector<TrajectoryRow> rows;
    PhasePoint q = p;
    double t = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double tk = t_end * k / (samples - 1);
        q = flow(sm, q, G, tk - t, opt);
        t = tk;
        rows.push_back({t, q[0], q[1], q[2], q[3], sm.value(Generator::H, q), q[2]});
    }
    return rows;
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRow>& rows) {
    os << "t,x,y,lambda,phi,H,F\n";
    const auto old = os.precision(17);
    for (const auto& r : rows)
        os << r.t << ',' << r.x << ',' << r.y << ',' << r.lambda << ',' << r.phi << ',' << r.H << ',' << r.F << '\n';
    os.precision(old);
}

PeriodLattice lattice_from_actions(const std::function<double(double, double)>& I1,
                                   const std::function<double(double, double)>& I2, double H, double lambda,
                                   double step) {
    auto d = [&](const std::function<double(double, double)>& I, int var) {
        auto at = [&](double s) { return var == 0 ? I(H + s, lambda) : I(H, lambda + s); };
        return (-at(2 * step) + 8 * at(step) - 8 * at(-step) + at(-2 * step)) / (12 * step);
    };
    PeriodLattice L;
    L.step = step;
    L.basis << d(I1, 0), d(I1, 1), d(I2, 0), d(I2, 1);
    if (std::abs(L.basis.determinant()) < 1e-12)
        throw ComputationError("period lattice: action Jacobian is singular (near the bifurcation diagram)");
    L.basis *= kTwoPi;
    return L;
}

PeriodLattice period_lattice(const SymplecticModel& sm, double H, double lambda, Stratum stratum, double step,
                             const QuadratureOptions& qopt) {
    const FibrationModel& m = sm.model;
    if (!m.has_parameter()) throw InputError("period_lattice: needs a cusp model");
    std::function<double(double, double)> I2;
    if (stratum == Stratum::narrow)
        I2 = [&](double h, double l) { return loop_action(m, h, l, qopt); };
    else if (stratum == Stratum::wide)
        I2 = [&](double h, double l) { return wide_action(m, h, l, m.mu_shift, qopt); };
    else
        throw InputError("period_lattice: the point is not on a regular torus");
    return lattice_from_actions([](double, double l) { return l; }, I2, H, lambda, step);
}

PhasePoint torus_point(const SymplecticModel& sm, double H, double lambda, Stratum stratum) {
    if (stratum == Stratum::outside) throw InputError("torus_point: no torus for this stratum");
    const Oval o = oval_bounds(sm.model, H, lambda, stratum == Stratum::narrow ? OvalKind::narrow : OvalKind::wide);
    const double y = 0.5 * (o.lower + o.upper);
    const double x2 = H - sm.model.potential(y, lambda);
    if (!(x2 > 0)) throw ComputationError("torus_point: oval midpoint is not interior");
    return {std::sqrt(x2), y, lambda, 0.0};
}

double phase_distance(const PhasePoint& a, const PhasePoint& b) {
    const double dphi = std::remainder(a[3] - b[3], kTwoPi);
    return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]) +
                     dphi * dphi);
}

double verify_lattice(const SymplecticModel& sm, const PhasePoint& p, double t1, double t2, const FlowOptions& opt) {
    return phase_distance(p, flow2(sm, p, t1, t2, opt));
}

double section_hitting_time(const SymplecticModel& sm, const PhasePoint& p, double x0, double t_max,
                            const FlowOptions& opt) {
    if (std::abs(p[0] - x0) < 1e-13) return 0.0;
    const FieldSystem sys{&sm, -1.0};
    auto dense = ode::make_dense_output(opt.abs_tol, opt.rel_tol, ode::runge_kutta_dopri5<State>());
    dense.initialize(p, 0.0, 1e-3);
    double s_prev = p[0] - x0;
    while (dense.current_time() < t_max) {
        const auto [t0, t1] = dense.do_step(sys);
        const State& q = dense.current_state();
        if (!sm.in_domain(q)) throw InputError("transport: point is not reachable from the section (domain exit)");
        const double s = q[0] - x0;
        if (s == 0.0) return t1;
        if ((s > 0) != (s_prev > 0)) {
            double lo = t0, hi = t1;
            State mid;
            while (hi - lo > 1e-14 * std::max(1.0, hi)) {
                const double tm = 0.5 * (lo + hi);
                dense.calc_state(tm, mid);
                if (((mid[0] - x0) > 0) == (s_prev > 0))
                    lo = tm;
                else
                    hi = tm;
            }
            return 0.5 * (lo + hi);
        }
        s_prev = s;
    }
    throw InputError("transport: point is not reachable from the section within the time limit");
}

TransportResult transport_map(const SymplecticModel& sm1, const SymplecticModel& sm2, const PhasePoint& Q,
                              const FlowOptions& opt) {
    if (sm1.model.kind != sm2.model.kind) throw InputError("transport_map: models of different kinds");
    const double x0 = sm1.model.x0;
    TransportResult out;
    out.t = section_hitting_time(sm1, Q, x0, 200.0, opt);
    const PhasePoint N = flow(sm1, Q, Generator::H, -out.t, opt);
    const double y = N[1], l = N[2];
    out.angle = N[3] - sm1.section_angle(y, l);
    const PhasePoint start{x0, y, l, sm2.section_angle(y, l)};
    out.image = flow(sm2, flow(sm2, start, Generator::H, out.t, opt), Generator::F, out.angle, opt);
    out.t_tilde = section_hitting_time(sm2, out.image, x0, 200.0, opt);
    return out;
}

PullbackCheck transport_pullback(const SymplecticModel& sm1, const SymplecticModel& sm2, const PhasePoint& Q,
                                 double step, const FlowOptions& opt) {
    const PhasePoint P = transport_map(sm1, sm2, Q, opt).image;
    Eigen::Matrix4d D;
    for (int j = 0; j < 4; ++j) {
        PhasePoint qp = Q, qm = Q;
        qp[j] += step;
        qm[j] -= step;
        const PhasePoint a = transport_map(sm1, sm2, qp, opt).image, b = transport_map(sm1, sm2, qm, opt).image;
        for (int i = 0; i < 4; ++i) D(i, j) = (a[i] - b[i]) / (2 * step);
    }
    PullbackCheck out;
    out.residual = (D.transpose() * sm2.omega(P) * D - sm1.omega(Q)).cwiseAbs().maxCoeff();
    out.fiber_deviation = std::max(std::abs(sm1.value(Generator::H, P) - sm1.value(Generator::H, Q)), std::abs(P[2] - Q[2]));
    return out;
}

}  // namespace cusp
