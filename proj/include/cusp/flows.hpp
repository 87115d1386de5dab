#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "cusp/errors.hpp"
#include "cusp/model.hpp"
#include "cusp/polynomial.hpp"
#include "cusp/quadrature.hpp"

namespace cusp {

// Phase point (x, y, lambda, phi).
using PhasePoint = std::array<double, 4>;

enum class Generator { H, F };

// Omega = dX ^ dy + dlambda ^ dphi with dX/dx = f and X(0, y, lambda) = 0.
struct SymplecticModel {
    FibrationModel model;
    Polynomial gauge;        // X
    Polynomial gauge_l;      // dX/dlambda
    Polynomial H, H_x, H_y, H_l;
    Polynomial section_phi;  // R(y, lambda) = -int_0^y dX/dlambda(x0, s, lambda) ds
    double phase_radius = 10.0;

    explicit SymplecticModel(FibrationModel m);

    double density(const PhasePoint& p) const { return model.density(p[0], p[1], p[2]); }
    double value(Generator G, const PhasePoint& p) const;
    std::array<double, 4> gradient(Generator G, const PhasePoint& p) const;
    // Matrix of Omega on coordinate vectors.
    Eigen::Matrix4d omega(const PhasePoint& p) const;
    bool in_domain(const PhasePoint& p) const;
    // phi on the Lagrangian section {x = x0, phi = R(y, lambda)}.
    double section_angle(double y, double lambda) const;
};

class DomainExit : public ComputationError {
public:
    DomainExit(const std::string& what, double time) : ComputationError(what), time_(time) {}
    double exit_time() const { return time_; }

private:
    double time_;
};

// The unique v with i_v Omega = -dG.
std::array<double, 4> hamiltonian_field(const SymplecticModel& sm, Generator G, const PhasePoint& p);
// Same field from a generic 4x4 solve.
std::array<double, 4> hamiltonian_field_solve(const SymplecticModel& sm, Generator G, const PhasePoint& p);
// max |i_v Omega + dG|.
double field_residual(const SymplecticModel& sm, Generator G, const PhasePoint& p, const std::array<double, 4>& v);

struct FlowOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
};

PhasePoint flow(const SymplecticModel& sm, const PhasePoint& p, Generator G, double t, const FlowOptions& opt = {});
// H-time t1, then F-time t2.
PhasePoint flow2(const SymplecticModel& sm, const PhasePoint& p, double t1, double t2, const FlowOptions& opt = {});

struct TrajectoryRow {
    double t, x, y, lambda, phi, H, F;
};
std::vector<TrajectoryRow> trajectory(const SymplecticModel& sm, const PhasePoint& p, Generator G, double t_end,
                                      int samples, const FlowOptions& opt = {});
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRow>& rows);

struct PeriodLattice {
    // Rows are (H-time, F-time) generators of the stationary lattice.
    Eigen::Matrix2d basis;
    double step = 0.0;
};

// Basis 2 pi d(I_1, I_2)/d(H, F) with (I_1, I_2) = (lambda, I_circ) or (lambda, I_mu).
PeriodLattice period_lattice(const SymplecticModel& sm, double H, double lambda, Stratum stratum, double step = 1e-4,
                             const QuadratureOptions& qopt = {});
// Lattice from arbitrary action functions; rows 2 pi dI_j/d(H, F).
PeriodLattice lattice_from_actions(const std::function<double(double, double)>& I1,
                                   const std::function<double(double, double)>& I2, double H, double lambda,
                                   double step);

// Point on the torus of the given stratum with phi = 0.
PhasePoint torus_point(const SymplecticModel& sm, double H, double lambda, Stratum stratum);

// Distance between p and its image under (t1, t2); phi is compared modulo 2 pi.
double verify_lattice(const SymplecticModel& sm, const PhasePoint& p, double t1, double t2,
                      const FlowOptions& opt = {});
double phase_distance(const PhasePoint& a, const PhasePoint& b);

// First time s >= 0 at which the backward G-flow of p meets {x = x0}.
double section_hitting_time(const SymplecticModel& sm, const PhasePoint& p, double x0, double t_max = 200.0,
                            const FlowOptions& opt = {});

struct TransportResult {
    PhasePoint image;
    double t = 0.0;        // H-time from the section in system 1
    double t_tilde = 0.0;  // H-time from the section in system 2
    double angle = 0.0;    // F-time from the Lagrangian section
};

// Q -> sigma~^{(t, s)}(L2(y, lambda)) where Q = sigma^{(t, s)}(L1(y, lambda)).
TransportResult transport_map(const SymplecticModel& sm1, const SymplecticModel& sm2, const PhasePoint& Q,
                              const FlowOptions& opt = {});

struct PullbackCheck {
    double residual = 0.0;        // max over coordinate bivectors of |Phi^* Omega2 - Omega1|
    double fiber_deviation = 0.0;  // max(|H o Phi - H|, |lambda o Phi - lambda|)
};
PullbackCheck transport_pullback(const SymplecticModel& sm1, const SymplecticModel& sm2, const PhasePoint& Q,
                                 double step = 1e-5, const FlowOptions& opt = {});

}  // namespace cusp
