#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cusp/asymptotics.hpp"
#include "cusp/brieskorn.hpp"
#include "cusp/model.hpp"
#include "cusp/series.hpp"

namespace cusp {

// r_h(x, y) = (g(H)^{1/2} x, g(H)^{1/3} y) on H = y^3 - x^2, with H o r_h = H g(H).
class RescaleMap {
public:
    explicit RescaleMap(TruncatedSeries g);

    const TruncatedSeries& g() const { return g_; }

    template <typename Real>
    std::pair<Real, Real> apply(const Real& x, const Real& y) const {
        using std::pow, std::sqrt;
        const Real gh = g_.evaluate(Real(y * y * y - x * x));
        return {sqrt(gh) * x, pow(gh, Real(1) / Real(3)) * y};
    }

    // g^{-1/6} (g' H + g).
    template <typename Real>
    Real jacobian(const Real& x, const Real& y) const {
        using std::pow;
        const Real H = y * y * y - x * x;
        const Real gh = g_.evaluate(H);
        return pow(gh, Real(-1) / Real(6)) * (dg_.evaluate(H) * H + gh);
    }

    double jacobian_fd(double x, double y, double step = 1e-6) const;
    double h(double H) const { return H * g_.evaluate(H); }

    // Density of the pullback r_h^* (f dx^dy) at (x, y).
    template <typename Real>
    Real pullback(const Polynomial& f, const Real& x, const Real& y) const {
        const auto [X, Y] = apply(x, y);
        return f(X, Y, Real(0)) * jacobian(x, y);
    }

private:
    TruncatedSeries g_;
    TruncatedSeries dg_;
};

RescaleMap rescale_r_h(const TruncatedSeries& g);

// Area-type series (A, B) with a = phi_{5/6}(A), b = phi_{7/6}(B).
struct AreaSeries {
    TruncatedSeries A;
    TruncatedSeries B;

    static AreaSeries from_periods(const TruncatedSeries& a, const TruncatedSeries& b);
    TruncatedSeries a() const;
    TruncatedSeries b() const;
};

struct RelationResiduals {
    std::vector<double> area;    // A = g^{5/6} A~(h), B = g^{7/6} B~(h)
    std::vector<double> basis;   // alpha, beta
    std::vector<double> period;  // a, b
    double max() const;
};

// Residuals of the rescaling relations for omega = r_h^* omega~, termwise on
// the first `count` coefficients (relative to max(1, |coefficient|)).
RelationResiduals verify_relations(const AreaSeries& omega, const AreaSeries& omega_tilde, const TruncatedSeries& g,
                                   std::size_t count = 3);

// Builds the area series of r_h^* omega~ from those of omega~ (exact series algebra).
AreaSeries pulled_back_areas(const AreaSeries& omega_tilde, const TruncatedSeries& g);

enum class Normalization {
    unit_alpha,  // alpha~ = 1: omega ~ dx^dy + f(H) y dx^dy
    unit_area    // A~ = 1: g = A^{6/5}
};

struct NormalizedInvariant {
    TruncatedSeries g;
    TruncatedSeries h;            // H g(H)
    TruncatedSeries canonical_f;  // beta of the normal form
    Normalization mode = Normalization::unit_alpha;
};

// alpha, beta: coefficients of dx^dy and y dx^dy; alpha(0) must be positive.
NormalizedInvariant normalize_invariant(const TruncatedSeries& alpha, const TruncatedSeries& beta,
                                        Normalization mode = Normalization::unit_alpha);
NormalizedInvariant normalize_invariant(const BrieskornPair& pair, Normalization mode = Normalization::unit_alpha);
NormalizedInvariant normalize_invariant(const PuiseuxTriple& fit, Normalization mode = Normalization::unit_alpha);

enum class EquivalenceMode { H_preserving, fibration_preserving };

struct OneDofVerdict {
    bool equivalent = false;
    bool orientation_corrected = false;
    double residual = 0.0;
    std::optional<TruncatedSeries> witness_g;
};

OneDofVerdict one_dof_equivalent(const Polynomial& f1, const Polynomial& f2, EquivalenceMode mode,
                                 double tol = 1e-9);

struct EquivalenceOptions {
    double sigma_tol = 1e-8;   // bifurcation-diagram image
    double action_tol = 1e-5;  // relative, grid action values
    int n_lambda = 5;
    int n_H = 4;
    std::pair<int, int> k_range{-3, 3};
    QuadratureOptions quadrature{};
};

struct ParabolicVerdict2 {
    bool equivalent = false;
    bool sigma_ok = false;
    bool I_ok = false;
    bool I_circ_ok = false;
    bool I_mu_ok = true;
    double sigma_residual = 0.0;
    double I_residual = 0.0;
    double I_circ_residual = 0.0;
    double I_mu_residual = 0.0;
    std::optional<int> k;
    bool orientation_corrected_1 = false;
    bool orientation_corrected_2 = false;
    std::string reason;
};

// Checks that phi respects the bifurcation diagrams (with branch labels) and
// carries the actions I = lambda and I_circ of sys2 to those of sys1.
ParabolicVerdict2 parabolic_equivalent(const FibrationModel& sys1, const FibrationModel& sys2, const BaseMap& phi,
                                       const EquivalenceOptions& opt = {});

// parabolic_equivalent plus I_mu = I~_mu o phi + k I for some k in the range.
ParabolicVerdict2 cusp_torus_equivalent(const FibrationModel& sys1, const FibrationModel& sys2, const BaseMap& phi,
                                        const EquivalenceOptions& opt = {});

struct InvariantReport {
    TruncatedSeries alpha;
    TruncatedSeries beta;
    TruncatedSeries canonical_f;
    std::vector<std::pair<double, double>> h_samples;
    std::vector<std::pair<double, double>> log_coeffs;
    bool orientation_corrected = false;
    bool coorientation_corrected = false;
};

struct InvariantOptions {
    std::vector<double> lambdas;  // empty: a default grid inside the model domain
    bool log_coefficients = true;
    QuadratureOptions quadrature{};
};

InvariantReport invariant_report(const FibrationModel& sys, const InvariantOptions& opt = {});

// Replaces f by -f(-x, y, lambda) when f(0, 0, 0) < 0; returns whether it did.
bool orient_density(FibrationModel& sys);

}  // namespace cusp
