#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cusp/model.hpp"
#include "cusp/quadrature.hpp"
#include "cusp/series.hpp"

namespace cusp {

using Quad = boost::multiprecision::cpp_bin_float_quad;

struct PuiseuxFit {
    PuiseuxTriple triple;
    double residual = 0.0;   // max |fit - data|
    double condition = 0.0;  // 2-norm condition of the column-scaled design
    bool ill_conditioned = false;
    std::vector<double> grid;
};

// Least squares in the basis {H^{k-1/6}, H^{k+1/6}, H^k}, k = 0..K.
template <typename Real>
PuiseuxFit fit_puiseux(const std::vector<std::pair<Real, Real>>& samples, std::size_t K);

extern template PuiseuxFit fit_puiseux<double>(const std::vector<std::pair<double, double>>&, std::size_t);
extern template PuiseuxFit fit_puiseux<Quad>(const std::vector<std::pair<Quad, Quad>>&, std::size_t);

// H_m = H_max ratio^{-m}, m = 0..n-1.
std::vector<double> geometric_grid(double H_max, double ratio, std::size_t n);

// Passage times of the one-DOF model sampled on a grid, at working precision Real.
template <typename Real, typename DensityFn>
std::vector<std::pair<Real, Real>> one_dof_samples(const DensityFn& f, const std::vector<double>& grid, double x0,
                                                   const QuadratureOptions& opt) {
    std::vector<std::pair<Real, Real>> out(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const Real H(grid[i]);
        out[i] = {H, one_dof_passage<Real>(f, H, Real(x0), opt)};
    });
    return out;
}

// Puiseux coefficients of a polynomial one-DOF density. The extended-precision
// route (Quad) is needed to resolve coefficients beyond order 1.
struct PuiseuxFitConfig {
    std::size_t K = 2;
    double H_max = 0.1;
    double ratio = 4.0;
    std::size_t n = 11;
    bool extended = false;
    double x0 = 1.0;

    static PuiseuxFitConfig high_order();
};

PuiseuxFit fit_one_dof(const Polynomial& f, const PuiseuxFitConfig& cfg);

struct LogCoefficient {
    double alpha = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    std::string diagnostic;
};

// value(s) = alpha ln|s| + beta(s) with samples at s_m = s_0 2^{-m}.
LogCoefficient extract_log_coeff(const std::vector<std::pair<double, double>>& samples, int order = 2,
                                 double tol = 1e-6);

// value(H) = a(H) ln H + b(H) with polynomial a, b of the given degree.
struct LogSeriesFit {
    TruncatedSeries a;
    TruncatedSeries b;
    double residual = 0.0;
};
LogSeriesFit fit_log_series(const std::vector<std::pair<double, double>>& samples, std::size_t degree);

// int_H^1 f(H/y, y) dy / y, the passage time of the node model between {y = 1} and {x = 1}.
double node_passage(const Polynomial& f, double H, const QuadratureOptions& opt = {});

struct ComplexPeriod {
    std::complex<double> residue;  // residue rule
    std::complex<double> contour;  // trapezoidal rule on |y| = 1
    // Orientation: x = H e^{it}, y = e^{-it}, t in [0, 2 pi].
    static constexpr const char* orientation = "x = H exp(i t), y = exp(-i t)";
};
ComplexPeriod node_complex_period(const Polynomial& f, double H, int nodes = 0);

struct ResidueRuleRow {
    double H;
    double extracted;
    double predicted;
    bool pass;
};
struct ResidueRuleReport {
    // a(H) = sign (1 / 2 pi i) Pi^(H) for the orientation above.
    int sign = 1;
    std::vector<ResidueRuleRow> rows;
    bool pass = true;
};
ResidueRuleReport verify_residue_rule(const Polynomial& f, const std::vector<double>& H_grid, double tol = 1e-4);

enum class LogApproach { loop_inside, passage_inside, passage_outside };

// Coefficient of ln|3 sqrt3 H - 2(-lambda)^{3/2}| near the hyperbolic branch.
LogCoefficient hyperbolic_log_coeff(const FibrationModel& model, double lambda,
                                    LogApproach approach = LogApproach::loop_inside, int M = 8,
                                    const QuadratureOptions& opt = {});

}  // namespace cusp
