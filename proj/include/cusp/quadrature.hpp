#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cusp/errors.hpp"
#include "cusp/model.hpp"

namespace cusp {

struct QuadratureOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    unsigned max_depth = 20;
};

// Adaptive Gauss-Kronrod (31 points); throws when the error estimate exceeds
// 1e4 times the requested relative tolerance.
template <typename Real, typename Fn>
Real integrate(const Fn& f, Real a, Real b, const QuadratureOptions& opt = {}) {
    using std::abs;
    Real err = 0, l1 = 0;
    const Real tol(opt.rel_tol);
    const Real value =
        boost::math::quadrature::gauss_kronrod<Real, 31>::integrate(f, a, b, opt.max_depth, tol, &err, &l1);
    using std::max;
    const Real budget = max(Real(opt.abs_tol), Real(1e4) * tol * l1);
    if (!(err <= budget)) throw ComputationError("quadrature did not converge (error estimate exceeds tolerance)");
    return value;
}

// Passage time of the one-DOF model H = y^3 - x^2 between x = x0 and x = -x0:
// (1/3) int_{-x0}^{x0} f(x, y) y^{-2} dx with y = (H + x^2)^{1/3}, H > 0.
// The substitution x = sqrt(H) sinh(u) keeps the integrand smooth as H -> 0.
template <typename Real, typename DensityFn>
Real one_dof_passage(const DensityFn& f, Real H, Real x0, const QuadratureOptions& opt = {}) {
    using std::asinh, std::cbrt, std::cosh, std::sinh, std::sqrt, std::pow;
    if (!(H > 0)) throw InputError("one-DOF passage time requires H > 0");
    const Real root = sqrt(H);
    const Real upper = asinh(x0 / root);
    const Real third = Real(1) / Real(3);
    auto integrand = [&](Real u) {
        const Real ch = cosh(u);
        const Real x = root * sinh(u);
        const Real y = cbrt(H * ch * ch);
        return (f(x, y) + f(Real(-x), y)) * third * root * ch / (y * y);
    };
    return integrate<Real>(integrand, Real(0), upper, opt);
}

// Area between the level sets {H' = 0} and {H' = H} of y^3 - x^2 inside |x| <= x0,
// weighted by f; d(area)/dH equals the passage time.
double one_dof_area(const Density& f, double H, double x0, const QuadratureOptions& opt = {});

struct Oval {
    double lower;
    double upper;
};

enum class OvalKind { automatic, narrow, wide };

// Sorted real roots of H - W(y, lambda); double roots are flagged.
struct LevelRoot {
    double y;
    bool multiple;
};
std::vector<LevelRoot> level_roots(const FibrationModel& model, double H, double lambda);

Oval oval_bounds(const FibrationModel& model, double H, double lambda, OvalKind kind = OvalKind::automatic);

double passage_time(const FibrationModel& model, double H, double lambda, const QuadratureOptions& opt = {});
double loop_period(const FibrationModel& model, double H, double lambda, const QuadratureOptions& opt = {});
double loop_action(const FibrationModel& model, double H, double lambda, const QuadratureOptions& opt = {});
double wide_action(const FibrationModel& model, double H, double lambda, int k, const QuadratureOptions& opt = {});
// Area of the region bounded by an oval, over 2 pi.
double oval_action(const FibrationModel& model, const Oval& oval, double H, double lambda,
                   const QuadratureOptions& opt = {});
// Period of the closed trajectory bounding an oval.
double oval_period(const FibrationModel& model, const Oval& oval, double H, double lambda,
                   const QuadratureOptions& opt = {});
double separatrix_action(const FibrationModel& model, double lambda, const QuadratureOptions& opt = {});

struct GridSpec {
    std::pair<double, double> H_range{-0.5, 0.5};
    std::pair<double, double> lambda_range{-0.8, 0.2};
    int nH = 9;
    int nlambda = 9;

    static GridSpec default_for(const FibrationModel& model);
};

struct ActionChartRow {
    double H;
    double lambda;
    Stratum stratum;
    double Pi;
    double Pi_circ;
    double I;
    double I_circ;
    double I_mu;
};

struct ActionChart {
    std::vector<ActionChartRow> rows;
    int mu_shift = 0;
};

ActionChart action_chart(const FibrationModel& model, const GridSpec& grid, const QuadratureOptions& opt = {},
                         unsigned threads = 0);
void write_csv(std::ostream& os, const ActionChart& chart);

// Runs fn(i) for i in [0, n) on a fixed pool; results are stored by index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

}  // namespace cusp
