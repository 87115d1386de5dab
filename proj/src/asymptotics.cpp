#include "cusp/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace cusp {

template <typename Real>
PuiseuxFit fit_puiseux(const std::vector<std::pair<Real, Real>>& samples, std::size_t K) {
    using std::abs, std::pow, std::sqrt;
    using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

    const std::size_t ncol = 3 * (K + 1);
    const std::size_t n = samples.size();
    if (n < ncol) throw InputError("fit_puiseux: need at least 3(K+1) samples");
    Real hmin = samples.front().first, hmax = samples.front().first;
    for (const auto& [h, v] : samples) {
        if (!(h > 0)) throw InputError("fit_puiseux: sample abscissae must be positive");
        if (h < hmin) hmin = h;
        if (h > hmax) hmax = h;
    }
    if (hmax / hmin < Real(1e4)) throw InputError("fit_puiseux: samples must span at least four decades");

    const Real sixth = Real(1) / Real(6);
    Matrix A(n, ncol);
    Vector rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Real h = samples[i].first;
        const Real lo = pow(h, -sixth), hi = pow(h, sixth);
        Real hk = 1;
        for (std::size_t k = 0; k <= K; ++k) {
            A(i, 3 * k) = hk * lo;
            A(i, 3 * k + 1) = hk * hi;
            A(i, 3 * k + 2) = hk;
            hk *= h;
        }
        rhs(i) = samples[i].second;
    }
    Vector scale(ncol);
    for (std::size_t j = 0; j < ncol; ++j) {
        scale(j) = A.col(j).norm();
        A.col(j) /= scale(j);
    }
    const Vector x = A.householderQr().solve(rhs);
    Eigen::JacobiSVD<Matrix> svd(A);
    const auto& sv = svd.singularValues();

    PuiseuxFit fit;
    fit.condition = static_cast<double>(sv(0) / sv(sv.size() - 1));
    fit.ill_conditioned = fit.condition * static_cast<double>(std::numeric_limits<Real>::epsilon()) > 1e-4;
    const Vector r = A * x - rhs;
    fit.residual = static_cast<double>(r.cwiseAbs().maxCoeff());
    fit.triple = {TruncatedSeries(K), TruncatedSeries(K), TruncatedSeries(K)};
    for (std::size_t k = 0; k <= K; ++k) {
        fit.triple.a[k] = static_cast<double>(x(3 * k) / scale(3 * k));
        fit.triple.b[k] = static_cast<double>(x(3 * k + 1) / scale(3 * k + 1));
        fit.triple.c[k] = static_cast<double>(x(3 * k + 2) / scale(3 * k + 2));
    }
    for (const auto& s : samples) fit.grid.push_back(static_cast<double>(s.first));
    return fit;
}

template PuiseuxFit fit_puiseux<double>(const std::vector<std::pair<double, double>>&, std::size_t);
template PuiseuxFit fit_puiseux<Quad>(const std::vector<std::pair<Quad, Quad>>&, std::size_t);

std::vector<double> geometric_grid(double H_max, double ratio, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t m = 0; m < n; ++m) g[m] = H_max * std::pow(ratio, -static_cast<double>(m));
    return g;
}

PuiseuxFitConfig PuiseuxFitConfig::high_order() {
    PuiseuxFitConfig c;
    c.K = 6;
    c.H_max = 0.25;
    c.ratio = 2.0;
    c.n = 24;
    c.extended = true;
    return c;
}

PuiseuxFit fit_one_dof(const Polynomial& f, const PuiseuxFitConfig& cfg) {
    const Polynomial g = f.at_lambda(0.0);
    auto density = [&g](const auto& x, const auto& y) {
        using T = std::decay_t<decltype(x)>;
        return g(x, y, T(0));
    };
    const auto grid = geometric_grid(cfg.H_max, cfg.ratio, cfg.n);
    if (cfg.extended) {
        QuadratureOptions opt;
        opt.rel_tol = 1e-30;
        opt.abs_tol = 1e-32;
        return fit_puiseux<Quad>(one_dof_samples<Quad>(density, grid, cfg.x0, opt), cfg.K);
    }
    QuadratureOptions opt;
    opt.rel_tol = 1e-14;
    opt.abs_tol = 1e-16;
    return fit_puiseux<double>(one_dof_samples<double>(density, grid, cfg.x0, opt), cfg.K);
}

LogCoefficient extract_log_coeff(const std::vector<std::pair<double, double>>& samples, int order, double tol) {
    if (samples.size() < 7) throw InputError("extract_log_coeff: need samples for m = 0..M with M >= 6");
    for (std::size_t m = 0; m + 1 < samples.size(); ++m) {
        const double q = samples[m + 1].first / samples[m].first;
        if (std::abs(q - 0.5) > 1e-9) throw InputError("extract_log_coeff: samples must halve s at each step");
    }
    std::vector<double> d;
    for (std::size_t m = 0; m + 1 < samples.size(); ++m) d.push_back(samples[m + 1].second - samples[m].second);
    // Each power s^k comes with s^k ln s, so every factor is eliminated twice.
    for (int k = 1; k <= order; ++k) {
        const double f = std::ldexp(1.0, k);
        for (int pass = 0; pass < 2 && d.size() > 2; ++pass) {
            std::vector<double> next;
            for (std::size_t m = 0; m + 1 < d.size(); ++m) next.push_back((f * d[m + 1] - d[m]) / (f - 1.0));
            d = std::move(next);
        }
    }
    LogCoefficient out;
    out.alpha = -d.back() / std::numbers::ln2;
    out.error_estimate = std::abs(d[d.size() - 1] - d[d.size() - 2]) / std::numbers::ln2;
    out.converged = out.error_estimate <= tol * std::max(1.0, std::abs(out.alpha));
    if (!out.converged) out.diagnostic = "successive differences do not settle to a logarithmic rate";
    return out;
}

LogSeriesFit fit_log_series(const std::vector<std::pair<double, double>>& samples, std::size_t degree) {
    const std::size_t ncol = 2 * (degree + 1);
    if (samples.size() < ncol) throw InputError("fit_log_series: too few samples");
    Eigen::MatrixXd A(samples.size(), ncol);
    Eigen::VectorXd rhs(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double h = samples[i].first;
        if (!(h > 0)) throw InputError("fit_log_series: abscissae must be positive");
        double hk = 1.0;
        for (std::size_t k = 0; k <= degree; ++k) {
            A(i, 2 * k) = hk * std::log(h);
            A(i, 2 * k + 1) = hk;
            hk *= h;
        }
        rhs(i) = samples[i].second;
    }
    Eigen::VectorXd scale = A.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < A.cols(); ++j) A.col(j) /= scale(j);
    const Eigen::VectorXd x = A.colPivHouseholderQr().solve(rhs);
    LogSeriesFit fit{TruncatedSeries(degree), TruncatedSeries(degree), 0.0};
    for (std::size_t k = 0; k <= degree; ++k) {
        fit.a[k] = x(2 * k) / scale(2 * k);
        fit.b[k] = x(2 * k + 1) / scale(2 * k + 1);
    }
    fit.residual = (A * x - rhs).cwiseAbs().maxCoeff();
    return fit;
}

double node_passage(const Polynomial& f, double H, const QuadratureOptions& opt) {
    return passage_time(FibrationModel::make(ModelKind::Node, Density(f)), H, 0.0, opt);
}

ComplexPeriod node_complex_period(const Polynomial& f, double H, int nodes) {
    using C = std::complex<double>;
    const Polynomial g = f.at_lambda(0.0);
    const C two_pi_i(0.0, 2.0 * std::numbers::pi);
    ComplexPeriod out;
    double diagonal = 0.0;
    for (const auto& [e, c] : g.terms())
        if (e[0] == e[1]) diagonal += c * std::pow(H, e[0]);
    out.residue = -two_pi_i * diagonal;

    const int n = nodes > 0 ? nodes : 4 * (g.total_degree() + 1) + 16;
    C sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / n;
        const C y = std::polar(1.0, -theta);
        const C x = std::polar(H, theta);
        sum += g(x, y, C(0.0));
    }
    out.contour = C(0.0, -1.0) * sum * (2.0 * std::numbers::pi / n);
    return out;
}

ResidueRuleReport verify_residue_rule(const Polynomial& f, const std::vector<double>& H_grid, double tol) {
    for (double h : H_grid)
        if (!(h > 0 && h < 0.5)) throw InputError("verify_residue_rule: grid must lie in (0, 0.5)");
    const std::size_t degree = static_cast<std::size_t>(std::max(1, f.at_lambda(0.0).total_degree()));
    const auto grid = geometric_grid(0.5, 1.5, 3 * (degree + 1) + 14);
    QuadratureOptions opt;
    opt.rel_tol = 1e-14;
    opt.abs_tol = 1e-16;
    std::vector<std::pair<double, double>> samples(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { samples[i] = {grid[i], node_passage(f, grid[i], opt)}; });
    const LogSeriesFit fit = fit_log_series(samples, degree);

    ResidueRuleReport rep;
    const std::complex<double> two_pi_i(0.0, 2.0 * std::numbers::pi);
    for (double h : H_grid) {
        const double predicted = (static_cast<double>(rep.sign) * node_complex_period(f, h).residue / two_pi_i).real();
        const double extracted = fit.a.evaluate(h);
        const bool ok = std::abs(predicted - extracted) <= tol;
        rep.rows.push_back({h, extracted, predicted, ok});
        rep.pass = rep.pass && ok;
    }
    return rep;
}

LogCoefficient hyperbolic_log_coeff(const FibrationModel& model, double lambda, LogApproach approach, int M,
                                    const QuadratureOptions& opt) {
    if (!model.has_parameter()) throw InputError("hyperbolic_log_coeff requires a cusp model");
    if (M < 6) throw InputError("hyperbolic_log_coeff: M must be at least 6");
    const auto b = BifurcationDiagram(model, {lambda, lambda}, 2).branches(lambda);
    if (!(lambda < 0) || !b) throw InputError("hyperbolic_log_coeff: lambda must lie on the hyperbolic branch range");
    const double span = b->hyp - b->ell;
    const double scale = model.kind == ModelKind::CuspLocal ? 3.0 * std::sqrt(3.0) : 1.0;
    std::vector<std::pair<double, double>> samples(static_cast<std::size_t>(M) + 1);
    parallel_for(samples.size(), [&](std::size_t m) {
        const double delta = 0.25 * span * std::ldexp(1.0, -static_cast<int>(m));
        double value = 0.0;
        switch (approach) {
            case LogApproach::loop_inside: value = loop_period(model, b->hyp - delta, lambda, opt); break;
            case LogApproach::passage_inside: value = passage_time(model, b->hyp - delta, lambda, opt); break;
            case LogApproach::passage_outside: value = passage_time(model, b->hyp + delta, lambda, opt); break;
        }
        samples[m] = {scale * delta, value};
    });
    return extract_log_coeff(samples, 2, 1e-4);
}

}  // namespace cusp
