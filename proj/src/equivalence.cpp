#include "cusp/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cusp/errors.hpp"
#include "cusp/quadrature.hpp"
#include "cusp/specfun.hpp"

namespace cusp {

namespace {

constexpr double kFiveSixths = 5.0 / 6.0;
constexpr double kSevenSixths = 7.0 / 6.0;

// (H g)' = g' H + g.
TruncatedSeries h_prime(const TruncatedSeries& g) { return phi_r_apply(g, 1.0); }

TruncatedSeries times_H(const TruncatedSeries& g) { return TruncatedSeries::identity(g.order()) * g; }

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }

double max_gap(const TruncatedSeries& a, const TruncatedSeries& b, std::size_t count) {
    double m = 0.0;
    for (std::size_t k = 0; k < count; ++k) m = std::max(m, relative_gap(a.coeff(k), b.coeff(k)));
    return m;
}

std::pair<double, double> swallowtail_lambdas(const FibrationModel& m) {
    if (m.kind == ModelKind::CuspCompact) return {-0.05, -0.01};
    return {-0.5, -0.05};
}

}  // namespace

RescaleMap::RescaleMap(TruncatedSeries g) : g_(std::move(g)), dg_(g_.derivative()) {
    if (!(g_[0] > 0)) throw InputError("rescale map: g(0) must be positive");
}

double RescaleMap::jacobian_fd(double x, double y, double step) const {
    const auto px = apply(x + step, y), mx = apply(x - step, y);
    const auto py = apply(x, y + step), my = apply(x, y - step);
    const double a = (px.first - mx.first) / (2 * step), b = (py.first - my.first) / (2 * step);
    const double c = (px.second - mx.second) / (2 * step), d = (py.second - my.second) / (2 * step);
    return a * d - b * c;
}

RescaleMap rescale_r_h(const TruncatedSeries& g) { return RescaleMap(g); }

AreaSeries AreaSeries::from_periods(const TruncatedSeries& a, const TruncatedSeries& b) {
    return {phi_r_invert(a, kFiveSixths), phi_r_invert(b, kSevenSixths)};
}

TruncatedSeries AreaSeries::a() const { return phi_r_apply(A, kFiveSixths); }
TruncatedSeries AreaSeries::b() const { return phi_r_apply(B, kSevenSixths); }

double RelationResiduals::max() const {
    double m = 0.0;
    for (const auto* v : {&area, &basis, &period})
        for (double r : *v) m = std::max(m, r);
    return m;
}

AreaSeries pulled_back_areas(const AreaSeries& omega_tilde, const TruncatedSeries& g) {
    const TruncatedSeries h = times_H(g);
    return {pow(g, kFiveSixths) * compose(omega_tilde.A, h), pow(g, kSevenSixths) * compose(omega_tilde.B, h)};
}

RelationResiduals verify_relations(const AreaSeries& omega, const AreaSeries& omega_tilde, const TruncatedSeries& g,
                                   std::size_t count) {
    const auto [C0, C1] = constants();
    const TruncatedSeries h = times_H(g);
    const TruncatedSeries jac = pow(g, -1.0 / 6.0) * h_prime(g);
    const TruncatedSeries jac_b = pow(g, 1.0 / 6.0) * h_prime(g);

    RelationResiduals out;
    const AreaSeries image = pulled_back_areas(omega_tilde, g);
    const TruncatedSeries a = omega.a(), b = omega.b();
    const TruncatedSeries at = omega_tilde.a(), bt = omega_tilde.b();
    const TruncatedSeries a_img = jac * compose(at, h), b_img = jac_b * compose(bt, h);
    for (std::size_t k = 0; k < count; ++k) {
        out.area.push_back(std::max(relative_gap(omega.A.coeff(k), image.A.coeff(k)),
                                    relative_gap(omega.B.coeff(k), image.B.coeff(k))));
        out.basis.push_back(std::max(relative_gap(a.coeff(k) / C0, a_img.coeff(k) / C0),
                                     relative_gap(b.coeff(k) / C1, b_img.coeff(k) / C1)));
        out.period.push_back(
            std::max(relative_gap(a.coeff(k), a_img.coeff(k)), relative_gap(b.coeff(k), b_img.coeff(k))));
    }
    return out;
}

NormalizedInvariant normalize_invariant(const TruncatedSeries& alpha, const TruncatedSeries& beta,
                                        Normalization mode) {
    if (!(alpha[0] > 0)) throw InputError("normalize_invariant: alpha(0) must be positive");
    const auto [C0, C1] = constants();
    NormalizedInvariant out;
    out.mode = mode;
    if (mode == Normalization::unit_alpha) {
        out.g = pow(kFiveSixths * phi_r_invert(alpha, kFiveSixths), 6.0 / 5.0);
        out.h = times_H(out.g);
        const TruncatedSeries denom = pow(out.g, 1.0 / 6.0) * h_prime(out.g);
        out.canonical_f = compose(beta * reciprocal(denom), revert(out.h));
    } else {
        const TruncatedSeries A = C0 * phi_r_invert(alpha, kFiveSixths);
        const TruncatedSeries B = C1 * phi_r_invert(beta, kSevenSixths);
        out.g = pow(A, 6.0 / 5.0);
        out.h = times_H(out.g);
        const TruncatedSeries Bt = compose(B * reciprocal(pow(out.g, kSevenSixths)), revert(out.h));
        out.canonical_f = (1.0 / C1) * phi_r_apply(Bt, kSevenSixths);
    }
    return out;
}

NormalizedInvariant normalize_invariant(const BrieskornPair& pair, Normalization mode) {
    return normalize_invariant(pair.alpha_real(), pair.beta_real(), mode);
}

NormalizedInvariant normalize_invariant(const PuiseuxTriple& fit, Normalization mode) {
    const auto [C0, C1] = constants();
    return normalize_invariant((1.0 / C0) * fit.a, (1.0 / C1) * fit.b, mode);
}

OneDofVerdict one_dof_equivalent(const Polynomial& f1, const Polynomial& f2, EquivalenceMode mode, double tol) {
    TruncatedSeries al[2], be[2];
    OneDofVerdict out;
    const Polynomial* fs[2] = {&f1, &f2};
    for (int i = 0; i < 2; ++i) {
        const BrieskornPair p = reduce(*fs[i]);
        al[i] = p.alpha_real();
        be[i] = p.beta_real();
        if (al[i][0] == 0.0) throw InputError("one_dof_equivalent: density vanishes at the singular point");
        if (al[i][0] < 0) {
            // -f(-x, y) reduces to (-alpha, -beta).
            al[i] = -al[i];
            be[i] = -be[i];
            out.orientation_corrected = true;
        }
    }
    const std::size_t count = std::min(al[0].order(), al[1].order());
    if (mode == EquivalenceMode::H_preserving) {
        out.residual = std::max(max_gap(al[0], al[1], count + 1), max_gap(be[0], be[1], count + 1));
        out.equivalent = out.residual <= tol;
        if (out.equivalent) out.witness_g = TruncatedSeries::constant(1.0, count);
        return out;
    }
    const NormalizedInvariant n1 = normalize_invariant(al[0], be[0]);
    const NormalizedInvariant n2 = normalize_invariant(al[1], be[1]);
    out.residual = max_gap(n1.canonical_f, n2.canonical_f, count + 1);
    out.equivalent = out.residual <= tol;
    if (out.equivalent) {
        const TruncatedSeries h = compose(revert(n2.h), n1.h);
        TruncatedSeries g(h.order() - 1);
        for (std::size_t k = 0; k + 1 <= h.order(); ++k) g[k] = h[k + 1];
        out.witness_g = g;
    }
    return out;
}

bool orient_density(FibrationModel& sys) {
    if (!(sys.density.at_origin() < 0)) return false;
    const Polynomial flipped = sys.density.poly.compose(
        {-1.0 * Polynomial::variable(0), Polynomial::variable(1), Polynomial::variable(2)});
    sys.density.poly = -1.0 * flipped;
    return true;
}

ParabolicVerdict2 parabolic_equivalent(const FibrationModel& sys1_in, const FibrationModel& sys2_in,
                                       const BaseMap& phi, const EquivalenceOptions& opt) {
    for (const auto* s : {&sys1_in, &sys2_in})
        if (!s->has_parameter()) throw InputError("parabolic_equivalent: both systems need the parameter lambda");
    if (std::abs(phi.jacobian_det(0.0, 0.0)) < 1e-10)
        throw InputError("parabolic_equivalent: base map is not invertible at the cusp point");

    ParabolicVerdict2 out;
    FibrationModel sys1 = sys1_in, sys2 = sys2_in;
    out.orientation_corrected_1 = orient_density(sys1);
    out.orientation_corrected_2 = orient_density(sys2);

    const auto range1 = swallowtail_lambdas(sys1);
    const auto range2 = swallowtail_lambdas(sys2);
    const BifurcationDiagram d1(sys1, range1, 2), d2(sys2, {range2.first * 2, -range2.first}, 2);

    std::vector<double> lambdas;
    for (int j = 0; j < opt.n_lambda; ++j)
        lambdas.push_back(range1.first + (range1.second - range1.first) * j / std::max(1, opt.n_lambda - 1));

    // Bifurcation diagram with branch labels.
    const auto cusp_image = phi(0.0, 0.0);
    out.sigma_residual = std::hypot(cusp_image.first, cusp_image.second);
    for (double l : lambdas) {
        const auto b1 = d1.branches(l);
        if (!b1) continue;
        const auto e = phi(b1->ell, l), h = phi(b1->hyp, l);
        const auto be = d2.branches(e.second), bh = d2.branches(h.second);
        if (!be || !bh) {
            out.sigma_residual = std::numeric_limits<double>::infinity();
            break;
        }
        out.sigma_residual = std::max({out.sigma_residual, std::abs(e.first - be->ell), std::abs(h.first - bh->hyp)});
    }
    out.sigma_ok = out.sigma_residual <= opt.sigma_tol;
    if (!out.sigma_ok) out.reason = "bifurcation diagram is not preserved with its branch labels";

    struct Point {
        double H, l;
    };
    std::vector<Point> grid;
    for (double l : lambdas) {
        const auto b = d1.branches(l);
        if (!b) continue;
        for (int i = 1; i <= opt.n_H; ++i) grid.push_back({b->ell + (b->hyp - b->ell) * i / (opt.n_H + 1), l});
    }

    for (const auto& p : grid)
        out.I_residual = std::max(out.I_residual, std::abs(phi(p.H, p.l).second - p.l) / std::abs(p.l));
    out.I_ok = out.I_residual <= opt.action_tol;
    if (!out.I_ok && out.reason.empty()) out.reason = "I is not carried to I";

    if (out.sigma_ok) {
        std::vector<double> gaps(grid.size(), 0.0);
        parallel_for(grid.size(), [&](std::size_t i) {
            const auto [Ht, lt] = phi(grid[i].H, grid[i].l);
            try {
                const double a = loop_action(sys1, grid[i].H, grid[i].l, opt.quadrature);
                const double b = loop_action(sys2, Ht, lt, opt.quadrature);
                gaps[i] = std::abs(a - b) / std::max(std::abs(a), 1e-300);
            } catch (const std::exception&) {
                gaps[i] = std::numeric_limits<double>::infinity();
            }
        });
        for (double g : gaps) out.I_circ_residual = std::max(out.I_circ_residual, g);
    } else {
        out.I_circ_residual = std::numeric_limits<double>::infinity();
    }
    out.I_circ_ok = out.I_circ_residual <= opt.action_tol;
    if (!out.I_circ_ok && out.reason.empty()) out.reason = "I_circ is not carried to I_circ";

    out.equivalent = out.sigma_ok && out.I_ok && out.I_circ_ok;
    return out;
}

ParabolicVerdict2 cusp_torus_equivalent(const FibrationModel& sys1, const FibrationModel& sys2, const BaseMap& phi,
                                        const EquivalenceOptions& opt) {
    if (sys1.kind != ModelKind::CuspCompact || sys2.kind != ModelKind::CuspCompact)
        throw InputError("cusp_torus_equivalent: both systems must be compact cusp models");
    if (opt.k_range.first > opt.k_range.second) throw InputError("cusp_torus_equivalent: empty k range");
    ParabolicVerdict2 out = parabolic_equivalent(sys1, sys2, phi, opt);
    out.I_mu_ok = false;

    FibrationModel s1 = sys1, s2 = sys2;
    orient_density(s1);
    orient_density(s2);
    const BifurcationDiagram d1(s1, {-0.1, 0.1}, 2), d2(s2, {-0.1, 0.1}, 2);

    struct Point {
        double H, l;
    };
    std::vector<Point> grid;
    const int n = std::max(3, opt.n_lambda);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double H = -0.05 + 0.1 * i / (n - 1), l = -0.05 + 0.08 * j / (n - 1);
            if (d1.classify(H, l, 1e-9) == Stratum::wide) grid.push_back({H, l});
        }
    if (grid.empty()) throw ComputationError("cusp_torus_equivalent: no wide-stratum sample points");

    std::vector<double> a1(grid.size()), a2(grid.size());
    bool mapped = true;
    parallel_for(grid.size(), [&](std::size_t i) {
        const auto [Ht, lt] = phi(grid[i].H, grid[i].l);
        try {
            if (d2.classify(Ht, lt, 1e-9) != Stratum::wide) throw InputError("image leaves the wide stratum");
            a1[i] = wide_action(s1, grid[i].H, grid[i].l, s1.mu_shift, opt.quadrature);
            a2[i] = wide_action(s2, Ht, lt, s2.mu_shift, opt.quadrature);
        } catch (const std::exception&) {
            a1[i] = a2[i] = std::numeric_limits<double>::quiet_NaN();
        }
    });
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (std::isnan(a1[i])) mapped = false;

    out.I_mu_residual = std::numeric_limits<double>::infinity();
    if (mapped) {
        for (int k = opt.k_range.first; k <= opt.k_range.second; ++k) {
            double r = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i)
                r = std::max(r, std::abs(a1[i] - a2[i] - k * grid[i].l) / std::max(std::abs(a1[i]), 1e-12));
            if (r < out.I_mu_residual) {
                out.I_mu_residual = r;
                out.k = k;
            }
        }
    }
    out.I_mu_ok = out.I_mu_residual <= opt.action_tol;
    if (!out.I_mu_ok) {
        out.k.reset();
        if (out.reason.empty()) out.reason = "no k in range carries I_mu to I_mu + k I";
    }
    out.equivalent = out.equivalent && out.I_mu_ok;
    return out;
}

InvariantReport invariant_report(const FibrationModel& sys_in, const InvariantOptions& opt) {
    if (!sys_in.has_parameter()) throw InputError("invariant_report: needs a cusp model");
    FibrationModel sys = sys_in;
    InvariantReport out;
    out.orientation_corrected = orient_density(sys);

    const BrieskornPair pair = reduce(one_dof_density(sys.density));
    out.alpha = pair.alpha_real();
    out.beta = pair.beta_real();
    out.canonical_f = normalize_invariant(out.alpha, out.beta).canonical_f;

    std::vector<double> lambdas = opt.lambdas;
    if (lambdas.empty()) {
        if (sys.kind == ModelKind::CuspCompact)
            lambdas = {-0.04, -0.03, -0.02, -0.01};
        else
            lambdas = {-0.6, -0.45, -0.3, -0.15};
    }
    out.h_samples.resize(lambdas.size());
    if (opt.log_coefficients) out.log_coeffs.resize(lambdas.size());
    parallel_for(lambdas.size(), [&](std::size_t i) {
        out.h_samples[i] = {lambdas[i], separatrix_action(sys, lambdas[i], opt.quadrature)};
        if (opt.log_coefficients)
            out.log_coeffs[i] = {lambdas[i],
                                 hyperbolic_log_coeff(sys, lambdas[i], LogApproach::loop_inside, 8, opt.quadrature).alpha};
    });
    return out;
}

}  // namespace cusp
