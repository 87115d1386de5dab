#include "cusp/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <thread>

#include <boost/math/tools/roots.hpp>

namespace cusp {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDoubleRootTol = 1e-12;

void require_cusp(const FibrationModel& model, const char* what) {
    if (!model.has_parameter()) throw InputError(std::string(what) + " requires a cusp model");
}

// Ascending coefficients of W(y, lambda) - H.
std::vector<double> shifted_potential(const FibrationModel& model, double H, double lambda) {
    if (model.kind == ModelKind::CuspCompact) return {-H, lambda, 0.0, 1.0, 1.0};
    return {-H, lambda, 0.0, 1.0};
}

// Quotient of p(y) by (y - root), ascending coefficients.
std::vector<double> deflate(const std::vector<double>& p, double root) {
    const std::size_t n = p.size() - 1;
    std::vector<double> q(n, 0.0);
    q[n - 1] = p[n];
    for (std::size_t k = n - 1; k >= 1; --k) q[k - 1] = p[k] + root * q[k];
    return q;
}

double horner(const std::vector<double>& p, double y) {
    double acc = 0.0;
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * y + p[k];
    return acc;
}

double bracket_root(const std::function<double(double)>& g, double a, double b) {
    boost::uintmax_t iters = 200;
    auto tol = [](double lo, double hi) { return std::abs(hi - lo) <= 4e-16 * std::max(1.0, std::abs(lo)); };
    const auto r = boost::math::tools::toms748_solve(g, a, b, g(a), g(b), tol, iters);
    return 0.5 * (r.first + r.second);
}

BifurcationDiagram diagram_of(const FibrationModel& model) { return BifurcationDiagram(model, {0.0, 0.0}, 2); }

double global_minimum_point(const FibrationModel& model, double lambda) {
    const auto crit = model.critical_points(lambda);
    return *std::min_element(crit.begin(), crit.end(), [&](double a, double b) {
        return model.potential(a, lambda) < model.potential(b, lambda);
    });
}

bool hyperbolic_double(const FibrationModel& model, const LevelRoot& r, double lambda) {
    return r.multiple && model.potential_dyy(r.y, lambda) < -1e-9;
}

}  // namespace

std::vector<LevelRoot> level_roots(const FibrationModel& model, double H, double lambda) {
    require_cusp(model, "level_roots");
    auto g = [&](double y) { return H - model.potential(y, lambda); };
    const double tol = kDoubleRootTol * std::max(1.0, std::abs(H));

    std::vector<double> crit = model.critical_points(lambda);
    std::vector<LevelRoot> roots;
    std::vector<double> crit_val;
    for (double c : crit) {
        double v = g(c);
        if (std::abs(v) <= tol) {
            v = 0.0;
            roots.push_back({c, true});
        }
        crit_val.push_back(v);
    }

    // Sign of H - W at -inf / +inf.
    const double sign_left = model.kind == ModelKind::CuspCompact ? -1.0 : 1.0;
    const double sign_right = -1.0;
    auto far_point = [&](double anchor, double dir, double sign_inf) {
        double step = 1.0;
        double y = anchor + dir * step;
        while (g(y) * sign_inf <= 0 && std::abs(y) < 1e8) {
            step *= 2.0;
            y = anchor + dir * step;
        }
        return y;
    };
    auto try_bracket = [&](double a, double ga, double b, double gb) {
        if (ga == 0.0 || gb == 0.0) return;
        if ((ga < 0) != (gb < 0)) roots.push_back({bracket_root(g, std::min(a, b), std::max(a, b)), false});
    };

    if (crit.empty()) {
        const double a = far_point(0.0, -1.0, sign_left);
        const double b = far_point(0.0, 1.0, sign_right);
        try_bracket(a, g(a), b, g(b));
    } else {
        const double a = far_point(crit.front(), -1.0, sign_left);
        try_bracket(a, g(a), crit.front(), crit_val.front());
        for (std::size_t i = 0; i + 1 < crit.size(); ++i)
            try_bracket(crit[i], crit_val[i], crit[i + 1], crit_val[i + 1]);
        const double b = far_point(crit.back(), 1.0, sign_right);
        try_bracket(crit.back(), crit_val.back(), b, g(b));
    }
    std::sort(roots.begin(), roots.end(), [](const LevelRoot& a, const LevelRoot& b) { return a.y < b.y; });
    std::vector<LevelRoot> unique;
    for (const auto& r : roots) {
        if (!unique.empty() && std::abs(unique.back().y - r.y) <= 1e-7) {
            unique.back().multiple = unique.back().multiple || r.multiple;
            continue;
        }
        unique.push_back(r);
    }
    return unique;
}

Oval oval_bounds(const FibrationModel& model, double H, double lambda, OvalKind kind) {
    require_cusp(model, "oval_bounds");
    const BifurcationDiagram diagram = diagram_of(model);
    if (kind == OvalKind::automatic) {
        if (diagram.in_swallowtail(H, lambda))
            kind = OvalKind::narrow;
        else if (model.kind == ModelKind::CuspCompact)
            kind = OvalKind::wide;
        else
            throw InputError("oval_bounds: (H, lambda) carries no compact oval");
    }
    const auto roots = level_roots(model, H, lambda);
    double centre = 0.0;
    if (kind == OvalKind::narrow) {
        const auto b = diagram.branches(lambda);
        if (!b || !(b->ell < H && H < b->hyp)) throw InputError("oval_bounds: point is not inside the swallow-tail");
        centre = b->y_ell;
    } else {
        if (model.kind != ModelKind::CuspCompact) throw InputError("oval_bounds: wide ovals exist for the compact model only");
        centre = global_minimum_point(model, lambda);
    }
    const LevelRoot* lo = nullptr;
    const LevelRoot* hi = nullptr;
    for (const auto& r : roots) {
        if (r.y < centre) lo = &r;
        if (r.y > centre && hi == nullptr) hi = &r;
    }
    if (lo == nullptr || hi == nullptr) throw InputError("oval_bounds: level set has no oval around the minimum");
    if (kind == OvalKind::narrow && (lo->multiple || hi->multiple))
        throw InputError("oval_bounds: double root, point lies on the bifurcation diagram");
    if (hyperbolic_double(model, *lo, lambda) || hyperbolic_double(model, *hi, lambda))
        throw InputError("oval_bounds: double root, point lies on the hyperbolic branch");
    return {lo->y, hi->y};
}

namespace {

// H - W(y) = (y - lower)(upper - y) S(y) on the oval.
struct OvalFactor {
    std::vector<double> s;
    explicit OvalFactor(const FibrationModel& model, const Oval& oval, double H, double lambda)
        : s(deflate(deflate(shifted_potential(model, H, lambda), oval.lower), oval.upper)) {}
    double operator()(double y) const { return std::max(0.0, horner(s, y)); }
};

}  // namespace

double oval_period(const FibrationModel& model, const Oval& oval, double H, double lambda,
                   const QuadratureOptions& opt) {
    const OvalFactor S(model, oval, H, lambda);
    const double L = oval.upper - oval.lower;
    const Polynomial& f = model.density.poly;
    auto integrand = [&](double theta) {
        const double s = std::sin(theta), c = std::cos(theta);
        const double y = oval.lower + L * s * s;
        const double sv = S(y);
        if (sv == 0.0) return 0.0;
        const double X = L * s * c * std::sqrt(sv);
        return (f(X, y, lambda) + f(-X, y, lambda)) / std::sqrt(sv);
    };
    return integrate<double>(integrand, 0.0, std::numbers::pi / 2, opt);
}

double oval_action(const FibrationModel& model, const Oval& oval, double H, double lambda,
                   const QuadratureOptions& opt) {
    const OvalFactor S(model, oval, H, lambda);
    const double L = oval.upper - oval.lower;
    const Polynomial G = model.density.poly.antiderivative(0);
    auto integrand = [&](double theta) {
        const double s = std::sin(theta), c = std::cos(theta);
        const double y = oval.lower + L * s * s;
        const double X = L * s * c * std::sqrt(S(y));
        return (G(X, y, lambda) - G(-X, y, lambda)) * 2.0 * L * s * c;
    };
    return integrate<double>(integrand, 0.0, std::numbers::pi / 2, opt) / kTwoPi;
}

double loop_period(const FibrationModel& model, double H, double lambda, const QuadratureOptions& opt) {
    return oval_period(model, oval_bounds(model, H, lambda, OvalKind::narrow), H, lambda, opt);
}

double loop_action(const FibrationModel& model, double H, double lambda, const QuadratureOptions& opt) {
    return oval_action(model, oval_bounds(model, H, lambda, OvalKind::narrow), H, lambda, opt);
}

double wide_action(const FibrationModel& model, double H, double lambda, int k, const QuadratureOptions& opt) {
    if (model.kind != ModelKind::CuspCompact) throw InputError("wide_action: the model has no wide torus");
    return oval_action(model, oval_bounds(model, H, lambda, OvalKind::wide), H, lambda, opt) + k * lambda;
}

double separatrix_action(const FibrationModel& model, double lambda, const QuadratureOptions& opt) {
    require_cusp(model, "separatrix_action");
    if (!(lambda < 0)) throw InputError("separatrix_action: lambda must be negative");
    const auto b = diagram_of(model).branches(lambda);
    if (!b) throw InputError("separatrix_action: no hyperbolic branch at this lambda");
    double upper = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : level_roots(model, b->hyp, lambda))
        if (r.y > b->y_ell) {
            upper = r.y;
            break;
        }
    if (std::isnan(upper)) throw ComputationError("separatrix_action: separatrix loop not found");
    return oval_action(model, {b->y_hyp, upper}, b->hyp, lambda, opt);
}

double passage_time(const FibrationModel& model, double H, double lambda, const QuadratureOptions& opt) {
    const Polynomial& f = model.density.poly;
    if (model.kind == ModelKind::OneDof) {
        auto fxy = [&](double x, double y) { return f(x, y, 0.0); };
        return one_dof_passage<double>(fxy, H, model.x0, opt);
    }
    if (model.kind == ModelKind::Node) {
        if (!(H > 0 && H < 1)) throw InputError("node passage time requires 0 < H < 1");
        // y = e^t turns dy / y into dt.
        auto integrand = [&](double t) {
            const double y = std::exp(t);
            return f(H / y, y, 0.0);
        };
        return integrate<double>(integrand, std::log(H), 0.0, opt);
    }
    double turning = 0.0;
    double left_end = -std::numeric_limits<double>::infinity();
    const auto roots = level_roots(model, H, lambda);
    if (model.kind == ModelKind::CuspLocal) {
        if (roots.empty()) throw ComputationError("passage_time: level set not found");
        if (roots.front().multiple) throw InputError("passage_time: point lies on the hyperbolic branch (divergent)");
        turning = roots.front().y;
    } else {
        const Oval wide = oval_bounds(model, H, lambda, OvalKind::wide);
        for (const auto& r : roots)
            if (r.y == wide.upper && r.multiple) throw InputError("passage_time: degenerate turning point (divergent)");
        turning = wide.upper;
        left_end = wide.lower;
    }
    const double x0sq = model.x0 * model.x0;
    double start = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : level_roots(model, H - x0sq, lambda))
        if (r.y < turning && r.y > left_end) start = r.y;
    if (std::isnan(start)) throw InputError("passage_time: trajectory does not reach the section x = x0");

    const std::vector<double> S = deflate(shifted_potential(model, H, lambda), turning);
    const double delta = turning - start;
    const double root_delta = std::sqrt(delta);
    auto integrand = [&](double u) {
        const double y = turning - delta * u * u;
        const double sv = std::max(horner(S, y), 0.0);
        const double X = u * std::sqrt(delta * sv);
        return (f(X, y, lambda) + f(-X, y, lambda)) * root_delta / std::sqrt(sv);
    };
    return integrate<double>(integrand, 0.0, 1.0, opt);
}

double one_dof_area(const Density& f, double H, double x0, const QuadratureOptions& opt) {
    if (!(H > 0)) throw InputError("one_dof_area requires H > 0");
    const Polynomial F = f.poly.at_lambda(0.0).antiderivative(1);
    auto integrand = [&](double t) {
        const double t2 = t * t;
        const double x = t2 * t;
        const double y1 = std::cbrt(H + x * x);
        const double y0 = t2;
        return (F(x, y1) - F(x, y0) + F(-x, y1) - F(-x, y0)) * 3.0 * t2;
    };
    return integrate<double>(integrand, 0.0, std::cbrt(x0), opt);
}

GridSpec GridSpec::default_for(const FibrationModel& model) {
    GridSpec g;
    if (model.kind == ModelKind::CuspCompact) {
        g.H_range = {-0.06, 0.06};
        g.lambda_range = {-0.07, 0.03};
    }
    return g;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

ActionChart action_chart(const FibrationModel& model, const GridSpec& grid, const QuadratureOptions& opt,
                         unsigned threads) {
    require_cusp(model, "action_chart");
    if (grid.nH < 1 || grid.nlambda < 1) throw InputError("action_chart: empty grid");
    const BifurcationDiagram diagram = diagram_of(model);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    ActionChart chart;
    chart.mu_shift = model.mu_shift;
    chart.rows.resize(static_cast<std::size_t>(grid.nH) * static_cast<std::size_t>(grid.nlambda));
    auto coord = [](std::pair<double, double> r, int n, int i) {
        return n == 1 ? r.first : r.first + (r.second - r.first) * i / (n - 1);
    };
    parallel_for(
        chart.rows.size(),
        [&](std::size_t idx) {
            const int il = static_cast<int>(idx) / grid.nH;
            const int ih = static_cast<int>(idx) % grid.nH;
            ActionChartRow row{coord(grid.H_range, grid.nH, ih), coord(grid.lambda_range, grid.nlambda, il),
                               Stratum::outside, nan, nan, 0.0, nan, nan};
            row.I = row.lambda;
            row.stratum = diagram.classify(row.H, row.lambda);
            if (row.stratum != Stratum::outside) {
                try {
                    row.Pi = passage_time(model, row.H, row.lambda, opt);
                } catch (const std::exception&) {
                }
                if (row.stratum == Stratum::narrow) {
                    row.Pi_circ = loop_period(model, row.H, row.lambda, opt);
                    row.I_circ = loop_action(model, row.H, row.lambda, opt);
                }
                if (model.kind == ModelKind::CuspCompact) {
                    try {
                        row.I_mu = wide_action(model, row.H, row.lambda, model.mu_shift, opt);
                    } catch (const InputError&) {
                    }
                }
            }
            chart.rows[idx] = row;
        },
        threads);
    return chart;
}

void write_csv(std::ostream& os, const ActionChart& chart) {
    os << "H,lambda,stratum,Pi,Pi_circ,I,I_circ,I_mu\n";
    os << std::setprecision(15);
    for (const auto& r : chart.rows) {
        os << r.H << ',' << r.lambda << ',' << to_string(r.stratum) << ',' << r.Pi << ',' << r.Pi_circ << ','
           << r.I << ',' << r.I_circ << ',' << r.I_mu << '\n';
    }
}

}  // namespace cusp
