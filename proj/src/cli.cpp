#include "cusp/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "cusp/asymptotics.hpp"
#include "cusp/brieskorn.hpp"
#include "cusp/equivalence.hpp"
#include "cusp/errors.hpp"
#include "cusp/flows.hpp"
#include "cusp/json_io.hpp"
#include "cusp/quadrature.hpp"
#include "cusp/specfun.hpp"

namespace cusp {

namespace {

struct Common {
    std::string model_path;
    std::string density_path;
    std::string format = "json";
    std::string out_path;
    double tol = 0.0;
};

std::pair<int, int> parse_grid(const std::string& s) {
    const auto x = s.find('x');
    if (x == std::string::npos) throw InputError("--grid expects NHxNL, e.g. 9x9");
    try {
        const int nH = std::stoi(s.substr(0, x)), nL = std::stoi(s.substr(x + 1));
        if (nH < 1 || nL < 1) throw InputError("--grid sizes must be positive");
        return {nH, nL};
    } catch (const std::logic_error&) {
        throw InputError("--grid expects NHxNL, e.g. 9x9");
    }
}

FibrationModel load_model(const std::string& path, const std::string& density_path) {
    FibrationModel m = path.empty() ? FibrationModel::make(ModelKind::CuspLocal, Density::constant(1.0))
                                    : model_from_json(read_json_file(path));
    if (!density_path.empty()) {
        const Json d = read_json_file(density_path);
        m.density = Density(polynomial_from_json(d.contains("density") ? d.at("density") : d));
    }
    return m;
}

Polynomial load_density(const std::string& path) {
    const Json j = read_json_file(path);
    return polynomial_from_json(j.is_object() && j.contains("density") ? j.at("density") : j);
}

QuadratureOptions quadrature_options(const Common& c) {
    QuadratureOptions q;
    if (c.tol > 0) q.rel_tol = c.tol;
    return q;
}

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw InputError("cannot write " + path);
        }
        os_ = file_ ? file_.get() : &fallback;
    }
    std::ostream& stream() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

void emit(const Json& j, const Common& c, std::ostream& out) {
    Output o(c.out_path, out);
    o.stream() << j.dump(2) << '\n';
}

void add_common(CLI::App* cmd, Common& c, bool model = true) {
    if (model) cmd->add_option("--model", c.model_path, "Model JSON file");
    cmd->add_option("--density", c.density_path, "Density JSON file (overrides the model density)");
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", c.out_path, "Output file (default stdout)");
    cmd->add_option("--tol", c.tol, "Relative tolerance");
}

int cmd_decompose(const std::string& path, std::size_t order, bool check, const Common& c, std::ostream& out) {
    const Polynomial f = load_density(path);
    const BrieskornPair pair = reduce(f, order);
    Json j = to_json(pair);
    if (check) {
        const auto [C0, C1] = constants();
        const PuiseuxFit fit = fit_one_dof(f, PuiseuxFitConfig{});
        const double a0 = C0 * pair.alpha_real()[0], b0 = C1 * pair.beta_real()[0];
        j["check"] = {{"a0_fit", fit.triple.a.coeff(0)},
                      {"a0_reduced", a0},
                      {"b0_fit", fit.triple.b.coeff(0)},
                      {"b0_reduced", b0},
                      {"condition", fit.condition}};
    }
    emit(j, c, out);
    return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symplectic invariants of parabolic singularities"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    Common common;

    auto* decompose = app.add_subcommand("decompose", "Brieskorn reduction of a one-DOF density");
    std::string density_file;
    std::size_t order = 4;
    bool check = false;
    decompose->add_option("file", density_file, "Density JSON file")->required();
    decompose->add_option("--order", order, "Series order");
    decompose->add_flag("--check", check, "Cross-check against a quadrature fit");
    add_common(decompose, common, false);

    auto* actions = app.add_subcommand("actions", "Passage times, periods and actions on a grid");
    std::string grid = "9x9", stratum_filter;
    std::vector<double> H_range, lambda_range;
    unsigned threads = 0;
    add_common(actions, common);
    actions->add_option("--grid", grid, "Grid size NHxNL");
    actions->add_option("--H-range", H_range, "H range")->expected(2)->delimiter(',');
    actions->add_option("--lambda-range", lambda_range, "lambda range")->expected(2)->delimiter(',');
    actions->add_option("--stratum", stratum_filter, "Keep one stratum")->check(CLI::IsMember({"narrow", "wide", "outside"}));
    actions->add_option("--threads", threads, "Worker threads (0: all cores)");

    auto* compare = app.add_subcommand("compare", "Equivalence verdict for two systems");
    std::string sys1_path, sys2_path, phi_path, mode = "auto";
    std::vector<int> k_range{-3, 3};
    compare->add_option("sys1", sys1_path, "First model JSON")->required();
    compare->add_option("sys2", sys2_path, "Second model JSON")->required();
    compare->add_option("--phi", phi_path, "Base map JSON (default identity)");
    compare->add_option("--k-range", k_range, "Search range for k")->expected(2)->delimiter(',');
    compare->add_option("--mode", mode, "Comparison")
        ->check(CLI::IsMember({"auto", "parabolic", "torus", "one-dof-H", "one-dof-fibration"}));
    add_common(compare, common, false);

    auto* invariants = app.add_subcommand("invariants", "Invariant report of a system");
    std::vector<double> lambdas;
    bool no_log = false;
    add_common(invariants, common);
    invariants->add_option("--lambdas", lambdas, "Slices for h and the log coefficient")->delimiter(',');
    invariants->add_flag("--no-log", no_log, "Skip log coefficients");

    auto* lattice = app.add_subcommand("lattice", "Period lattice of a torus and its verification");
    double H = 0.0, lambda = 0.0, step = 1e-4;
    std::string stratum_name;
    bool half = false;
    add_common(lattice, common);
    lattice->add_option("--H", H, "Energy")->required();
    lattice->add_option("--lambda", lambda, "Parameter")->required();
    lattice->add_option("--stratum", stratum_name, "narrow or wide (default: classified)")
        ->check(CLI::IsMember({"narrow", "wide"}));
    lattice->add_option("--step", step, "Finite-difference step");
    lattice->add_flag("--half", half, "Verify half basis vectors instead");

    auto* transport = app.add_subcommand("transport", "Fiberwise transport map between two systems");
    std::string points_path;
    transport->add_option("sys1", sys1_path, "First model JSON")->required();
    transport->add_option("sys2", sys2_path, "Second model JSON")->required();
    transport->add_option("--points", points_path, "JSON array of [x, y, lambda, phi]")->required();
    add_common(transport, common, false);

    auto* traj = app.add_subcommand("trajectory", "Sampled Hamiltonian trajectory as CSV");
    std::vector<double> point;
    double t_end = 1.0;
    int samples = 101;
    std::string generator = "H";
    add_common(traj, common);
    traj->add_option("--point", point, "x,y,lambda,phi")->expected(4)->delimiter(',')->required();
    traj->add_option("--time", t_end, "Final time");
    traj->add_option("--samples", samples, "Number of samples");
    traj->add_option("--generator", generator, "H or F")->check(CLI::IsMember({"H", "F"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*decompose) return cmd_decompose(density_file, order, check, common, out);

        if (*actions) {
            const FibrationModel m = load_model(common.model_path, common.density_path);
            GridSpec g = GridSpec::default_for(m);
            std::tie(g.nH, g.nlambda) = parse_grid(grid);
            if (!H_range.empty()) g.H_range = {H_range[0], H_range[1]};
            if (!lambda_range.empty()) g.lambda_range = {lambda_range[0], lambda_range[1]};
            ActionChart chart = action_chart(m, g, quadrature_options(common), threads);
            if (!stratum_filter.empty()) {
                const Stratum s = stratum_from_string(stratum_filter);
                std::erase_if(chart.rows, [&](const ActionChartRow& r) { return r.stratum != s; });
            }
            Output o(common.out_path, out);
            if (common.format == "json") {
                Json rows = Json::array();
                for (const auto& r : chart.rows) {
                    auto num = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
                    rows.push_back({{"H", r.H},
                                    {"lambda", r.lambda},
                                    {"stratum", to_string(r.stratum)},
                                    {"Pi", num(r.Pi)},
                                    {"Pi_circ", num(r.Pi_circ)},
                                    {"I", num(r.I)},
                                    {"I_circ", num(r.I_circ)},
                                    {"I_mu", num(r.I_mu)}});
                }
                o.stream() << Json{{"mu_shift", chart.mu_shift}, {"rows", rows}}.dump(2) << '\n';
            } else {
                write_csv(o.stream(), chart);
            }
            return exit_ok;
        }

        if (*compare) {
            const FibrationModel s1 = model_from_json(read_json_file(sys1_path));
            const FibrationModel s2 = model_from_json(read_json_file(sys2_path));
            if (mode == "one-dof-H" || mode == "one-dof-fibration") {
                const auto em = mode == "one-dof-H" ? EquivalenceMode::H_preserving : EquivalenceMode::fibration_preserving;
                const Polynomial f1 = s1.kind == ModelKind::OneDof ? s1.density.poly.at_lambda(0) : one_dof_density(s1.density);
                const Polynomial f2 = s2.kind == ModelKind::OneDof ? s2.density.poly.at_lambda(0) : one_dof_density(s2.density);
                emit(to_json(one_dof_equivalent(f1, f2, em, common.tol > 0 ? common.tol : 1e-9)), common, out);
                return exit_ok;
            }
            const BaseMap phi = phi_path.empty() ? BaseMap::identity() : base_map_from_json(read_json_file(phi_path));
            EquivalenceOptions eo;
            eo.k_range = {k_range[0], k_range[1]};
            if (common.tol > 0) eo.action_tol = common.tol;
            const bool torus = mode == "torus" ||
                               (mode == "auto" && s1.kind == ModelKind::CuspCompact && s2.kind == ModelKind::CuspCompact);
            const ParabolicVerdict2 v = torus ? cusp_torus_equivalent(s1, s2, phi, eo) : parabolic_equivalent(s1, s2, phi, eo);
            Json j = to_json(v);
            j["mode"] = torus ? "torus" : "parabolic";
            emit(j, common, out);
            return exit_ok;
        }

        if (*invariants) {
            const FibrationModel m = load_model(common.model_path, common.density_path);
            InvariantOptions io;
            io.lambdas = lambdas;
            io.log_coefficients = !no_log;
            io.quadrature = quadrature_options(common);
            emit(to_json(invariant_report(m, io)), common, out);
            return exit_ok;
        }

        if (*lattice) {
            const SymplecticModel sm(load_model(common.model_path, common.density_path));
            const Stratum s = stratum_name.empty()
                                  ? bifurcation_diagram(sm.model, {-1.0, 1.0}, 2).classify(H, lambda)
                                  : stratum_from_string(stratum_name);
            const PeriodLattice L = period_lattice(sm, H, lambda, s, step, quadrature_options(common));
            const PhasePoint p = torus_point(sm, H, lambda, s);
            const double scale = half ? 0.5 : 1.0;
            const double d1 = verify_lattice(sm, p, scale * L.basis(0, 0), scale * L.basis(0, 1));
            const double d2 = verify_lattice(sm, p, scale * L.basis(1, 0), scale * L.basis(1, 1));
            Json j = to_json(L);
            j["stratum"] = to_string(s);
            j["point"] = {p[0], p[1], p[2], p[3]};
            j["half"] = half;
            j["distances"] = {d1, d2};
            j["returned"] = d1 < 1e-6 && d2 < 1e-6;
            emit(j, common, out);
            return exit_ok;
        }

        if (*transport) {
            const SymplecticModel sm1(model_from_json(read_json_file(sys1_path)));
            const SymplecticModel sm2(model_from_json(read_json_file(sys2_path)));
            const Json pts = read_json_file(points_path);
            if (!pts.is_array()) throw InputError("--points: expected a JSON array");
            Json rows = Json::array();
            for (const auto& q : pts) {
                if (!q.is_array() || q.size() != 4) throw InputError("--points: each point needs 4 coordinates");
                const PhasePoint Q{q[0].get<double>(), q[1].get<double>(), q[2].get<double>(), q[3].get<double>()};
                const TransportResult r = transport_map(sm1, sm2, Q);
                const PullbackCheck pc = transport_pullback(sm1, sm2, Q);
                rows.push_back({{"point", {Q[0], Q[1], Q[2], Q[3]}},
                                {"image", {r.image[0], r.image[1], r.image[2], r.image[3]}},
                                {"t", r.t},
                                {"t_tilde", r.t_tilde},
                                {"pullback_residual", pc.residual},
                                {"fiber_deviation", pc.fiber_deviation}});
            }
            emit(Json{{"points", rows}}, common, out);
            return exit_ok;
        }

        if (*traj) {
            const SymplecticModel sm(load_model(common.model_path, common.density_path));
            const PhasePoint p{point[0], point[1], point[2], point[3]};
            const auto rows = trajectory(sm, p, generator == "H" ? Generator::H : Generator::F, t_end, samples);
            Output o(common.out_path, out);
            write_trajectory_csv(o.stream(), rows);
            return exit_ok;
        }
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return exit_input;
    } catch (const nlohmann::json::exception& e) {
        err << "input error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::exception& e) {
        err << "computation failed: " << e.what() << '\n';
        return exit_computation;
    }
    return exit_input;
}

}  // namespace cusp
