#include "cusp/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cusp/errors.hpp"

namespace cusp {

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <typename T>
T field(const Json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("field '") + key + "': " + e.what());
    }
}

}  // namespace

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": malformed JSON: " + e.what());
    }
}

Polynomial polynomial_from_json(const Json& j) {
    if (j.is_number()) return Polynomial::constant(j.get<double>());
    if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
        throw InputError("polynomial: expected an object with a 'terms' array");
    Polynomial p;
    for (const auto& t : j.at("terms")) {
        if (!t.is_object() || !t.contains("c") || !t.contains("e")) throw InputError("polynomial term needs 'c' and 'e'");
        const auto& e = t.at("e");
        if (!e.is_array() || e.empty() || e.size() > 3) throw InputError("polynomial exponent must have 1 to 3 entries");
        Polynomial::Exponent ex{0, 0, 0};
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i].is_number_integer() || e[i].get<int>() < 0)
                throw InputError("polynomial exponents must be non-negative integers");
            ex[i] = e[i].get<int>();
        }
        if (!t.at("c").is_number()) throw InputError("polynomial coefficient must be a number");
        p.add_term(t.at("c").get<double>(), ex);
    }
    return p;
}

Json to_json(const Polynomial& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({{"c", c}, {"e", {e[0], e[1], e[2]}}});
    return {{"terms", terms}};
}

FibrationModel model_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("model: expected a JSON object");
    const ModelKind kind = model_kind_from_string(field<std::string>(j, "kind", "cusp_local"));
    const Polynomial density = j.contains("density") ? polynomial_from_json(j.at("density")) : Polynomial::constant(1.0);
    FibrationModel m = FibrationModel::make(kind, Density(density));
    m.x0 = field<double>(j, "x0", m.x0);
    m.domain_radius = field<double>(j, "domain_radius", m.domain_radius);
    m.mu_shift = field<int>(j, "mu_shift", m.mu_shift);
    if (!(m.x0 > 0)) throw InputError("model: x0 must be positive");
    return m;
}

Json to_json(const FibrationModel& m) {
    return {{"kind", to_string(m.kind)},
            {"density", to_json(m.density.poly)},
            {"x0", m.x0},
            {"domain_radius", m.domain_radius},
            {"mu_shift", m.mu_shift}};
}

BaseMap base_map_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("H") || !j.contains("F")) throw InputError("base map: needs 'H' and 'F'");
    return {polynomial_from_json(j.at("H")), polynomial_from_json(j.at("F"))};
}

Json to_json(const TruncatedSeries& s) {
    Json a = Json::array();
    for (double v : trimmed(s, 1e-15)) a.push_back(v == 0.0 ? 0.0 : v);
    return a;
}

Json to_json(const BrieskornPair& p) { return {{"alpha", to_json(p.alpha_real())}, {"beta", to_json(p.beta_real())}}; }

Json to_json(const PuiseuxFit& fit) {
    return {{"a", to_json(fit.triple.a)},
            {"b", to_json(fit.triple.b)},
            {"c", to_json(fit.triple.c)},
            {"residual", fit.residual},
            {"condition", fit.condition},
            {"ill_conditioned", fit.ill_conditioned}};
}

Json to_json(const OneDofVerdict& v) {
    Json j{{"equivalent", v.equivalent}, {"orientation_corrected", v.orientation_corrected}, {"residual", v.residual}};
    j["witness_g"] = v.witness_g ? to_json(*v.witness_g) : Json(nullptr);
    return j;
}

Json to_json(const ParabolicVerdict2& v) {
    Json j{{"equivalent", v.equivalent},
           {"sigma_ok", v.sigma_ok},
           {"I_ok", v.I_ok},
           {"I_circ_ok", v.I_circ_ok},
           {"I_mu_ok", v.I_mu_ok},
           {"residuals",
            {{"sigma", number_or_null(v.sigma_residual)},
             {"I", number_or_null(v.I_residual)},
             {"I_circ", number_or_null(v.I_circ_residual)},
             {"I_mu", number_or_null(v.I_mu_residual)}}},
           {"orientation_corrected", {v.orientation_corrected_1, v.orientation_corrected_2}}};
    j["k"] = v.k ? Json(*v.k) : Json(nullptr);
    if (!v.reason.empty()) j["reason"] = v.reason;
    return j;
}

Json to_json(const InvariantReport& r) {
    Json h = Json::array(), logs = Json::array();
    for (const auto& [l, v] : r.h_samples) h.push_back({{"lambda", l}, {"h", v}});
    for (const auto& [l, v] : r.log_coeffs) logs.push_back({{"lambda", l}, {"alpha", v}});
    return {{"alpha", to_json(r.alpha)},
            {"beta", to_json(r.beta)},
            {"canonical_f", to_json(r.canonical_f)},
            {"h_samples", h},
            {"log_coeffs", logs},
            {"orientation_corrected", r.orientation_corrected},
            {"coorientation_corrected", r.coorientation_corrected}};
}

Json to_json(const PeriodLattice& L) {
    return {{"basis", {{L.basis(0, 0), L.basis(0, 1)}, {L.basis(1, 0), L.basis(1, 1)}}}, {"step", L.step}};
}

}  // namespace cusp
