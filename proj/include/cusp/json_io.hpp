#pragma once

#include <string>

#include <json.hpp>

#include "cusp/asymptotics.hpp"
#include "cusp/brieskorn.hpp"
#include "cusp/equivalence.hpp"
#include "cusp/flows.hpp"
#include "cusp/model.hpp"

namespace cusp {

using Json = nlohmann::ordered_json;

// Parses a file; syntax errors become InputError with the parser position.
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text);

// {"terms": [{"c": 1.0, "e": [i, j, k]}, ...]}
Polynomial polynomial_from_json(const Json& j);
Json to_json(const Polynomial& p);

// {"kind": "cusp_local", "density": {...}, "x0": 1, "mu_shift": 0}
FibrationModel model_from_json(const Json& j);
Json to_json(const FibrationModel& m);

// {"H": {...}, "F": {...}} in the variables (H, F).
BaseMap base_map_from_json(const Json& j);

Json to_json(const TruncatedSeries& s);
Json to_json(const BrieskornPair& p);
Json to_json(const PuiseuxFit& fit);
Json to_json(const OneDofVerdict& v);
Json to_json(const ParabolicVerdict2& v);
Json to_json(const InvariantReport& r);
Json to_json(const PeriodLattice& L);

}  // namespace cusp
