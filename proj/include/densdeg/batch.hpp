#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "densdeg/rules.hpp"

namespace densdeg {

class SchemaError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Target kinds accepted by evaluate_request.
const std::vector<std::string>& request_kinds();

// kind: curve | product | potential | jacobian | bielliptic | abelian.
// Curves may be given inline or, when `curves` is an object, by label.
BoundResult evaluate_request(const std::string& kind, const nlohmann::json& input, const EngineOptions& opt,
                             const nlohmann::json& curves = nlohmann::json());

// {"step": m, "from": n, "except": [...], "with": [...]}, or a DegreeSet
// expression (an object with "kind").
DegreeSet parse_set_spec(const nlohmann::json& j);

struct CaseOutcome {
    std::string name;
    bool ok = false;
    std::string detail;
};

// Runs every case of a fixture file against a fresh engine run.
std::vector<CaseOutcome> run_fixture_cases(const nlohmann::json& fixtures);

// Fixture entry helpers.
CurveInput fixture_curve(const nlohmann::json& fixtures, const std::string& label);
nlohmann::json load_json_file(const std::string& path);

}  // namespace densdeg
