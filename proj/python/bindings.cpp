#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "densdeg/batch.hpp"
#include "densdeg/rules.hpp"

namespace py = pybind11;
using json = nlohmann::json;

namespace {

// JSON crosses the boundary as text; the Python wrapper does the decoding.
std::string evaluate(const std::string& kind, const std::string& input, const std::vector<std::string>& assume,
                     bool strict, uint64_t window, const std::string& curves) {
    densdeg::EngineOptions opt;
    opt.assume = {assume.begin(), assume.end()};
    opt.strict = strict;
    opt.window = window;
    json c = curves.empty() ? json() : json::parse(curves);
    return densdeg::evaluate_request(kind, json::parse(input), opt, c).to_json().dump();
}

std::vector<std::tuple<std::string, bool, std::string>> selftest(const std::string& path) {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (auto& o : densdeg::run_fixture_cases(densdeg::load_json_file(path))) out.emplace_back(o.name, o.ok, o.detail);
    return out;
}

std::vector<uint64_t> materialize(const std::string& spec, uint64_t bound) {
    return densdeg::parse_set_spec(json::parse(spec)).materialize(bound);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    py::register_exception<densdeg::NeedsFact>(m, "NeedsFact");
    py::register_exception<densdeg::FactError>(m, "FactError", PyExc_ValueError);
    py::register_exception<densdeg::SchemaError>(m, "SchemaError", PyExc_ValueError);

    m.def("evaluate", &evaluate, py::arg("kind"), py::arg("input"), py::arg("assume") = std::vector<std::string>{},
          py::arg("strict") = true, py::arg("window") = 200, py::arg("curves") = "");
    m.def("rules", [] { return densdeg::rule_roster_json().dump(); });
    m.def("request_kinds", &densdeg::request_kinds);
    m.def("selftest", &selftest);
    m.def("materialize", &materialize, py::arg("spec"), py::arg("bound") = 200);
    m.def("n_pointed", &densdeg::N_pointed);
    m.def("n_index1", &densdeg::N_index1);
    m.def("n_general", &densdeg::N_general);
}
