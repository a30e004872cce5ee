#include "densdeg/batch.hpp"

#include <fstream>
#include <sstream>

#include "densdeg/local.hpp"
#include "densdeg/rootnumber.hpp"

namespace densdeg {

using json = nlohmann::json;

const std::vector<std::string>& request_kinds() {
    static const std::vector<std::string> k = {"curve", "product", "potential", "jacobian", "bielliptic", "abelian"};
    return k;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("input needs '") + key + "'");
    return j.at(key);
}

CurveInput resolve_curve(const json& j, const json& curves) {
    if (j.is_string()) {
        std::string label = j.get<std::string>();
        if (!curves.is_object() || !curves.contains(label)) throw SchemaError("unknown curve label '" + label + "'");
        json c = curves.at(label);
        if (!c.contains("label")) c["label"] = label;
        return CurveInput::from_json(c);
    }
    return CurveInput::from_json(j);
}

json resolve_curve_json(const json& j, const json& curves) {
    if (!j.is_string()) return j;
    json c = curves.at(j.get<std::string>());
    if (!c.contains("label")) c["label"] = j;
    return c;
}

ProductFacts product_facts(const json& input) {
    return input.contains("product") ? ProductFacts::from_json(input.at("product")) : ProductFacts{};
}

}  // namespace

BoundResult evaluate_request(const std::string& kind, const json& input, const EngineOptions& opt,
                             const json& curves) {
    if (!input.is_object()) throw SchemaError("input must be a JSON object");
    try {
        if (kind == "curve" || kind == "jacobian") {
            CurveInput c = resolve_curve(input.contains("curve") ? input.at("curve") : input, curves);
            derive_facts(c);
            return kind == "curve" ? delta_curve(c.facts, opt) : delta_jacobian_genus2(c.facts, opt);
        }
        if (kind == "product" || kind == "potential") {
            CurveInput C = resolve_curve(field(input, "C"), curves), D = resolve_curve(field(input, "D"), curves);
            ProductFacts pf = product_facts(input);
            return kind == "product" ? delta_product(C, D, pf, opt) : potential_product(C, D, pf, opt);
        }
        if (kind == "bielliptic") {
            CurveInput e1 = resolve_curve(field(input, "E1"), curves), e2 = resolve_curve(field(input, "E2"), curves);
            BiellipticFacts bf =
                input.contains("bielliptic") ? BiellipticFacts::from_json(input.at("bielliptic")) : BiellipticFacts{};
            return delta_bielliptic(e1, e2, bf, opt);
        }
        if (kind == "abelian") {
            json a = input;
            if (a.contains("curves"))
                for (auto& c : a["curves"]) c = resolve_curve_json(c, curves);
            return delta_abelian_transfer(AbelianInput::from_json(a), opt);
        }
    } catch (json::exception& e) {
        throw SchemaError(e.what());
    }
    throw SchemaError("unknown target kind '" + kind + "'");
}

DegreeSet parse_set_spec(const json& j) {
    if (j.is_object() && j.contains("kind")) return DegreeSet::from_json(j);
    if (!j.is_object()) throw SchemaError("set spec must be an object");
    uint64_t step = j.value("step", 1), from = j.value("from", step);
    DegreeSet s = j.value("empty", false) ? DegreeSet::empty() : DegreeSet::intersect(DegreeSet::multiples(step),
                                                                                      DegreeSet::naturals_from(from));
    if (j.contains("except")) s = DegreeSet::difference(s, DegreeSet::finite(j.at("except").get<std::vector<uint64_t>>()));
    if (j.contains("with")) s = DegreeSet::unite(s, DegreeSet::finite(j.at("with").get<std::vector<uint64_t>>()));
    return s;
}

CurveInput fixture_curve(const json& fixtures, const std::string& label) {
    return resolve_curve(json(label), fixtures.at("curves"));
}

namespace {

bool member(const DegreeSet& s, const json& xs, bool want, std::string& why, const char* what) {
    for (auto& x : xs) {
        uint64_t d = x.get<uint64_t>();
        if (s.contains(d) != want) {
            why = std::string(what) + (want ? " lacks " : " contains ") + std::to_string(d);
            return false;
        }
    }
    return true;
}

std::string check_bound(const json& c, const json& curves) {
    const json& ex = c.at("expect");
    EngineOptions opt;
    opt.window = c.value("window", 200);
    opt.strict = c.value("strict", true);
    for (auto& a : c.value("assume", json::array())) opt.assume.insert(a.get<std::string>());
    BoundResult r;
    try {
        r = evaluate_request(c.at("kind"), c.at("input"), opt, curves);
    } catch (NeedsFact& nf) {
        if (ex.contains("needs_fact")) {
            return nf.fact == ex.at("needs_fact").get<std::string>() ? "" : "needs " + nf.fact;
        }
        return std::string("unexpected needs-fact: ") + nf.what();
    }
    if (ex.contains("needs_fact")) return "expected needs-fact " + ex.at("needs_fact").get<std::string>();
    std::string why;
    uint64_t w = opt.window;
    if (ex.contains("lower") && !equals_on_window(r.lower, parse_set_spec(ex.at("lower")), w))
        return "lower " + r.lower.describe() + " differs from expected " + parse_set_spec(ex.at("lower")).describe();
    if (ex.contains("upper") && !equals_on_window(r.upper, parse_set_spec(ex.at("upper")), w))
        return "upper " + r.upper.describe() + " differs from expected " + parse_set_spec(ex.at("upper")).describe();
    if (ex.contains("exact") && ex.at("exact").get<bool>() != r.exact) return "exactness differs";
    if (ex.contains("lower_contains") && !member(r.lower, ex.at("lower_contains"), true, why, "lower")) return why;
    if (ex.contains("lower_excludes") && !member(r.lower, ex.at("lower_excludes"), false, why, "lower")) return why;
    if (ex.contains("upper_contains") && !member(r.upper, ex.at("upper_contains"), true, why, "upper")) return why;
    if (ex.contains("upper_excludes") && !member(r.upper, ex.at("upper_excludes"), false, why, "upper")) return why;
    for (auto& id : ex.value("fired", json::array())) {
        bool hit = false;
        for (auto& t : r.trace) hit = hit || (t.rule == id && t.status != "skipped" && t.status != "note");
        if (!hit) return "rule " + id.get<std::string>() + " did not fire";
    }
    return "";
}

HyperellipticCurve model_of(const json& ref, const json& curves) {
    CurveInput c = resolve_curve(ref, curves);
    if (!c.model) throw SchemaError("curve has no model");
    return *c.model;
}

EllipticCurve elliptic_of(const json& ref, const json& curves) {
    auto e = EllipticCurve::from_hyperelliptic(model_of(ref, curves));
    if (!e) throw SchemaError("not a Weierstrass model");
    return *e;
}

std::string check_other(const json& c, const json& curves) {
    const std::string kind = c.at("kind");
    const json& in = c.at("input");
    const json& ex = c.at("expect");
    if (kind == "local_obstruction") {
        auto r = quadratic_obstruction(model_of(in.at("C"), curves), model_of(in.at("D"), curves), in.at("p"));
        return to_string(r.holds) == ex.at("holds").get<std::string>() ? "" : "obstruction " + to_string(r.holds);
    }
    if (kind == "divisibility") {
        auto r = degree_divisibility(model_of(in.at("curve"), curves), in.at("p"), in.at("dmax"));
        for (const char* which : {"local", "global"}) {
            if (!ex.contains(which)) continue;
            const auto& m = std::string(which) == "local" ? r.local : r.global;
            for (auto& [d, s] : ex.at(which).items()) {
                auto got = to_string(m.at(std::stoi(d)));
                if (got != s.get<std::string>()) return std::string(which) + " degree " + d + " is " + got;
            }
        }
        return "";
    }
    if (kind == "parity_twist") {
        auto t = find_parity_twist(elliptic_of(in.at("E1"), curves), elliptic_of(in.at("E2"), curves));
        if (t.d != ex.at("d").get<long>()) return "twist " + std::to_string(t.d);
        if (ex.contains("root_numbers") && json({t.root_number_e1, t.root_number_e2}) != ex.at("root_numbers"))
            return "root numbers differ";
        return "";
    }
    if (kind == "nonpp") {
        bool ok = nonpp_prime_check(elliptic_of(in.at("E"), curves), in.at("p"));
        return ok == ex.at("holds").get<bool>() ? "" : "nonpp check gave " + std::to_string(ok);
    }
    if (kind == "quadratic_certificate" || kind == "cubic_certificate") {
        auto C = model_of(in.at("C"), curves), D = model_of(in.at("D"), curves);
        auto rep = kind == "quadratic_certificate" ? nondensity_quadratic_certificate(C, D, in.at("asserted"))
                                                   : nondensity_cubic_certificate(C, D, in.at("asserted"));
        return rep.verified == ex.at("verified").get<bool>() ? "" : "verified = " + std::to_string(rep.verified) +
                                                                       " " + rep.reason;
    }
    throw SchemaError("unknown case kind '" + kind + "'");
}

}  // namespace

std::vector<CaseOutcome> run_fixture_cases(const json& fixtures) {
    std::vector<CaseOutcome> out;
    const json& curves = fixtures.at("curves");
    const auto& kinds = request_kinds();
    for (auto& c : fixtures.at("cases")) {
        CaseOutcome o{c.at("name"), false, ""};
        try {
            const std::string kind = c.at("kind");
            o.detail = std::find(kinds.begin(), kinds.end(), kind) != kinds.end() ? check_bound(c, curves)
                                                                                 : check_other(c, curves);
            o.ok = o.detail.empty();
        } catch (std::exception& e) {
            o.detail = e.what();
        }
        out.push_back(o);
    }
    return out;
}

}  // namespace densdeg
