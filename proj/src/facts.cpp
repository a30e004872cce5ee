#include "densdeg/facts.hpp"

#include <set>

#include "densdeg/numtheory.hpp"

namespace densdeg {

std::string to_string(Tri t) {
    switch (t) {
        case Tri::Yes: return "yes";
        case Tri::No: return "no";
        default: return "unknown";
    }
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::DerivedLocal: return "derived-local";
        case Provenance::DerivedPoint: return "derived-point";
        case Provenance::DerivedModel: return "derived-model";
        default: return "asserted";
    }
}

namespace {

Provenance parse_provenance(const std::string& s) {
    if (s == "asserted") return Provenance::Asserted;
    if (s == "derived-local") return Provenance::DerivedLocal;
    if (s == "derived-point") return Provenance::DerivedPoint;
    if (s == "derived-model") return Provenance::DerivedModel;
    throw FactError("unknown provenance '" + s + "'");
}

mpq_class parse_q(const nlohmann::json& j) { return Poly::from_json(nlohmann::json::array({j})).coeff(0); }

// A fact is either a bare value or {"value":..., "anchor":..., "provenance":...}.
template <class F>
void read_meta(const nlohmann::json& j, F& fact) {
    if (!j.is_object()) return;
    if (j.contains("anchor")) fact.anchor = j.at("anchor").get<std::string>();
    if (j.contains("provenance")) fact.provenance = parse_provenance(j.at("provenance").get<std::string>());
}

const nlohmann::json& bare(const nlohmann::json& j) { return j.is_object() && j.contains("value") ? j.at("value") : j; }

TriFact read_tri(const nlohmann::json& obj, const char* key) {
    TriFact f;
    if (!obj.contains(key)) return f;
    const auto& j = obj.at(key);
    f.value = parse_tri(bare(j));
    read_meta(j, f);
    return f;
}

IntFact read_int(const nlohmann::json& obj, const char* key) {
    IntFact f;
    if (!obj.contains(key)) return f;
    const auto& j = obj.at(key);
    const auto& v = bare(j);
    if (!v.is_null()) {
        if (!v.is_number_integer()) throw FactError(std::string("fact '") + key + "' must be an integer");
        f.value = v.get<long>();
    }
    read_meta(j, f);
    return f;
}

template <class F, class V>
void write_fact(nlohmann::json& out, const char* key, const F& f, const V& v) {
    nlohmann::json e = {{"value", v}, {"provenance", to_string(f.provenance)}};
    if (!f.anchor.empty()) e["anchor"] = f.anchor;
    out[key] = e;
}

void put(nlohmann::json& out, const char* key, const TriFact& f) {
    if (f.known()) write_fact(out, key, f, to_string(f.value));
}

void put(nlohmann::json& out, const char* key, const IntFact& f) {
    if (f.known()) write_fact(out, key, f, *f.value);
}

// Merge a derived value into a fact slot.  Asserted values win, but must
// agree.
void merge(TriFact& slot, Tri v, Provenance prov, const char* name) {
    if (v == Tri::Unknown) return;
    if (slot.known()) {
        if (slot.value != v)
            throw FactError(std::string("fact '") + name + "' is " + to_string(slot.value) +
                            " but the model gives " + to_string(v));
        return;
    }
    slot.value = v;
    slot.provenance = prov;
}

void merge(IntFact& slot, long v, Provenance prov, const char* name) {
    if (slot.known()) {
        if (*slot.value != v)
            throw FactError(std::string("fact '") + name + "' is " + std::to_string(*slot.value) +
                            " but the model gives " + std::to_string(v));
        return;
    }
    slot.value = v;
    slot.provenance = prov;
}

}  // namespace

Tri parse_tri(const nlohmann::json& j) {
    if (j.is_boolean()) return j.get<bool>() ? Tri::Yes : Tri::No;
    if (j.is_null()) return Tri::Unknown;
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "yes" || s == "true") return Tri::Yes;
        if (s == "no" || s == "false") return Tri::No;
        if (s == "unknown") return Tri::Unknown;
    }
    throw FactError("tri-state must be yes/no/unknown or a boolean, got " + j.dump());
}

nlohmann::json CurveFacts::to_json() const {
    nlohmann::json o = nlohmann::json::object();
    put(o, "index", index);
    put(o, "has_k_point", has_k_point);
    put(o, "has_degree3_point", has_degree3_point);
    put(o, "has_rational_weierstrass", has_rational_weierstrass);
    put(o, "has_non_weierstrass_point", has_non_weierstrass_point);
    put(o, "count_k_points_at_least", count_k_points_at_least);
    put(o, "gonality", gonality);
    put(o, "hyperelliptic", hyperelliptic);
    put(o, "real_points_empty", real_points_empty);
    put(o, "positive_rank", positive_rank);
    put(o, "jacobian_rank_zero", jacobian_rank_zero);
    put(o, "jacobian_simple", jacobian_simple);
    put(o, "jacobian_geometrically_simple", jacobian_geometrically_simple);
    put(o, "full_two_torsion", full_two_torsion);
    put(o, "degree3_map_nonsplit_real_fiber", degree3_map_nonsplit_real_fiber);
    if (j_invariant) o["j_invariant"] = j_invariant->get_str();
    if (!isogenous_j_invariants.empty()) {
        auto a = nlohmann::json::array();
        for (auto& j : isogenous_j_invariants) a.push_back(j.get_str());
        o["isogenous_j_invariants"] = a;
    }
    if (!points_mod_p.empty()) {
        auto m = nlohmann::json::object();
        for (auto& [p, n] : points_mod_p) m[std::to_string(p)] = n;
        o["points_mod_p"] = m;
    }
    return o;
}

CurveFacts CurveFacts::from_json(const nlohmann::json& j, int genus) {
    if (!j.is_object()) throw FactError("facts must be an object");
    static const std::set<std::string> known = {"index",
                                                "has_k_point",
                                                "has_degree3_point",
                                                "has_rational_weierstrass",
                                                "has_non_weierstrass_point",
                                                "count_k_points_at_least",
                                                "gonality",
                                                "hyperelliptic",
                                                "real_points_empty",
                                                "positive_rank",
                                                "jacobian_rank_zero",
                                                "jacobian_simple",
                                                "jacobian_geometrically_simple",
                                                "full_two_torsion",
                                                "degree3_map_nonsplit_real_fiber",
                                                "j_invariant",
                                                "isogenous_j_invariants",
                                                "points_mod_p"};
    for (auto& [k, v] : j.items())
        if (!known.count(k)) throw FactError("unknown fact '" + k + "'");
    CurveFacts f;
    f.genus = genus;
    f.index = read_int(j, "index");
    f.has_k_point = read_tri(j, "has_k_point");
    f.has_degree3_point = read_tri(j, "has_degree3_point");
    f.has_rational_weierstrass = read_tri(j, "has_rational_weierstrass");
    f.has_non_weierstrass_point = read_tri(j, "has_non_weierstrass_point");
    f.count_k_points_at_least = read_int(j, "count_k_points_at_least");
    f.gonality = read_int(j, "gonality");
    f.hyperelliptic = read_tri(j, "hyperelliptic");
    f.real_points_empty = read_tri(j, "real_points_empty");
    f.positive_rank = read_tri(j, "positive_rank");
    f.jacobian_rank_zero = read_tri(j, "jacobian_rank_zero");
    f.jacobian_simple = read_tri(j, "jacobian_simple");
    f.jacobian_geometrically_simple = read_tri(j, "jacobian_geometrically_simple");
    f.full_two_torsion = read_tri(j, "full_two_torsion");
    f.degree3_map_nonsplit_real_fiber = read_tri(j, "degree3_map_nonsplit_real_fiber");
    if (j.contains("j_invariant")) f.j_invariant = parse_q(bare(j.at("j_invariant")));
    if (j.contains("isogenous_j_invariants"))
        for (auto& x : bare(j.at("isogenous_j_invariants"))) f.isogenous_j_invariants.push_back(parse_q(x));
    if (j.contains("points_mod_p"))
        for (auto& [p, n] : bare(j.at("points_mod_p")).items()) f.points_mod_p[std::stoull(p)] = n.get<long>();
    return f;
}

nlohmann::json CurveInput::to_json() const {
    nlohmann::json o = {{"genus", facts.genus}, {"facts", facts.to_json()}};
    if (!label.empty()) o["label"] = label;
    if (model) o["model"] = model->to_json();
    return o;
}

CurveInput CurveInput::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw FactError("curve entry must be an object");
    CurveInput c;
    if (j.contains("label")) c.label = j.at("label").get<std::string>();
    int genus = 0;
    if (j.contains("model")) {
        c.model = HyperellipticCurve::from_json(j.at("model"));
        c.model->label = c.label;
        genus = c.model->genus();
        if (j.contains("genus") && j.at("genus").get<int>() != genus)
            throw FactError("declared genus disagrees with the model");
    } else if (j.contains("genus")) {
        genus = j.at("genus").get<int>();
    } else {
        throw FactError("curve entry needs a model or a genus");
    }
    c.facts = CurveFacts::from_json(j.value("facts", nlohmann::json::object()), genus);
    return c;
}

void derive_facts(CurveInput& c, long search_height) {
    CurveFacts& f = c.facts;
    if (c.model) {
        const HyperellipticCurve& m = *c.model;
        f.genus = m.genus();
        Poly F = m.completed();
        bool odd = F.degree() % 2 == 1;
        if (!odd) merge(f.real_points_empty, real_points_empty(m) ? Tri::Yes : Tri::No, Provenance::DerivedModel,
                        "real_points_empty");
        else merge(f.real_points_empty, Tri::No, Provenance::DerivedModel, "real_points_empty");
        if (f.genus >= 2) merge(f.hyperelliptic, Tri::Yes, Provenance::DerivedModel, "hyperelliptic");

        bool weier = odd || !rational_roots(F).empty();
        merge(f.has_rational_weierstrass, weier ? Tri::Yes : Tri::No, Provenance::DerivedModel,
              "has_rational_weierstrass");

        auto pts = search_rational_points(m, search_height);
        long count = 0;
        bool non_weier = false;
        for (auto& p : pts) {
            count += p.weierstrass ? 1 : 2;
            non_weier = non_weier || !p.weierstrass;
        }
        if (count > 0) {
            merge(f.has_k_point, Tri::Yes, Provenance::DerivedPoint, "has_k_point");
            if (!f.count_k_points_at_least.known() || *f.count_k_points_at_least.value < count) {
                f.count_k_points_at_least.value = count;
                f.count_k_points_at_least.provenance = Provenance::DerivedPoint;
            }
        }
        if (non_weier) merge(f.has_non_weierstrass_point, Tri::Yes, Provenance::DerivedPoint,
                             "has_non_weierstrass_point");

        if (f.genus == 1) {
            if (auto e = EllipticCurve::from_hyperelliptic(m)) {
                f.j_invariant = e->j_invariant();
                auto roots = rational_roots(F);
                merge(f.full_two_torsion, roots.size() == 3 ? Tri::Yes : Tri::No, Provenance::DerivedModel,
                      "full_two_torsion");
            }
        }
    }
    if (f.genus < 1) throw FactError("genus must be at least 1");

    if (f.has_k_point.yes()) merge(f.index, 1, Provenance::DerivedPoint, "index");
    if (f.has_rational_weierstrass.yes()) merge(f.has_k_point, Tri::Yes, Provenance::DerivedPoint, "has_k_point");
    if (f.genus == 2 && f.real_points_empty.yes()) merge(f.index, 2, Provenance::DerivedLocal, "index");
    if (f.genus <= 2 && (f.has_k_point.yes() || f.genus == 2)) merge(f.gonality, 2, Provenance::DerivedModel, "gonality");
    // On genus 2, 3P moves in a base-point-free pencil when P is a rational
    // non-Weierstrass point.
    if (f.genus == 2 && f.has_non_weierstrass_point.yes())
        merge(f.has_degree3_point, Tri::Yes, Provenance::DerivedPoint, "has_degree3_point");
    if (f.genus == 2 && f.index.known() && *f.index.value == 2)
        merge(f.has_degree3_point, Tri::No, Provenance::DerivedLocal, "has_degree3_point");
    // index one without rational points: a degree-1 class exists, and its
    // canonical twist K + D gives a cubic point
    if (f.genus == 2 && f.index.known() && *f.index.value == 1 && f.has_k_point.no())
        merge(f.has_degree3_point, Tri::Yes, Provenance::DerivedLocal, "has_degree3_point");
    validate_facts(f);
}

void validate_facts(const CurveFacts& f) {
    if (f.genus < 1) throw FactError("genus must be at least 1");
    auto idx = f.index.value;
    if (idx && *idx < 1) throw FactError("index must be positive");
    if (f.has_k_point.yes() && idx && *idx != 1) throw FactError("a rational point forces index 1");
    if (f.genus == 2 && idx && *idx != 1 && *idx != 2) throw FactError("genus-2 curves have index 1 or 2");
    if (f.genus == 1 && f.has_k_point.no() && idx && *idx == 1)
        throw FactError("a genus-1 curve of index 1 has a rational point");
    if (f.real_points_empty.yes() && idx && *idx % 2) throw FactError("no real points forces an even index");
    if (f.real_points_empty.yes() && f.has_k_point.yes()) throw FactError("a rational point is a real point");
    if (f.has_degree3_point.yes() && idx && 3 % *idx != 0) throw FactError("a degree-3 point forces index dividing 3");
    if (f.has_rational_weierstrass.yes() && f.has_k_point.no())
        throw FactError("a rational Weierstrass point is a rational point");
    if (f.has_non_weierstrass_point.yes() && f.has_k_point.no())
        throw FactError("a rational non-Weierstrass point is a rational point");
    if (f.count_k_points_at_least.known() && *f.count_k_points_at_least.value > 0 && f.has_k_point.no())
        throw FactError("point count contradicts has_k_point = no");
    if (f.genus == 2 && idx && *idx == 1 && f.has_k_point.no() && f.has_degree3_point.no())
        throw FactError("a pointless genus-2 curve of index 1 has a degree-3 point");
    if (f.jacobian_rank_zero.yes() && f.positive_rank.yes())
        throw FactError("jacobian_rank_zero and positive_rank both hold");
    if (f.gonality.known() && *f.gonality.value < 2) throw FactError("gonality of a positive-genus curve is at least 2");
    if (f.genus == 2 && f.hyperelliptic.no()) throw FactError("genus-2 curves are hyperelliptic");
}

nlohmann::json ProductFacts::to_json() const {
    nlohmann::json o = nlohmann::json::object();
    put(o, "index", index);
    put(o, "eff_ind_upper", eff_ind_upper);
    put(o, "isogeny_factor", isogeny_factor);
    put(o, "same_curve", same_curve);
    put(o, "has_degree2_point", has_degree2_point);
    if (quadratic_decomposition_g4) o["quadratic_decomposition_g4"] = quadratic_decomposition_g4->to_json();
    if (!quadratic_certificate.is_null()) o["quadratic_certificate"] = quadratic_certificate;
    if (!cubic_certificate.is_null()) o["cubic_certificate"] = cubic_certificate;
    return o;
}

ProductFacts ProductFacts::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw FactError("product facts must be an object");
    static const std::set<std::string> known = {"index",
                                                "eff_ind_upper",
                                                "isogeny_factor",
                                                "same_curve",
                                                "has_degree2_point",
                                                "quadratic_decomposition_g4",
                                                "quadratic_certificate",
                                                "cubic_certificate"};
    for (auto& [k, v] : j.items())
        if (!known.count(k)) throw FactError("unknown product fact '" + k + "'");
    ProductFacts f;
    f.index = read_int(j, "index");
    f.eff_ind_upper = read_int(j, "eff_ind_upper");
    f.isogeny_factor = read_tri(j, "isogeny_factor");
    f.same_curve = read_tri(j, "same_curve");
    f.has_degree2_point = read_tri(j, "has_degree2_point");
    if (j.contains("quadratic_decomposition_g4"))
        f.quadratic_decomposition_g4 = Poly::from_json(j.at("quadratic_decomposition_g4"));
    if (j.contains("quadratic_certificate")) f.quadratic_certificate = j.at("quadratic_certificate");
    if (j.contains("cubic_certificate")) f.cubic_certificate = j.at("cubic_certificate");
    if (f.index.known() && *f.index.value < 1) throw FactError("product index must be positive");
    if (f.eff_ind_upper.known() && f.index.known() && *f.eff_ind_upper.value < *f.index.value)
        throw FactError("effective index is at least the index");
    return f;
}

}  // namespace densdeg
