#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "densdeg/curve.hpp"

namespace densdeg {

enum class Tri { Unknown, Yes, No };

// derived-model: read off the equation (parity of degree, rational roots,
// leading coefficient); derived-point: an exhibited point; derived-local:
// a real or p-adic obstruction.
enum class Provenance { Asserted, DerivedLocal, DerivedPoint, DerivedModel };

std::string to_string(Tri t);
std::string to_string(Provenance p);

struct TriFact {
    Tri value = Tri::Unknown;
    Provenance provenance = Provenance::Asserted;
    std::string anchor;
    bool yes() const { return value == Tri::Yes; }
    bool no() const { return value == Tri::No; }
    bool known() const { return value != Tri::Unknown; }
};

struct IntFact {
    std::optional<long> value;
    Provenance provenance = Provenance::Asserted;
    std::string anchor;
    bool known() const { return value.has_value(); }
};

class FactError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct CurveFacts {
    int genus = 0;
    IntFact index;
    TriFact has_k_point;
    TriFact has_degree3_point;
    TriFact has_rational_weierstrass;
    // A rational point that is not a Weierstrass point (genus 2).
    TriFact has_non_weierstrass_point;
    IntFact count_k_points_at_least;
    IntFact gonality;
    TriFact hyperelliptic;
    TriFact real_points_empty;
    // Genus 1: rank of E(k) positive.  Genus 2: see the Jacobian facts.
    TriFact positive_rank;
    TriFact jacobian_rank_zero;
    TriFact jacobian_simple;
    TriFact jacobian_geometrically_simple;
    TriFact full_two_torsion;
    std::optional<mpq_class> j_invariant;
    std::vector<mpq_class> isogenous_j_invariants;
    // Point counts over F_p asserted for curves given without a model.
    std::map<uint64_t, long> points_mod_p;
    // A degree-3 map to P^1 with good reduction at the bad primes of the
    // partner elliptic curve and a real fiber that is not totally split.
    TriFact degree3_map_nonsplit_real_fiber;

    nlohmann::json to_json() const;
    static CurveFacts from_json(const nlohmann::json& j, int genus);
};

struct CurveInput {
    std::string label;
    std::optional<HyperellipticCurve> model;
    CurveFacts facts;

    nlohmann::json to_json() const;
    // {"label":..., "model":{...}, "genus":..., "facts":{...}}
    static CurveInput from_json(const nlohmann::json& j);
};

// Fill derived facts from the model (if any) and check consistency.  Derived
// facts never overwrite asserted ones; a contradiction is a FactError.
void derive_facts(CurveInput& c, long search_height = 20);
void validate_facts(const CurveFacts& f);

struct ProductFacts {
    IntFact index;
    IntFact eff_ind_upper;
    // The genus-1 factor is an isogeny factor of the other factor's Jacobian
    // (for two elliptic curves: they are isogenous).
    TriFact isogeny_factor;
    TriFact same_curve;
    TriFact has_degree2_point;
    // C: y^2 = g4 * g2 with g2 monic quadratic and E the Jacobian of y^2 = g4.
    std::optional<Poly> quadratic_decomposition_g4;
    nlohmann::json quadratic_certificate;  // null when absent
    nlohmann::json cubic_certificate;

    nlohmann::json to_json() const;
    static ProductFacts from_json(const nlohmann::json& j);
};

Tri parse_tri(const nlohmann::json& j);

}  // namespace densdeg
