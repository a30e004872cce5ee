#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "densdeg/curve.hpp"
#include "densdeg/facts.hpp"
#include "densdeg/setalg.hpp"

namespace densdeg {

// A rule needs a fact that was not supplied.
class NeedsFact : public std::runtime_error {
public:
    NeedsFact(std::string rule, std::string fact)
        : std::runtime_error("rule " + rule + " needs fact '" + fact + "'"), rule(std::move(rule)),
          fact(std::move(fact)) {}
    std::string rule;
    std::string fact;
};

class RuleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline const std::set<std::string>& known_assumptions() {
    static const std::set<std::string> s = {"ParityConjecture", "Conjecture-5.2", "BombieriLang"};
    return s;
}

struct RuleInfo {
    std::string id;
    std::string anchor;  // what the cited statement says, in our words
    std::string target;  // curve, product, jacobian, bielliptic, abelian, potential
    std::string effect;  // lower, upper, exact
    std::vector<std::string> guards;
    std::vector<std::string> assumptions;
};

const std::vector<RuleInfo>& rule_roster();
const RuleInfo& rule_info(const std::string& id);
nlohmann::json rule_roster_json();

struct TraceEntry {
    std::string rule;
    std::string anchor;
    std::string status;  // "lower", "upper", "exact", "note", "skipped"
    nlohmann::json consumed = nlohmann::json::object();
    std::vector<std::string> assumptions;
    std::optional<DegreeSet> contribution;
    std::string note;
    nlohmann::json to_json(uint64_t window) const;
};

struct BoundResult {
    DegreeSet lower;
    DegreeSet upper;
    bool exact = false;
    std::vector<TraceEntry> trace;  // sorted by rule id
    uint64_t window = 200;
    std::set<std::string> assumptions;  // tags of the rules that fired
    nlohmann::json to_json() const;
};

struct EngineOptions {
    uint64_t window = 200;
    std::set<std::string> assume;
    // Strict: a factor whose density set is undetermined raises NeedsFact.
    // Lenient: fall back to the weakest sound bounds and record a skip.
    bool strict = true;
};

struct EffectiveIndexData {
    long index = 0;
    long eff_ind_upper = 0;
    long eff_ind_formula_bound = 0;
};

// Formulas.
std::pair<long, long> fiber_product_genus(long dC, long dD, long gC, long gD, long nodes);
long N_pointed(long gonC, long gonD, long gC, long gD);
long N_index1(long dC, long dD, long gC, long gD);  // RuleError unless gcd(dC, 2 dD (gC - 1)) = 1
long N_general(long gC, long gD, long e);
long eff_index_bound(long gC, long gD, long indD);
// 2 g1 - 2 - d when the Castelnuovo-Severi hypotheses hold.
std::optional<long> cs_membership(long g1, long g2, long n, long d, bool divisor_condition = true);

// Rational Weierstrass points read off a model: rational roots of the
// completed polynomial, plus the point at infinity for odd degree.
int rational_weierstrass_count(const HyperellipticCurve& c);

BoundResult delta_curve(const CurveFacts& facts, const EngineOptions& opt = {});
BoundResult delta_product(const CurveInput& C, const CurveInput& D, const ProductFacts& pf,
                          const EngineOptions& opt = {});
BoundResult delta_jacobian_genus2(const CurveFacts& facts, const EngineOptions& opt = {});

struct BiellipticFacts {
    // Hypotheses for dense quadratic points on E1 x E2; computed from the
    // curves when Unknown.
    Tri quadratic_hypothesis = Tri::Unknown;
    // E2 gains rank over one of the quadratic fields where E1 acquires a
    // half of a rational point.
    Tri rank_growth_on_halving_fields = Tri::Unknown;
    static BiellipticFacts from_json(const nlohmann::json& j);
};
BoundResult delta_bielliptic(const CurveInput& E1, const CurveInput& E2, const BiellipticFacts& bf,
                             const EngineOptions& opt = {});

// A is isogenous to a principally polarized B, either a genus-2 Jacobian or
// a product of two elliptic curves.
struct AbelianInput {
    Tri isogenous = Tri::Unknown;
    std::string kind;  // "jacobian" or "product"
    std::vector<CurveInput> curves;
    ProductFacts product;
    static AbelianInput from_json(const nlohmann::json& j);
};
BoundResult delta_abelian_transfer(const AbelianInput& a, const EngineOptions& opt = {});

BoundResult potential_product(const CurveInput& C, const CurveInput& D, const ProductFacts& pf,
                              const EngineOptions& opt = {});

// Non-density certificates.  Both report each check by name.
struct CertificateReport {
    bool verified = false;
    nlohmann::json checks = nlohmann::json::object();
    std::string reason;
    nlohmann::json to_json() const;
};

// asserted: {"field": d, "witness": {"C": {"x": [a, b], "y": [a, b]}, "D": ...},
//            "rank_zero": {"C": true, "D": true}}; coordinates a + b sqrt(d).
CertificateReport nondensity_quadratic_certificate(const HyperellipticCurve& C, const HyperellipticCurve& D,
                                                   const nlohmann::json& asserted);

// asserted: {"cubic_factor_C": A, "cubic_section_D": P, "unique_degree3_maps": true}
// with f_C = -A B and f_D - P^2 a nonzero constant.
CertificateReport nondensity_cubic_certificate(const HyperellipticCurve& C, const HyperellipticCurve& D,
                                               const nlohmann::json& asserted);

// Fiber cubics of the two degree-3 maps, as polynomials in x over Q[t].
PolyT cubic_fiber_C(const HyperellipticCurve& C, const Poly& A);
PolyT cubic_fiber_D(const HyperellipticCurve& D, const Poly& P);

}  // namespace densdeg
