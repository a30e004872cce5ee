#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "densdeg/curve.hpp"
#include "densdeg/facts.hpp"

namespace densdeg {

class UnsupportedExtension : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class LocalError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Verdict { HasPoint, NoPoint, Inconclusive };
std::string to_string(Verdict v);
Verdict parse_verdict(const std::string& s);

// Extension of Q_p of inertia degree f and ramification degree e, with
// pi^e = p * u and u = g^u_index for a fixed generator g of the residue
// field's unit group.  Tame (p does not divide e) or e = 1.
struct LocalField {
    uint64_t p = 0;
    int f = 1;
    int e = 1;
    int u_index = 0;
    int degree() const { return e * f; }
    std::string describe() const;
    nlohmann::json to_json() const;
    static LocalField from_json(const nlohmann::json& j);
    bool operator<(const LocalField& o) const;
    bool operator==(const LocalField& o) const;
};

// All tame fields of degree d over Q_p, ordered by (e, f, u).  Each u_index
// runs over representatives of units modulo e-th powers.
std::vector<LocalField> tame_fields(uint64_t p, int d);
// True when some extension of degree d over Q_p is wildly ramified.
bool has_wild_extension(uint64_t p, int d);

// A point witness.  chart "affine": x has the given coordinates; chart
// "infinity": t = 1/x has them.  kind "square": F(x) is a nonzero square at
// the recorded precision; kind "root": Newton's lemma applies at x.
struct LocalWitness {
    std::string chart;
    std::string kind;
    // coordinates in the basis pi^i alpha^j, index i * f + j, mod p^precision
    std::vector<int64_t> coords;
    nlohmann::json to_json() const;
};

struct LocalResult {
    Verdict verdict = Verdict::Inconclusive;
    int precision = 0;  // p-adic digits used
    std::optional<LocalWitness> witness;
};

struct LocalOptions {
    int precision = 0;  // 0: v_p(disc) + 4, raised adaptively
    bool adaptive = true;
};

LocalResult has_point_local(const HyperellipticCurve& c, const LocalField& k, const LocalOptions& opt = {});

// Independent check of a witness: recomputes F at the point and extracts a
// square root (or checks the Newton inequality).
bool verify_witness(const HyperellipticCurve& c, const LocalField& k, int precision, const LocalWitness& w);

struct FieldVerdicts {
    LocalField field;
    std::vector<Verdict> verdicts;  // one per curve
    int precision = 0;
};

enum class DegreeStatus { Possible, Impossible, Unknown };
std::string to_string(DegreeStatus s);

struct ObstructionResult {
    Tri holds = Tri::Unknown;  // Unknown when inconclusive
    nlohmann::json certificate;
};

ObstructionResult quadratic_obstruction(const HyperellipticCurve& c, const HyperellipticCurve& d, uint64_t p);

struct DivisibilityResult {
    std::map<int, DegreeStatus> local;   // degree of a local field
    std::map<int, DegreeStatus> global;  // degree of a closed point over Q
    nlohmann::json certificate;
};

// Degrees of local fields over which C has points; "global" records the
// degrees of closed points that local data cannot rule out (a degree-d point
// splits d into local degrees at p).
DivisibilityResult degree_divisibility(const HyperellipticCurve& c, uint64_t p, int d_max);
// Same, for fields over which all listed curves have points.
DivisibilityResult common_degree_divisibility(const std::vector<HyperellipticCurve>& cs, uint64_t p, int d_max);

// Local statuses to global: d is impossible iff no partition of d into parts
// whose local status is not Impossible.
std::map<int, DegreeStatus> globalize(const std::map<int, DegreeStatus>& local, int d_max);

// z^2 = f(x1) g(x2) has no Q_3 points, by the square-class argument.
// Throws LocalError when the mod-3 hypotheses fail.
bool surface_qp_empty_mod3(const Poly& f, const Poly& g);

// Re-checks that a certificate's conclusion follows from its verdict table.
// With recheck, also re-runs the solver on the embedded models.
struct CertificateCheck {
    bool ok = false;
    std::string reason;
};
CertificateCheck verify_certificate(const nlohmann::json& cert, bool recheck = false);

}  // namespace densdeg
