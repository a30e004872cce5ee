#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "densdeg/curve.hpp"

namespace densdeg {

class NotSemistable : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class SearchBoundExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ReductionKind { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };
std::string to_string(ReductionKind k);

struct ReductionData {
    uint64_t p = 0;
    ReductionKind type = ReductionKind::Good;
    long v_disc = 0;
    long v_c4 = 0;
    nlohmann::json to_json() const;
};

// Integral model, then minimal at p (u-substitutions with u = p).
EllipticCurve integral_model(const EllipticCurve& e);
EllipticCurve minimal_model_at(const EllipticCurve& e, uint64_t p);

ReductionData reduction_type(const EllipticCurve& e, uint64_t p);
// Primes of bad reduction (dividing the minimal discriminant), increasing.
std::vector<uint64_t> bad_primes(const EllipticCurve& e);

// Trace of Frobenius on a model minimal at p; p must be of good reduction.
long ap_minimal(const EllipticCurve& e, uint64_t p);

// (-1)^(m + u) over Q (d = 1) or over Q(sqrt d).  m counts places of split
// multiplicative reduction, u archimedean places.
int root_number_semistable(const EllipticCurve& e, long d = 1);

// True when p splits in Q(sqrt d): (d|p) = 1 for odd p, d = 1 mod 8 for p = 2.
bool splits_in(long d, uint64_t p);

// Root number over Q(sqrt d) when every bad prime splits: the two places over
// each bad prime carry equal local root numbers, leaving the archimedean sign.
int splitting_quadratic_root_number(const EllipticCurve& e, long d);

struct ParityTwist {
    long d = 0;
    std::vector<uint64_t> primes;
    int root_number_e1 = 0;
    int root_number_e2 = 0;
    nlohmann::json to_json() const;
};

ParityTwist find_parity_twist(const EllipticCurve& e1, const EllipticCurve& e2, long bound = 10000);

// p - a_p^2 > 0, all its prime factors 1 mod 3, and p of order 3 in
// (Z/7)^* / {+-1}.
bool nonpp_prime_check(const EllipticCurve& e, uint64_t p);

}  // namespace densdeg
