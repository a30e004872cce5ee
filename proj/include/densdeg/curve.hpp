#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "densdeg/poly.hpp"

namespace densdeg {

class BadReduction : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class CurveError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// y^2 + h(x) y = f(x).
struct HyperellipticCurve {
    Poly f;
    Poly h;
    std::string label;

    HyperellipticCurve() = default;
    HyperellipticCurve(Poly f_, Poly h_ = Poly(), std::string label_ = "")
        : f(std::move(f_)), h(std::move(h_)), label(std::move(label_)) {}

    // 4f + h^2, so that the curve is (2y + h)^2 = F(x).
    Poly completed() const;
    // Completed model scaled by a rational square so that it is integral.
    Poly integral_completed() const;
    int genus() const;
    // Degree of the smooth model's "x-chart" polynomial: 2g + 2.
    int even_degree() const { return 2 * genus() + 2; }
    bool is_nonsingular() const;

    nlohmann::json to_json() const;
    static HyperellipticCurve from_json(const nlohmann::json& j);
};

struct EllipticCurve {
    mpq_class a1, a2, a3, a4, a6;
    std::string label;

    EllipticCurve() = default;
    EllipticCurve(mpq_class a1_, mpq_class a2_, mpq_class a3_, mpq_class a4_, mpq_class a6_, std::string label_ = "");

    mpq_class b2() const;
    mpq_class b4() const;
    mpq_class b6() const;
    mpq_class b8() const;
    mpq_class c4() const;
    mpq_class c6() const;
    mpq_class discriminant() const;
    mpq_class j_invariant() const;
    bool is_integral() const;

    HyperellipticCurve as_hyperelliptic() const;
    // Recognize y^2 + (a1 x + a3) y = x^3 + a2 x^2 + a4 x + a6.
    static std::optional<EllipticCurve> from_hyperelliptic(const HyperellipticCurve& c);

    nlohmann::json to_json() const;
};

// Number of F_p points on the smooth projective model, p an odd prime of
// good reduction for the integral completed model.
uint64_t count_points_mod_p(const HyperellipticCurve& c, uint64_t p);
long ap(const EllipticCurve& e, uint64_t p);

// True when p is odd and does not divide lc * disc of the integral completed
// model (the condition count_points_mod_p needs).
bool good_odd_prime(const HyperellipticCurve& c, uint64_t p);

// Integer bounds of the Weil interval |N - (p+1)| <= 2g sqrt(p).
std::pair<long, long> weil_interval(int genus, uint64_t p);

bool real_points_empty(const HyperellipticCurve& c);

// f(0), f(1), f(2) and the leading coefficient all congruent to target
// (+1 or -1) mod 3.
bool mod3_condition(const Poly& f, int target);

// Rational roots of a nonzero polynomial with rational coefficients.
std::vector<mpq_class> rational_roots(const Poly& p);

// Small search for rational points.  Points at infinity are reported with
// x = nullopt.
struct RationalPoint {
    std::optional<mpq_class> x;
    bool weierstrass = false;
};
std::vector<RationalPoint> search_rational_points(const HyperellipticCurve& c, long height);

// Quadratic field arithmetic Q(sqrt(d)), used to check point witnesses.
struct QuadElem {
    mpq_class a, b;  // a + b sqrt(d)
};
QuadElem quad_mul(const QuadElem& x, const QuadElem& y, const mpz_class& d);
QuadElem quad_add(const QuadElem& x, const QuadElem& y);
QuadElem quad_eval(const Poly& p, const QuadElem& x, const mpz_class& d);
// Checks y^2 + h(x) y = f(x) over Q(sqrt(d)).
bool on_curve_quadratic(const HyperellipticCurve& c, const QuadElem& x, const QuadElem& y, const mpz_class& d);

// Over Q: are two elliptic curves isomorphic (c4, c6 related by u^4, u^6)?
bool isomorphic_over_q(const EllipticCurve& e1, const EllipticCurve& e2);
// Jacobian of y^2 = quartic, via the classical invariants I, J.
EllipticCurve quartic_jacobian(const Poly& quartic);

}  // namespace densdeg
