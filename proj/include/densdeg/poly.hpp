#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace densdeg {

// Univariate polynomial with exact rational coefficients, ascending degree.
// The coefficient vector never has a trailing zero, so the zero polynomial
// is the empty vector.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<mpq_class> coeffs);
    Poly(std::initializer_list<long> coeffs);
    static Poly constant(const mpq_class& c);
    static Poly x();
    static Poly monomial(const mpq_class& c, int deg);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    mpq_class coeff(int i) const;
    mpq_class lc() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const mpq_class& s) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Euclidean division over Q.
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly operator%(const Poly& d) const { return divmod(d).second; }
    // Division that must be exact; throws otherwise.
    Poly exact_div(const Poly& d) const;

    Poly derivative() const;
    mpq_class eval(const mpq_class& x) const;
    Poly compose(const Poly& inner) const;
    Poly pow(unsigned k) const;
    Poly monic() const;

    bool is_integral() const;
    // Smallest positive integer L with L * p integral.
    mpz_class denominator_lcm() const;

    std::string to_string(const std::string& var = "x") const;
    nlohmann::json to_json() const;
    static Poly from_json(const nlohmann::json& j);

private:
    void trim();
    std::vector<mpq_class> c_;
};

Poly gcd(const Poly& a, const Poly& b);  // monic, or zero
Poly squarefree_part(const Poly& p);

// Resultant via the Sylvester determinant.
mpq_class resultant(const Poly& p, const Poly& q);

// disc(p) = (-1)^(n(n-1)/2) res(p, p') / lc(p).  Throws for the zero
// polynomial; degree-0 polynomials have discriminant 1.
mpq_class discriminant(const Poly& p);

// Number of distinct real roots in (lo, hi]; an absent bound means infinity.
int sturm_real_roots(const Poly& p, const std::optional<mpq_class>& lo = std::nullopt,
                     const std::optional<mpq_class>& hi = std::nullopt);

// Sign of p at +infinity / -infinity.
int sign_at_infinity(const Poly& p, bool positive);

// Polynomial in x whose coefficients are polynomials in a parameter t.
struct PolyT {
    std::vector<Poly> c;  // ascending in x
    int degree() const;
    PolyT derivative() const;
    Poly specialize_coeff(int i) const { return i < (int)c.size() ? c[i] : Poly(); }
    // Substitute t = value.
    Poly at(const mpq_class& t) const;
};

mpq_class discriminant_at(const PolyT& p, const mpq_class& t);
// Discriminant with respect to x, as a polynomial in t (fraction-free
// Bareiss elimination with exact division in Q[t]).
Poly discriminant_t(const PolyT& p);

class PolyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace densdeg
