#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>

#include "densdeg/batch.hpp"
#include "densdeg/curve.hpp"
#include "densdeg/poly.hpp"

#ifndef DENSDEG_FIXTURE_DIR
#define DENSDEG_FIXTURE_DIR "fixtures"
#endif

namespace testsupport {

inline std::string fixture_path() { return std::string(DENSDEG_FIXTURE_DIR) + "/worked_examples.json"; }

inline const nlohmann::json& fixtures() {
    static const nlohmann::json j = densdeg::load_json_file(fixture_path());
    return j;
}

// q mod p for p not dividing the denominator
inline long mod_p(const mpq_class& q, long p) {
    mpz_class n = q.get_num() % p, d = q.get_den() % p, inv;
    if (n < 0) n += p;
    mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), mpz_class(p).get_mpz_t());
    mpz_class r = n * inv % p;
    return r.get_si();
}

inline long eval_mod(const densdeg::Poly& f, long x, long p) {
    long r = 0;
    for (int i = f.degree(); i >= 0; --i) r = (r * x + mod_p(f.coeff(i), p)) % p;
    return r;
}

// Points of y^2 + h y = f on the smooth model over F_p, odd p of good
// reduction: brute force on the affine chart, plus the points at infinity
// read off the leading term of 4f + h^2.
inline long brute_count(const densdeg::HyperellipticCurve& c, long p) {
    long n = 0;
    for (long x = 0; x < p; ++x) {
        long fx = eval_mod(c.f, x, p), hx = c.h.is_zero() ? 0 : eval_mod(c.h, x, p);
        for (long y = 0; y < p; ++y)
            if (((y * y + hx * y - fx) % p + p) % p == 0) ++n;
    }
    densdeg::Poly F = c.completed();
    int g = c.genus();
    if (F.degree() == 2 * g + 1) return n + 1;
    long lc = mod_p(F.lc(), p);
    bool square = false;
    for (long y = 1; y < p; ++y) square = square || (y * y) % p == lc;
    return n + (square ? 2 : 0);
}

inline std::mt19937_64& rng() {
    static std::mt19937_64 r(20241018);
    return r;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

}  // namespace testsupport
