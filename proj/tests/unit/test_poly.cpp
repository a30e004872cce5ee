#include <doctest.h>

#include "densdeg/numtheory.hpp"
#include "densdeg/poly.hpp"
#include "support.hpp"

using namespace densdeg;
using testsupport::uniform;

namespace {

Poly from_roots(const std::vector<long>& roots, long lead) {
    Poly p = Poly::constant(lead);
    for (long r : roots) p *= Poly({-r, 1});
    return p;
}

// lc^(2n-2) * prod_{i<j} (r_i - r_j)^2
mpq_class disc_from_roots(const std::vector<long>& roots, long lead) {
    size_t n = roots.size();
    mpq_class d = 1;
    for (size_t i = 0; i + 2 <= 2 * n - 1; ++i) d *= lead;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) d *= mpq_class((roots[i] - roots[j]) * (roots[i] - roots[j]));
    return d;
}

}  // namespace

TEST_CASE("discriminant matches the root formula") {
    for (int t = 0; t < 60; ++t) {
        int n = (int)uniform(2, 6);
        std::vector<long> roots;
        for (int i = 0; i < n; ++i) roots.push_back(uniform(-9, 9));
        long lead = uniform(1, 4) * (uniform(0, 1) ? 1 : -1);
        Poly p = from_roots(roots, lead);
        CHECK(discriminant(p) == disc_from_roots(roots, lead));
    }
    CHECK(discriminant(Poly({1, 0, 1})) == -4);
    CHECK(discriminant(Poly({1, 1, 0, 1})) == -31);
}

TEST_CASE("resultant vanishes on common roots") {
    CHECK(resultant(Poly({-1, 0, 1}), Poly({-1, 1})) == 0);
    CHECK(resultant(Poly({-2, 1}), Poly({-3, 1})) != 0);
}

TEST_CASE("Sturm counts distinct real roots") {
    for (int t = 0; t < 60; ++t) {
        int n = (int)uniform(1, 5);
        std::set<long> distinct;
        std::vector<long> roots;
        for (int i = 0; i < n; ++i) {
            long r = uniform(-6, 6);
            roots.push_back(r);
            distinct.insert(r);
        }
        // times an irreducible quadratic with no real roots
        Poly p = from_roots(roots, 1) * Poly({1, 0, 1});
        CHECK(sturm_real_roots(p) == (int)distinct.size());
        long cnt = 0;
        for (long r : distinct) cnt += (r > 0 && r <= 3);
        CHECK(sturm_real_roots(p, mpq_class(0), mpq_class(3)) == cnt);
    }
    CHECK(sign_at_infinity(Poly({0, 0, -1}), true) == -1);
    CHECK(sign_at_infinity(Poly({0, 0, 0, 1}), false) == -1);
}

TEST_CASE("division, gcd and squarefree part") {
    Poly a = from_roots({1, 2, 2, 3}, 2), b = from_roots({2, 5}, 1);
    auto [q, r] = a.divmod(b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    CHECK(gcd(a, b) == Poly({-2, 1}));
    CHECK(squarefree_part(a).degree() == 3);
    CHECK(a.exact_div(Poly({-1, 1})) == from_roots({2, 2, 3}, 2));
    CHECK_THROWS_AS(a.exact_div(Poly({-7, 1})), PolyError);
}

TEST_CASE("evaluation, composition and derivatives") {
    Poly p({1, -3, 0, 2});
    CHECK(p.eval(2) == 11);
    CHECK(p.derivative() == Poly({-3, 0, 6}));
    CHECK(p.compose(Poly({1, 1})).eval(1) == p.eval(2));
    CHECK(p.pow(3).degree() == 9);
    CHECK(Poly::from_json(p.to_json()) == p);
    CHECK(Poly::from_json(nlohmann::json::array({"1/2", 3})).coeff(0) == mpq_class(1, 2));
}

TEST_CASE("discriminant in a parameter") {
    // t x^2 + x + 1: discriminant 1 - 4t
    PolyT p;
    p.c = {Poly({1}), Poly({1}), Poly({0, 1})};
    CHECK(discriminant_t(p) == Poly({1, -4}));
    CHECK(discriminant_at(p, 2) == -7);
}

TEST_CASE("Kronecker symbol agrees with Euler's criterion") {
    for (long p : {3L, 5L, 7L, 11L, 13L, 101L}) {
        for (long a = -20; a <= 20; ++a) {
            long r = ((a % p) + p) % p;
            long e = 1;
            for (long i = 0; i < (p - 1) / 2; ++i) e = e * r % p;
            int want = r == 0 ? 0 : (e == 1 ? 1 : -1);
            CHECK(kronecker(a, p) == want);
        }
    }
    CHECK(kronecker(5, 8) == -1);
    CHECK(kronecker(-7, 2) == 1);
}

TEST_CASE("factorization agrees with trial division") {
    for (long n = 2; n < 3000; n += 37) {
        mpz_class prod = 1;
        for (auto& [p, e] : factor_integer(n)) {
            CHECK(is_prime(p.get_ui()));
            for (unsigned i = 0; i < e; ++i) prod *= p;
        }
        CHECK(prod == n);
        bool prime = n > 1;
        for (long d = 2; d * d <= n; ++d) prime = prime && n % d;
        CHECK(is_prime(n) == prime);
    }
    CHECK(valuation(mpz_class(72), mpz_class(2)) == 3);
    CHECK(valuation(mpq_class(9, 8), mpz_class(2)) == -3);
    CHECK(is_squarefree(-1));
    CHECK_FALSE(is_squarefree(12));
    CHECK(isqrt(mpz_class(99)) == 9);
}
