#include "densdeg/numtheory.hpp"

#include <stdexcept>

namespace densdeg {

int kronecker(const mpz_class& a, const mpz_class& n) {
    if (n == 0) throw std::invalid_argument("kronecker symbol needs n != 0");
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

std::vector<std::pair<mpz_class, unsigned>> factor_integer(const mpz_class& n_in) {
    if (n_in <= 0) throw std::invalid_argument("factor_integer needs a positive integer");
    std::vector<std::pair<mpz_class, unsigned>> out;
    mpz_class n = n_in;
    auto strip = [&](const mpz_class& p) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    // 6k +- 1 wheel
    for (mpz_class p = 5; p * p <= n; p += 6) {
        strip(p);
        mpz_class q = p + 2;
        strip(q);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long valuation(const mpz_class& n, const mpz_class& p) {
    if (n == 0) return kInfiniteValuation;
    mpz_class m = n;
    long v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        m /= p;
        ++v;
    }
    return v;
}

long valuation(const mpq_class& q, const mpz_class& p) {
    if (q == 0) return kInfiniteValuation;
    return valuation(mpz_class(q.get_num()), p) - valuation(mpz_class(q.get_den()), p);
}

bool is_squarefree(const mpz_class& n) {
    if (n == 0) return false;
    mpz_class a = abs(n);
    for (auto& [p, e] : factor_integer(a))
        if (e > 1) return false;
    return true;
}

std::vector<mpz_class> prime_support(const mpz_class& n) {
    std::vector<mpz_class> out;
    if (n == 0) return out;
    for (auto& [p, e] : factor_integer(abs(n))) out.push_back(p);
    return out;
}

mpz_class isqrt(const mpz_class& n) {
    if (n < 0) throw std::invalid_argument("isqrt of a negative number");
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

mpz_class mod_positive(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

}  // namespace densdeg
