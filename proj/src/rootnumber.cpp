#include "densdeg/rootnumber.hpp"

#include <set>

#include "densdeg/numtheory.hpp"

namespace densdeg {

std::string to_string(ReductionKind k) {
    switch (k) {
        case ReductionKind::Good: return "good";
        case ReductionKind::SplitMultiplicative: return "split-multiplicative";
        case ReductionKind::NonsplitMultiplicative: return "nonsplit-multiplicative";
        default: return "additive";
    }
}

nlohmann::json ReductionData::to_json() const {
    return {{"p", p}, {"type", to_string(type)}, {"v_disc", v_disc}, {"v_c4", v_c4}};
}

namespace {

mpz_class Z(uint64_t p) { return mpz_class(std::to_string(p)); }

// x = u^2 x' + r, y = u^3 y' + s u^2 x' + t
std::optional<EllipticCurve> transform(const EllipticCurve& e, const mpq_class& u, const mpq_class& r,
                                       const mpq_class& s, const mpq_class& t) {
    mpq_class u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    mpq_class a1 = (e.a1 + 2 * s) / u;
    mpq_class a2 = (e.a2 - s * e.a1 + 3 * r - s * s) / u2;
    mpq_class a3 = (e.a3 + r * e.a1 + 2 * t) / u3;
    mpq_class a4 = (e.a4 - s * e.a3 + 2 * r * e.a2 - (t + r * s) * e.a1 + 3 * r * r - 2 * s * t) / u4;
    mpq_class a6 = (e.a6 + r * e.a4 + r * r * e.a2 + r * r * r - t * e.a3 - t * t - r * t * e.a1) / u6;
    return EllipticCurve(a1, a2, a3, a4, a6, e.label);
}

bool integral(const EllipticCurve& e) { return e.is_integral(); }

}  // namespace

EllipticCurve integral_model(const EllipticCurve& e) {
    mpz_class l = 1;
    for (auto* a : {&e.a1, &e.a2, &e.a3, &e.a4, &e.a6}) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a->get_den_mpz_t());
    if (l == 1) return e;
    return *transform(e, mpq_class(1, l), 0, 0, 0);
}

EllipticCurve minimal_model_at(const EllipticCurve& e_in, uint64_t p) {
    EllipticCurve e = integral_model(e_in);
    mpz_class P = Z(p);
    while (true) {
        long vd = valuation(e.discriminant(), P);
        long v4 = valuation(e.c4(), P), v6 = valuation(e.c6(), P);
        if (vd < 12 || v4 < 4 || v6 < 6) return e;
        std::optional<EllipticCurve> next;
        if (p >= 5) {
            // y^2 = x^3 - 27 c4' x - 54 c6' with c4' = c4/p^4, c6' = c6/p^6
            mpq_class c4 = e.c4() / mpq_class(P * P * P * P), c6 = e.c6() / mpq_class(P * P * P * P * P * P);
            next = EllipticCurve(0, 0, 0, -27 * c4, -54 * c6, e.label);
        } else {
            long p2 = (long)(p * p), p3 = p2 * (long)p;
            for (long r = 0; r < p2 && !next; ++r)
                for (long s = 0; s < (long)p && !next; ++s)
                    for (long t = 0; t < p3 && !next; ++t) {
                        auto c = transform(e, mpq_class(P), r, s, t);
                        if (integral(*c)) next = c;
                    }
        }
        if (!next) return e;
        e = *next;
    }
}

ReductionData reduction_type(const EllipticCurve& e_in, uint64_t p) {
    EllipticCurve e = minimal_model_at(e_in, p);
    mpz_class P = Z(p);
    ReductionData r;
    r.p = p;
    r.v_disc = valuation(e.discriminant(), P);
    r.v_c4 = valuation(e.c4(), P);
    if (r.v_disc == 0) r.type = ReductionKind::Good;
    else if (r.v_c4 == 0) {
        mpz_class m = -e.c6().get_num();
        bool split;
        if (p == 2) split = mod_positive(m, 8) == 1;
        else split = kronecker(m, P) == 1;
        r.type = split ? ReductionKind::SplitMultiplicative : ReductionKind::NonsplitMultiplicative;
    } else r.type = ReductionKind::Additive;
    return r;
}

std::vector<uint64_t> bad_primes(const EllipticCurve& e_in) {
    EllipticCurve e = integral_model(e_in);
    std::vector<uint64_t> out;
    for (auto& q : prime_support(e.discriminant().get_num())) {
        if (!q.fits_ulong_p()) throw std::out_of_range("bad prime too large");
        uint64_t p = q.get_ui();
        if (reduction_type(e, p).type != ReductionKind::Good) out.push_back(p);
    }
    return out;
}

long ap_minimal(const EllipticCurve& e_in, uint64_t p) {
    EllipticCurve e = minimal_model_at(e_in, p);
    if (valuation(e.discriminant(), Z(p)) != 0) throw BadReduction("a_p needs good reduction");
    if (p != 2) return ap(e, p);
    // count directly on the long model over F_2
    auto m2 = [](const mpq_class& a) { return mod_positive(a.get_num(), 2).get_ui(); };
    uint64_t a1 = m2(e.a1), a2 = m2(e.a2), a3 = m2(e.a3), a4 = m2(e.a4), a6 = m2(e.a6);
    long n = 1;
    for (uint64_t x = 0; x < 2; ++x)
        for (uint64_t y = 0; y < 2; ++y)
            if ((y * y + a1 * x * y + a3 * y) % 2 == (x * x * x + a2 * x * x + a4 * x + a6) % 2) ++n;
    return 3 - n;
}

bool splits_in(long d, uint64_t p) {
    if (p == 2) return mod_positive(d, 8) == 1;
    return kronecker(d, Z(p)) == 1;
}

int root_number_semistable(const EllipticCurve& e, long d) {
    if (d != 1 && (d == 0 || !is_squarefree(d))) throw std::invalid_argument("d must be 1 or a squarefree integer");
    long m = 0;
    for (uint64_t p : bad_primes(e)) {
        ReductionData r = reduction_type(e, p);
        if (r.type == ReductionKind::Additive)
            throw NotSemistable("additive reduction at " + std::to_string(p));
        bool split = r.type == ReductionKind::SplitMultiplicative;
        if (d == 1) {
            m += split;
            continue;
        }
        if (splits_in(d, p)) {
            m += 2 * split;
            continue;
        }
        if (p == 2) throw NotSemistable("non-split prime 2 in the quadratic field is not supported");
        if (kronecker(d, Z(p)) == -1) m += 1;  // residue field F_{p^2}: every F_p unit is a square
        else m += split;                        // ramified: same residue field
    }
    long u = d > 0 && d != 1 ? 2 : 1;
    return (m + u) % 2 ? -1 : 1;
}

int splitting_quadratic_root_number(const EllipticCurve& e, long d) {
    if (d == 0 || d == 1 || !is_squarefree(d)) throw std::invalid_argument("d must be a squarefree integer other than 0, 1");
    for (uint64_t p : bad_primes(e))
        if (!splits_in(d, p))
            throw std::domain_error("bad prime " + std::to_string(p) + " does not split in Q(sqrt " + std::to_string(d) + ")");
    return d < 0 ? -1 : 1;
}

nlohmann::json ParityTwist::to_json() const {
    auto split = nlohmann::json::object();
    for (auto p : primes) split[std::to_string(p)] = "split";
    return {{"d", d},
            {"per_prime_splitting", split},
            {"root_numbers", {root_number_e1, root_number_e2}},
            {"assumption", "ParityConjecture"}};
}

ParityTwist find_parity_twist(const EllipticCurve& e1, const EllipticCurve& e2, long bound) {
    std::set<uint64_t> ps;
    for (auto p : bad_primes(e1)) ps.insert(p);
    for (auto p : bad_primes(e2)) ps.insert(p);
    for (long a = 1; a <= bound; ++a) {
        if (!is_squarefree(a)) continue;
        long d = -a;
        bool ok = true;
        for (auto p : ps) ok = ok && splits_in(d, p);
        if (!ok) continue;
        ParityTwist t;
        t.d = d;
        t.primes.assign(ps.begin(), ps.end());
        t.root_number_e1 = splitting_quadratic_root_number(e1, d);
        t.root_number_e2 = splitting_quadratic_root_number(e2, d);
        return t;
    }
    throw SearchBoundExceeded("no imaginary quadratic field with |d| <= " + std::to_string(bound) +
                              " splits every bad prime");
}

bool nonpp_prime_check(const EllipticCurve& e, uint64_t p) {
    if (!is_prime(p)) return false;
    if (reduction_type(e, p).type != ReductionKind::Good) return false;
    long a = ap_minimal(e, p);
    long n = (long)p - a * a;
    if (n <= 0) return false;
    for (auto& [q, k] : factor_integer(n))
        if (mod_positive(q, 3) != 1) return false;
    uint64_t r = p % 7;
    return r != 0 && r != 1 && r != 6;
}

}  // namespace densdeg
