#include "densdeg/curve.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "densdeg/numtheory.hpp"

namespace densdeg {

namespace {

mpq_class parse_rational(const nlohmann::json& x) {
    return Poly::from_json(nlohmann::json::array({x})).coeff(0);
}

bool is_square_z(const mpz_class& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

bool is_kth_power_q(const mpq_class& q, unsigned k) {
    if (q == 0) return true;
    if (q < 0 && k % 2 == 0) return false;
    mpz_class n = abs(q.get_num()), d = q.get_den(), r;
    return mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) != 0 && mpz_root(r.get_mpz_t(), d.get_mpz_t(), k) != 0;
}

}  // namespace

Poly HyperellipticCurve::completed() const { return f * mpq_class(4) + h * h; }

Poly HyperellipticCurve::integral_completed() const {
    Poly F = completed();
    mpz_class l = F.denominator_lcm();
    return F * mpq_class(l * l);
}

int HyperellipticCurve::genus() const {
    int n = completed().degree();
    if (n < 1) throw CurveError("curve model has constant right-hand side");
    return (n - 1) / 2;
}

bool HyperellipticCurve::is_nonsingular() const {
    Poly F = completed();
    if (F.degree() < 1) return false;
    return gcd(F, F.derivative()).degree() == 0;
}

nlohmann::json HyperellipticCurve::to_json() const { return {{"f", f.to_json()}, {"h", h.to_json()}}; }

HyperellipticCurve HyperellipticCurve::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw CurveError("model must be an object");
    if (j.contains("ainvs")) {
        const auto& a = j.at("ainvs");
        if (!a.is_array() || a.size() != 5) throw CurveError("ainvs must have five entries");
        EllipticCurve e(parse_rational(a[0]), parse_rational(a[1]), parse_rational(a[2]), parse_rational(a[3]),
                        parse_rational(a[4]));
        return e.as_hyperelliptic();
    }
    if (!j.contains("f")) throw CurveError("model needs 'f' or 'ainvs'");
    HyperellipticCurve c(Poly::from_json(j.at("f")), j.contains("h") ? Poly::from_json(j.at("h")) : Poly());
    if (!c.is_nonsingular()) throw CurveError("model is singular (4f + h^2 not squarefree)");
    return c;
}

EllipticCurve::EllipticCurve(mpq_class a1_, mpq_class a2_, mpq_class a3_, mpq_class a4_, mpq_class a6_,
                             std::string label_)
    : a1(a1_), a2(a2_), a3(a3_), a4(a4_), a6(a6_), label(std::move(label_)) {
    if (discriminant() == 0) throw CurveError("singular Weierstrass equation");
}

mpq_class EllipticCurve::b2() const { return a1 * a1 + 4 * a2; }
mpq_class EllipticCurve::b4() const { return 2 * a4 + a1 * a3; }
mpq_class EllipticCurve::b6() const { return a3 * a3 + 4 * a6; }
mpq_class EllipticCurve::b8() const {
    return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
}
mpq_class EllipticCurve::c4() const { return b2() * b2() - 24 * b4(); }
mpq_class EllipticCurve::c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }

mpq_class EllipticCurve::discriminant() const {
    mpq_class B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}

mpq_class EllipticCurve::j_invariant() const {
    mpq_class c = c4();
    return c * c * c / discriminant();
}

bool EllipticCurve::is_integral() const {
    for (auto* a : {&a1, &a2, &a3, &a4, &a6})
        if (a->get_den() != 1) return false;
    return true;
}

HyperellipticCurve EllipticCurve::as_hyperelliptic() const {
    return HyperellipticCurve(Poly(std::vector<mpq_class>{a6, a4, a2, 1}), Poly(std::vector<mpq_class>{a3, a1}),
                              label);
}

std::optional<EllipticCurve> EllipticCurve::from_hyperelliptic(const HyperellipticCurve& c) {
    if (c.f.degree() != 3 || c.f.lc() != 1 || c.h.degree() > 1) return std::nullopt;
    return EllipticCurve(c.h.coeff(1), c.f.coeff(2), c.h.coeff(0), c.f.coeff(1), c.f.coeff(0), c.label);
}

nlohmann::json EllipticCurve::to_json() const {
    return {{"ainvs", {a1.get_str(), a2.get_str(), a3.get_str(), a4.get_str(), a6.get_str()}}};
}

bool good_odd_prime(const HyperellipticCurve& c, uint64_t p) {
    if (p < 3 || !is_prime(p)) return false;
    Poly F = c.integral_completed();
    mpz_class P(std::to_string(p));
    mpq_class bad = F.lc() * discriminant(F);
    return !mpz_divisible_p(bad.get_num_mpz_t(), P.get_mpz_t());
}

uint64_t count_points_mod_p(const HyperellipticCurve& c, uint64_t p) {
    if (!good_odd_prime(c, p)) throw BadReduction("prime " + std::to_string(p) + " is not an odd prime of good reduction");
    Poly F = c.integral_completed();
    mpz_class P(std::to_string(p));
    std::vector<uint64_t> cf;
    for (auto& a : F.coeffs()) cf.push_back(mod_positive(a.get_num(), P).get_ui());
    std::vector<int8_t> chi(p, -1);
    chi[0] = 0;
    for (uint64_t y = 1; y < p; ++y) chi[(unsigned __int128)y * y % p] = 1;
    uint64_t n = 0;
    for (uint64_t x = 0; x < p; ++x) {
        unsigned __int128 acc = 0;
        for (size_t i = cf.size(); i-- > 0;) acc = (acc * x + cf[i]) % p;
        n += 1 + chi[(uint64_t)acc];
    }
    if (F.degree() % 2) n += 1;
    else n += 1 + chi[cf.back()];
    return n;
}

long ap(const EllipticCurve& e, uint64_t p) {
    return (long)p + 1 - (long)count_points_mod_p(e.as_hyperelliptic(), p);
}

std::pair<long, long> weil_interval(int genus, uint64_t p) {
    // floor(2g sqrt(p)) = floor(sqrt(4 g^2 p))
    mpz_class r = isqrt(mpz_class(4) * genus * genus * mpz_class(std::to_string(p)));
    long w = r.get_si();
    return {(long)p + 1 - w, (long)p + 1 + w};
}

bool real_points_empty(const HyperellipticCurve& c) {
    Poly F = c.completed();
    if (F.degree() % 2) return false;
    return F.lc() < 0 && sturm_real_roots(F) == 0;
}

bool mod3_condition(const Poly& f, int target) {
    if (!f.is_integral()) throw CurveError("mod-3 condition needs integral coefficients");
    if (f.is_zero()) return false;
    mpz_class t = mod_positive(target, 3);
    for (long x : {0L, 1L, 2L})
        if (mod_positive(f.eval(x).get_num(), 3) != t) return false;
    return mod_positive(f.lc().get_num(), 3) == t;
}

std::vector<mpq_class> rational_roots(const Poly& p_in) {
    if (p_in.is_zero()) throw PolyError("rational roots of the zero polynomial");
    std::vector<mpq_class> out;
    Poly p = p_in * mpq_class(p_in.denominator_lcm());
    int shift = 0;
    while (shift <= p.degree() && p.coeff(shift) == 0) ++shift;
    if (shift > 0) {
        out.push_back(0);
        std::vector<mpq_class> v(p.coeffs().begin() + shift, p.coeffs().end());
        p = Poly(std::move(v));
    }
    if (p.degree() < 1) return out;
    auto divisors = [](const mpz_class& n) {
        std::vector<mpz_class> ds{1};
        for (auto& [q, e] : factor_integer(abs(n))) {
            size_t sz = ds.size();
            mpz_class pk = 1;
            for (unsigned k = 1; k <= e; ++k) {
                pk *= q;
                for (size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * pk);
            }
        }
        return ds;
    };
    std::set<mpq_class> found;
    for (auto& a : divisors(p.coeff(0).get_num()))
        for (auto& b : divisors(p.lc().get_num()))
            for (int s : {1, -1}) {
                mpq_class r(s * a, b);
                r.canonicalize();
                if (p.eval(r) == 0) found.insert(r);
            }
    out.insert(out.end(), found.begin(), found.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RationalPoint> search_rational_points(const HyperellipticCurve& c, long height) {
    Poly F = c.integral_completed();
    int n = F.degree() % 2 ? F.degree() + 1 : F.degree();
    std::vector<RationalPoint> out;
    if (F.degree() % 2) out.push_back({std::nullopt, true});
    else if (is_kth_power_q(F.lc(), 2)) out.push_back({std::nullopt, false});
    std::vector<mpz_class> cf;
    for (auto& a : F.coeffs()) cf.push_back(a.get_num());
    for (long b = 1; b <= height; ++b)
        for (long a = -height; a <= height; ++a) {
            if (std::gcd(std::labs(a), b) != 1) continue;
            mpz_class v = 0, ap = 1;
            std::vector<mpz_class> bp(n + 1);
            bp[0] = 1;
            for (int i = 1; i <= n; ++i) bp[i] = bp[i - 1] * b;
            for (size_t i = 0; i < cf.size(); ++i) {
                v += cf[i] * ap * bp[n - i];
                ap *= a;
            }
            if (is_square_z(v)) out.push_back({mpq_class(a, b), v == 0});
        }
    return out;
}

QuadElem quad_mul(const QuadElem& x, const QuadElem& y, const mpz_class& d) {
    return {x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a};
}

QuadElem quad_add(const QuadElem& x, const QuadElem& y) { return {x.a + y.a, x.b + y.b}; }

QuadElem quad_eval(const Poly& p, const QuadElem& x, const mpz_class& d) {
    QuadElem acc{0, 0};
    for (size_t i = p.coeffs().size(); i-- > 0;) acc = quad_add(quad_mul(acc, x, d), {p.coeffs()[i], 0});
    return acc;
}

bool on_curve_quadratic(const HyperellipticCurve& c, const QuadElem& x, const QuadElem& y, const mpz_class& d) {
    QuadElem lhs = quad_add(quad_mul(y, y, d), quad_mul(quad_eval(c.h, x, d), y, d));
    QuadElem rhs = quad_eval(c.f, x, d);
    return lhs.a == rhs.a && lhs.b == rhs.b;
}

bool isomorphic_over_q(const EllipticCurve& e1, const EllipticCurve& e2) {
    mpq_class c4a = e1.c4(), c6a = e1.c6(), c4b = e2.c4(), c6b = e2.c6();
    if ((c4a == 0) != (c4b == 0) || (c6a == 0) != (c6b == 0)) return false;
    if (e1.j_invariant() != e2.j_invariant()) return false;
    if (c4a == 0) return is_kth_power_q(c6b / c6a, 6);
    if (c6a == 0) return is_kth_power_q(c4b / c4a, 4);
    // u^2 = (c6b / c6a) / (c4b / c4a)
    mpq_class r = (c6b / c6a) / (c4b / c4a);
    return is_kth_power_q(r, 2) && r * r == c4b / c4a;
}

EllipticCurve quartic_jacobian(const Poly& q) {
    if (q.degree() != 4) throw CurveError("quartic_jacobian needs a degree-4 polynomial");
    mpq_class a = q.coeff(4), b = q.coeff(3), c = q.coeff(2), d = q.coeff(1), e = q.coeff(0);
    mpq_class I = 12 * a * e - 3 * b * d + c * c;
    mpq_class J = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c * c * c;
    return EllipticCurve(0, 0, 0, -27 * I, -27 * J);
}

}  // namespace densdeg
