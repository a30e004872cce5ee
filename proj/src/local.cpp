#include "densdeg/local.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "densdeg/numtheory.hpp"

namespace densdeg {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::HasPoint: return "has-point";
        case Verdict::NoPoint: return "no-point";
        default: return "inconclusive";
    }
}

Verdict parse_verdict(const std::string& s) {
    if (s == "has-point") return Verdict::HasPoint;
    if (s == "no-point") return Verdict::NoPoint;
    if (s == "inconclusive") return Verdict::Inconclusive;
    throw LocalError("unknown verdict '" + s + "'");
}

std::string to_string(DegreeStatus s) {
    switch (s) {
        case DegreeStatus::Possible: return "possible";
        case DegreeStatus::Impossible: return "impossible";
        default: return "unknown";
    }
}

namespace {

DegreeStatus parse_status(const std::string& s) {
    if (s == "possible") return DegreeStatus::Possible;
    if (s == "impossible") return DegreeStatus::Impossible;
    if (s == "unknown") return DegreeStatus::Unknown;
    throw LocalError("unknown degree status '" + s + "'");
}

using u64 = uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

u64 ipow(u64 b, int k) {
    u64 r = 1;
    while (k--) r *= b;
    return r;
}

// ---- F_p[x] helpers, used to build residue fields ----

using FpPoly = std::vector<u64>;

void trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 inv_mod_p(u64 a, u64 p) {
    u64 r = 1, e = p - 2;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, u64 p) {
    trim(a);
    u64 inv = inv_mod_p(m.back(), p);
    while (a.size() >= m.size()) {
        u64 t = mulmod(a.back(), inv, p);
        size_t s = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) a[s + i] = (a[s + i] + p - mulmod(t, m[i], p)) % p;
        trim(a);
    }
    return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, u64 p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    return fp_mod(r, m, p);
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = b;
        b = r;
    }
    return a;
}

bool fp_irreducible(const FpPoly& m, u64 p) {
    int f = (int)m.size() - 1;
    FpPoly xp = {0, 1};
    for (int i = 1; i <= f / 2; ++i) {
        // xp <- xp^p mod m
        FpPoly base = xp, r = {1};
        u64 e = p;
        while (e) {
            if (e & 1) r = fp_mulmod(r, base, m, p);
            base = fp_mulmod(base, base, m, p);
            e >>= 1;
        }
        xp = r;
        FpPoly d = xp;
        d.resize(std::max<size_t>(d.size(), 2));
        d[1] = (d[1] + p - 1) % p;
        trim(d);
        if (d.empty()) return false;
        if (fp_gcd(m, d, p).size() > 1) return false;
    }
    return true;
}

// First monic irreducible polynomial of degree f, in lexicographic order of
// the coefficient vector.
FpPoly find_irreducible(u64 p, int f) {
    if (f == 1) return {0, 1};
    u64 total = ipow(p, f);
    for (u64 idx = 0; idx < total; ++idx) {
        FpPoly m(f + 1);
        u64 t = idx;
        for (int i = 0; i < f; ++i) {
            m[i] = t % p;
            t /= p;
        }
        m[f] = 1;
        if (m[0] == 0) continue;
        if (fp_irreducible(m, p)) return m;
    }
    throw LocalError("no irreducible polynomial found");
}

// Residue field F_q = F_p[a]/(m), elements as coefficient vectors of size f.
struct Fq {
    u64 p;
    int f;
    FpPoly m;
    u64 q;

    Fq(u64 p_, int f_) : p(p_), f(f_), m(find_irreducible(p_, f_)), q(ipow(p_, f_)) {}

    using E = std::vector<u64>;
    E one() const {
        E r(f, 0);
        r[0] = 1;
        return r;
    }
    E mul(const E& a, const E& b) const {
        FpPoly r = fp_mulmod(FpPoly(a.begin(), a.end()), FpPoly(b.begin(), b.end()), m, p);
        r.resize(f, 0);
        return r;
    }
    E pow(E a, u64 k) const {
        E r = one();
        while (k) {
            if (k & 1) r = mul(r, a);
            a = mul(a, a);
            k >>= 1;
        }
        return r;
    }
    bool is_zero(const E& a) const {
        return std::all_of(a.begin(), a.end(), [](u64 x) { return x == 0; });
    }
    bool is_one(const E& a) const { return a == one(); }
    E from_index(u64 idx) const {
        E r(f);
        for (int i = 0; i < f; ++i) {
            r[i] = idx % p;
            idx /= p;
        }
        return r;
    }
    E inv(const E& a) const { return pow(a, q - 2); }
    bool is_square(const E& a) const { return is_zero(a) || is_one(pow(a, (q - 1) / 2)); }
    E generator() const {
        std::vector<u64> primes;
        for (auto& [r, e] : factor_integer(mpz_class(std::to_string(q - 1)))) primes.push_back(r.get_ui());
        for (u64 idx = 1; idx < q; ++idx) {
            E g = from_index(idx);
            if (is_zero(g)) continue;
            bool ok = true;
            for (u64 r : primes)
                if (is_one(pow(g, (q - 1) / r))) ok = false;
            if (ok) return g;
        }
        throw LocalError("no generator of the residue field");
    }
};

// O_L / p^M with O_L = Z_p[a]/(m(a)) [pi] / (pi^e - p u).  Elements are
// e*f coefficient arrays, index i*f + j for pi^i a^j.
struct Ring {
    u64 p;
    int e, f, M;
    u64 mod;
    Fq fq;
    std::vector<u64> u;  // unit in K_f, length f
    Fq::E ures_inv;      // residue of u^{-1}

    using E = std::vector<u64>;

    Ring(const LocalField& k, int prec)
        : p(k.p), e(k.e), f(k.f), M(prec), mod(ipow(k.p, prec)), fq(k.p, k.f) {
        Fq::E g = fq.generator();
        Fq::E ur = fq.pow(g, (u64)k.u_index);
        u.assign(ur.begin(), ur.end());
        ures_inv = fq.inv(ur);
    }

    E zero() const { return E(e * f, 0); }
    E from_int(const mpz_class& z) const {
        E r = zero();
        r[0] = mod_positive(z, mpz_class(std::to_string(mod))).get_ui();
        return r;
    }
    E pi_pow(int s) const {
        E pi = e == 1 ? from_int(mpz_class(std::to_string(p))) : zero();
        if (e > 1) pi[f] = 1;
        E r = zero();
        r[0] = 1 % mod;
        for (int i = 0; i < s; ++i) r = mul(r, pi);
        return r;
    }
    E add(const E& a, const E& b) const {
        E r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % mod;
        return r;
    }
    E sub(const E& a, const E& b) const {
        E r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + mod - b[i]) % mod;
        return r;
    }
    // product in K_f = Z/p^M [a]/(m)
    std::vector<u64> kmul(const u64* a, const u64* b) const {
        std::vector<u64> r(2 * f - 1, 0);
        for (int i = 0; i < f; ++i) {
            if (!a[i]) continue;
            for (int j = 0; j < f; ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], mod)) % mod;
        }
        const FpPoly& m = fq.m;
        for (int d = 2 * f - 2; d >= f; --d) {
            u64 t = r[d];
            if (!t) continue;
            for (int j = 0; j < f; ++j) r[d - f + j] = (r[d - f + j] + mod - mulmod(t, m[j], mod)) % mod;
            r[d] = 0;
        }
        r.resize(f);
        return r;
    }
    E mul(const E& a, const E& b) const {
        E r = zero();
        std::vector<u64> pu(f);
        for (int j = 0; j < f; ++j) pu[j] = mulmod(u[j], p % mod, mod);
        for (int i = 0; i < e; ++i)
            for (int j = 0; j < e; ++j) {
                auto c = kmul(&a[i * f], &b[j * f]);
                int s = i + j;
                if (s >= e) {
                    c = kmul(c.data(), pu.data());
                    s -= e;
                }
                for (int t = 0; t < f; ++t) r[s * f + t] = (r[s * f + t] + c[t]) % mod;
            }
        return r;
    }
    int vp(u64 x) const {
        if (x == 0) return M;
        int v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return v;
    }
    // Valuation in units of v(pi) = 1; values >= e*M mean "zero at this
    // precision".
    int val(const E& a) const {
        int best = e * M;
        for (int i = 0; i < e; ++i) {
            int v = M;
            for (int j = 0; j < f; ++j) v = std::min(v, vp(a[i * f + j]));
            if (v < M) best = std::min(best, e * v + i);
        }
        return best;
    }
    // Residue of a / pi^v in F_q, for v = val(a) < e*M.
    Fq::E residue(const E& a, int v) const {
        int i = v % e, k = v / e;
        u64 pk = ipow(p, k);
        Fq::E c(f);
        for (int j = 0; j < f; ++j) c[j] = (a[i * f + j] / pk) % p;
        return fq.mul(c, fq.pow(ures_inv, k));
    }
    u64 precision_cap() const { return (u64)e * M; }
};

bool precision_fits(u64 p, int M) {
    u128 v = 1;
    for (int i = 0; i < M; ++i) {
        v *= p;
        if (v >= ((u128)1 << 62)) return false;
    }
    return true;
}

std::vector<mpz_class> integral_coeffs(const Poly& F) {
    std::vector<mpz_class> out;
    for (auto& c : F.coeffs()) out.push_back(c.get_num());
    return out;
}

enum class Out { Yes, No, NeedPrecision };

struct Search {
    const Ring& R;
    std::vector<Ring::E> F;  // ascending coefficients in the ring
    std::vector<Ring::E> pis;
    std::vector<Ring::E> digits;
    std::optional<LocalWitness> witness;
    std::string chart;

    Search(const Ring& r, const std::vector<mpz_class>& coeffs, std::string chart_) : R(r), chart(std::move(chart_)) {
        for (auto& c : coeffs) F.push_back(R.from_int(c));
        for (u64 idx = 0; idx < R.fq.q; ++idx) {
            Fq::E d = R.fq.from_index(idx);
            Ring::E x = R.zero();
            for (int j = 0; j < R.f; ++j) x[j] = d[j];
            digits.push_back(x);
        }
    }

    const Ring::E& pi_pow(int s) {
        while ((int)pis.size() <= s) pis.push_back(R.pi_pow((int)pis.size()));
        return pis[s];
    }

    bool is_square(const Ring::E& a, int v) const {
        if (v % 2) return false;
        if (R.p == 2) {
            u64 w = a[0] >> v;
            return (w & 7) == 1;
        }
        return R.fq.is_square(R.residue(a, v));
    }

    Out run(const Ring::E& x0, int k) {
        int cap = (int)R.precision_cap();
        if (k >= cap) return Out::NeedPrecision;
        // Taylor coefficients of F at x0
        std::vector<Ring::E> g = F;
        int n = (int)g.size() - 1;
        for (int i = 0; i < n; ++i)
            for (int j = n - 1; j >= i; --j) g[j] = R.add(g[j], R.mul(x0, g[j + 1]));
        int v0 = R.val(g[0]);
        if (n >= 1) {
            int v1 = R.val(g[1]);
            if (2 * v1 < cap && v0 > 2 * v1) {
                witness = LocalWitness{chart, "root", {x0.begin(), x0.end()}};
                return Out::Yes;
            }
        }
        int mu = cap;
        for (int j = 1; j <= n; ++j) {
            int vj = R.val(g[j]);
            if (vj < cap) mu = std::min(mu, vj + k * j);
        }
        int margin = R.p == 2 ? 3 : 1;
        if (v0 < cap && v0 + margin <= mu) {
            if (R.p == 2 && v0 + 3 > R.M) return Out::NeedPrecision;
            if (is_square(g[0], v0)) {
                witness = LocalWitness{chart, "square", {x0.begin(), x0.end()}};
                return Out::Yes;
            }
            return Out::No;
        }
        if (v0 >= cap) return Out::NeedPrecision;
        bool need = false;
        const Ring::E& pk = pi_pow(k);
        for (auto& d : digits) {
            Out o = run(R.add(x0, R.mul(pk, d)), k + 1);
            if (o == Out::Yes) return o;
            if (o == Out::NeedPrecision) need = true;
        }
        return need ? Out::NeedPrecision : Out::No;
    }
};

void check_supported(const LocalField& k) {
    if (k.p < 2 || !is_prime(k.p)) throw LocalError("p must be prime");
    if (k.e < 1 || k.f < 1) throw LocalError("e and f must be positive");
    if (k.p == 2 && (k.e != 1 || k.f != 1))
        throw UnsupportedExtension("only Q_2 itself is supported at p = 2");
    if (k.e > 1 && k.e % k.p == 0) throw UnsupportedExtension("wildly ramified extension " + k.describe());
}

// The polynomial whose square class decides points: F for the affine chart,
// t^n F(1/t) with n even for the chart at infinity.
std::pair<std::vector<mpz_class>, std::vector<mpz_class>> charts(const HyperellipticCurve& c) {
    Poly F = c.integral_completed();
    auto a = integral_coeffs(F);
    int n = F.degree() % 2 ? F.degree() + 1 : F.degree();
    std::vector<mpz_class> b(n + 1, 0);
    for (int i = 0; i <= F.degree(); ++i) b[n - i] = a[i];
    while (!b.empty() && b.back() == 0) b.pop_back();
    return {a, b};
}

int default_precision(const HyperellipticCurve& c, u64 p) {
    Poly F = c.integral_completed();
    mpq_class d = discriminant(F) * F.lc();
    long v = valuation(d, mpz_class(std::to_string(p)));
    return (int)v + 4;
}

}  // namespace

std::string LocalField::describe() const {
    std::string s = "Q_" + std::to_string(p);
    if (f > 1) s += " unramified degree " + std::to_string(f);
    if (e > 1) s += " pi^" + std::to_string(e) + " = p*g^" + std::to_string(u_index);
    return s;
}

nlohmann::json LocalField::to_json() const {
    return {{"p", p}, {"e", e}, {"f", f}, {"u_index", u_index}, {"degree", degree()}};
}

LocalField LocalField::from_json(const nlohmann::json& j) {
    LocalField k;
    k.p = j.at("p").get<u64>();
    k.e = j.at("e").get<int>();
    k.f = j.at("f").get<int>();
    k.u_index = j.value("u_index", 0);
    return k;
}

bool LocalField::operator<(const LocalField& o) const {
    return std::tuple(degree(), e, f, u_index) < std::tuple(o.degree(), o.e, o.f, o.u_index);
}

bool LocalField::operator==(const LocalField& o) const {
    return p == o.p && e == o.e && f == o.f && u_index == o.u_index;
}

std::vector<LocalField> tame_fields(u64 p, int d) {
    std::vector<LocalField> out;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        if (e > 1 && e % p == 0) continue;
        int f = d / e;
        u64 q = ipow(p, f);
        u64 classes = std::gcd<u64>(e, q - 1);
        for (u64 i = 0; i < classes; ++i) out.push_back({p, f, e, (int)i});
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool has_wild_extension(u64 p, int d) { return d % p == 0; }

nlohmann::json LocalWitness::to_json() const {
    return {{"chart", chart}, {"kind", kind}, {"coords", coords}};
}

LocalResult has_point_local(const HyperellipticCurve& c, const LocalField& k, const LocalOptions& opt) {
    check_supported(k);
    auto [aff, inf] = charts(c);
    int M = opt.precision > 0 ? opt.precision : default_precision(c, k.p);
    if (!precision_fits(k.p, M)) return {Verdict::Inconclusive, M, std::nullopt};
    while (true) {
        Ring R(k, M);
        Search s1(R, aff, "affine");
        Out o1 = s1.run(R.zero(), 0);
        if (o1 == Out::Yes) return {Verdict::HasPoint, M, s1.witness};
        Search s2(R, inf, "infinity");
        Out o2 = s2.run(R.zero(), 1);
        if (o2 == Out::Yes) return {Verdict::HasPoint, M, s2.witness};
        if (o1 == Out::No && o2 == Out::No) return {Verdict::NoPoint, M, std::nullopt};
        if (!opt.adaptive) return {Verdict::Inconclusive, M, std::nullopt};
        int next = M + std::max(4, M / 2);
        while (next > M && !precision_fits(k.p, next)) --next;
        if (next <= M) return {Verdict::Inconclusive, M, std::nullopt};
        M = next;
    }
}

bool verify_witness(const HyperellipticCurve& c, const LocalField& k, int precision, const LocalWitness& w) {
    check_supported(k);
    // Extra digits so that dividing out the valuation keeps enough precision.
    int M = precision + 4;
    while (!precision_fits(k.p, M)) --M;
    Ring R(k, M);
    if ((int)w.coords.size() != k.e * k.f) return false;
    Ring::E x = R.zero();
    for (size_t i = 0; i < x.size(); ++i) {
        if (w.coords[i] < 0) return false;
        x[i] = (u64)w.coords[i] % R.mod;
    }
    auto [aff, inf] = charts(c);
    const auto& coeffs = w.chart == "infinity" ? inf : aff;
    if (w.chart == "infinity" && R.val(x) < 1) return false;
    // Horner for value and derivative.
    Ring::E val = R.zero(), der = R.zero();
    for (size_t i = coeffs.size(); i-- > 0;) {
        der = R.add(R.mul(der, x), val);
        val = R.add(R.mul(val, x), R.from_int(coeffs[i]));
    }
    int cap = (int)R.precision_cap();
    if (w.kind == "root") {
        int vd = R.val(der);
        return 2 * vd < cap && R.val(val) > 2 * vd;
    }
    if (w.kind != "square") return false;
    int v = R.val(val);
    if (v >= cap || v % 2) return false;
    if (k.p == 2) {
        if (v + 3 > M) return false;
        u64 W = val[0] >> v;
        int bits = M - v;
        // lift a square root bit by bit
        u64 s = 1, m = bits >= 64 ? ~0ULL : ((1ULL << bits) - 1);
        if ((W & 7) != 1) return false;
        for (int b = 3; b < bits; ++b) {
            u64 mask = (1ULL << (b + 1)) - 1;
            if (((s * s - W) & mask) != 0) s += 1ULL << (b - 1);
        }
        return ((s * s - W) & m) == 0;
    }
    // Unit part W = val / pi^v, then Newton: s <- (s + W/s) / 2.
    Ring::E W = val;
    Ring::E uinv = R.zero();
    {
        // u^{-1} in K_f by Newton from the residue inverse
        Ring::E uu = R.zero();
        for (int j = 0; j < R.f; ++j) uu[j] = R.u[j];
        for (int j = 0; j < R.f; ++j) uinv[j] = R.ures_inv[j];
        Ring::E two = R.from_int(2);
        for (int it = 0; it < 8; ++it) uinv = R.mul(uinv, R.sub(two, R.mul(uu, uinv)));
    }
    for (int s = 0; s < v; ++s) {
        // divide by pi: c_0 / p moves to the top slot times u^{-1}
        Ring::E r = R.zero();
        for (int i = 1; i < R.e; ++i)
            for (int j = 0; j < R.f; ++j) r[(i - 1) * R.f + j] = W[i * R.f + j];
        Ring::E c0 = R.zero();
        for (int j = 0; j < R.f; ++j) {
            if (W[j] % R.p) return false;
            c0[j] = W[j] / R.p;
        }
        Ring::E top = R.mul(c0, uinv);
        for (int j = 0; j < R.f; ++j) r[(R.e - 1) * R.f + j] = (r[(R.e - 1) * R.f + j] + top[j]) % R.mod;
        W = r;
    }
    // W is known modulo pi^(cap - v)
    int good = cap - v;
    Fq::E res = R.residue(W, 0);
    std::optional<Fq::E> root;
    for (u64 idx = 1; idx < R.fq.q && !root; ++idx) {
        Fq::E s = R.fq.from_index(idx);
        if (R.fq.mul(s, s) == res) root = s;
    }
    if (!root) return false;
    Ring::E s = R.zero();
    for (int j = 0; j < R.f; ++j) s[j] = (*root)[j];
    Ring::E half = R.from_int(mpz_class(std::to_string((R.mod + 1) / 2)));
    for (int it = 0; it < 8; ++it) {
        // inverse of s by Newton from its residue inverse
        Fq::E si = R.fq.inv(R.residue(s, 0));
        Ring::E sinv = R.zero();
        for (int j = 0; j < R.f; ++j) sinv[j] = si[j];
        Ring::E two = R.from_int(2);
        for (int t = 0; t < 8; ++t) sinv = R.mul(sinv, R.sub(two, R.mul(s, sinv)));
        s = R.mul(half, R.add(s, R.mul(W, sinv)));
    }
    return R.val(R.sub(R.mul(s, s), W)) >= good;
}

namespace {

nlohmann::json curve_entry(const HyperellipticCurve& c) {
    nlohmann::json j = {{"model", c.to_json()}};
    if (!c.label.empty()) j["label"] = c.label;
    return j;
}

struct Table {
    std::vector<FieldVerdicts> rows;
    int precision = 0;
};

Table run_table(const std::vector<HyperellipticCurve>& cs, const std::vector<LocalField>& fields) {
    Table t;
    for (auto& k : fields) {
        FieldVerdicts fv{k, {}, 0};
        for (auto& c : cs) {
            LocalResult r = has_point_local(c, k);
            if (r.verdict == Verdict::HasPoint && (!r.witness || !verify_witness(c, k, r.precision, *r.witness)))
                throw LocalError("point witness failed independent verification over " + k.describe());
            fv.verdicts.push_back(r.verdict);
            fv.precision = std::max(fv.precision, r.precision);
        }
        t.precision = std::max(t.precision, fv.precision);
        t.rows.push_back(fv);
    }
    return t;
}

nlohmann::json table_json(const Table& t) {
    auto a = nlohmann::json::array();
    for (auto& r : t.rows) {
        auto v = nlohmann::json::array();
        for (auto x : r.verdicts) v.push_back(to_string(x));
        a.push_back({{"field", r.field.to_json()}, {"verdicts", v}, {"precision", r.precision}});
    }
    return a;
}

// common verdict of a row: has-point if all curves do, no-point if any does
Verdict common(const std::vector<Verdict>& vs) {
    bool all_yes = true;
    for (auto v : vs) {
        if (v == Verdict::NoPoint) return Verdict::NoPoint;
        if (v != Verdict::HasPoint) all_yes = false;
    }
    return all_yes ? Verdict::HasPoint : Verdict::Inconclusive;
}

std::vector<LocalField> quadratic_fields(u64 p) {
    auto a = tame_fields(p, 1), b = tame_fields(p, 2);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

Tri quadratic_conclusion(const std::vector<std::vector<Verdict>>& rows) {
    bool inconclusive = false;
    for (auto& r : rows) {
        Verdict c = common(r);
        if (c == Verdict::HasPoint) return Tri::No;
        if (c == Verdict::Inconclusive) inconclusive = true;
    }
    return inconclusive ? Tri::Unknown : Tri::Yes;
}

std::map<int, DegreeStatus> local_statuses(u64 p, int d_max, const std::vector<std::pair<LocalField, Verdict>>& rows) {
    std::map<int, DegreeStatus> out;
    for (int d = 1; d <= d_max; ++d) {
        bool any_yes = false, all_no = true;
        for (auto& [k, v] : rows) {
            if (k.degree() != d) continue;
            if (v == Verdict::HasPoint) any_yes = true;
            if (v != Verdict::NoPoint) all_no = false;
        }
        if (any_yes) out[d] = DegreeStatus::Possible;
        else if (all_no && !has_wild_extension(p, d)) out[d] = DegreeStatus::Impossible;
        else out[d] = DegreeStatus::Unknown;
    }
    return out;
}

nlohmann::json status_json(const std::map<int, DegreeStatus>& m) {
    nlohmann::json o = nlohmann::json::object();
    for (auto& [d, s] : m) o[std::to_string(d)] = to_string(s);
    return o;
}

}  // namespace

std::map<int, DegreeStatus> globalize(const std::map<int, DegreeStatus>& local, int d_max) {
    std::vector<char> reach(d_max + 1, 0);
    reach[0] = 1;
    for (int d = 1; d <= d_max; ++d)
        for (int s = 1; s <= d && !reach[d]; ++s) {
            auto it = local.find(s);
            bool allowed = it == local.end() || it->second != DegreeStatus::Impossible;
            if (allowed && reach[d - s]) reach[d] = 1;
        }
    std::map<int, DegreeStatus> out;
    for (int d = 1; d <= d_max; ++d) out[d] = reach[d] ? DegreeStatus::Unknown : DegreeStatus::Impossible;
    return out;
}

ObstructionResult quadratic_obstruction(const HyperellipticCurve& c, const HyperellipticCurve& d, u64 p) {
    if (p % 2 == 0) throw LocalError("quadratic_obstruction needs an odd prime");
    Table t = run_table({c, d}, quadratic_fields(p));
    std::vector<std::vector<Verdict>> rows;
    for (auto& r : t.rows) rows.push_back(r.verdicts);
    ObstructionResult out;
    out.holds = quadratic_conclusion(rows);
    out.certificate = {{"kind", "quadratic_obstruction"},
                       {"p", p},
                       {"curves", {curve_entry(c), curve_entry(d)}},
                       {"precision", t.precision},
                       {"fields", table_json(t)},
                       {"conclusion", {{"no_common_quadratic_field", to_string(out.holds)}}}};
    return out;
}

DivisibilityResult common_degree_divisibility(const std::vector<HyperellipticCurve>& cs, u64 p, int d_max) {
    if (p % 2 == 0) throw LocalError("degree_divisibility needs an odd prime");
    if (d_max < 1) throw LocalError("d_max must be positive");
    std::vector<LocalField> fields;
    for (int d = 1; d <= d_max; ++d) {
        auto fs = tame_fields(p, d);
        fields.insert(fields.end(), fs.begin(), fs.end());
    }
    Table t = run_table(cs, fields);
    std::vector<std::pair<LocalField, Verdict>> rows;
    for (auto& r : t.rows) rows.push_back({r.field, common(r.verdicts)});
    DivisibilityResult out;
    out.local = local_statuses(p, d_max, rows);
    out.global = globalize(out.local, d_max);
    auto curves = nlohmann::json::array();
    for (auto& c : cs) curves.push_back(curve_entry(c));
    auto wild = nlohmann::json::array();
    for (int d = 1; d <= d_max; ++d)
        if (has_wild_extension(p, d)) wild.push_back(d);
    out.certificate = {{"kind", "degree_divisibility"},
                       {"p", p},
                       {"d_max", d_max},
                       {"curves", curves},
                       {"precision", t.precision},
                       {"fields", table_json(t)},
                       {"wild_degrees", wild},
                       {"conclusion", {{"local", status_json(out.local)}, {"global", status_json(out.global)}}}};
    return out;
}

DivisibilityResult degree_divisibility(const HyperellipticCurve& c, u64 p, int d_max) {
    return common_degree_divisibility({c}, p, d_max);
}

bool surface_qp_empty_mod3(const Poly& f, const Poly& g) {
    if (!f.is_integral() || !g.is_integral()) throw LocalError("surface check needs integral polynomials");
    if (!mod3_condition(f, -1)) throw LocalError("f is not congruent to -1 mod 3 on Z_3");
    if (!mod3_condition(g, 1)) throw LocalError("g is not congruent to +1 mod 3 on Z_3");
    // v(x) >= 0: f(x) = f(x mod 3) mod 3 is a unit non-square, g(x) a unit
    // square.  v(x) < 0: f(x) = x^deg (lc + O(3)) and x^deg is a square for
    // even degree, so the class is that of the leading coefficient.
    if (f.degree() % 2 || g.degree() % 2) throw LocalError("surface check needs even degrees");
    for (long r : {0L, 1L, 2L}) {
        if (kronecker(f.eval(r).get_num(), 3) != -1) return false;
        if (kronecker(g.eval(r).get_num(), 3) != 1) return false;
    }
    if (kronecker(f.lc().get_num(), 3) != -1 || kronecker(g.lc().get_num(), 3) != 1) return false;
    // every value of f g is a 3-adic unit times an even power of 3 with
    // non-square unit part, hence never a square and never zero
    return true;
}

CertificateCheck verify_certificate(const nlohmann::json& cert, bool recheck) {
    try {
        std::string kind = cert.at("kind").get<std::string>();
        u64 p = cert.at("p").get<u64>();
        std::vector<HyperellipticCurve> curves;
        for (auto& c : cert.at("curves")) curves.push_back(HyperellipticCurve::from_json(c.at("model")));
        std::vector<LocalField> expected;
        if (kind == "quadratic_obstruction") expected = quadratic_fields(p);
        else if (kind == "degree_divisibility") {
            int d_max = cert.at("d_max").get<int>();
            for (int d = 1; d <= d_max; ++d) {
                auto fs = tame_fields(p, d);
                expected.insert(expected.end(), fs.begin(), fs.end());
            }
        } else return {false, "unknown certificate kind '" + kind + "'"};

        std::vector<LocalField> listed;
        std::vector<std::vector<Verdict>> verdicts;
        for (auto& row : cert.at("fields")) {
            LocalField k = LocalField::from_json(row.at("field"));
            if (k.p != p) return {false, "field over the wrong prime"};
            listed.push_back(k);
            std::vector<Verdict> vs;
            for (auto& v : row.at("verdicts")) vs.push_back(parse_verdict(v.get<std::string>()));
            if (vs.size() != curves.size()) return {false, "verdict count does not match curve count"};
            verdicts.push_back(vs);
        }
        if (listed != expected) return {false, "field table does not enumerate the required fields"};

        if (recheck) {
            for (size_t i = 0; i < listed.size(); ++i)
                for (size_t j = 0; j < curves.size(); ++j) {
                    Verdict v = has_point_local(curves[j], listed[i]).verdict;
                    if (v != verdicts[i][j])
                        return {false, "solver disagrees with the recorded verdict over " + listed[i].describe()};
                }
        }

        const auto& concl = cert.at("conclusion");
        if (kind == "quadratic_obstruction") {
            Tri t = quadratic_conclusion(verdicts);
            if (concl.at("no_common_quadratic_field").get<std::string>() != to_string(t))
                return {false, "conclusion is not entailed by the verdicts"};
            return {true, "ok"};
        }
        int d_max = cert.at("d_max").get<int>();
        std::vector<std::pair<LocalField, Verdict>> rows;
        for (size_t i = 0; i < listed.size(); ++i) rows.push_back({listed[i], common(verdicts[i])});
        auto local = local_statuses(p, d_max, rows);
        auto global = globalize(local, d_max);
        for (auto& [d, s] : concl.at("local").items())
            if (parse_status(s.get<std::string>()) != local.at(std::stoi(d)))
                return {false, "local conclusion for degree " + d + " is not entailed"};
        for (auto& [d, s] : concl.at("global").items())
            if (parse_status(s.get<std::string>()) != global.at(std::stoi(d)))
                return {false, "global conclusion for degree " + d + " is not entailed"};
        if (concl.at("local").size() != local.size() || concl.at("global").size() != global.size())
            return {false, "conclusion does not cover every degree"};
        return {true, "ok"};
    } catch (const std::exception& ex) {
        return {false, std::string("malformed certificate: ") + ex.what()};
    }
}

}  // namespace densdeg
