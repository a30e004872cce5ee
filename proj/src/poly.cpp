#include "densdeg/poly.hpp"

#include <sstream>

namespace densdeg {

Poly::Poly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
    for (auto& x : c_) x.canonicalize();
    trim();
}

Poly::Poly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

Poly Poly::constant(const mpq_class& c) { return Poly(std::vector<mpq_class>{c}); }
Poly Poly::x() { return Poly{0, 1}; }

Poly Poly::monomial(const mpq_class& c, int deg) {
    std::vector<mpq_class> v(deg + 1);
    v[deg] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpq_class Poly::coeff(int i) const { return i >= 0 && i < (int)c_.size() ? c_[i] : mpq_class(0); }

mpq_class Poly::lc() const { return c_.empty() ? mpq_class(0) : c_.back(); }

Poly Poly::operator+(const Poly& o) const {
    std::vector<mpq_class> v(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
    return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<mpq_class> v(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(v));
}

Poly Poly::operator*(const mpq_class& s) const {
    Poly r = *this;
    for (auto& x : r.c_) x *= s;
    r.trim();
    return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw PolyError("polynomial division by zero");
    Poly r = *this;
    if (r.degree() < d.degree()) return {Poly(), r};
    std::vector<mpq_class> q(r.degree() - d.degree() + 1);
    mpq_class inv = 1 / d.lc();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int shift = r.degree() - d.degree();
        mpq_class f = r.lc() * inv;
        q[shift] = f;
        for (int i = 0; i <= d.degree(); ++i) r.c_[i + shift] -= f * d.c_[i];
        r.trim();
    }
    return {Poly(std::move(q)), r};
}

Poly Poly::exact_div(const Poly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw PolyError("polynomial division is not exact");
    return q;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<mpq_class> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * (long)i;
    return Poly(std::move(v));
}

mpq_class Poly::eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Poly Poly::compose(const Poly& inner) const {
    Poly acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * inner + constant(c_[i]);
    return acc;
}

Poly Poly::pow(unsigned k) const {
    Poly r = constant(1), b = *this;
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

Poly Poly::monic() const { return is_zero() ? *this : *this * (1 / lc()); }

bool Poly::is_integral() const {
    for (auto& x : c_)
        if (x.get_den() != 1) return false;
    return true;
}

mpz_class Poly::denominator_lcm() const {
    mpz_class l = 1;
    for (auto& x : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpq_class& a = c_[i];
        if (a == 0) continue;
        mpq_class m = abs(a);
        if (first) os << (a < 0 ? "-" : "");
        else os << (a < 0 ? " - " : " + ");
        first = false;
        if (i == 0 || m != 1) os << m.get_str();
        if (i > 0) os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

nlohmann::json Poly::to_json() const {
    auto j = nlohmann::json::array();
    for (auto& x : c_) j.push_back(x.get_str());
    return j;
}

Poly Poly::from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw PolyError("polynomial must be an array of coefficients");
    std::vector<mpq_class> v;
    for (const auto& x : j) {
        mpq_class q;
        if (x.is_number_integer()) q = mpq_class(mpz_class(x.dump()));
        else if (x.is_string()) {
            if (q.set_str(x.get<std::string>(), 10) != 0 || x.get<std::string>().empty())
                throw PolyError("bad coefficient '" + x.get<std::string>() + "'");
        } else throw PolyError("coefficients must be decimal strings or integers");
        if (q.get_den() == 0) throw PolyError("zero denominator in coefficient");
        q.canonicalize();
        v.push_back(q);
    }
    return Poly(std::move(v));
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = y;
        y = r;
    }
    return x.monic();
}

Poly squarefree_part(const Poly& p) {
    if (p.degree() <= 0) return p;
    return p.exact_div(gcd(p, p.derivative()));
}

namespace {

// Fraction-free Gaussian elimination.  div(a, b) must be exact division.
template <class T, class Div, class IsZero>
T bareiss_det(std::vector<std::vector<T>> m, T one, Div div, IsZero is_zero) {
    size_t n = m.size();
    if (n == 0) return one;
    T prev = one;
    bool negate = false;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (is_zero(m[k][k])) {
            size_t s = k + 1;
            while (s < n && is_zero(m[s][k])) ++s;
            if (s == n) return T();
            std::swap(m[k], m[s]);
            negate = !negate;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) m[i][j] = div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
        }
        prev = m[k][k];
    }
    T d = m[n - 1][n - 1];
    return negate ? T() - d : d;
}

template <class T>
std::vector<std::vector<T>> sylvester(const std::vector<T>& p, const std::vector<T>& q) {
    // p, q ascending with nonzero leading entries
    size_t m = p.size() - 1, n = q.size() - 1, sz = m + n;
    std::vector<std::vector<T>> s(sz, std::vector<T>(sz));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j <= m; ++j) s[i][i + j] = p[m - j];
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j <= n; ++j) s[n + i][i + j] = q[n - j];
    return s;
}

}  // namespace

mpq_class resultant(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return 0;
    auto s = sylvester(p.coeffs(), q.coeffs());
    return bareiss_det<mpq_class>(
        s, mpq_class(1), [](const mpq_class& a, const mpq_class& b) { return mpq_class(a / b); },
        [](const mpq_class& a) { return a == 0; });
}

mpq_class discriminant(const Poly& p) {
    if (p.is_zero()) throw PolyError("discriminant of the zero polynomial");
    int n = p.degree();
    if (n == 0) return 1;
    mpq_class r = resultant(p, p.derivative()) / p.lc();
    return (n * (n - 1) / 2) % 2 ? mpq_class(-r) : r;
}

int sign_at_infinity(const Poly& p, bool positive) {
    if (p.is_zero()) return 0;
    int s = sgn(p.lc());
    if (!positive && p.degree() % 2) s = -s;
    return s;
}

int sturm_real_roots(const Poly& p, const std::optional<mpq_class>& lo, const std::optional<mpq_class>& hi) {
    if (p.is_zero()) throw PolyError("sturm sequence of the zero polynomial");
    Poly s = squarefree_part(p);
    if (s.degree() <= 0) return 0;
    std::vector<Poly> seq{s, s.derivative()};
    while (seq.back().degree() > 0) {
        Poly r = -(seq[seq.size() - 2] % seq.back());
        if (r.is_zero()) break;
        seq.push_back(r);
    }
    auto variations = [&](const std::optional<mpq_class>& at, bool positive_inf) {
        int v = 0, last = 0;
        for (auto& f : seq) {
            int sg = at ? sgn(f.eval(*at)) : sign_at_infinity(f, positive_inf);
            if (sg == 0) continue;
            if (last != 0 && sg != last) ++v;
            last = sg;
        }
        return v;
    };
    if (lo && hi && *lo >= *hi) return 0;
    return variations(lo, false) - variations(hi, true);
}

int PolyT::degree() const {
    for (int i = (int)c.size() - 1; i >= 0; --i)
        if (!c[i].is_zero()) return i;
    return -1;
}

PolyT PolyT::derivative() const {
    PolyT d;
    for (size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * mpq_class((long)i));
    return d;
}

Poly PolyT::at(const mpq_class& t) const {
    std::vector<mpq_class> v;
    for (auto& ci : c) v.push_back(ci.eval(t));
    return Poly(std::move(v));
}

mpq_class discriminant_at(const PolyT& p, const mpq_class& t) { return discriminant(p.at(t)); }

Poly discriminant_t(const PolyT& p) {
    int n = p.degree();
    if (n < 0) throw PolyError("discriminant of the zero polynomial");
    if (n == 0) return Poly::constant(1);
    std::vector<Poly> a(p.c.begin(), p.c.begin() + n + 1);
    PolyT dp = p.derivative();
    std::vector<Poly> b(dp.c.begin(), dp.c.begin() + n);
    auto s = sylvester(a, b);
    Poly res = bareiss_det<Poly>(
        s, Poly::constant(1), [](const Poly& x, const Poly& y) { return x.exact_div(y); },
        [](const Poly& x) { return x.is_zero(); });
    Poly d = res.exact_div(a[n]);
    return (n * (n - 1) / 2) % 2 ? -d : d;
}

}  // namespace densdeg
