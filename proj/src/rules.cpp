#include "densdeg/rules.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "densdeg/local.hpp"
#include "densdeg/numtheory.hpp"
#include "densdeg/rootnumber.hpp"

namespace densdeg {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Roster

const std::vector<RuleInfo>& rule_roster() {
    static const std::vector<RuleInfo> roster = {
        // single curves
        {"curve.faltings", "a curve of genus at least two has finitely many rational points", "curve", "upper",
         {"genus >= 2"}, {}},
        {"curve.genus1.dense", "genus one with infinitely many rational points: every degree is dense", "curve",
         "exact", {"genus = 1", "index = 1", "positive rank"}, {}},
        {"curve.genus1.finite", "genus one with finitely many rational points: multiples of the index from 2 on",
         "curve", "exact", {"genus = 1", "index known", "rank zero or index > 1"}, {}},
        {"curve.genus2.cubic", "genus two, index one, with a cubic point: every degree from 2", "curve", "exact",
         {"genus = 2", "index = 1", "degree-3 point"}, {}},
        {"curve.genus2.index2", "genus two of index two: exactly the even degrees", "curve", "exact",
         {"genus = 2", "index = 2"}, {}},
        {"curve.genus2.no_cubic", "genus two, index one, no cubic point: 2 and every degree from 4", "curve",
         "exact", {"genus = 2", "index = 1", "no degree-3 point"}, {}},
        {"curve.gonality", "a degree-d map to the line makes degree-d points dense", "curve", "lower",
         {"gonality known"}, {}},
        {"curve.index_tail", "multiples of the index from twice the genus on are dense", "curve", "lower",
         {"index known"}, {}},
        {"curve.index_upper", "closed point degrees are multiples of the index", "curve", "upper", {"index known"},
         {}},
        {"curve.nonhyperelliptic.pointed", "non-hyperelliptic, index one, with a rational point: 2g - 3 is dense",
         "curve", "lower", {"genus >= 3", "not hyperelliptic", "index = 1", "rational point"}, {}},
        {"curve.nonhyperelliptic.two_points",
         "non-hyperelliptic, index one, with two rational points or none: 2g - 1 is dense", "curve", "lower",
         {"genus >= 3", "not hyperelliptic", "index = 1", ">= 2 rational points or none"}, {}},
        {"curve.saturate", "curve density sets are closed under multiplication by positive integers", "curve",
         "lower", {}, {}},

        // products, general
        {"product.asymptotic.eff_index",
         "multiples of the product index from N(gC, gD, e) on, e bounding the effective index", "product", "lower",
         {"product index known", "effective index bound known"}, {}},
        {"product.asymptotic.index1",
         "index-one factor against a pointed factor, map degrees coprime to 2 dD (gC - 1): every degree from N",
         "product", "lower", {"one factor index 1 without points, with a degree-3 map", "other factor pointed"}, {}},
        {"product.asymptotic.pointed", "both factors pointed: every degree from N built from the gonalities",
         "product", "lower", {"both factors have rational points"}, {}},
        {"product.eff_index.derived", "effective index bounds from an index-one factor or from exhibited cycles",
         "product", "note", {}, {}},
        {"product.index.derived", "product index from factor indices and exhibited points", "product", "note", {},
         {}},
        {"product.isogeny_factor", "an elliptic isogeny factor of the other Jacobian leaves its density set unchanged",
         "product", "lower", {"genus-1 factor is elliptic", "isogeny factor asserted"}, {}},
        {"product.lower.composition", "products of factor density degrees are dense when a factor has genus <= 9",
         "product", "lower", {"genus <= 9"}, {}},
        {"product.upper.bombieri_lang", "rank-zero Jacobians of hyperelliptic factors: quadratic points expected thin",
         "product", "upper", {"both genus >= 2", "both Jacobians rank zero"}, {"BombieriLang"}},
        {"product.upper.cubic_certificate",
         "unique cubic maps with totally real versus non-totally-real fibers keep cubic points thin", "product",
         "upper", {"verified cubic certificate"}, {}},
        {"product.upper.factors", "density on a product projects into the density set of each factor", "product",
         "upper", {}, {}},
        {"product.upper.index", "closed point degrees on the product are multiples of its index", "product", "upper",
         {"product index known"}, {}},
        {"product.upper.quadratic_certificate",
         "opposite mod-3 square classes, no real points and rank-zero Jacobians keep quadratic points thin",
         "product", "upper", {"verified quadratic certificate"}, {}},

        // elliptic x elliptic
        {"ee.j_invariants", "j-invariants (up to isogeny) not both 0 and not both 1728: quadratic points dense",
         "product", "lower", {"both elliptic", "j-invariants known"}, {}},
        {"ee.odd_small", "3, 5 and 7 are always dense on a product of elliptic curves, hence every degree from 3",
         "product", "lower", {"both elliptic"}, {}},
        {"ee.parity", "with a real place, parity forces a common quadratic rank jump", "product", "lower",
         {"both elliptic", "k = Q"}, {"ParityConjecture"}},
        {"ee.positive_rank_factor",
         "a positive-rank elliptic factor leaves the other factor's density set; 1 is dense iff both ranks are positive",
         "product", "lower", {"both elliptic", "one rank positive"}, {}},
        {"ee.two_torsion", "full rational 2-torsion on both curves: quadratic points dense", "product", "lower",
         {"both elliptic", "full 2-torsion on both"}, {}},

        // elliptic x genus 2
        {"ec.index2", "elliptic times index-two genus two: even degrees except 2", "product", "lower",
         {"elliptic factor", "genus-2 index 2"}, {}},
        {"ec.isotrivial", "dense points on isotrivial elliptic fibrations give dense quadratic points", "product",
         "lower", {"elliptic factor", "genus-2 factor"}, {"Conjecture-5.2"}},
        {"ec.parity_cubic",
         "split semistable E, point counts off [p+1, p+9] at bad primes, degree-3 map with a non-split real fiber: "
         "3 is dense",
         "product", "lower",
         {"elliptic factor over Q", "all bad primes split multiplicative", "point-count condition",
          "degree-3 map asserted"},
         {"ParityConjecture"}},
        {"ec.pointed", "elliptic times pointed genus two: every degree from 2 except 2, 3, 5, 7", "product", "lower",
         {"elliptic factor", "genus-2 factor has a rational point"}, {}},
        {"ec.pointless", "elliptic times pointless index-one genus two: all from 2 except 2, 3, 5, 7, 11, 13",
         "product", "lower", {"elliptic factor", "genus-2 factor index 1 without rational points"}, {}},
        {"ec.quadratic_decomposition",
         "C: y^2 = g4 g2 with E the Jacobian of y^2 = g4: quadratic points dense", "product", "lower",
         {"models", "f_C = g4 * monic quadratic", "E isomorphic to Jac(y^2 = g4)"}, {}},
        {"ec.weierstrass", "a rational Weierstrass point on the genus-two factor makes 7 dense", "product", "lower",
         {"elliptic factor", "rational Weierstrass point"}, {}},

        // genus 2 x genus 2
        {"gg.index2_pair", "both index two, product index two: multiples of 4 and even degrees from 2(e+3)^2",
         "product", "lower", {"both index 2", "product index 2", "effective index bound"}, {}},
        {"gg.index4", "both index two, product index four: exactly the multiples of 4", "product", "exact",
         {"both index 2", "product index 4"}, {}},
        {"gg.mixed_index",
         "index two against index one: even degrees except 2 and 6; 6 as well when the other has cubic points",
         "product", "lower", {"one index 2", "one index 1"}, {}},
        {"gg.one_pointless_covers",
         "one pointless index-one factor against a pointed one: genus-12 covers give 19, 23 and every degree from 24",
         "product", "lower", {"index 1 pointless factor", "pointed factor"}, {}},
        {"gg.pointed_covers", "both pointed: genus-9 covers with two rational points give every degree from 12",
         "product", "lower", {"both pointed"}, {}},
        {"gg.pointless_pair_covers", "both pointless of index one: genus-36 covers give 71 and every degree from 72",
         "product", "lower", {"both index 1 without rational points"}, {}},
        {"gg.self.jacobian", "self-product: pulling back from the Jacobian gives even degrees from 4", "product",
         "lower", {"same curve"}, {}},
        {"gg.self.simple_positive_rank", "self-product with simple positive-rank Jacobian: 2 is dense", "product",
         "lower", {"same curve", "Jacobian simple", "Jacobian rank positive"}, {}},
        {"gg.table", "two index-one genus-two curves: tabulated lower bound by rational and cubic point data",
         "product", "lower", {"both index 1", "rational point and cubic point data known"}, {}},
        {"gg.weierstrass_covers",
         "both with rational Weierstrass points: nodal genus-8 covers add 11 and every degree from 12", "product",
         "lower", {"both have rational Weierstrass points"}, {}},
        {"gg.weierstrass_pair",
         "both with two rational Weierstrass points and cubic points: all from 2 except 2, 3, 5", "product", "lower",
         {"models with >= 2 rational Weierstrass points", "degree-3 points"}, {}},

        // Jacobians, bielliptic, abelian
        {"jac.genus2", "the Jacobian of a genus-two curve has every degree from 2 dense", "jacobian", "lower",
         {"genus = 2"}, {}},
        {"jac.rational_points", "rational points on an abelian variety are dense iff each simple factor has positive rank",
         "jacobian", "exact", {"rank data", "simplicity when the rank is positive"}, {}},
        {"biell.halving_fields",
         "no rank growth of E2 over the fields where E1 gains a half of a rational point: 1 is not dense",
         "bielliptic", "upper", {"asserted rank data over the halving fields"}, {}},
        {"biell.lower", "bielliptic surfaces: every degree from 3 is dense", "bielliptic", "lower", {}, {}},
        {"biell.quadratic", "the quadratic-point hypotheses for E1 x E2 pass to the bielliptic quotient",
         "bielliptic", "lower", {"j-invariant or 2-torsion condition"}, {}},
        {"biell.upper", "the Albanese map puts a bielliptic density set inside that of E1", "bielliptic", "upper", {},
         {}},
        {"abelian.isogeny_transfer",
         "an abelian surface isogenous to a principally polarized one has the same density set", "abelian", "exact",
         {"isogeny asserted"}, {}},

        // potential density
        {"pot.composition", "products of potential sets when both genera are at most 9", "potential", "lower",
         {"genus <= 9"}, {}},
        {"pot.genus2_pair", "two genus-two curves: every degree from 2 except 2, 3, 5 is potentially dense",
         "potential", "lower", {"both genus 2"}, {}},
        {"pot.genus2_pair_weak", "two genus-two curves: all from 2 except 2, 3, 5, 7, 11 potentially dense",
         "potential", "lower", {"both genus 2"}, {}},
        {"pot.low_genus_factor", "a factor of genus at most one: the product has the other factor's potential set",
         "potential", "exact", {"a factor of genus <= 1"}, {}},
        {"pot.self_simple", "self-product with geometrically simple Jacobian: 2 is potentially dense", "potential",
         "lower", {"same curve", "geometrically simple Jacobian"}, {}},
        {"pot.upper", "the potential set of a product lies in those of its factors", "potential", "upper", {}, {}},
    };
    return roster;
}

const RuleInfo& rule_info(const std::string& id) {
    static const std::map<std::string, const RuleInfo*> index = [] {
        std::map<std::string, const RuleInfo*> m;
        for (auto& r : rule_roster()) m[r.id] = &r;
        return m;
    }();
    auto it = index.find(id);
    if (it == index.end()) throw RuleError("unknown rule '" + id + "'");
    return *it->second;
}

json rule_roster_json() {
    json a = json::array();
    for (auto& r : rule_roster())
        a.push_back({{"id", r.id},
                     {"anchor", r.anchor},
                     {"target", r.target},
                     {"effect", r.effect},
                     {"guards", r.guards},
                     {"assumptions", r.assumptions}});
    return a;
}

// ---------------------------------------------------------------------------
// Results

namespace {

json set_json(const DegreeSet& s, uint64_t window) {
    return {{"describe", s.describe()}, {"expr", s.to_json()}, {"members", s.materialize(window)}};
}

}  // namespace

json TraceEntry::to_json(uint64_t window) const {
    json o = {{"rule", rule}, {"anchor", anchor}, {"status", status}, {"consumed", consumed},
              {"assumptions", assumptions}};
    if (contribution) o["contribution"] = contribution->describe();
    if (!note.empty()) o["note"] = note;
    (void)window;
    return o;
}

json BoundResult::to_json() const {
    json t = json::array();
    for (auto& e : trace) t.push_back(e.to_json(window));
    return {{"lower", set_json(lower, window)},
            {"upper", set_json(upper, window)},
            {"exact", exact},
            {"window", window},
            {"undecided", window_difference(upper, lower, window)},
            {"assumptions", std::vector<std::string>(assumptions.begin(), assumptions.end())},
            {"trace", t}};
}

// ---------------------------------------------------------------------------
// Formulas

std::pair<long, long> fiber_product_genus(long dC, long dD, long gC, long gD, long nodes) {
    if (dC < 1 || dD < 1 || gC < 0 || gD < 0 || nodes < 0) throw RuleError("fiber_product_genus: bad arguments");
    long a = (dC - 1) * (dD - 1) + dC * gD + dD * gC;
    if (nodes > a) throw RuleError("more nodes than the arithmetic genus");
    return {a, a - nodes};
}

long N_pointed(long gonC, long gonD, long gC, long gD) {
    return 2 * ((gonC - 1) * (gonD - 1) + gonC * gD + gonD * gC);
}

long N_index1(long dC, long dD, long gC, long gD) {
    if (std::gcd(dC, 2 * dD * (gC - 1)) != 1)
        throw RuleError("N_index1: d_C = " + std::to_string(dC) + " is not coprime to 2 d_D (g_C - 1)");
    return 2 * ((dC - 1) * (dD - 1) + dC * gD + dD * gC);
}

long N_general(long gC, long gD, long e) {
    long a = std::max(2 * gC, 2 * gC - 2 + e), b = std::max(2 * gD, 2 * gD - 2 + e);
    return 2 * (a - 1) * (b - 1) + 2 * a * gD + 2 * b * gC;
}

long eff_index_bound(long gC, long gD, long indD) {
    return 4 * gC * gD + (4 * gC + 2) * (indD - 1) + 2 * gC * indD + 2 * gD + indD;
}

std::optional<long> cs_membership(long g1, long g2, long n, long d, bool divisor_condition) {
    if (!divisor_condition || d < 0 || n < 1) return std::nullopt;
    if ((n - 1) * d < g1 - n * g2 && d <= g1 - 2) return 2 * g1 - 2 - d;
    return std::nullopt;
}

int rational_weierstrass_count(const HyperellipticCurve& c) {
    Poly F = c.completed();
    return (int)rational_roots(F).size() + (F.degree() % 2 ? 1 : 0);
}

// ---------------------------------------------------------------------------
// Builder

namespace {

DegreeSet N_from(uint64_t n) { return DegreeSet::naturals_from(n); }
DegreeSet fin(std::vector<uint64_t> v) { return DegreeSet::finite(std::move(v)); }
DegreeSet minus(const DegreeSet& a, std::vector<uint64_t> v) { return DegreeSet::difference(a, fin(std::move(v))); }
DegreeSet multiples(uint64_t m) { return DegreeSet::multiples(m); }

std::vector<uint64_t> primes_le(uint64_t b) { return primes_up_to(b); }

class Builder {
public:
    explicit Builder(const EngineOptions& opt) : opt_(opt) {}

    // False (with a skip entry) when a required assumption is not enabled.
    bool enabled(const std::string& id) {
        for (auto& a : rule_info(id).assumptions)
            if (!opt_.assume.count(a)) {
                skip(id, "assumption " + a + " not enabled");
                return false;
            }
        return true;
    }

    void lower(const std::string& id, const DegreeSet& s, json consumed = json::object(), std::string note = "") {
        lowers_.push_back(s);
        add(id, "lower", s, std::move(consumed), std::move(note));
    }
    void upper(const std::string& id, const DegreeSet& s, json consumed = json::object(), std::string note = "") {
        uppers_.push_back(s);
        add(id, "upper", s, std::move(consumed), std::move(note));
    }
    void exact(const std::string& id, const DegreeSet& s, json consumed = json::object(), std::string note = "") {
        lowers_.push_back(s);
        uppers_.push_back(s);
        add(id, "exact", s, std::move(consumed), std::move(note));
    }
    void note(const std::string& id, json consumed, std::string note) {
        TraceEntry e{id, rule_info(id).anchor, "note", std::move(consumed), {}, std::nullopt, std::move(note)};
        trace_.push_back(std::move(e));
    }
    void skip(const std::string& id, std::string reason) {
        TraceEntry e{id, rule_info(id).anchor, "skipped", json::object(), rule_info(id).assumptions, std::nullopt,
                     std::move(reason)};
        trace_.push_back(std::move(e));
    }
    // Strict mode raises; lenient mode records the gap.
    void missing(const std::string& id, const std::string& fact) {
        if (opt_.strict) throw NeedsFact(id, fact);
        skip(id, "missing fact " + fact);
    }

    const EngineOptions& options() const { return opt_; }

    BoundResult finish() {
        BoundResult r;
        r.window = opt_.window;
        r.lower = DegreeSet::empty();
        for (auto& s : lowers_) r.lower = DegreeSet::unite(r.lower, s);
        r.upper = DegreeSet::naturals();
        for (auto& s : uppers_) r.upper = DegreeSet::intersect(r.upper, s);
        auto bad = window_difference(r.lower, r.upper, opt_.window);
        if (!bad.empty())
            throw FactError("inconsistent facts: " + std::to_string(bad.front()) +
                            " is in the lower bound but excluded by the upper bound");
        r.exact = equals_on_window(r.lower, r.upper, opt_.window);
        std::stable_sort(trace_.begin(), trace_.end(),
                         [](const TraceEntry& a, const TraceEntry& b) { return a.rule < b.rule; });
        r.trace = std::move(trace_);
        return r;
    }

private:
    void add(const std::string& id, const char* status, const DegreeSet& s, json consumed, std::string note) {
        const RuleInfo& info = rule_info(id);
        for (auto& a : info.assumptions) {
            if (!opt_.assume.count(a)) throw RuleError("rule " + id + " fired without assumption " + a);
            used_.insert(a);
        }
        TraceEntry e{id, info.anchor, status, std::move(consumed), info.assumptions, s, std::move(note)};
        trace_.push_back(std::move(e));
    }

    EngineOptions opt_;
    std::vector<DegreeSet> lowers_, uppers_;
    std::vector<TraceEntry> trace_;
    std::set<std::string> used_;

public:
    BoundResult finish_with_assumptions() {
        auto used = used_;
        BoundResult r = finish();
        r.assumptions = std::move(used);
        return r;
    }
};

json tri_j(const TriFact& f) { return to_string(f.value); }
json int_j(const IntFact& f) { return f.value ? json(*f.value) : json(nullptr); }

// Rules for a single curve.  Returns the bound without tracing into the
// caller's builder.
void curve_rules(Builder& b, const CurveFacts& f) {
    validate_facts(f);
    const int g = f.genus;
    auto idx = f.index.value;
    if (g == 1) {
        if (!idx) {
            b.missing("curve.genus1.finite", "index");
            return;
        }
        json used = {{"genus", 1}, {"index", *idx}, {"positive_rank", tri_j(f.positive_rank)}};
        if (*idx > 1) {
            b.exact("curve.genus1.finite", multiples(*idx), used, "no rational points, so C(k) is finite");
            return;
        }
        if (f.positive_rank.yes()) b.exact("curve.genus1.dense", DegreeSet::naturals(), used);
        else if (f.positive_rank.no()) b.exact("curve.genus1.finite", N_from(2), used);
        else {
            b.missing("curve.genus1.finite", "positive_rank");
            b.lower("curve.index_tail", N_from(2), used);
        }
        return;
    }
    b.upper("curve.faltings", N_from(2), {{"genus", g}});
    if (g == 2) {
        // gonality 2 always gives 2
        b.lower("curve.gonality", multiples(2), {{"gonality", 2}});
        if (!idx) {
            b.missing("curve.genus2.index2", "index");
            return;
        }
        json used = {{"genus", 2}, {"index", *idx}, {"has_degree3_point", tri_j(f.has_degree3_point)}};
        if (*idx == 2) {
            b.exact("curve.genus2.index2", multiples(2), used);
            return;
        }
        bool cubic = f.has_degree3_point.yes() || f.has_k_point.no();
        if (cubic) b.exact("curve.genus2.cubic", N_from(2), used,
                           f.has_degree3_point.yes() ? "" : "index one without rational points forces a cubic point");
        else if (f.has_degree3_point.no())
            b.exact("curve.genus2.no_cubic", DegreeSet::unite(fin({2}), N_from(4)), used);
        else {
            b.missing("curve.genus2.cubic", "has_degree3_point");
            b.lower("curve.index_tail", N_from(4), used);
        }
        return;
    }
    // genus >= 3
    DegreeSet lower = DegreeSet::empty();
    if (f.gonality.known()) {
        lower = DegreeSet::unite(lower, fin({(uint64_t)*f.gonality.value}));
        b.lower("curve.gonality", fin({(uint64_t)*f.gonality.value}), {{"gonality", *f.gonality.value}});
    } else if (f.hyperelliptic.yes()) {
        lower = DegreeSet::unite(lower, fin({2}));
        b.lower("curve.gonality", fin({2}), {{"hyperelliptic", "yes"}});
    }
    if (!idx) {
        b.missing("curve.index_tail", "index");
    } else {
        DegreeSet tail = DegreeSet::intersect(multiples(*idx), N_from(2 * g));
        lower = DegreeSet::unite(lower, tail);
        b.lower("curve.index_tail", tail, {{"genus", g}, {"index", *idx}});
        b.upper("curve.index_upper", multiples(*idx), {{"index", *idx}});
        if (*idx == 1 && f.hyperelliptic.no()) {
            if (f.has_k_point.yes()) {
                b.lower("curve.nonhyperelliptic.pointed", fin({(uint64_t)(2 * g - 3)}),
                        {{"genus", g}, {"has_k_point", "yes"}});
                lower = DegreeSet::unite(lower, fin({(uint64_t)(2 * g - 3)}));
            }
            bool two = f.count_k_points_at_least.known() && *f.count_k_points_at_least.value >= 2;
            if (two || f.has_k_point.no()) {
                b.lower("curve.nonhyperelliptic.two_points", fin({(uint64_t)(2 * g - 1)}),
                        {{"genus", g}, {"count_k_points_at_least", int_j(f.count_k_points_at_least)},
                         {"has_k_point", tri_j(f.has_k_point)}});
                lower = DegreeSet::unite(lower, fin({(uint64_t)(2 * g - 1)}));
            }
        }
    }
    b.lower("curve.saturate", DegreeSet::saturate(lower));
}

}  // namespace

BoundResult delta_curve(const CurveFacts& facts, const EngineOptions& opt) {
    Builder b(opt);
    curve_rules(b, facts);
    return b.finish_with_assumptions();
}

// ---------------------------------------------------------------------------
// Products

namespace {

struct Factor {
    const CurveInput* in;
    CurveFacts f;
    BoundResult delta;
    std::string name;
    int genus() const { return f.genus; }
    std::optional<long> index() const { return f.index.value; }
    bool elliptic() const { return f.genus == 1 && f.has_k_point.yes(); }
    bool pointed() const { return f.has_k_point.yes(); }
    bool pointless_index1() const { return f.has_k_point.no() && index() && *index() == 1; }
    bool cubic() const { return f.has_degree3_point.yes() || (f.genus == 2 && pointless_index1()); }
    std::optional<EllipticCurve> elliptic_model() const {
        if (!in->model) return std::nullopt;
        return EllipticCurve::from_hyperelliptic(*in->model);
    }
};

Factor make_factor(const CurveInput& c, const std::string& name, const EngineOptions& opt) {
    CurveInput copy = c;
    derive_facts(copy);
    Factor out{&c, copy.facts, {}, name.empty() ? std::string("curve") : name};
    try {
        out.delta = delta_curve(out.f, opt);
    } catch (NeedsFact& e) {
        throw NeedsFact(e.rule + " [" + out.name + "]", e.fact);
    }
    return out;
}

// Lenient-mode gaps in a factor's own bound, surfaced in the product trace.
void forward_skips(Builder& b, std::initializer_list<const Factor*> factors) {
    for (const Factor* x : factors)
        for (auto& t : x->delta.trace)
            if (t.status == "skipped") b.skip(t.rule, "[" + x->name + "] " + t.note);
}

// j-invariants of E and of the curves isogenous to it.
std::vector<mpq_class> j_candidates(const Factor& e) {
    std::vector<mpq_class> out;
    if (e.f.j_invariant) out.push_back(*e.f.j_invariant);
    for (auto& j : e.f.isogenous_j_invariants) out.push_back(j);
    return out;
}

Tri quadratic_hypothesis(const Factor& a, const Factor& b, json& used) {
    if (a.f.full_two_torsion.yes() && b.f.full_two_torsion.yes()) {
        used["full_two_torsion"] = "both";
        return Tri::Yes;
    }
    auto ja = j_candidates(a), jb = j_candidates(b);
    if (ja.empty() || jb.empty()) return Tri::Unknown;
    for (auto& x : ja)
        for (auto& y : jb) {
            bool both0 = x == 0 && y == 0, both1728 = x == 1728 && y == 1728;
            if (!both0 && !both1728) {
                used["j_pair"] = {x.get_str(), y.get_str()};
                return Tri::Yes;
            }
        }
    return Tri::Unknown;
}

void ee_rules(Builder& b, const Factor& e1, const Factor& e2) {
    b.lower("ee.odd_small", N_from(3));
    for (auto [p, q] : {std::pair{&e1, &e2}, std::pair{&e2, &e1}})
        if (q->f.positive_rank.yes())
            b.lower("ee.positive_rank_factor", p->delta.lower,
                    {{"positive_rank", q->name}, {"factor", p->name}});
    json used = json::object();
    if (e1.f.full_two_torsion.yes() && e2.f.full_two_torsion.yes())
        b.lower("ee.two_torsion", fin({2}), {{"full_two_torsion", "both"}});
    else if (quadratic_hypothesis(e1, e2, used) == Tri::Yes)
        b.lower("ee.j_invariants", fin({2}), used);
    if (b.enabled("ee.parity")) b.lower("ee.parity", fin({2}), {{"field", "Q, one real place"}});
}

void ec_rules(Builder& b, const Factor& e, const Factor& c, const ProductFacts& pf) {
    auto idx = c.index();
    if (idx && *idx == 2) b.lower("ec.index2", minus(multiples(2), {2}), {{"index", 2}});
    if (c.pointless_index1())
        b.lower("ec.pointless", minus(N_from(2), {2, 3, 5, 7, 11, 13}), {{"has_k_point", "no"}, {"index", 1}});
    if (c.pointed()) {
        b.lower("ec.pointed", minus(N_from(2), {2, 3, 5, 7}), {{"has_k_point", "yes"}});
        if (c.f.has_rational_weierstrass.yes())
            b.lower("ec.weierstrass", fin({7}), {{"has_rational_weierstrass", "yes"}});
    }
    if (b.enabled("ec.isotrivial")) b.lower("ec.isotrivial", fin({2}));

    // y^2 = g4 g2 with E = Jac(y^2 = g4)
    if (pf.quadratic_decomposition_g4) {
        const Poly& g4 = *pf.quadratic_decomposition_g4;
        auto em = e.elliptic_model();
        if (!c.in->model || !em) b.skip("ec.quadratic_decomposition", "needs models of both factors");
        else if (!c.in->model->h.is_zero() || g4.degree() != 4)
            b.skip("ec.quadratic_decomposition", "needs y^2 = f(x) and a quartic g4");
        else {
            auto [g2, r] = c.in->model->f.divmod(g4);
            if (!r.is_zero() || g2.degree() != 2 || g2.lc() != 1)
                b.skip("ec.quadratic_decomposition", "g4 does not divide f_C with a monic quadratic cofactor");
            else if (!isomorphic_over_q(*em, quartic_jacobian(g4)))
                b.skip("ec.quadratic_decomposition", "E is not isomorphic to the Jacobian of y^2 = g4");
            else
                b.lower("ec.quadratic_decomposition", fin({2}),
                        {{"g4", g4.to_string()}, {"g2", g2.to_string()}, {"jacobian_isomorphic", true}});
        }
    }

    // Cubic points under parity.
    if (b.enabled("ec.parity_cubic")) {
        const std::string id = "ec.parity_cubic";
        auto em = e.elliptic_model();
        if (!em) b.skip(id, "needs a Weierstrass model of the elliptic factor");
        else if (!c.f.degree3_map_nonsplit_real_fiber.known()) b.missing(id, "degree3_map_nonsplit_real_fiber");
        else if (!c.f.degree3_map_nonsplit_real_fiber.yes()) b.skip(id, "no degree-3 map with a non-split real fiber");
        else {
            json used = {{"degree3_map_nonsplit_real_fiber", "yes"}};
            bool ok = true;
            std::string why;
            std::vector<uint64_t> bad;
            try {
                bad = bad_primes(*em);
            } catch (std::exception& ex) {
                ok = false;
                why = ex.what();
            }
            json per = json::object();
            for (uint64_t p : bad) {
                if (!ok) break;
                auto r = reduction_type(*em, p);
                if (r.type != ReductionKind::SplitMultiplicative) {
                    ok = false;
                    why = "reduction at " + std::to_string(p) + " is " + to_string(r.type);
                    break;
                }
                std::optional<long> n;
                if (c.in->model && p != 2 && good_odd_prime(*c.in->model, p))
                    n = (long)count_points_mod_p(*c.in->model, p);
                else if (c.in->model)
                    why = "genus-2 model has bad reduction at " + std::to_string(p);
                if (!n && c.f.points_mod_p.count(p)) n = c.f.points_mod_p.at(p);
                if (!n) {
                    ok = false;
                    if (why.empty()) why = "no point count at " + std::to_string(p);
                    break;
                }
                long P = (long)p;
                bool cond = *n < P + 1 || *n >= P + 10;
                per[std::to_string(p)] = {{"count", *n}, {"condition", cond}};
                if (!cond) {
                    ok = false;
                    why = "point count at " + std::to_string(p) + " lies in [p+1, p+9]";
                }
            }
            used["bad_primes"] = per;
            if (ok) b.lower(id, fin({3}), used);
            else b.skip(id, why);
        }
    }
}

long table_bound(const Factor& c, const Factor& d) {
    int pointless = (int)c.f.has_k_point.no() + (int)d.f.has_k_point.no();
    return pointless == 0 ? 11 : pointless == 1 ? 17 : 67;
}

void gg_rules(Builder& b, const Factor& c, const Factor& d, const ProductFacts& pf, std::optional<long> pind,
              std::optional<long> e_bound) {
    auto ic = c.index(), id = d.index();
    // Index-one pairs.
    if (ic && id && *ic == 1 && *id == 1) {
        auto typed = [](const Factor& x) { return x.f.has_k_point.no() || x.f.has_degree3_point.known(); };
        if (c.f.has_k_point.known() && d.f.has_k_point.known() && typed(c) && typed(d)) {
            std::vector<uint64_t> out = primes_le(table_bound(c, d));
            bool bc = c.pointed() && !c.cubic(), bd = d.pointed() && !d.cubic();
            if (bc || bd) out.push_back(9);
            if (bc && bd) out.push_back(6);
            std::sort(out.begin(), out.end());
            b.lower("gg.table", minus(N_from(2), out),
                    {{"C", {{"has_k_point", tri_j(c.f.has_k_point)}, {"cubic", c.cubic()}}},
                     {"D", {{"has_k_point", tri_j(d.f.has_k_point)}, {"cubic", d.cubic()}}}});
        } else {
            b.skip("gg.table", "rational point or cubic point data missing");
        }
        if (c.pointed() && d.pointed()) {
            b.lower("gg.pointed_covers", N_from(12), {{"both_pointed", true}},
                    "17 comes only from the 2g - 1 rule on the genus-9 covers; flagged for review");
            if (c.f.has_rational_weierstrass.yes() && d.f.has_rational_weierstrass.yes())
                b.lower("gg.weierstrass_covers", N_from(11), {{"has_rational_weierstrass", "both"}});
        }
        for (auto [x, y] : {std::pair{&c, &d}, std::pair{&d, &c}})
            if (x->pointless_index1() && y->pointed())
                b.lower("gg.one_pointless_covers", DegreeSet::unite(fin({19, 23}), N_from(24)),
                        {{"pointless", x->name}, {"pointed", y->name}});
        if (c.pointless_index1() && d.pointless_index1())
            b.lower("gg.pointless_pair_covers", DegreeSet::unite(fin({71}), N_from(72)), {{"both_pointless", true}});
    }
    // Index two.
    for (auto [x, y] : {std::pair{&c, &d}, std::pair{&d, &c}}) {
        auto ix = x->index(), iy = y->index();
        if (ix && iy && *ix == 2 && *iy == 1) {
            DegreeSet s = minus(multiples(2), {2, 6});
            if (y->cubic()) s = DegreeSet::unite(s, fin({6}));
            b.lower("gg.mixed_index", s, {{"index_2", x->name}, {"index_1", y->name}, {"cubic", y->cubic()}});
            break;
        }
    }
    if (ic && id && *ic == 2 && *id == 2 && pind) {
        if (*pind == 4) b.exact("gg.index4", multiples(4), {{"product_index", 4}});
        else if (*pind == 2) {
            if (e_bound) {
                uint64_t t = 2 * (uint64_t)(*e_bound + 3) * (uint64_t)(*e_bound + 3);
                b.lower("gg.index2_pair",
                        DegreeSet::unite(multiples(4), DegreeSet::intersect(multiples(2), N_from(t))),
                        {{"product_index", 2}, {"eff_ind_upper", *e_bound}});
            } else {
                b.skip("gg.index2_pair", "no effective index bound");
            }
        }
    }
    // Self-products.
    if (pf.same_curve.yes()) {
        b.lower("gg.self.jacobian", DegreeSet::intersect(multiples(2), N_from(4)), {{"same_curve", "yes"}});
        if (c.f.jacobian_simple.yes() && c.f.jacobian_rank_zero.no())
            b.lower("gg.self.simple_positive_rank", fin({2}),
                    {{"jacobian_simple", "yes"}, {"jacobian_rank_zero", "no"}});
    }
    // Two rational Weierstrass points on each and cubic points.
    if (c.in->model && d.in->model && c.cubic() && d.cubic()) {
        int wc = rational_weierstrass_count(*c.in->model), wd = rational_weierstrass_count(*d.in->model);
        if (wc >= 2 && wd >= 2)
            b.lower("gg.weierstrass_pair", minus(N_from(2), {2, 3, 5}),
                    {{"rational_weierstrass", {wc, wd}}, {"cubic", true}});
    }
}

// Product index and effective-index bound from the facts at hand.
void derive_product_index(Builder& b, const Factor& c, const Factor& d, const ProductFacts& pf,
                          std::optional<long>& pind, std::optional<long>& e) {
    pind = pf.index.value;
    e = pf.eff_ind_upper.value;
    json used = json::object();
    auto set_index = [&](long v, const std::string& why) {
        if (pind && *pind != v)
            throw FactError("product index " + std::to_string(*pind) + " contradicts derived value " +
                            std::to_string(v) + " (" + why + ")");
        if (!pind) b.note("product.index.derived", {{"index", v}}, why);
        pind = v;
    };
    auto lower_e = [&](long v, const std::string& why) {
        if (!e || v < *e) {
            b.note("product.eff_index.derived", {{"eff_ind_upper", v}}, why);
            e = v;
        }
    };
    if (c.pointed() && d.pointed()) {
        set_index(1, "rational point on the product");
        lower_e(1, "rational point on the product");
    }
    for (auto [x, y] : {std::pair{&c, &d}, std::pair{&d, &c}}) {
        auto ix = x->index(), iy = y->index();
        if (ix && *ix == 1 && iy) {
            set_index(*iy, "an index-one factor: the product index equals the other factor's");
            lower_e(eff_index_bound(x->genus(), y->genus(), *iy), "index-one factor bound");
        }
    }
    if (pf.has_degree2_point.yes()) {
        if (pind && 2 % *pind) throw FactError("a degree-2 point forces the product index to divide 2");
        auto ic = c.index(), id = d.index();
        if ((ic && *ic == 2) || (id && *id == 2)) set_index(2, "degree-2 point and a factor of index 2");
        lower_e(2, "a degree-2 point on the product");
    }
    if (c.genus() == 2 && d.genus() == 2 && c.cubic() && d.cubic() && !(c.pointed() && d.pointed())) {
        // products of quadratic points (degree 4) and cubic points (degree 9)
        lower_e(13, "zero-cycles of degrees 4 and 9 from quadratic and cubic points");
    }
    if (pind && e && *e < *pind) throw FactError("effective index below the product index");
}

}  // namespace

BoundResult delta_product(const CurveInput& C, const CurveInput& D, const ProductFacts& pf, const EngineOptions& opt) {
    Factor c = make_factor(C, C.label.empty() ? "C" : C.label, opt);
    Factor d = make_factor(D, D.label.empty() ? "D" : D.label, opt);
    if (c.genus() < 1 || c.genus() > 2 || d.genus() < 1 || d.genus() > 2)
        throw RuleError("delta_product handles factors of genus 1 and 2");
    // elliptic factor first
    if (c.genus() == 2 && d.genus() == 1) std::swap(c, d);

    Builder b(opt);
    forward_skips(b, {&c, &d});
    b.upper("product.upper.factors", DegreeSet::intersect(c.delta.upper, d.delta.upper),
            {{"upper_" + c.name, c.delta.upper.describe()}, {"upper_" + d.name, d.delta.upper.describe()}});
    b.lower("product.lower.composition", DegreeSet::product(c.delta.lower, d.delta.lower),
            {{"lower_" + c.name, c.delta.lower.describe()}, {"lower_" + d.name, d.delta.lower.describe()}});

    std::optional<long> pind, e;
    derive_product_index(b, c, d, pf, pind, e);
    if (pind) b.upper("product.upper.index", multiples(*pind), {{"index", *pind}});

    // Asymptotic rules.
    if (c.pointed() && d.pointed()) {
        long gc = c.f.gonality.value.value_or(2), gd = d.f.gonality.value.value_or(2);
        long n = N_pointed(gc, gd, c.genus(), d.genus());
        b.lower("product.asymptotic.pointed", N_from(n), {{"gonality", {gc, gd}}, {"N", n}});
    }
    for (auto [x, y] : {std::pair{&c, &d}, std::pair{&d, &c}})
        if (x->genus() == 2 && x->pointless_index1() && y->pointed()) {
            long n = N_index1(3, 2, x->genus(), y->genus());
            b.lower("product.asymptotic.index1", N_from(n), {{"d_C", 3}, {"d_D", 2}, {"N", n}});
        }
    if (pind && e) {
        long n = N_general(c.genus(), d.genus(), *e);
        b.lower("product.asymptotic.eff_index", DegreeSet::intersect(multiples(*pind), N_from(n)),
                {{"index", *pind}, {"eff_ind_upper", *e}, {"N", n}});
    }

    // Isogeny factor.
    if (pf.isogeny_factor.yes()) {
        if (c.elliptic()) b.lower("product.isogeny_factor", d.delta.lower, {{"isogeny_factor", "yes"}});
        else b.skip("product.isogeny_factor", "needs an elliptic factor");
    }

    if (c.genus() == 1 && d.genus() == 1 && c.elliptic() && d.elliptic()) ee_rules(b, c, d);
    if (c.genus() == 1 && d.genus() == 2 && c.elliptic()) ec_rules(b, c, d, pf);
    if (c.genus() == 2 && d.genus() == 2) gg_rules(b, c, d, pf, pind, e);

    // Upper-bound certificates.
    auto run_cert = [&](const std::string& id, const json& cert, uint64_t removed, bool quadratic) {
        if (cert.is_null()) return;
        if (!c.in->model || !d.in->model) {
            b.skip(id, "certificate needs models of both factors");
            return;
        }
        json asserted = cert;
        if (quadratic && !asserted.contains("rank_zero")) {
            json rz = json::object();
            if (c.f.jacobian_rank_zero.known()) rz["C"] = c.f.jacobian_rank_zero.yes();
            if (d.f.jacobian_rank_zero.known()) rz["D"] = d.f.jacobian_rank_zero.yes();
            if (rz.size() == 2) asserted["rank_zero"] = rz;
        }
        CertificateReport rep;
        try {
            rep = quadratic ? nondensity_quadratic_certificate(*c.in->model, *d.in->model, asserted)
                            : nondensity_cubic_certificate(*c.in->model, *d.in->model, asserted);
        } catch (NeedsFact& nf) {
            b.missing(id, nf.fact);
            return;
        }
        if (rep.verified) b.upper(id, DegreeSet::difference(DegreeSet::naturals(), fin({removed})), rep.checks);
        else b.skip(id, "certificate failed: " + rep.reason);
    };
    run_cert("product.upper.quadratic_certificate", pf.quadratic_certificate, 2, true);
    run_cert("product.upper.cubic_certificate", pf.cubic_certificate, 3, false);

    if (c.genus() >= 2 && d.genus() >= 2 && c.f.jacobian_rank_zero.yes() && d.f.jacobian_rank_zero.yes() &&
        b.enabled("product.upper.bombieri_lang"))
        b.upper("product.upper.bombieri_lang", DegreeSet::difference(DegreeSet::naturals(), fin({2})),
                {{"jacobian_rank_zero", "both"}});

    return b.finish_with_assumptions();
}

// ---------------------------------------------------------------------------
// Jacobians, bielliptic and abelian surfaces

namespace {

void jacobian_rules(Builder& b, const CurveFacts& f) {
    if (f.genus != 2) throw RuleError("delta_jacobian_genus2 needs a genus-2 curve");
    b.lower("jac.genus2", N_from(2));
    const std::string id = "jac.rational_points";
    if (f.jacobian_rank_zero.yes()) {
        b.upper(id, N_from(2), {{"jacobian_rank_zero", "yes"}}, "finitely many rational points");
        return;
    }
    if (!f.jacobian_rank_zero.known()) {
        b.missing(id, "jacobian_rank_zero");
        return;
    }
    if (f.jacobian_simple.yes()) b.exact(id, DegreeSet::naturals(), {{"jacobian_rank_zero", "no"}, {"jacobian_simple", "yes"}});
    else if (f.jacobian_simple.no())
        b.note(id, {{"jacobian_simple", "no"}}, "1 depends on the ranks of the simple factors");
    else b.missing(id, "jacobian_simple");
}

}  // namespace

BoundResult delta_jacobian_genus2(const CurveFacts& facts, const EngineOptions& opt) {
    Builder b(opt);
    jacobian_rules(b, facts);
    return b.finish_with_assumptions();
}

BiellipticFacts BiellipticFacts::from_json(const json& j) {
    BiellipticFacts f;
    if (j.contains("quadratic_hypothesis")) f.quadratic_hypothesis = parse_tri(j.at("quadratic_hypothesis"));
    if (j.contains("rank_growth_on_halving_fields"))
        f.rank_growth_on_halving_fields = parse_tri(j.at("rank_growth_on_halving_fields"));
    return f;
}

BoundResult delta_bielliptic(const CurveInput& E1, const CurveInput& E2, const BiellipticFacts& bf,
                             const EngineOptions& opt) {
    Factor e1 = make_factor(E1, E1.label.empty() ? "E1" : E1.label, opt);
    Factor e2 = make_factor(E2, E2.label.empty() ? "E2" : E2.label, opt);
    if (!e1.elliptic() || !e2.elliptic()) throw RuleError("bielliptic surfaces need two elliptic curves");
    Builder b(opt);
    forward_skips(b, {&e1, &e2});
    b.lower("biell.lower", N_from(3));
    b.upper("biell.upper", e1.delta.upper, {{"upper_" + e1.name, e1.delta.upper.describe()}});
    json used = json::object();
    Tri q = bf.quadratic_hypothesis;
    if (q == Tri::Unknown) q = quadratic_hypothesis(e1, e2, used);
    else used["quadratic_hypothesis"] = to_string(q);
    if (q == Tri::Yes) b.lower("biell.quadratic", fin({2}), used);
    if (bf.rank_growth_on_halving_fields == Tri::No)
        b.upper("biell.halving_fields", DegreeSet::difference(DegreeSet::naturals(), fin({1})),
                {{"rank_growth_on_halving_fields", "no"}});
    return b.finish_with_assumptions();
}

AbelianInput AbelianInput::from_json(const json& j) {
    AbelianInput a;
    a.isogenous = j.contains("isogenous") ? parse_tri(j.at("isogenous")) : Tri::Unknown;
    a.kind = j.at("kind").get<std::string>();
    if (a.kind != "jacobian" && a.kind != "product") throw FactError("abelian kind must be jacobian or product");
    for (auto& c : j.at("curves")) a.curves.push_back(CurveInput::from_json(c));
    if (j.contains("product")) a.product = ProductFacts::from_json(j.at("product"));
    size_t want = a.kind == "jacobian" ? 1 : 2;
    if (a.curves.size() != want) throw FactError("abelian input: wrong number of curves");
    return a;
}

BoundResult delta_abelian_transfer(const AbelianInput& a, const EngineOptions& opt) {
    const std::string id = "abelian.isogeny_transfer";
    if (a.isogenous != Tri::Yes) throw NeedsFact(id, "isogenous");
    BoundResult inner;
    if (a.kind == "jacobian") {
        CurveInput c = a.curves.at(0);
        derive_facts(c);
        inner = delta_jacobian_genus2(c.facts, opt);
    } else {
        inner = delta_product(a.curves.at(0), a.curves.at(1), a.product, opt);
        for (auto& c : a.curves) {
            CurveInput x = c;
            derive_facts(x);
            if (x.facts.genus != 1 || !x.facts.has_k_point.yes())
                throw RuleError("a principally polarized product needs two elliptic curves");
        }
    }
    TraceEntry t{id, rule_info(id).anchor, "exact", {{"isogenous", "yes"}, {"kind", a.kind}}, {}, inner.lower,
                 "bounds transferred from the principally polarized surface"};
    inner.trace.push_back(t);
    std::stable_sort(inner.trace.begin(), inner.trace.end(),
                     [](const TraceEntry& x, const TraceEntry& y) { return x.rule < y.rule; });
    return inner;
}

BoundResult potential_product(const CurveInput& C, const CurveInput& D, const ProductFacts& pf,
                              const EngineOptions& opt) {
    CurveInput c = C, d = D;
    derive_facts(c);
    derive_facts(d);
    int gc = c.facts.genus, gd = d.facts.genus;
    auto pot = [](int g) { return g <= 1 ? DegreeSet::naturals() : N_from(2); };
    Builder b(opt);
    b.upper("pot.upper", DegreeSet::intersect(pot(gc), pot(gd)), {{"genus", {gc, gd}}});
    if (gc <= 1 || gd <= 1) {
        b.exact("pot.low_genus_factor", gc <= 1 ? pot(gd) : pot(gc), {{"genus", {gc, gd}}});
        return b.finish_with_assumptions();
    }
    if (gc <= 9 && gd <= 9) b.lower("pot.composition", DegreeSet::product(pot(gc), pot(gd)));
    if (gc == 2 && gd == 2) {
        b.lower("pot.genus2_pair_weak", minus(N_from(2), {2, 3, 5, 7, 11}));
        b.lower("pot.genus2_pair", minus(N_from(2), {2, 3, 5}));
        if (pf.same_curve.yes() && c.facts.jacobian_geometrically_simple.yes())
            b.lower("pot.self_simple", fin({2}), {{"same_curve", "yes"}, {"jacobian_geometrically_simple", "yes"}});
    }
    return b.finish_with_assumptions();
}

// ---------------------------------------------------------------------------
// Certificates

json CertificateReport::to_json() const {
    json o = {{"verified", verified}, {"checks", checks}};
    if (!reason.empty()) o["reason"] = reason;
    return o;
}

namespace {

QuadElem read_quad(const json& j) {
    if (!j.is_array() || j.size() != 2) throw FactError("quadratic coordinate must be [a, b]");
    Poly p = Poly::from_json(j);
    return QuadElem{p.coeff(0), p.coeff(1)};
}

bool finish_report(CertificateReport& r) {
    r.verified = true;
    for (auto& [k, v] : r.checks.items())
        if (v.is_boolean() && !v.get<bool>()) {
            r.verified = false;
            if (r.reason.empty()) r.reason = "check '" + k + "' failed";
        }
    return r.verified;
}

}  // namespace

CertificateReport nondensity_quadratic_certificate(const HyperellipticCurve& C, const HyperellipticCurve& D,
                                                   const json& asserted) {
    const std::string id = "product.upper.quadratic_certificate";
    CertificateReport r;
    if (!asserted.contains("rank_zero") || !asserted.at("rank_zero").contains("C") ||
        !asserted.at("rank_zero").contains("D"))
        throw NeedsFact(id, "rank_zero");
    if (!asserted.contains("witness") || !asserted.contains("field")) throw NeedsFact(id, "witness");

    r.checks["genus_2"] = C.genus() == 2 && D.genus() == 2;
    Poly FC = C.completed(), FD = D.completed();
    bool integral = FC.is_integral() && FD.is_integral();
    r.checks["integral_models"] = integral;
    bool oriented = integral && mod3_condition(FC, -1) && mod3_condition(FD, 1);
    bool swapped = integral && mod3_condition(FC, 1) && mod3_condition(FD, -1);
    r.checks["mod3_conditions"] = oriented || swapped;
    r.checks["real_points_empty"] = real_points_empty(C) && real_points_empty(D);
    bool surface = false;
    if (oriented || swapped) {
        try {
            surface = oriented ? surface_qp_empty_mod3(FC, FD) : surface_qp_empty_mod3(FD, FC);
        } catch (LocalError&) {
            surface = false;
        }
    }
    r.checks["surface_Q3_empty"] = surface;

    mpz_class d;
    try {
        d = mpz_class(asserted.at("field").is_string() ? asserted.at("field").get<std::string>()
                                                       : std::to_string(asserted.at("field").get<long>()));
    } catch (std::exception&) {
        throw FactError("field must be an integer");
    }
    bool nonsquare = d != 0 && d != 1 && is_squarefree(d);
    r.checks["field_quadratic"] = nonsquare;
    bool wit = nonsquare;
    const json& w = asserted.at("witness");
    for (auto [name, curve] : {std::pair{"C", &C}, std::pair{"D", &D}}) {
        if (!wit) break;
        if (!w.contains(name)) throw NeedsFact(id, std::string("witness.") + name);
        QuadElem x = read_quad(w.at(name).at("x")), y = read_quad(w.at(name).at("y"));
        bool irrational = x.b != 0 || y.b != 0;
        wit = wit && irrational && on_curve_quadratic(*curve, x, y, d);
    }
    r.checks["common_quadratic_point"] = wit;
    const json& rz = asserted.at("rank_zero");
    r.checks["rank_zero_asserted"] = rz.at("C").get<bool>() && rz.at("D").get<bool>();
    finish_report(r);
    return r;
}

PolyT cubic_fiber_C(const HyperellipticCurve& C, const Poly& A) {
    // y = t A and y^2 = -A B give t^2 A + B = 0.
    auto [q, rem] = (-C.f).divmod(A);
    if (!rem.is_zero()) throw FactError("cubic factor does not divide f_C");
    const Poly& B = q;
    PolyT out;
    int n = std::max(A.degree(), B.degree());
    for (int i = 0; i <= n; ++i) out.c.push_back(Poly(std::vector<mpq_class>{B.coeff(i), mpq_class(0), A.coeff(i)}));
    return out;
}

PolyT cubic_fiber_D(const HyperellipticCurve& D, const Poly& P) {
    // y = P + t and y^2 = P^2 + c give 2 t P + t^2 - c = 0.
    Poly c = D.f - P * P;
    if (c.degree() != 0) throw FactError("f_D - P^2 is not a nonzero constant");
    PolyT out;
    for (int i = 0; i <= P.degree(); ++i) {
        mpq_class k = i == 0 ? -c.coeff(0) : mpq_class(0);
        out.c.push_back(Poly(std::vector<mpq_class>{k, mpq_class(2 * P.coeff(i)), mpq_class(i == 0 ? 1 : 0)}));
    }
    return out;
}

CertificateReport nondensity_cubic_certificate(const HyperellipticCurve& C, const HyperellipticCurve& D,
                                               const json& asserted) {
    const std::string id = "product.upper.cubic_certificate";
    if (!asserted.contains("unique_degree3_maps")) throw NeedsFact(id, "unique_degree3_maps");
    if (!asserted.contains("cubic_factor_C")) throw NeedsFact(id, "cubic_factor_C");
    if (!asserted.contains("cubic_section_D")) throw NeedsFact(id, "cubic_section_D");
    CertificateReport r;
    r.checks["unique_degree3_maps_asserted"] = parse_tri(asserted.at("unique_degree3_maps")) == Tri::Yes;
    r.checks["genus_2"] = C.genus() == 2 && D.genus() == 2;
    r.checks["plain_models"] = C.h.is_zero() && D.h.is_zero();
    Poly A = Poly::from_json(asserted.at("cubic_factor_C"));
    Poly P = Poly::from_json(asserted.at("cubic_section_D"));
    bool shapes = A.degree() == 3 && P.degree() == 3;
    r.checks["cubic_shapes"] = shapes;
    if (!finish_report(r)) return r;

    // C: every rational fiber is totally real.
    PolyT fc;
    try {
        fc = cubic_fiber_C(C, A);
    } catch (FactError&) {
        r.checks["factorization_C"] = false;
        finish_report(r);
        return r;
    }
    r.checks["factorization_C"] = fc.degree() == 3;
    Poly lc = fc.c.back();
    Poly disc_c = discriminant_t(fc);
    bool lead_nonvanishing = sturm_real_roots(lc) == 0;
    bool pos = !disc_c.is_zero() && sturm_real_roots(disc_c) == 0 && sign_at_infinity(disc_c, true) > 0 &&
               disc_c.eval(0) > 0;
    r.checks["C_fiber_degree_constant"] = lead_nonvanishing;
    r.checks["C_fibers_totally_real"] = pos;
    r.checks["C_discriminant"] = disc_c.to_string("t");

    // D: fibers away from t = 0 have a single real point.
    PolyT fd;
    try {
        fd = cubic_fiber_D(D, P);
    } catch (FactError&) {
        r.checks["section_D"] = false;
        finish_report(r);
        return r;
    }
    r.checks["section_D"] = true;
    Poly disc_d = discriminant_t(fd);
    bool nonpos = !disc_d.is_zero() && sign_at_infinity(disc_d, true) < 0 && sign_at_infinity(disc_d, false) < 0 &&
                  sturm_real_roots(disc_d) == 1 && disc_d.eval(0) == 0;
    r.checks["D_fibers_not_totally_real"] = nonpos;
    r.checks["D_discriminant"] = disc_d.to_string("t");
    r.checks["D_has_rational_point"] = !search_rational_points(D, 10).empty();
    finish_report(r);
    return r;
}

}  // namespace densdeg
