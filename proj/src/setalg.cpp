#include "densdeg/setalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace densdeg {

using Node = DegreeSet::Node;
using Kind = DegreeSet::Kind;

namespace {

std::shared_ptr<const Node> make_finite(std::vector<uint64_t> v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Finite;
    n->members = std::move(v);
    return n;
}

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Finite: return "finite";
        case Kind::Tail: return "tail";
        case Kind::Union: return "union";
        case Kind::Intersect: return "intersect";
        case Kind::Difference: return "difference";
        case Kind::Product: return "product";
        case Kind::Scale: return "scale";
        case Kind::Saturate: return "saturate";
    }
    return "?";
}

bool is_leaf(const DegreeSet& s) { return s.kind() == Kind::Finite || s.kind() == Kind::Tail; }
bool is_empty_leaf(const DegreeSet& s) { return s.kind() == Kind::Finite && s.node().members.empty(); }

// Calls fn(a) for every divisor a of d.
template <class Fn>
bool any_divisor(uint64_t d, Fn fn) {
    for (uint64_t a = 1; a * a <= d; ++a) {
        if (d % a) continue;
        if (fn(a)) return true;
        if (a != d / a && fn(d / a)) return true;
    }
    return false;
}

}  // namespace

DegreeSet::DegreeSet() : node_(make_finite({})) {}

DegreeSet DegreeSet::finite(std::vector<uint64_t> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (!members.empty() && members.front() == 0) throw SetError("degree sets contain only positive integers");
    return DegreeSet(make_finite(std::move(members)));
}

DegreeSet DegreeSet::tail(uint64_t m, uint64_t start) {
    if (m == 0 || start == 0) throw SetError("tail needs m >= 1 and start >= 1");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Tail;
    n->m = m;
    n->start = start;
    return DegreeSet(n);
}

DegreeSet DegreeSet::raw(Kind k, const DegreeSet& l, const DegreeSet& r, uint64_t factor) {
    if (k == Kind::Finite || k == Kind::Tail) throw SetError("raw() builds inner nodes only");
    if (k == Kind::Scale && factor == 0) throw SetError("scale by 0 is not allowed");
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->left = l.node_;
    if (k == Kind::Scale) n->factor = factor;
    if (k != Kind::Scale && k != Kind::Saturate) n->right = r.node_;
    return DegreeSet(n);
}

DegreeSet DegreeSet::unite(const DegreeSet& a, const DegreeSet& b) {
    if (is_empty_leaf(a)) return b;
    if (is_empty_leaf(b)) return a;
    if (a.kind() == Kind::Finite && b.kind() == Kind::Finite) {
        std::vector<uint64_t> v;
        std::set_union(a.node().members.begin(), a.node().members.end(), b.node().members.begin(),
                       b.node().members.end(), std::back_inserter(v));
        return finite(std::move(v));
    }
    if (a.kind() == Kind::Tail && b.kind() == Kind::Tail && a.node().m == b.node().m)
        return tail(a.node().m, std::min(a.node().start, b.node().start));
    if (a.kind() == Kind::Tail && b.kind() == Kind::Tail) {
        // first member of the tail inside the other tail
        auto covers = [](const Node& big, const Node& small) {
            uint64_t first = (small.start + small.m - 1) / small.m * small.m;
            return small.m % big.m == 0 && first >= big.start;
        };
        if (covers(a.node(), b.node())) return a;
        if (covers(b.node(), a.node())) return b;
        return raw(Kind::Union, a, b);
    }
    if (is_leaf(a) && is_leaf(b)) {
        const DegreeSet& t = a.kind() == Kind::Tail ? a : b;
        const DegreeSet& f = a.kind() == Kind::Tail ? b : a;
        if (std::all_of(f.node().members.begin(), f.node().members.end(), [&](uint64_t x) { return t.contains(x); }))
            return t;
    }
    return raw(Kind::Union, a, b);
}

DegreeSet DegreeSet::intersect(const DegreeSet& a, const DegreeSet& b) {
    if (a.kind() == Kind::Finite || b.kind() == Kind::Finite) {
        const DegreeSet& f = a.kind() == Kind::Finite ? a : b;
        const DegreeSet& o = a.kind() == Kind::Finite ? b : a;
        std::vector<uint64_t> v;
        for (uint64_t x : f.node().members)
            if (o.contains(x)) v.push_back(x);
        return finite(std::move(v));
    }
    if (a.kind() == Kind::Tail && b.kind() == Kind::Tail)
        return tail(std::lcm(a.node().m, b.node().m), std::max(a.node().start, b.node().start));
    return raw(Kind::Intersect, a, b);
}

DegreeSet DegreeSet::difference(const DegreeSet& a, const DegreeSet& b) {
    if (is_empty_leaf(b)) return a;
    if (a.kind() == Kind::Finite) {
        std::vector<uint64_t> v;
        for (uint64_t x : a.node().members)
            if (!b.contains(x)) v.push_back(x);
        return finite(std::move(v));
    }
    return raw(Kind::Difference, a, b);
}

DegreeSet DegreeSet::product(const DegreeSet& a, const DegreeSet& b) {
    if (is_empty_leaf(a) || is_empty_leaf(b)) return empty();
    return raw(Kind::Product, a, b);
}

DegreeSet DegreeSet::scale(const DegreeSet& a, uint64_t c) {
    if (c == 0) throw SetError("scale by 0 is not allowed");
    if (c == 1) return a;
    if (a.kind() == Kind::Finite) {
        std::vector<uint64_t> v;
        for (uint64_t x : a.node().members) v.push_back(x * c);
        return finite(std::move(v));
    }
    // c * {n >= T : m | n} = {k >= cT : cm | k}
    if (a.kind() == Kind::Tail) return tail(a.node().m * c, a.node().start * c);
    return raw(Kind::Scale, a, DegreeSet(), c);
}

DegreeSet DegreeSet::saturate(const DegreeSet& a) {
    if (a.kind() == Kind::Saturate) return a;
    return raw(Kind::Saturate, a);
}

bool DegreeSet::contains(uint64_t d) const {
    if (d == 0) return false;
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Finite: return std::binary_search(n.members.begin(), n.members.end(), d);
        case Kind::Tail: return d >= n.start && d % n.m == 0;
        case Kind::Union: return DegreeSet(n.left).contains(d) || DegreeSet(n.right).contains(d);
        case Kind::Intersect: return DegreeSet(n.left).contains(d) && DegreeSet(n.right).contains(d);
        case Kind::Difference: return DegreeSet(n.left).contains(d) && !DegreeSet(n.right).contains(d);
        case Kind::Product: {
            DegreeSet l(n.left), r(n.right);
            return any_divisor(d, [&](uint64_t a) { return l.contains(a) && r.contains(d / a); });
        }
        case Kind::Scale: return d % n.factor == 0 && DegreeSet(n.left).contains(d / n.factor);
        case Kind::Saturate: {
            DegreeSet l(n.left);
            return any_divisor(d, [&](uint64_t a) { return l.contains(a); });
        }
    }
    return false;
}

std::vector<char> DegreeSet::bitmap(uint64_t bound) const {
    std::vector<char> out(bound + 1, 0);
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Finite:
            for (uint64_t x : n.members)
                if (x <= bound) out[x] = 1;
            break;
        case Kind::Tail: {
            uint64_t first = (n.start + n.m - 1) / n.m * n.m;
            for (uint64_t x = first; x <= bound; x += n.m) out[x] = 1;
            break;
        }
        case Kind::Union:
        case Kind::Intersect:
        case Kind::Difference: {
            auto l = DegreeSet(n.left).bitmap(bound);
            auto r = DegreeSet(n.right).bitmap(bound);
            for (uint64_t x = 1; x <= bound; ++x) {
                if (n.kind == Kind::Union) out[x] = l[x] || r[x];
                else if (n.kind == Kind::Intersect) out[x] = l[x] && r[x];
                else out[x] = l[x] && !r[x];
            }
            break;
        }
        case Kind::Product: {
            auto l = DegreeSet(n.left).bitmap(bound);
            auto r = DegreeSet(n.right).bitmap(bound);
            for (uint64_t a = 1; a <= bound; ++a) {
                if (!l[a]) continue;
                for (uint64_t b = 1; a * b <= bound; ++b)
                    if (r[b]) out[a * b] = 1;
            }
            break;
        }
        case Kind::Scale: {
            auto l = DegreeSet(n.left).bitmap(bound / n.factor);
            for (uint64_t x = 1; x * n.factor <= bound; ++x)
                if (l[x]) out[x * n.factor] = 1;
            break;
        }
        case Kind::Saturate: {
            auto l = DegreeSet(n.left).bitmap(bound);
            for (uint64_t a = 1; a <= bound; ++a) {
                if (!l[a] || out[a]) continue;
                for (uint64_t x = a; x <= bound; x += a) out[x] = 1;
            }
            break;
        }
    }
    return out;
}

std::vector<uint64_t> DegreeSet::materialize(uint64_t bound) const {
    auto bits = bitmap(bound);
    std::vector<uint64_t> v;
    for (uint64_t x = 1; x <= bound; ++x)
        if (bits[x]) v.push_back(x);
    return v;
}

nlohmann::json DegreeSet::to_json() const {
    const Node& n = *node_;
    nlohmann::json j;
    j["kind"] = kind_name(n.kind);
    switch (n.kind) {
        case Kind::Finite: j["members"] = n.members; break;
        case Kind::Tail:
            j["m"] = n.m;
            j["start"] = n.start;
            break;
        case Kind::Scale:
            j["factor"] = n.factor;
            j["arg"] = DegreeSet(n.left).to_json();
            break;
        case Kind::Saturate: j["arg"] = DegreeSet(n.left).to_json(); break;
        default:
            j["left"] = DegreeSet(n.left).to_json();
            j["right"] = DegreeSet(n.right).to_json();
    }
    return j;
}

namespace {

uint64_t read_positive(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<int64_t>() <= 0)
        throw SetError(std::string("degree set field '") + key + "' must be a positive integer");
    return j[key].get<uint64_t>();
}

}  // namespace

DegreeSet DegreeSet::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw SetError("degree set must be an object with a 'kind'");
    std::string k = j["kind"];
    if (k == "finite") {
        if (!j.contains("members") || !j["members"].is_array()) throw SetError("finite set needs 'members'");
        std::vector<uint64_t> v;
        for (const auto& x : j["members"]) {
            if (!x.is_number_integer() || x.get<int64_t>() <= 0)
                throw SetError("finite set members must be positive integers");
            uint64_t val = x.get<uint64_t>();
            if (!v.empty() && val <= v.back()) throw SetError("finite set members must be strictly increasing");
            v.push_back(val);
        }
        return DegreeSet(make_finite(std::move(v)));
    }
    if (k == "tail") return tail(read_positive(j, "m"), read_positive(j, "start"));
    if (k == "scale") {
        if (!j.contains("arg")) throw SetError("scale needs 'arg'");
        return raw(Kind::Scale, from_json(j["arg"]), DegreeSet(), read_positive(j, "factor"));
    }
    if (k == "saturate") {
        if (!j.contains("arg")) throw SetError("saturate needs 'arg'");
        return raw(Kind::Saturate, from_json(j["arg"]));
    }
    static const std::pair<const char*, Kind> binary[] = {{"union", Kind::Union},
                                                          {"intersect", Kind::Intersect},
                                                          {"difference", Kind::Difference},
                                                          {"product", Kind::Product}};
    for (auto& [name, kind] : binary) {
        if (k != name) continue;
        if (!j.contains("left") || !j.contains("right")) throw SetError(k + " needs 'left' and 'right'");
        return raw(kind, from_json(j["left"]), from_json(j["right"]));
    }
    throw SetError("unknown degree set kind '" + k + "'");
}

std::string DegreeSet::describe() const {
    const Node& n = *node_;
    std::ostringstream os;
    auto sub = [](const std::shared_ptr<const Node>& c) {
        DegreeSet s(c);
        std::string d = s.describe();
        return is_leaf(s) || s.kind() == Kind::Saturate || s.kind() == Kind::Scale ? d : "(" + d + ")";
    };
    switch (n.kind) {
        case Kind::Finite:
            if (n.members.empty()) return "∅";
            os << "{";
            for (size_t i = 0; i < n.members.size(); ++i) os << (i ? "," : "") << n.members[i];
            os << "}";
            break;
        case Kind::Tail:
            if (n.m > 1) os << n.m;
            os << "ℕ";
            if (n.m == 1 && n.start > 1) os << "≥" << n.start;
            if (n.m > 1 && n.start > n.m) os << "≥" << (n.start + n.m - 1) / n.m;
            break;
        case Kind::Union: os << sub(n.left) << " ∪ " << sub(n.right); break;
        case Kind::Intersect: os << sub(n.left) << " ∩ " << sub(n.right); break;
        case Kind::Difference: os << sub(n.left) << " \\ " << sub(n.right); break;
        case Kind::Product: os << sub(n.left) << " · " << sub(n.right); break;
        case Kind::Scale: os << n.factor << "·" << sub(n.left); break;
        case Kind::Saturate: os << "sat(" << DegreeSet(n.left).describe() << ")"; break;
    }
    return os.str();
}

bool equals_on_window(const DegreeSet& a, const DegreeSet& b, uint64_t bound) {
    return a.bitmap(bound) == b.bitmap(bound);
}

bool subset_on_window(const DegreeSet& a, const DegreeSet& b, uint64_t bound) {
    auto x = a.bitmap(bound), y = b.bitmap(bound);
    for (uint64_t i = 1; i <= bound; ++i)
        if (x[i] && !y[i]) return false;
    return true;
}

std::vector<uint64_t> window_difference(const DegreeSet& a, const DegreeSet& b, uint64_t bound) {
    auto x = a.bitmap(bound), y = b.bitmap(bound);
    std::vector<uint64_t> v;
    for (uint64_t i = 1; i <= bound; ++i)
        if (x[i] && !y[i]) v.push_back(i);
    return v;
}

std::vector<uint64_t> primes_up_to(uint64_t bound) {
    std::vector<char> composite(bound + 1, 0);
    std::vector<uint64_t> out;
    for (uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (uint64_t j = i * i; j <= bound; j += i) composite[j] = 1;
    }
    return out;
}

DegreeSet combine(const std::string& op, const std::vector<DegreeSet>& args, uint64_t factor) {
    auto need = [&](size_t k) {
        if (args.size() != k) throw SetError(op + " expects " + std::to_string(k) + " operand(s)");
    };
    if (op == "union") { need(2); return DegreeSet::unite(args[0], args[1]); }
    if (op == "intersect") { need(2); return DegreeSet::intersect(args[0], args[1]); }
    if (op == "difference") { need(2); return DegreeSet::difference(args[0], args[1]); }
    if (op == "product") { need(2); return DegreeSet::product(args[0], args[1]); }
    if (op == "scale") { need(1); return DegreeSet::scale(args[0], factor); }
    if (op == "saturate") { need(1); return DegreeSet::saturate(args[0]); }
    throw SetError("unknown set operation '" + op + "'");
}

}  // namespace densdeg
