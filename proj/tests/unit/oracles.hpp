#pragma once

// Brute-force oracles shared by the unit tests and the acceptance run.

#include <bitset>
#include <set>
#include <string>
#include <vector>

#include "densdeg/setalg.hpp"
#include "support.hpp"

namespace oracles {

using json = nlohmann::json;
using namespace densdeg;
using testsupport::uniform;

inline constexpr uint64_t W = 200;
using Bits = std::bitset<W + 1>;

// Brute-force semantics straight from the JSON tree.
inline Bits oracle(const json& j) {
    Bits out;
    std::string k = j["kind"];
    if (k == "finite") {
        for (auto& x : j["members"])
            if (x.get<uint64_t>() <= W) out.set(x.get<uint64_t>());
    } else if (k == "tail") {
        uint64_t m = j["m"], s = j["start"];
        for (uint64_t d = 1; d <= W; ++d)
            if (d >= s && d % m == 0) out.set(d);
    } else if (k == "union") {
        out = oracle(j["left"]) | oracle(j["right"]);
    } else if (k == "intersect") {
        out = oracle(j["left"]) & oracle(j["right"]);
    } else if (k == "difference") {
        out = oracle(j["left"]) & ~oracle(j["right"]);
    } else if (k == "product") {
        Bits a = oracle(j["left"]), b = oracle(j["right"]);
        for (uint64_t x = 1; x <= W; ++x)
            for (uint64_t y = 1; x * y <= W; ++y)
                if (a[x] && b[y]) out.set(x * y);
    } else if (k == "scale") {
        Bits a = oracle(j["arg"]);
        uint64_t c = j["factor"];
        for (uint64_t x = 1; x * c <= W; ++x)
            if (a[x]) out.set(x * c);
    } else if (k == "saturate") {
        Bits a = oracle(j["arg"]);
        for (uint64_t x = 1; x <= W; ++x)
            if (a[x])
                for (uint64_t y = x; y <= W; y += x) out.set(y);
    }
    out.reset(0);
    return out;
}

inline json random_leaf() {
    if (uniform(0, 1)) {
        std::set<uint64_t> s;
        int n = (int)uniform(0, 6);
        for (int i = 0; i < n; ++i) s.insert(uniform(1, 60));
        return {{"kind", "finite"}, {"members", std::vector<uint64_t>(s.begin(), s.end())}};
    }
    return {{"kind", "tail"}, {"m", uniform(1, 6)}, {"start", uniform(1, 40)}};
}

inline json random_expr(int depth) {
    if (depth == 0 || uniform(0, 3) == 0) return random_leaf();
    static const char* ops[] = {"union", "intersect", "difference", "product", "scale", "saturate"};
    std::string op = ops[uniform(0, 5)];
    if (op == "scale") return {{"kind", op}, {"factor", uniform(1, 4)}, {"arg", random_expr(depth - 1)}};
    if (op == "saturate") return {{"kind", op}, {"arg", random_expr(depth - 1)}};
    return {{"kind", op}, {"left", random_expr(depth - 1)}, {"right", random_expr(depth - 1)}};
}

// Same tree through the simplifying combinators.
inline DegreeSet build(const json& j) {
    std::string k = j["kind"];
    if (k == "finite") return DegreeSet::finite(j["members"].get<std::vector<uint64_t>>());
    if (k == "tail") return DegreeSet::tail(j["m"], j["start"]);
    if (k == "scale") return DegreeSet::scale(build(j["arg"]), j["factor"]);
    if (k == "saturate") return DegreeSet::saturate(build(j["arg"]));
    DegreeSet a = build(j["left"]), b = build(j["right"]);
    if (k == "union") return DegreeSet::unite(a, b);
    if (k == "intersect") return DegreeSet::intersect(a, b);
    if (k == "difference") return DegreeSet::difference(a, b);
    return DegreeSet::product(a, b);
}

inline Bits bits_of(const DegreeSet& s) {
    Bits b;
    for (uint64_t d : s.materialize(W)) b.set(d);
    return b;
}


// Local solvability over Q_3 decided modulo 3^6.

inline constexpr long P = 3, N = 729;  // 3^6

inline long vmod(long r) {
    if (r == 0) return 6;
    long v = 0;
    while (r % P == 0) r /= P, ++v;
    return v;
}

// Is F(x) a square in Z_3 for every lift of x mod 3^6?  1 yes for all lifts,
// 0 no for all lifts, -1 not decided at this precision.
inline int class_verdict(long r) {
    r = ((r % N) + N) % N;
    long v = vmod(r);
    if (v >= 6) return -1;
    long u = r;
    for (long i = 0; i < v; ++i) u /= P;
    if (v % 2) return 0;
    return u % P == 1 ? 1 : 0;
}

inline long eval_int(const std::vector<long>& c, long x) {
    long r = 0;
    for (int i = (int)c.size() - 1; i >= 0; --i) r = ((r * x + c[i]) % N + N) % N;
    return r;
}

// y^2 = F(x) over Q_3: x in Z_3, or x = 1/t with t in 3 Z_3.  Returns 1 (has
// a point), 0 (none) or -1 (undecided).
inline int q3_oracle(const std::vector<long>& F) {
    std::vector<long> rev(F.rbegin(), F.rend());
    bool undecided = false;
    for (long x = 0; x < N; ++x) {
        int v = class_verdict(eval_int(F, x));
        if (v == 1) return 1;
        undecided = undecided || v == -1;
    }
    for (long t = 0; t < N; t += P) {
        int v = class_verdict(eval_int(rev, t));
        if (v == 1) return 1;
        undecided = undecided || v == -1;
    }
    return undecided ? -1 : 0;
}


}  // namespace oracles
