#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace densdeg {

// Lazy expression over subsets of the positive integers.  Leaves are finite
// sets and tails {n >= start : m | n}; inner nodes combine them.  Products and
// saturations are never normalized because e.g. the composites are not
// eventually periodic.
class DegreeSet {
public:
    enum class Kind { Finite, Tail, Union, Intersect, Difference, Product, Scale, Saturate };

    struct Node {
        Kind kind;
        std::vector<uint64_t> members;  // Finite
        uint64_t m = 1, start = 1;      // Tail
        uint64_t factor = 1;            // Scale
        std::shared_ptr<const Node> left, right;
    };

    DegreeSet();  // empty set

    static DegreeSet finite(std::vector<uint64_t> members);
    static DegreeSet tail(uint64_t m, uint64_t start);
    static DegreeSet naturals_from(uint64_t n) { return tail(1, n); }
    static DegreeSet multiples(uint64_t m) { return tail(m, m); }
    static DegreeSet naturals() { return tail(1, 1); }
    static DegreeSet empty() { return DegreeSet(); }

    // Combinators.  These normalize leaf-only unions, intersections,
    // differences and scalings; everything else stays symbolic.
    static DegreeSet unite(const DegreeSet& a, const DegreeSet& b);
    static DegreeSet intersect(const DegreeSet& a, const DegreeSet& b);
    static DegreeSet difference(const DegreeSet& a, const DegreeSet& b);
    static DegreeSet product(const DegreeSet& a, const DegreeSet& b);
    static DegreeSet scale(const DegreeSet& a, uint64_t c);
    static DegreeSet saturate(const DegreeSet& a);

    // Raw node construction with no normalization (used by the JSON reader so
    // that round trips are exact).
    static DegreeSet raw(Kind k, const DegreeSet& l, const DegreeSet& r = DegreeSet(), uint64_t factor = 1);

    bool contains(uint64_t d) const;
    std::vector<uint64_t> materialize(uint64_t bound) const;
    // Membership bitmap for [0, bound]; index 0 is always false.
    std::vector<char> bitmap(uint64_t bound) const;

    Kind kind() const { return node_->kind; }
    const Node& node() const { return *node_; }

    nlohmann::json to_json() const;
    static DegreeSet from_json(const nlohmann::json& j);

    // Human readable rendering, e.g. "N>=2 \ {2,3,5}".
    std::string describe() const;

private:
    explicit DegreeSet(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

bool equals_on_window(const DegreeSet& a, const DegreeSet& b, uint64_t bound);
bool subset_on_window(const DegreeSet& a, const DegreeSet& b, uint64_t bound);

// Elements of [1, bound] in a but not in b.
std::vector<uint64_t> window_difference(const DegreeSet& a, const DegreeSet& b, uint64_t bound);

std::vector<uint64_t> primes_up_to(uint64_t bound);

// combine(op, args) as a single entry point; op is one of union, intersect,
// difference, product, scale, saturate.  For scale, the factor is passed
// separately.
DegreeSet combine(const std::string& op, const std::vector<DegreeSet>& args, uint64_t factor = 1);

class SetError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace densdeg
