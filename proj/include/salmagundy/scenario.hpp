#pragma once

#include "salmagundy/board.hpp"
#include "salmagundy/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace salmagundy {

// Weights on jibs. A weight may be infinite only in a generator whose
// exceptional coordinate is unbounded (blowup at an order-infinity center).
struct MonomialFactor {
    std::map<NodeId, OrderValue> weights;

    OrderValue at(const NodeId& h) const {
        auto it = weights.find(h);
        return it == weights.end() ? OrderValue(0) : it->second;
    }
    bool operator==(const MonomialFactor&) const = default;
    bool operator<(const MonomialFactor& o) const { return weights < o.weights; }
};

MonomialFactor zero_factor(const NodeSet& H);
// Pointwise a <= b over the union of both domains (missing = 0).
bool dominated(const MonomialFactor& a, const MonomialFactor& b);

// Downward closed set of factors, stored as its antichain of maximal
// generators (sorted, duplicates and dominated members removed).
class FactorSet {
public:
    FactorSet() = default;
    explicit FactorSet(std::vector<MonomialFactor> generators);
    static FactorSet zero(const NodeSet& H) { return FactorSet({zero_factor(H)}); }

    const std::vector<MonomialFactor>& generators() const { return gens_; }
    bool contains(const MonomialFactor& m) const;
    bool operator==(const FactorSet&) const = default;

private:
    std::vector<MonomialFactor> gens_;
};

struct Scenario {
    BoardPtr board;
    int d = 0;
    std::int64_t B = 1;
    NodeSet H;
    NodeSet S;
    NodeSet T;
    std::map<NodeId, OrderValue> ord;
    FactorSet M;

    const Board& b() const { return *board; }
    bool operator==(const Scenario& o) const;
    bool operator!=(const Scenario& o) const { return !(*this == o); }
};

// m(s) = sum of m(h) over jibs h >= s.
OrderValue extend_factor(const Scenario& c, const MonomialFactor& m, const NodeId& s);
NodeSet jibs_above(const Scenario& c, const NodeId& s);

// Rule 1, issues 1-9. Issue 0 collects malformed data (unknown ids, ord
// domain differing from S, d or B out of range).
Violations validate_scenario(const Scenario& c);
// Finite orders that are not multiples of 1/B.
Violations grid_violations(const Scenario& c);

bool is_tight(const Scenario& c);
bool is_resolved(const Scenario& c);
std::optional<MonomialFactor> complete_factor(const Scenario& c);
bool is_complete(const Scenario& c, const MonomialFactor& m);
bool is_admissible(const Scenario& c, const NodeId& z);
NodeSet admissible_centers(const Scenario& c);

// ord(s) - m(s), with infinity absorbing (members of M are finite).
OrderValue excess(const Scenario& c, const MonomialFactor& m, const NodeId& s);

}  // namespace salmagundy
