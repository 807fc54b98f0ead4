#pragma once

#include <string>
#include <vector>

namespace salmagundy {

using NodeId = std::string;

// A failed rule check. `rule` is one of BOARD, R1 (scenario), R2 (board
// transform), R3 (scenario transform), R4 (relaxation), R5 (descent),
// JIB (transversality), QUOT (quotient), COMM (commutativity), GAME.
// The first witness is the node the failure is blamed on, when there is one.
struct Violation {
    std::string rule;
    int issue = 0;
    std::vector<NodeId> witness;
    std::string detail;

    bool operator==(const Violation&) const = default;
};

using Violations = std::vector<Violation>;

inline bool has_issue(const Violations& vs, const std::string& rule, int issue) {
    for (const auto& v : vs)
        if (v.rule == rule && v.issue == issue) return true;
    return false;
}

inline void append(Violations& into, const Violations& more) {
    into.insert(into.end(), more.begin(), more.end());
}

}  // namespace salmagundy
