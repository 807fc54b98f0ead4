#pragma once

#include "salmagundy/scenario.hpp"

#include <stdexcept>

namespace salmagundy {

enum class QuestKind { Main, Relaxation, Descent, Transversality, Quotient };

const char* to_string(QuestKind k);
QuestKind parse_quest_kind(const std::string& s);

// Parameters of the call that created a subordinate quest. `jibs` is J for
// relaxation and K for transversality; factor/scale are m and q of a
// quotient. Parameters are kept on the current board (re-embedded after
// every transform).
struct QuestRelation {
    QuestKind kind = QuestKind::Main;
    int parent = -1;
    int child = -1;
    NodeSet jibs;
    MonomialFactor factor;
    Rational scale{0};

    bool operator==(const QuestRelation&) const = default;
};

// Raised when an operation is called outside its precondition.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Scenario transversality_response(const Scenario& c, const NodeSet& K);
std::int64_t quotient_bound(std::int64_t B, const Rational& q);
Scenario quotient_response(const Scenario& c, const MonomialFactor& m, const Rational& q);
// The q-quotient without the membership precondition on m; used for the
// lifted factor after a blowup, which can leave M' when z drops out of S1.
Scenario quotient_construction(const Scenario& c, const MonomialFactor& m, const Rational& q);
// The minimal relaxation: T1 = T.
Scenario relaxation_response(const Scenario& c, const NodeSet& J);

// Rule 4 issues 1-5 plus validity of c1.
Violations relaxation_check(const Scenario& c, const NodeSet& J, const Scenario& c1);
// Rule 5 at call time: c1 lives on bt.target, a refinement of c's board.
Violations descent_check(const Scenario& c, const BoardTransform& bt, const Scenario& c1);
// Rule 5 items 1-2 between scenarios on the same board (after blowups the
// handicap need not be empty and M is governed by the transform rules).
Violations descent_relation(const Scenario& c, const Scenario& c1);

// Does `child` stand in relation `rel` to `parent` (same board)?
Violations relation_holds(const QuestRelation& rel, const Scenario& parent, const Scenario& child);

// Field-by-field comparison; every difference becomes a violation under
// (rule, issue) whose witnesses are the nodes involved.
Violations compare_scenarios(const Scenario& expected, const Scenario& actual, const std::string& rule, int issue);

}  // namespace salmagundy
