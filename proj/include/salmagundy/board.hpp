#pragma once

#include "salmagundy/violation.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace salmagundy {

using NodeSet = std::set<NodeId>;
using Cover = std::pair<NodeId, NodeId>;

// Finite poset given by covers (lower, upper) with a dimension per node.
// Immutable; the reflexive-transitive closure is computed once on
// construction. Queries on unknown ids throw std::out_of_range.
class Board {
public:
    Board() = default;
    Board(std::vector<std::pair<NodeId, int>> nodes, std::vector<Cover> covers);

    const std::vector<NodeId>& nodes() const { return ids_; }
    const std::vector<Cover>& covers() const { return covers_; }
    std::size_t size() const { return ids_.size(); }

    bool contains(const NodeId& s) const { return index_.count(s) != 0; }
    int dim(const NodeId& s) const { return dims_[index(s)]; }

    bool leq(const NodeId& s, const NodeId& t) const;
    // Position of s in nodes(); the *_at queries take positions.
    std::size_t index(const NodeId& s) const;
    bool leq_at(std::size_t s, std::size_t t) const { return le_[s][t] != 0; }
    bool less(const NodeId& s, const NodeId& t) const { return s != t && leq(s, t); }
    bool remote(const NodeId& s, const NodeId& t) const;

    NodeSet below(const NodeId& t) const;  // all s <= t
    NodeSet above(const NodeId& s) const;  // all t >= s
    std::vector<NodeId> maximal() const;
    std::optional<NodeId> top() const;     // the unique maximal node, if any
    int n() const;                         // dim of the top; throws without one

    // Smallest unused id of the form x<k>.
    NodeId fresh_id(const NodeSet& also_taken = {}) const;

    // Drops covers implied by transitivity.
    static std::vector<Cover> reduce(const std::vector<std::pair<NodeId, int>>& nodes,
                                     const std::vector<Cover>& relations);

    bool operator==(const Board& o) const { return this == &o || (ids_ == o.ids_ && dims_ == o.dims_ && covers_ == o.covers_); }

    // Structural defects recorded at construction (duplicate ids, unknown
    // cover endpoints, cycles); reported by validate_board.
    const std::vector<std::string>& defects() const { return defects_; }
    bool acyclic() const { return acyclic_; }

private:
    std::vector<NodeId> ids_;
    std::vector<int> dims_;
    std::unordered_map<NodeId, std::size_t> index_;
    std::vector<Cover> covers_;
    std::vector<std::vector<char>> le_;
    std::vector<std::string> defects_;
    bool acyclic_ = true;
};

using BoardPtr = std::shared_ptr<const Board>;

Violations validate_board(const Board& b);

enum class TransformKind { Refinement, Blowup };

struct BoardTransform {
    TransformKind kind = TransformKind::Refinement;
    BoardPtr source;
    BoardPtr target;
    std::map<NodeId, NodeId> embed;    // i: source -> target
    std::map<NodeId, NodeId> retract;  // u: target -> source
    std::optional<NodeId> center;
    std::optional<NodeId> exceptional;

    const NodeId& i(const NodeId& s) const { return embed.at(s); }
    const NodeId& u(const NodeId& t) const { return retract.at(t); }
    NodeSet image(const NodeSet& s) const;
    NodeSet preimage(const NodeSet& s) const;  // u^-1

    bool operator==(const BoardTransform& o) const;
};

// Rule 2 issues 1-7 (refinement: 1-4, blowup: 1-3 and 5-7).
Violations validate_board_transform(const BoardTransform& t);

BoardTransform trivial_refinement(const BoardPtr& b);

// Structural blowup of b at z. Images keep their ids; x(t,s) nodes are
// created where s <= z < ... makes i(s) too large to sit below i(t).
// `extra_fiber_dims` adds optional nodes y < e with u(y) = z.
BoardTransform blowup_board(const BoardPtr& b, const NodeId& z,
                            const std::vector<int>& extra_fiber_dims = {});

}  // namespace salmagundy
