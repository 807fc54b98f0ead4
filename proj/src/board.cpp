#include "salmagundy/board.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <stdexcept>

namespace salmagundy {

namespace {

using Bits = boost::dynamic_bitset<>;

// up[i] = all j reachable from i along covers, including i itself.
std::vector<Bits> upward_closure(std::size_t n, const std::vector<std::vector<std::size_t>>& succ) {
    std::vector<Bits> up(n, Bits(n));
    // Kahn order on the reversed edges; sinks first.
    std::vector<std::size_t> outdeg(n), order;
    std::vector<std::vector<std::size_t>> pred(n);
    for (std::size_t a = 0; a < n; ++a) {
        outdeg[a] = succ[a].size();
        for (auto b : succ[a]) pred[b].push_back(a);
        if (outdeg[a] == 0) order.push_back(a);
    }
    for (std::size_t k = 0; k < order.size(); ++k)
        for (auto a : pred[order[k]])
            if (--outdeg[a] == 0) order.push_back(a);
    if (order.size() == n) {
        for (auto a : order) {
            up[a].set(a);
            for (auto b : succ[a]) up[a] |= up[b];
        }
        return up;
    }
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n; ++i) {
        up[i].set(i);
        stack.assign(1, i);
        while (!stack.empty()) {
            auto a = stack.back();
            stack.pop_back();
            for (auto b : succ[a])
                if (!up[i].test(b)) {
                    up[i].set(b);
                    stack.push_back(b);
                }
        }
    }
    return up;
}

// Covers of the order generated by `succ`, as index pairs.
std::vector<std::pair<std::size_t, std::size_t>> reduce_indexed(const std::vector<std::vector<std::size_t>>& succ) {
    const std::size_t n = succ.size();
    auto up = upward_closure(n, succ);
    std::vector<Bits> down(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i)
        for (auto j = up[i].find_first(); j != Bits::npos; j = up[i].find_next(j)) down[j].set(i);
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < n; ++a)
        for (auto b = up[a].find_first(); b != Bits::npos; b = up[a].find_next(b)) {
            if (b == a) continue;
            Bits between = up[a] & down[b];
            between.reset(a);
            between.reset(b);
            if (between.none()) out.emplace_back(a, b);
        }
    return out;
}

}  // namespace

Board::Board(std::vector<std::pair<NodeId, int>> nodes, std::vector<Cover> covers) {
    std::sort(nodes.begin(), nodes.end());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (k > 0 && nodes[k].first == nodes[k - 1].first) {
            defects_.push_back("duplicate node id " + nodes[k].first);
            continue;
        }
        if (nodes[k].second < 0) defects_.push_back("negative dimension at " + nodes[k].first);
        index_[nodes[k].first] = ids_.size();
        ids_.push_back(nodes[k].first);
        dims_.push_back(nodes[k].second);
    }
    std::sort(covers.begin(), covers.end());
    covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
    std::vector<std::vector<std::size_t>> succ(ids_.size());
    for (const auto& c : covers) {
        auto a = index_.find(c.first);
        auto b = index_.find(c.second);
        if (a == index_.end() || b == index_.end()) {
            defects_.push_back("cover " + c.first + " < " + c.second + " references an unknown node");
            continue;
        }
        covers_.push_back(c);
        succ[a->second].push_back(b->second);
    }
    auto up = upward_closure(ids_.size(), succ);
    le_.assign(ids_.size(), std::vector<char>(ids_.size(), 0));
    for (std::size_t i = 0; i < ids_.size(); ++i)
        for (std::size_t j = 0; j < ids_.size(); ++j) le_[i][j] = up[i].test(j) ? 1 : 0;
    for (std::size_t i = 0; i < ids_.size() && acyclic_; ++i)
        for (std::size_t j = 0; j < ids_.size(); ++j)
            if (i != j && le_[i][j] && le_[j][i]) {
                acyclic_ = false;
                break;
            }
    for (const auto& c : covers_)
        if (c.first == c.second) acyclic_ = false;
}

std::size_t Board::index(const NodeId& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw std::out_of_range("unknown node id '" + s + "'");
    return it->second;
}

bool Board::leq(const NodeId& s, const NodeId& t) const { return le_[index(s)][index(t)] != 0; }

bool Board::remote(const NodeId& s, const NodeId& t) const {
    auto a = index(s), b = index(t);
    for (std::size_t k = 0; k < ids_.size(); ++k)
        if (le_[k][a] && le_[k][b]) return false;
    return true;
}

NodeSet Board::below(const NodeId& t) const {
    auto b = index(t);
    NodeSet out;
    for (std::size_t k = 0; k < ids_.size(); ++k)
        if (le_[k][b]) out.insert(ids_[k]);
    return out;
}

NodeSet Board::above(const NodeId& s) const {
    auto a = index(s);
    NodeSet out;
    for (std::size_t k = 0; k < ids_.size(); ++k)
        if (le_[a][k]) out.insert(ids_[k]);
    return out;
}

std::vector<NodeId> Board::maximal() const {
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        bool max = true;
        for (std::size_t j = 0; j < ids_.size() && max; ++j)
            if (i != j && le_[i][j]) max = false;
        if (max) out.push_back(ids_[i]);
    }
    return out;
}

std::optional<NodeId> Board::top() const {
    auto m = maximal();
    if (m.size() != 1 || !acyclic_) return std::nullopt;
    return m.front();
}

int Board::n() const {
    auto t = top();
    if (!t) throw std::logic_error("board has no unique top node");
    return dim(*t);
}

NodeId Board::fresh_id(const NodeSet& also_taken) const {
    for (std::size_t k = 1;; ++k) {
        NodeId id = "x" + std::to_string(k);
        if (!contains(id) && !also_taken.count(id)) return id;
    }
}

std::vector<Cover> Board::reduce(const std::vector<std::pair<NodeId, int>>& nodes,
                                 const std::vector<Cover>& relations) {
    std::unordered_map<NodeId, std::size_t> idx;
    std::vector<NodeId> ids;
    for (const auto& [id, d] : nodes) {
        (void)d;
        if (idx.emplace(id, ids.size()).second) ids.push_back(id);
    }
    std::vector<std::vector<std::size_t>> succ(ids.size());
    for (const auto& r : relations) succ[idx.at(r.first)].push_back(idx.at(r.second));
    std::vector<Cover> out;
    for (const auto& [a, b] : reduce_indexed(succ)) out.emplace_back(ids[a], ids[b]);
    std::sort(out.begin(), out.end());
    return out;
}

Violations validate_board(const Board& b) {
    Violations out;
    for (const auto& d : b.defects()) out.push_back({"BOARD", 4, {}, d});
    if (!b.acyclic()) {
        for (const auto& s : b.nodes())
            for (const auto& t : b.nodes())
                if (s < t && b.leq(s, t) && b.leq(t, s)) {
                    out.push_back({"BOARD", 1, {s, t}, "covers contain a cycle through " + s + " and " + t});
                    return out;
                }
        out.push_back({"BOARD", 1, {}, "covers contain a self-loop"});
        return out;
    }
    for (const auto& s : b.nodes())
        for (const auto& t : b.nodes())
            if (b.less(s, t) && b.dim(s) >= b.dim(t))
                out.push_back({"BOARD", 2, {s, t},
                               "dim not strictly increasing: dim(" + s + ")=" + std::to_string(b.dim(s)) +
                                   " >= dim(" + t + ")=" + std::to_string(b.dim(t))});
    auto m = b.maximal();
    if (m.size() != 1) out.push_back({"BOARD", 3, m, "board must have exactly one maximal node"});
    return out;
}

NodeSet BoardTransform::image(const NodeSet& s) const {
    NodeSet out;
    for (const auto& x : s) out.insert(i(x));
    return out;
}

NodeSet BoardTransform::preimage(const NodeSet& s) const {
    NodeSet out;
    for (const auto& [t, src] : retract)
        if (s.count(src)) out.insert(t);
    return out;
}

bool BoardTransform::operator==(const BoardTransform& o) const {
    auto same = [](const BoardPtr& a, const BoardPtr& b) { return a == b || (a && b && *a == *b); };
    return kind == o.kind && same(source, o.source) && same(target, o.target) && embed == o.embed &&
           retract == o.retract && center == o.center && exceptional == o.exceptional;
}

Violations validate_board_transform(const BoardTransform& t) {
    Violations out;
    const Board& src = *t.source;
    const Board& tgt = *t.target;
    auto R2 = [&](int issue, std::vector<NodeId> w, std::string d) { out.push_back({"R2", issue, std::move(w), std::move(d)}); };

    // Maps must be total and land in the right boards before anything else.
    bool maps_ok = true;
    for (const auto& s : src.nodes()) {
        auto it = t.embed.find(s);
        if (it == t.embed.end() || !tgt.contains(it->second)) {
            R2(1, {s}, "embedding undefined or outside the target at " + s);
            maps_ok = false;
        }
    }
    for (const auto& s : tgt.nodes()) {
        auto it = t.retract.find(s);
        if (it == t.retract.end() || !src.contains(it->second)) {
            R2(1, {s}, "retract undefined or outside the source at " + s);
            maps_ok = false;
        }
    }
    if (!maps_ok) return out;

    NodeSet seen;
    for (const auto& s : src.nodes())
        if (!seen.insert(t.i(s)).second) R2(1, {s}, "embedding is not injective at " + t.i(s));

    // Positions of i(s) in the target and u(x) in the source.
    const std::size_t ns = src.size(), nt = tgt.size();
    std::vector<std::size_t> emb(ns), ret(nt);
    for (std::size_t a = 0; a < ns; ++a) emb[a] = tgt.index(t.i(src.nodes()[a]));
    for (std::size_t x = 0; x < nt; ++x) ret[x] = src.index(t.u(tgt.nodes()[x]));
    std::vector<std::vector<std::size_t>> fiber(ns);
    for (std::size_t x = 0; x < nt; ++x) fiber[ret[x]].push_back(x);

    // 1: u o i = id and i(s) is the unique maximal element of u^-1(s).
    for (std::size_t a = 0; a < ns; ++a) {
        const auto& s = src.nodes()[a];
        const auto& is = tgt.nodes()[emb[a]];
        if (ret[emb[a]] != a) {
            R2(1, {is, s}, "u(i(" + s + ")) = " + t.u(is));
            continue;
        }
        for (std::size_t x : fiber[a])
            if (!tgt.leq_at(x, emb[a]))
                R2(1, {tgt.nodes()[x], s}, tgt.nodes()[x] + " lies in u^-1(" + s + ") but not below i(" + s + ")");
    }

    const bool blowup = t.kind == TransformKind::Blowup;
    std::optional<NodeId> z = t.center;
    bool center_ok = z && src.contains(*z);
    const std::size_t zi = center_ok ? src.index(*z) : 0;

    // 2: order embedding (weak for pairs separated by the center).
    for (std::size_t a = 0; a < ns; ++a)
        for (std::size_t c = 0; c < ns; ++c) {
            if (a == c) continue;
            bool lower = src.leq_at(a, c);
            bool img = tgt.leq_at(emb[a], emb[c]);
            if (lower == img) continue;
            const auto& s = src.nodes()[a];
            const auto& u = src.nodes()[c];
            if (img) R2(2, {t.i(s), t.i(u)}, "i(" + s + ") < i(" + u + ") but not " + s + " < " + u);
            else {
                bool split = blowup && center_ok && src.leq_at(a, zi) && !src.leq_at(c, zi);
                bool witnessed = false;
                if (split)
                    for (std::size_t x : fiber[a])
                        if (x != emb[c] && tgt.leq_at(x, emb[c])) {
                            witnessed = true;
                            break;
                        }
                if (!witnessed) R2(2, {t.i(s), t.i(u)}, s + " < " + u + " but i(" + s + ") is not below i(" + u + ")");
            }
        }

    // 3: u weakly increasing.
    for (const auto& c : tgt.covers())
        if (!src.leq(t.u(c.first), t.u(c.second)))
            R2(3, {c.first, c.second}, "u(" + c.first + ") is not below u(" + c.second + ")");

    if (!blowup) {
        if (t.center || t.exceptional) R2(4, {}, "a refinement has no center");
        for (const auto& s : src.nodes())
            if (tgt.dim(t.i(s)) != src.dim(s))
                R2(4, {s}, "refinement changes dim at " + s + ": " + std::to_string(src.dim(s)) + " -> " +
                               std::to_string(tgt.dim(t.i(s))));
        return out;
    }

    // 5: a unique center, not the top, with e = i(z).
    if (!center_ok) {
        R2(5, {}, "blowup without a valid center");
        return out;
    }
    auto top = src.top();
    if (top && *top == *z) R2(5, {*z}, "the top node cannot be a center");
    if (!t.exceptional || *t.exceptional != t.i(*z)) R2(5, {*z}, "exceptional node must equal i(center)");

    const int n = top ? src.dim(*top) : 0;
    for (const auto& s : src.nodes()) {
        int got = tgt.dim(t.i(s));
        if (!src.leq(s, *z)) {
            if (got != src.dim(s))
                R2(6, {s}, "dim(i(" + s + ")) = " + std::to_string(got) + ", expected " + std::to_string(src.dim(s)));
        } else {
            int want = src.dim(s) + n - 1 - src.dim(*z);
            if (got != want)
                R2(7, {s}, "blowup dimension law violated at " + s + ": expected " + std::to_string(src.dim(s)) + "+" +
                               std::to_string(n) + "-1-" + std::to_string(src.dim(*z)) + "=" + std::to_string(want) +
                               ", got " + std::to_string(got));
        }
    }
    return out;
}

BoardTransform trivial_refinement(const BoardPtr& b) {
    BoardTransform t;
    t.kind = TransformKind::Refinement;
    t.source = b;
    t.target = b;
    for (const auto& s : b->nodes()) {
        t.embed[s] = s;
        t.retract[s] = s;
    }
    return t;
}

BoardTransform blowup_board(const BoardPtr& bp, const NodeId& z, const std::vector<int>& extra_fiber_dims) {
    const Board& b = *bp;
    auto top = b.top();
    if (!top) throw std::invalid_argument("blowup of a board without a top");
    if (!b.contains(z)) throw std::out_of_range("unknown center '" + z + "'");
    if (*top == z) throw std::invalid_argument("the top node cannot be a blowup center");
    const int n = b.dim(*top);
    const int shift = n - 1 - b.dim(z);
    const std::size_t N = b.size(), zi = b.index(z);
    const auto& ids = b.nodes();

    // Target positions: source nodes keep theirs, fresh nodes follow.
    std::vector<std::pair<NodeId, int>> nodes;
    std::vector<int> dim;
    std::vector<char> under(N);
    for (std::size_t k = 0; k < N; ++k) {
        under[k] = b.leq_at(k, zi);
        dim.push_back(under[k] ? b.dim(ids[k]) + shift : b.dim(ids[k]));
        nodes.emplace_back(ids[k], dim.back());
    }
    std::vector<std::vector<std::size_t>> succ(N);

    // need[t] = the s <= z with s < t whose shifted image cannot sit below t.
    std::map<std::size_t, std::vector<std::size_t>> need;
    for (std::size_t s = 0; s < N; ++s)
        for (std::size_t t = 0; t < N; ++t) {
            if (s == t || !b.leq_at(s, t)) continue;
            if (under[s] == under[t] || dim[s] < dim[t])
                succ[s].push_back(t);
            else
                need[t].push_back(s);
        }

    BoardTransform out;
    out.kind = TransformKind::Blowup;
    out.source = bp;
    out.center = z;
    out.exceptional = z;
    for (const auto& s : ids) out.embed.emplace_hint(out.embed.end(), s, s);
    out.retract = out.embed;

    NodeSet taken;
    auto add = [&](const NodeId& x, int d) {
        taken.insert(x);
        nodes.emplace_back(x, d);
        dim.push_back(d);
        succ.emplace_back();
        return nodes.size() - 1;
    };
    struct Fresh {
        std::size_t t, s, x;
    };
    std::vector<Fresh> fresh;
    for (const auto& [t, ss] : need) {
        int c = 0;
        for (auto s : ss) c = std::max(c, b.dim(ids[s]));
        for (auto s : ss) {
            auto x = add(b.fresh_id(taken), b.dim(ids[t]) - 1 - c + b.dim(ids[s]));
            out.retract[nodes[x].first] = ids[s];
            succ[x].push_back(t);
            succ[x].push_back(s);
            fresh.push_back({t, s, x});
        }
    }
    for (const auto& f : fresh)
        for (const auto& g : fresh) {
            if (f.x == g.x) continue;
            // x(t, s2) < x(t, s) for s2 < s; x(t2, s) < x(t, s) for t2 < t.
            if (f.t == g.t && g.s != f.s && b.leq_at(g.s, f.s)) succ[g.x].push_back(f.x);
            if (f.s == g.s && g.t != f.t && b.leq_at(g.t, f.t) && dim[g.x] < dim[f.x]) succ[g.x].push_back(f.x);
        }
    for (int k : extra_fiber_dims) {
        if (k < 0 || k >= n - 1) throw std::invalid_argument("extra fiber node dimension out of range");
        auto y = add(b.fresh_id(taken), k);
        out.retract[nodes[y].first] = z;
        succ[y].push_back(zi);
    }
    std::vector<Cover> covers;
    for (const auto& [lo, hi] : reduce_indexed(succ)) covers.emplace_back(nodes[lo].first, nodes[hi].first);
    std::sort(covers.begin(), covers.end());
    out.target = std::make_shared<const Board>(std::move(nodes), std::move(covers));
    return out;
}

}  // namespace salmagundy
