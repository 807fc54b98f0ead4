#include "salmagundy/io.hpp"

#include <fstream>

namespace salmagundy {

namespace {

OrderValue order_from(const json& j) {
    if (j.is_number_integer()) return OrderValue(j.get<std::int64_t>());
    return parse_order(j.get<std::string>());
}

json ids(const NodeSet& s) { return json(std::vector<NodeId>(s.begin(), s.end())); }

NodeSet ids_from(const json& j) {
    NodeSet out;
    for (const auto& x : j) out.insert(x.get<std::string>());
    return out;
}

json id_map(const std::map<NodeId, NodeId>& m) {
    json out = json::object();
    for (const auto& [a, b] : m) out[a] = b;
    return out;
}

std::map<NodeId, NodeId> id_map_from(const json& j) {
    std::map<NodeId, NodeId> out;
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = it.value().get<std::string>();
    return out;
}

}  // namespace

json to_json(const Board& b) {
    json nodes = json::array();
    for (const auto& s : b.nodes()) nodes.push_back({{"id", s}, {"dim", b.dim(s)}});
    json covers = json::array();
    for (const auto& [lo, hi] : b.covers()) covers.push_back({lo, hi});
    return {{"nodes", nodes}, {"covers", covers}};
}

BoardPtr board_from_json(const json& j) {
    std::vector<std::pair<NodeId, int>> nodes;
    for (const auto& n : j.at("nodes")) nodes.emplace_back(n.at("id").get<std::string>(), n.at("dim").get<int>());
    std::vector<Cover> covers;
    for (const auto& c : j.value("covers", json::array())) {
        if (!c.is_array() || c.size() != 2) throw std::invalid_argument("cover must be a pair of ids");
        covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
    }
    return std::make_shared<const Board>(std::move(nodes), std::move(covers));
}

json to_json(const MonomialFactor& m) {
    json out = json::object();
    for (const auto& [h, w] : m.weights) out[h] = w.str();
    return out;
}

MonomialFactor factor_from_json(const json& j) {
    MonomialFactor m;
    for (auto it = j.begin(); it != j.end(); ++it) m.weights[it.key()] = order_from(it.value());
    return m;
}

json to_json(const Scenario& c, bool include_board) {
    json ord = json::object();
    for (const auto& [s, o] : c.ord) ord[s] = o.str();
    json M = json::array();
    for (const auto& g : c.M.generators()) M.push_back(to_json(g));
    json out = {{"d", c.d}, {"B", c.B}, {"H", ids(c.H)}, {"S", ids(c.S)}, {"T", ids(c.T)}, {"ord", ord}, {"M", M}};
    if (include_board && c.board) out["board"] = to_json(c.b());
    return out;
}

Scenario scenario_from_json(const json& j, BoardPtr board) {
    Scenario c;
    if (j.contains("board") && j.at("board").is_object()) c.board = board_from_json(j.at("board"));
    else c.board = std::move(board);
    if (!c.board) throw std::invalid_argument("scenario without a board");
    c.d = j.at("d").get<int>();
    c.B = j.at("B").get<std::int64_t>();
    c.H = ids_from(j.value("H", json::array()));
    c.S = ids_from(j.value("S", json::array()));
    c.T = ids_from(j.value("T", json::array()));
    const json ord = j.value("ord", json::object());
    for (auto it = ord.begin(); it != ord.end(); ++it) c.ord[it.key()] = order_from(it.value());
    std::vector<MonomialFactor> gens;
    if (j.contains("M"))
        for (const auto& g : j.at("M")) gens.push_back(factor_from_json(g));
    else
        gens.push_back(zero_factor(c.H));
    c.M = FactorSet(std::move(gens));
    return c;
}

json to_json(const QuestRelation& r) {
    json out = {{"kind", to_string(r.kind)}, {"parent", r.parent}, {"child", r.child}};
    if (r.kind == QuestKind::Relaxation || r.kind == QuestKind::Transversality) out["jibs"] = ids(r.jibs);
    if (r.kind == QuestKind::Quotient) {
        out["factor"] = to_json(r.factor);
        out["scale"] = to_string(r.scale);
    }
    return out;
}

QuestRelation relation_from_json(const json& j) {
    QuestRelation r;
    r.kind = parse_quest_kind(j.at("kind").get<std::string>());
    r.parent = j.value("parent", -1);
    r.child = j.value("child", -1);
    if (j.contains("jibs")) r.jibs = ids_from(j.at("jibs"));
    if (j.contains("factor")) r.factor = factor_from_json(j.at("factor"));
    if (j.contains("scale")) r.scale = parse_rational(j.at("scale").get<std::string>());
    return r;
}

json to_json(const Move& m) {
    if (m.kind == Move::Kind::Blowup) return {{"kind", "blowup"}, {"center", m.center}};
    return {{"kind", "call"}, {"call", to_json(m.call)}};
}

Move move_from_json(const json& j) {
    auto kind = j.at("kind").get<std::string>();
    if (kind == "blowup") return Move::blowup(j.at("center").get<std::string>());
    if (kind == "call") return Move::make_call(relation_from_json(j.at("call")));
    throw std::invalid_argument("unknown move kind '" + kind + "'");
}

json to_json(const BoardTransform& t) {
    json out = {{"kind", t.kind == TransformKind::Blowup ? "blowup" : "refinement"},
                {"target", to_json(*t.target)},
                {"embed", id_map(t.embed)},
                {"retract", id_map(t.retract)}};
    if (t.center) out["center"] = *t.center;
    if (t.exceptional) out["exceptional"] = *t.exceptional;
    return out;
}

BoardTransform transform_from_json(const json& j, BoardPtr source) {
    BoardTransform t;
    auto kind = j.at("kind").get<std::string>();
    if (kind != "blowup" && kind != "refinement") throw std::invalid_argument("unknown transform kind '" + kind + "'");
    t.kind = kind == "blowup" ? TransformKind::Blowup : TransformKind::Refinement;
    t.source = std::move(source);
    t.target = board_from_json(j.at("target"));
    t.embed = id_map_from(j.at("embed"));
    t.retract = id_map_from(j.at("retract"));
    if (j.contains("center")) t.center = j.at("center").get<std::string>();
    if (j.contains("exceptional")) t.exceptional = j.at("exceptional").get<std::string>();
    return t;
}

json to_json(const ResponseBundle& b) {
    json responses = json::object();
    for (const auto& [id, c] : b.responses) responses[std::to_string(id)] = to_json(c, false);
    return {{"transform", to_json(b.transform)},
            {"responses", responses},
            {"discarded", std::vector<QuestId>(b.discarded.begin(), b.discarded.end())}};
}

ResponseBundle bundle_from_json(const json& j, BoardPtr source) {
    ResponseBundle b;
    b.transform = transform_from_json(j.at("transform"), std::move(source));
    for (auto it = j.at("responses").begin(); it != j.at("responses").end(); ++it)
        b.responses[std::stoi(it.key())] = scenario_from_json(it.value(), b.transform.target);
    for (const auto& id : j.value("discarded", json::array())) b.discarded.insert(id.get<QuestId>());
    return b;
}

json to_json(const Violation& v) {
    return {{"rule", v.rule}, {"issue", v.issue}, {"witness", v.witness}, {"detail", v.detail}};
}

json to_json(const Violations& vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back(to_json(v));
    return out;
}

json state_to_json(const GameState& s) {
    json quests = json::array();
    for (const auto& [id, q] : s.quests) {
        json e = {{"id", id}, {"status", to_string(q.status)}, {"scenario", to_json(q.scenario, false)}};
        if (q.relation) e["relation"] = to_json(*q.relation);
        quests.push_back(e);
    }
    return {{"round", s.round},
            {"over", s.over},
            {"next_quest_id", s.next_quest_id},
            {"board", to_json(*s.board)},
            {"quests", quests}};
}

json to_json(const Event& e) {
    return {{"round", e.round}, {"seq", e.seq}, {"actor", e.actor}, {"payload", e.payload}};
}

Event event_from_json(const json& j) {
    return {j.at("round").get<int>(), j.at("seq").get<int>(), j.at("actor").get<std::string>(), j.at("payload")};
}

json load_json(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    return json::parse(in);
}

BoardPtr load_board(const std::filesystem::path& p) {
    auto j = load_json(p);
    if (j.contains("nodes")) return board_from_json(j);
    if (j.contains("board")) return load_scenario(p).board;
    throw std::invalid_argument(p.string() + " holds neither a board nor a scenario");
}

Scenario load_scenario(const std::filesystem::path& p) {
    auto j = load_json(p);
    BoardPtr board;
    if (j.contains("board") && j.at("board").is_string())
        board = board_from_json(load_json(p.parent_path() / j.at("board").get<std::string>()));
    return scenario_from_json(j, board);
}

}  // namespace salmagundy
