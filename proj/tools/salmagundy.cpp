#include "salmagundy/harness.hpp"
#include "salmagundy/io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace salmagundy;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kCapReached = 2;
constexpr int kUsage = 3;

struct Options {
    std::uint64_t seed = 1;
    int round_cap = 10000;
    std::string mephisto = "canonical";
    int max_new_nodes = 1;
    int max_order_steps = 2;

    std::string input;
    std::string output;
    std::string trace_out;

    int max_nodes = 8;
    int n = 2;
    int d = 1;
    std::int64_t B = 1;
    int jibs = 0;
    std::string board_file;
    bool allow_empty = false;

    int depth_cap = 50;
};

void write_out(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

json trace_json(const std::vector<Event>& trace) {
    json events = json::array();
    for (const auto& e : trace) events.push_back(to_json(e));
    return {{"events", events}};
}

std::vector<Event> load_trace(const json& j) {
    const json& events = j.is_array() ? j : j.at("events");
    std::vector<Event> out;
    for (const auto& e : events) out.push_back(event_from_json(e));
    return out;
}

bool is_trace(const json& j) { return j.is_array() || (j.is_object() && j.contains("events")); }

void print_violations(const Violations& vs) {
    for (const auto& v : vs) std::cerr << to_json(v).dump() << "\n";
}

Caps caps_of(const Options& o) { return {o.max_new_nodes, o.max_order_steps}; }

// Loads a scenario for play/explore; nullopt (after printing) if invalid.
std::optional<Scenario> load_start(const Options& o) {
    auto c = load_scenario(o.input);
    auto vs = validate_scenario(c);
    if (vs.empty()) return c;
    std::cout << json{{"kind", "scenario"}, {"violations", vs.size()}}.dump() << "\n";
    print_violations(vs);
    return std::nullopt;
}

int cmd_validate(const Options& o) {
    json j = load_json(o.input);
    Violations vs;
    if (is_trace(j)) {
        auto trace = load_trace(j);
        GameState st = replay(trace);
        for (QuestId id : st.open_quests()) append(vs, validate_scenario(st.quest(id).scenario));
        std::cout << json{{"kind", "trace"}, {"rounds", st.round}, {"over", st.over}, {"violations", vs.size()}}.dump() << "\n";
    } else if (j.contains("nodes")) {
        auto b = board_from_json(j);
        vs = validate_board(*b);
        std::cout << json{{"kind", "board"}, {"nodes", b->size()}, {"violations", vs.size()}}.dump() << "\n";
    } else {
        auto c = load_scenario(o.input);
        vs = validate_scenario(c);
        std::cout << json{{"kind", "scenario"}, {"resolved", c.S.empty()}, {"violations", vs.size()}}.dump() << "\n";
    }
    print_violations(vs);
    return vs.empty() ? kOk : kViolations;
}

int cmd_gen_board(const Options& o) {
    auto b = gen_board(o.seed, {o.max_nodes, o.n});
    write_out(to_json(*b).dump(2) + "\n", o.output);
    return kOk;
}

int cmd_gen_scenario(const Options& o) {
    BoardPtr b = o.board_file.empty() ? gen_board(o.seed, {o.max_nodes, o.n}) : load_board(o.board_file);
    ScenarioParams p{o.d, o.B, o.jibs};
    p.nonempty = !o.allow_empty;
    auto c = gen_scenario(o.seed, b, p);
    write_out(to_json(c).dump(2) + "\n", o.output);
    return kOk;
}

int cmd_play(const Options& o) {
    auto c0 = load_start(o);
    if (!c0) return kViolations;
    auto policy = Policy::parse(o.mephisto, caps_of(o));
    auto r = play(*c0, policy, o.round_cap);
    json report{{"outcome", to_string(r.outcome)},
                {"rounds", r.rounds()},
                {"policy", policy.name()},
                {"strict", strictness_certificate(r.state)},
                {"nodes", r.state.board->size()},
                {"quests", r.state.quests.size()}};
    if (!r.message.empty()) report["message"] = r.message;
    if (!r.dido.assertion_failures().empty()) report["strategy_assertions"] = r.dido.assertion_failures();
    std::cout << report.dump(2) << "\n";
    if (!o.trace_out.empty()) write_out(trace_json(r.state.trace).dump() + "\n", o.trace_out);
    print_violations(r.blocking);
    switch (r.outcome) {
        case Outcome::Won: return r.dido.assertion_failures().empty() ? kOk : kViolations;
        case Outcome::CapReached: return kCapReached;
        default: return kViolations;
    }
}

int cmd_explore(const Options& o) {
    auto c0 = load_start(o);
    if (!c0) return kViolations;
    auto rep = explore(*c0, caps_of(o), o.depth_cap);
    std::cout << json{{"all_won", rep.all_won},   {"branch_count", rep.branch_count}, {"max_depth", rep.max_depth},
                      {"won", rep.won},           {"capped", rep.capped},             {"stuck", rep.stuck},
                      {"failed", rep.failed}}
                     .dump(2)
              << "\n";
    if (rep.counterexample && !o.trace_out.empty()) write_out(trace_json(*rep.counterexample).dump() + "\n", o.trace_out);
    if (rep.all_won) return kOk;
    return rep.failed + rep.stuck > 0 ? kViolations : kCapReached;
}

int cmd_export_dot(const Options& o) {
    json j = load_json(o.input);
    if (is_trace(j)) write_out(export_dot(replay(load_trace(j))), o.output);
    else write_out(export_dot(load_scenario(o.input)), o.output);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Salmagundy: rule checker, strategy runner and explorer"};
    app.set_config("--config", "", "TOML/INI file with the same keys as the flags; flags win");
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--seed", o.seed, "Seed for generators and random policies");
    app.add_option("--round-cap", o.round_cap, "Round limit for play")->check(CLI::NonNegativeNumber);
    app.add_option("--mephisto", o.mephisto, "canonical | random:<seed> | adversarial");
    app.add_option("--max-new-nodes", o.max_new_nodes, "Optional fiber nodes per blowup")->check(CLI::NonNegativeNumber);
    app.add_option("--max-order-steps", o.max_order_steps, "Order raises (units of 1/B) per fresh node")
        ->check(CLI::NonNegativeNumber);

    int code = kOk;
    auto run = [&](int (*f)(const Options&)) { return [&, f] { code = f(o); }; };

    auto* validate = app.add_subcommand("validate", "Check a board, scenario or trace file");
    validate->add_option("file", o.input)->required()->check(CLI::ExistingFile);
    validate->callback(run(cmd_validate));

    auto* gen = app.add_subcommand("gen", "Generate a random board or scenario");
    gen->require_subcommand(1);
    gen->fallthrough();
    auto* gen_b = gen->add_subcommand("board", "Random board");
    auto* gen_s = gen->add_subcommand("scenario", "Random initial scenario with M = <0>");
    for (auto* sub : {gen_b, gen_s}) {
        sub->add_option("--max-nodes", o.max_nodes)->check(CLI::PositiveNumber);
        sub->add_option("--n", o.n, "Dimension of the top")->check(CLI::NonNegativeNumber);
        sub->add_option("-o,--output", o.output);
    }
    gen_s->add_option("--board", o.board_file, "Board file (default: generate one)")->check(CLI::ExistingFile);
    gen_s->add_option("--d", o.d)->check(CLI::NonNegativeNumber);
    gen_s->add_option("--B", o.B)->check(CLI::PositiveNumber);
    gen_s->add_option("--jibs", o.jibs)->check(CLI::NonNegativeNumber);
    gen_s->add_flag("--allow-empty", o.allow_empty, "Accept a resolved scenario");
    gen_b->callback(run(cmd_gen_board));
    gen_s->callback(run(cmd_gen_scenario));

    auto* play_cmd = app.add_subcommand("play", "Play the strategy against a policy");
    play_cmd->add_option("scenario", o.input)->required()->check(CLI::ExistingFile);
    play_cmd->add_option("--trace-out", o.trace_out, "Write the event trace here");
    play_cmd->callback(run(cmd_play));

    auto* explore_cmd = app.add_subcommand("explore", "Play against every capped Mephisto choice");
    explore_cmd->add_option("scenario", o.input)->required()->check(CLI::ExistingFile);
    explore_cmd->add_option("--depth-cap", o.depth_cap)->check(CLI::NonNegativeNumber);
    explore_cmd->add_option("--trace-out", o.trace_out, "Write the first failing branch here");
    explore_cmd->callback(run(cmd_explore));

    auto* export_cmd = app.add_subcommand("export", "Export to other formats");
    export_cmd->require_subcommand(1);
    export_cmd->fallthrough();
    auto* dot = export_cmd->add_subcommand("dot", "Scenario board or quest tree (from a trace) as DOT");
    dot->add_option("file", o.input)->required()->check(CLI::ExistingFile);
    dot->add_option("-o,--output", o.output);
    dot->callback(run(cmd_export_dot));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kViolations;
    }
    return code;
}
