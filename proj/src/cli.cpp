#include "pursuit/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pursuit/games.hpp"
#include "pursuit/io.hpp"
#include "pursuit/oracle.hpp"
#include "pursuit/position_independent.hpp"
#include "pursuit/relations.hpp"
#include "pursuit/state_digraph.hpp"

namespace pursuit {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct Loaded {
    Manifest manifest;
    GameSpec spec;
};

Loaded load(const std::string& path)
{
    auto manifest = parse_manifest_file(path);
    auto spec = load_game(manifest);
    const auto problems = validate_spec(spec);
    if (!problems.empty()) {
        std::string message = "invalid game " + spec.name() + ":";
        for (std::size_t i = 0; i < problems.size() && i < 5; ++i)
            message += "\n  " + problems[i].message;
        throw InvalidSpecError(message);
    }
    return { std::move(manifest), std::move(spec) };
}

Json ext_json(ExtNat v)
{
    if (v.is_infinite())
        return nullptr;
    return v.value();
}

std::string start_text(const GameSpec& spec, std::optional<PositionId> p)
{
    return p ? spec.pursuer_name(*p) : std::string{ "none" };
}

Json start_json(std::optional<PositionId> p)
{
    if (!p)
        return nullptr;
    return p->index;
}

std::string position_text(const GameSpec& spec, JointPosition pos)
{
    return "(" + spec.pursuer_name(pos.pursuer) + ", " + spec.evader_name(pos.evader) + ")";
}

std::string state_text(const GameSpec& spec, const GameState& s)
{
    return position_text(spec, s.position) + (s.turn == Turn::PursuerToMove ? " P" : " E");
}

Json position_json(JointPosition pos)
{
    return Json{ { "pursuer", pos.pursuer.index }, { "evader", pos.evader.index } };
}

struct EngineOutcome {
    std::string engine;
    Player winner = Player::Evader;
    std::optional<PositionId> start;
    ExtNat length = ExtNat::infinity();
};

EngineOutcome run_labels(const GameSpec& spec)
{
    const auto d = build_state_digraph(spec);
    const auto result = solve(spec, d, compute_labels(d));
    return { "labels", result.winner, result.best_start, result.value };
}

EngineOutcome run_relations(const GameSpec& spec)
{
    const auto r = compute_relations(spec);
    const auto verdict = pursuer_wins_relational(spec, r);
    return { "relations", verdict.winner, verdict.witness, game_length(spec, r) };
}

EngineOutcome run_matrix(const GameSpec& spec)
{
    const auto digraphs = derive_position_digraphs(spec);
    const auto matrix = fill_relation_matrix(digraphs.pursuer, digraphs.evader, final_positions(spec));
    const auto length = matrix_game_length(matrix, digraphs.pursuer, spec);
    return { "matrix", length.value.is_finite() ? Player::Pursuer : Player::Evader, length.best_start,
             length.value };
}

EngineOutcome run_oracle(const GameSpec& spec, std::size_t capacity)
{
    const auto result = oracle_solve(spec, capacity);
    return { "oracle", result.winner, result.best_start, result.value };
}

SolverChoice parse_solver(const std::string& name)
{
    if (name == "labels")
        return SolverChoice::Labels;
    if (name == "relations")
        return SolverChoice::Relations;
    if (name == "matrix")
        return SolverChoice::Matrix;
    return SolverChoice::Auto;
}

SolverChoice resolve(SolverChoice choice, const GameSpec& spec)
{
    if (choice != SolverChoice::Auto)
        return choice;
    return verify_position_independence(spec).independent ? SolverChoice::Matrix : SolverChoice::Labels;
}

EngineOutcome run_engine(SolverChoice choice, const GameSpec& spec)
{
    switch (resolve(choice, spec)) {
    case SolverChoice::Relations: return run_relations(spec);
    case SolverChoice::Matrix: return run_matrix(spec);
    default: return run_labels(spec);
    }
}

std::string outcome_text(const GameSpec& spec, const EngineOutcome& e)
{
    return to_string(e.winner) + " start=" + start_text(spec, e.start) + " length=" + e.length.to_string();
}

Json outcome_json(const EngineOutcome& e)
{
    return Json{ { "winner", to_string(e.winner) }, { "start", start_json(e.start) },
                 { "length", ext_json(e.length) } };
}

void write_json(const std::string& path, const Json& doc)
{
    std::ofstream file{ path };
    if (!file)
        throw std::runtime_error("cannot write " + path);
    file << doc.dump(2) << '\n';
}

Json document(const std::string& command)
{
    return Json{ { "schema_version", kSchemaVersion }, { "command", command } };
}

// Sections shared by `solve` (through the manifest's outputs) and the
// dedicated subcommands.

void strategy_section(const GameSpec& spec, std::ostream& out, Json& doc)
{
    const auto d = build_state_digraph(spec);
    const auto labels = compute_labels(d);
    const auto strategies = extract_strategies(d, labels);
    Json pursuer = Json::array();
    Json evader = Json::array();
    std::size_t pursuer_count = 0;
    std::size_t evader_count = 0;
    std::ostringstream lines;
    for (StateIndex s = 0; s < d.size(); ++s) {
        const auto& st = d.state(s);
        const bool pursuer_turn = st.turn == Turn::PursuerToMove;
        const auto choice = (pursuer_turn ? strategies.pursuer : strategies.evader).at(s);
        if (!choice)
            continue;
        const auto& next = d.state(*choice).position;
        if (pursuer_turn) {
            ++pursuer_count;
            lines << "pursuer " << position_text(spec, st.position) << ": " << spec.pursuer_name(next.pursuer)
                  << '\n';
            pursuer.push_back(Json{ { "pursuer", st.position.pursuer.index },
                                    { "evader", st.position.evader.index },
                                    { "move", next.pursuer.index },
                                    { "label", ext_json(labels[s]) } });
        } else {
            ++evader_count;
            lines << "evader " << position_text(spec, st.position) << ": " << spec.evader_name(next.evader)
                  << '\n';
            evader.push_back(Json{ { "pursuer", st.position.pursuer.index },
                                   { "evader", st.position.evader.index },
                                   { "move", next.evader.index },
                                   { "label", ext_json(labels[s]) } });
        }
    }
    out << "strategy_pursuer_states: " << pursuer_count << '\n';
    out << "strategy_evader_states: " << evader_count << '\n';
    out << lines.str();
    doc["strategy"] = Json{ { "pursuer", std::move(pursuer) }, { "evader", std::move(evader) } };
}

void ordering_section(const GameSpec& spec, std::ostream& out, Json& doc)
{
    const auto digraphs = derive_position_digraphs(spec);
    const auto matrix = fill_relation_matrix(digraphs.pursuer, digraphs.evader, final_positions(spec));
    const auto ordering = extract_removable_ordering(matrix, digraphs.pursuer, spec);
    if (!ordering) {
        out << "ordering: none\n";
        doc["ordering"] = nullptr;
        return;
    }
    std::string text;
    Json sequence = Json::array();
    for (auto pos : ordering->sequence) {
        text += (text.empty() ? "" : " ") + position_text(spec, pos);
        sequence.push_back(position_json(pos));
    }
    out << "ordering: " << text << '\n';
    out << "ordering_size: " << ordering->sequence.size() << '\n';
    out << "witness_start: " << spec.pursuer_name(ordering->witness_start) << '\n';
    doc["ordering"] = Json{ { "sequence", std::move(sequence) }, { "witness_start", ordering->witness_start.index } };
}

void trace_section(const GameSpec& spec, std::optional<std::size_t> cutoff, std::ostream& out, Json& doc)
{
    const auto d = build_state_digraph(spec);
    const auto labels = compute_labels(d);
    const auto strategies = extract_strategies(d, labels);
    const auto result = solve(spec, d, labels);

    auto start_value = [&](PositionId p, PositionId q) {
        if (is_final_at_start(spec, { p, q }))
            return ExtNat{ 0 };
        return pursuer_moves_from_label(labels[*d.index_of({ { p, q }, Turn::PursuerToMove })]);
    };
    // Optimal start for the Pursuer, then the Evader's least-index reply that
    // makes the game last longest.
    const auto p = result.best_start.value_or(spec.initial_pursuer().front());
    std::optional<PositionId> q;
    ExtNat worst{ 0 };
    for (auto candidate : spec.initial_evader(p)) {
        const auto v = start_value(p, candidate);
        if (!q || v > worst) {
            q = candidate;
            worst = v;
        }
    }
    std::size_t pursuer_states = 0;
    for (StateIndex s = 0; s < d.size(); ++s)
        pursuer_states += d.turn(s) == Turn::PursuerToMove ? 1 : 0;
    // Positional play repeats a state within this many Pursuer moves.
    const auto limit = cutoff.value_or(pursuer_states + 1);
    const auto trace = play_trace(spec, d, strategies.pursuer, strategies.evader, { p, *q }, limit);

    Json steps = Json::array();
    out << "trace_start: " << position_text(spec, { p, *q }) << '\n';
    for (std::size_t i = 0; i < trace.moves.size(); ++i) {
        out << "step " << i << ": " << state_text(spec, trace.moves[i]) << '\n';
        auto step = position_json(trace.moves[i].position);
        step["turn"] = trace.moves[i].turn == Turn::PursuerToMove ? "P" : "E";
        steps.push_back(std::move(step));
    }
    const bool captured = trace.outcome == PlayTrace::Outcome::PursuerWin;
    out << "outcome: " << (captured ? "Pursuer wins" : "Evader survives") << '\n';
    out << "pursuer_moves: " << trace.pursuer_moves << '\n';
    doc["trace"] = Json{ { "start", position_json({ p, *q }) },
                         { "steps", std::move(steps) },
                         { "outcome", captured ? "Pursuer" : "Evader" },
                         { "pursuer_moves", trace.pursuer_moves } };
}

void write_text_file(const fs::path& path, const std::string& text)
{
    std::ofstream file{ path };
    if (!file)
        throw std::runtime_error("cannot write " + path.string());
    file << text;
}

// Manifests named on the command line, directories expanded to their
// *.manifest files in path order.
std::vector<std::string> collect_manifests(const std::vector<std::string>& paths)
{
    std::vector<std::string> manifests;
    for (const auto& path : paths) {
        if (!fs::is_directory(path)) {
            manifests.push_back(path);
            continue;
        }
        std::vector<std::string> found;
        for (const auto& entry : fs::directory_iterator(path))
            if (entry.is_regular_file() && entry.path().extension() == ".manifest")
                found.push_back(entry.path().generic_string());
        std::sort(found.begin(), found.end());
        manifests.insert(manifests.end(), found.begin(), found.end());
    }
    return manifests;
}

struct CheckSummary {
    bool agree = true;
    Json json;
};

CheckSummary oracle_check_one(const std::string& path, std::size_t oracle_capacity, std::ostream& out)
{
    CheckSummary summary;
    const auto loaded = load(path);
    const auto& spec = loaded.spec;
    out << "manifest: " << path << '\n';
    out << "game: " << spec.name() << '\n';
    summary.json = Json{ { "manifest", path }, { "game", spec.name() } };

    std::vector<EngineOutcome> outcomes;
    outcomes.push_back(run_labels(spec));
    outcomes.push_back(run_relations(spec));

    const auto independence = verify_position_independence(spec);
    if (independence.independent)
        outcomes.push_back(run_matrix(spec));
    else
        out << "matrix: skipped (position dependent)\n";
    summary.json["position_independent"] = independence.independent;

    bool oracle_ran = false;
    try {
        outcomes.push_back(run_oracle(spec, oracle_capacity));
        oracle_ran = true;
    } catch (const CapacityError&) {
        out << "oracle: skipped (capacity " << oracle_capacity << " exceeded)\n";
    }
    for (const auto& e : outcomes) {
        out << e.engine << ": " << outcome_text(spec, e) << '\n';
        summary.json[e.engine] = outcome_json(e);
    }
    for (const auto& e : outcomes)
        if (e.winner != outcomes.front().winner || e.length != outcomes.front().length)
            summary.agree = false;

    // Label/rank correspondence on every Evader-turn state.
    const auto d = build_state_digraph(spec);
    const auto violations
        = check_label_rank_correspondence(spec, d, compute_labels(d), compute_relations(spec));
    out << "label_rank_violations: " << violations.size() << '\n';
    summary.json["label_rank_violations"] = violations.size();
    if (!violations.empty())
        summary.agree = false;

    if (independence.independent) {
        const auto digraphs = derive_position_digraphs(spec);
        const auto final = final_positions(spec);
        const auto matrix = fill_relation_matrix(digraphs.pursuer, digraphs.evader, final);
        const auto ordering = extract_removable_ordering(matrix, digraphs.pursuer, spec);
        std::string status;
        if (!ordering)
            status = outcomes.front().winner == Player::Evader ? "none" : "missing";
        else if (outcomes.front().winner == Player::Evader)
            status = "unexpected";
        else
            status = verify_removable_ordering(*ordering, digraphs.pursuer, digraphs.evader, final, spec)
                       ? "verified"
                       : "rejected";
        out << "ordering: " << status << '\n';
        summary.json["ordering"] = status;
        if (status != "none" && status != "verified")
            summary.agree = false;
    }
    out << "oracle_checked: " << (oracle_ran ? "yes" : "no") << '\n';
    out << "agreement: " << (summary.agree ? "yes" : "no") << '\n';
    summary.json["oracle_checked"] = oracle_ran;
    summary.json["agreement"] = summary.agree;
    return summary;
}

InputGraph bench_graph(const std::string& shape, std::uint32_t n)
{
    if (shape == "path")
        return make_path(n);
    if (shape == "cycle")
        return make_cycle(n);
    if (shape == "complete")
        return make_complete(n);
    return make_petersen();
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{ "Solver for generalized Cops and Robbers games", "pursuit" };
    app.require_subcommand(1);

    std::string manifest_path;
    std::string json_path;
    std::optional<std::string> solver_name;
    const auto solvers = CLI::IsMember({ "labels", "relations", "matrix", "auto" });

    auto add_common = [&](CLI::App* cmd, bool with_solver) {
        cmd->add_option("manifest", manifest_path, "Run manifest")->required()->check(CLI::ExistingFile);
        cmd->add_option("--json", json_path, "Also write the result as JSON to this file");
        if (with_solver)
            cmd->add_option("--solver", solver_name, "labels, relations, matrix or auto (overrides the manifest)")
                ->check(solvers);
    };

    auto* solve_cmd = app.add_subcommand("solve", "Winner, optimal start and game length");
    add_common(solve_cmd, true);
    std::string expect;
    solve_cmd->add_option("--expect", expect, "Exit with code 2 unless this player wins")
        ->check(CLI::IsMember({ "pursuer", "evader" }));
    std::string output_dir = ".";
    solve_cmd->add_option("--output-dir", output_dir, "Directory for DOT files requested by the manifest");

    auto* length_cmd = app.add_subcommand("length", "Game length in Pursuer moves");
    add_common(length_cmd, true);

    auto* strategy_cmd = app.add_subcommand("strategy", "Optimal positional strategies of both players");
    add_common(strategy_cmd, false);

    auto* ordering_cmd = app.add_subcommand("ordering", "Removable vertex ordering of the product digraph");
    add_common(ordering_cmd, false);

    auto* trace_cmd = app.add_subcommand("trace", "One play under the optimal strategies");
    add_common(trace_cmd, false);
    std::optional<std::size_t> cutoff;
    trace_cmd->add_option("--cutoff", cutoff, "Stop after this many Pursuer moves");

    auto* check_cmd = app.add_subcommand("oracle-check", "Cross-check every engine against the brute-force oracle");
    std::vector<std::string> check_paths;
    check_cmd->add_option("manifests", check_paths, "Manifest files or directories")->required();
    check_cmd->add_option("--json", json_path, "Also write the results as JSON to this file");
    std::size_t oracle_capacity = kDefaultOracleCapacity;
    check_cmd->add_option("--oracle-capacity", oracle_capacity, "State limit for the oracle");

    auto* dot_cmd = app.add_subcommand("export-dot", "Write a DOT digraph");
    dot_cmd->add_option("manifest", manifest_path, "Run manifest")->required()->check(CLI::ExistingFile);
    std::string dot_kind = "state";
    dot_cmd->add_option("--kind", dot_kind, "state (state digraph) or round (product of position digraphs)")
        ->check(CLI::IsMember({ "state", "round" }));
    std::string dot_output;
    dot_cmd->add_option("-o,--output", dot_output, "Output file (default: standard output)");

    auto* bench_cmd = app.add_subcommand("bench", "Timing table over a family sweep");
    std::string bench_family = "classic";
    bench_cmd->add_option("--family", bench_family)->check(CLI::IsMember({ "classic", "distance_k" }));
    std::string bench_shape = "cycle";
    bench_cmd->add_option("--graph", bench_shape)->check(CLI::IsMember({ "path", "cycle", "complete", "petersen" }));
    std::uint32_t bench_from = 4;
    std::uint32_t bench_to = 8;
    std::uint32_t bench_k = 1;
    std::uint32_t bench_d = 1;
    bench_cmd->add_option("--from", bench_from, "Smallest vertex count")->check(CLI::Range(1u, 1000u));
    bench_cmd->add_option("--to", bench_to, "Largest vertex count")->check(CLI::Range(1u, 1000u));
    bench_cmd->add_option("--k", bench_k, "Number of cops")->check(CLI::Range(1u, 4u));
    bench_cmd->add_option("--d", bench_d, "Capture distance for distance_k");
    std::vector<std::string> bench_engines{ "labels", "relations", "matrix" };
    bench_cmd->add_option("--engines", bench_engines)->check(CLI::IsMember({ "labels", "relations", "matrix", "oracle" }));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    try {
        if (*solve_cmd || *length_cmd) {
            const auto loaded = load(manifest_path);
            const auto& spec = loaded.spec;
            const auto choice = resolve(solver_name ? parse_solver(*solver_name) : loaded.manifest.solver, spec);
            const auto outcome = run_engine(choice, spec);
            auto doc = document(*solve_cmd ? "solve" : "length");
            out << "game: " << spec.name() << '\n';
            out << "solver: " << to_string(choice) << '\n';
            doc["game"] = spec.name();
            doc["solver"] = to_string(choice);
            if (*solve_cmd)
                out << "winner: " << to_string(outcome.winner) << '\n';
            out << "start: " << start_text(spec, outcome.start) << '\n';
            out << "length: " << outcome.length << '\n';
            if (*solve_cmd)
                doc["winner"] = to_string(outcome.winner);
            doc["start"] = start_json(outcome.start);
            doc["length"] = ext_json(outcome.length);

            if (*solve_cmd) {
                const auto& m = loaded.manifest;
                if (m.wants("strategy"))
                    strategy_section(spec, out, doc);
                if (m.wants("ordering"))
                    ordering_section(spec, out, doc);
                if (m.wants("trace"))
                    trace_section(spec, std::nullopt, out, doc);
                if (m.wants("dot")) {
                    const auto d = build_state_digraph(spec);
                    const auto path = fs::path{ output_dir } / (fs::path{ manifest_path }.stem().string() + ".state.dot");
                    write_text_file(path, state_digraph_dot(spec, d, compute_labels(d)));
                    out << "dot: " << path.generic_string() << '\n';
                    doc["dot"] = path.generic_string();
                }
            }
            if (!json_path.empty())
                write_json(json_path, doc);
            if (!expect.empty()) {
                const auto wanted = expect == "pursuer" ? Player::Pursuer : Player::Evader;
                if (outcome.winner != wanted)
                    return 2;
            }
            return 0;
        }

        if (*strategy_cmd || *ordering_cmd || *trace_cmd) {
            const auto loaded = load(manifest_path);
            const auto& spec = loaded.spec;
            const std::string command = *strategy_cmd ? "strategy" : *ordering_cmd ? "ordering" : "trace";
            auto doc = document(command);
            out << "game: " << spec.name() << '\n';
            doc["game"] = spec.name();
            if (*strategy_cmd)
                strategy_section(spec, out, doc);
            else if (*ordering_cmd)
                ordering_section(spec, out, doc);
            else
                trace_section(spec, cutoff, out, doc);
            if (!json_path.empty())
                write_json(json_path, doc);
            return 0;
        }

        if (*check_cmd) {
            const auto manifests = collect_manifests(check_paths);
            if (manifests.empty())
                throw std::invalid_argument("no manifests found");
            auto doc = document("oracle-check");
            Json results = Json::array();
            std::size_t disagreements = 0;
            for (const auto& path : manifests) {
                auto summary = oracle_check_one(path, oracle_capacity, out);
                disagreements += summary.agree ? 0 : 1;
                results.push_back(std::move(summary.json));
                out << '\n';
            }
            out << "manifests: " << manifests.size() << '\n';
            out << "disagreements: " << disagreements << '\n';
            doc["results"] = std::move(results);
            doc["disagreements"] = disagreements;
            if (!json_path.empty())
                write_json(json_path, doc);
            return disagreements == 0 ? 0 : 1;
        }

        if (*dot_cmd) {
            const auto loaded = load(manifest_path);
            std::string text;
            if (dot_kind == "state") {
                const auto d = build_state_digraph(loaded.spec);
                text = state_digraph_dot(loaded.spec, d, compute_labels(d));
            } else {
                text = round_summary_dot(loaded.spec, derive_position_digraphs(loaded.spec));
            }
            if (dot_output.empty())
                out << text;
            else
                write_text_file(dot_output, text);
            return 0;
        }

        if (*bench_cmd) {
            if (bench_from > bench_to)
                throw std::invalid_argument("--from exceeds --to");
            out << std::left << std::setw(10) << "graph" << std::setw(6) << "n" << std::setw(10) << "states"
                << std::setw(11) << "engine" << std::setw(9) << "winner" << std::setw(8) << "length"
                << "ms\n";
            for (auto n = bench_from; n <= bench_to; ++n) {
                const auto g = bench_graph(bench_shape, n);
                const auto spec
                    = bench_family == "classic" ? classic_cops(g, bench_k) : distance_k_cops(g, bench_k, bench_d);
                const auto states = reachable_states(spec).size();
                for (const auto& engine : bench_engines) {
                    const auto begin = std::chrono::steady_clock::now();
                    const auto e = engine == "labels"      ? run_labels(spec)
                                   : engine == "relations" ? run_relations(spec)
                                   : engine == "matrix"    ? run_matrix(spec)
                                                           : run_oracle(spec, kDefaultOracleCapacity);
                    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - begin;
                    out << std::left << std::setw(10) << bench_shape << std::setw(6) << g.n << std::setw(10) << states
                        << std::setw(11) << engine << std::setw(9) << to_string(e.winner) << std::setw(8)
                        << e.length.to_string() << std::fixed << std::setprecision(2) << elapsed.count() << '\n';
                }
                if (bench_shape == "petersen")
                    break;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

} // namespace pursuit
