#pragma once

// File formats: the line-oriented graph format, run manifests, DOT export and
// JSON results. The grammars are documented in docs/formats.md.

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pursuit/game.hpp"
#include "pursuit/games.hpp"
#include "pursuit/graph.hpp"
#include "pursuit/position_independent.hpp"
#include "pursuit/state_digraph.hpp"

namespace pursuit {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, std::size_t line, const std::string& message)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), _line{ line }
    {
    }

    [[nodiscard]] std::size_t line() const { return _line; }

private:
    std::size_t _line;
};

// header `graph <n> <directed|undirected> <reflexive|plain>`, then `e u v`
// lines; `#` starts a comment.
[[nodiscard]] InputGraph parse_graph(std::istream& in, const std::string& source = "<graph>");
[[nodiscard]] InputGraph parse_graph_file(const std::filesystem::path& path);
[[nodiscard]] std::string format_graph(const InputGraph& g);

enum class SolverChoice { Labels, Relations, Matrix, Auto };

[[nodiscard]] std::string to_string(SolverChoice s);

struct Manifest {
    std::string family;
    std::filesystem::path graph;
    std::uint32_t k = 1;
    std::uint32_t d = 0;
    std::uint32_t pairs = 1;
    std::uint32_t guards = 1;
    GuardMoves guard_moves = GuardMoves::AllGuards;
    std::uint32_t greens = 1;
    std::uint32_t source = 0;
    std::vector<std::uint32_t> traps;
    std::vector<std::uint32_t> sinks;
    std::optional<FinalCheckTiming> timing;
    SolverChoice solver = SolverChoice::Auto;
    std::vector<std::string> outputs{ "winner", "length" };

    [[nodiscard]] bool wants(const std::string& output) const;
};

inline const std::vector<std::string>& manifest_families()
{
    static const std::vector<std::string> names{ "classic", "distance_k", "traps", "tandem", "eternal_domination",
                                                 "seepage" };
    return names;
}

// `key: value` lines. Relative graph paths resolve against `base_dir`.
[[nodiscard]] Manifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir,
                                      const std::string& source = "<manifest>");
[[nodiscard]] Manifest parse_manifest_file(const std::filesystem::path& path);

[[nodiscard]] GameSpec build_game(const Manifest& manifest, const InputGraph& graph);
[[nodiscard]] GameSpec load_game(const Manifest& manifest);

[[nodiscard]] std::string state_digraph_dot(const GameSpec& spec, const StateDigraph& d, const LabelTable& labels);
[[nodiscard]] std::string round_summary_dot(const GameSpec& spec, const PositionDigraphs& digraphs);

} // namespace pursuit
