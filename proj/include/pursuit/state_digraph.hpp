#pragma once

// The bipartite state digraph of a game and its retrograde labelling.
//
// Vertices are the reachable states; arcs are single allowed moves, so every
// arc joins a Pursuer-turn state to an Evader-turn state or vice versa.
// Terminal states carry no out-arcs.
//
// Labels: 0 on terminal states, 1 + min over successors on Pursuer-turn
// states and 1 + max over successors on Evader-turn states, infinity where no
// finite value is forced. A finite label is the number of moves (by both
// players) the game lasts under optimal play.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pursuit/ext_nat.hpp"
#include "pursuit/game.hpp"

namespace pursuit {

using StateIndex = std::uint32_t;

class StateDigraph {
public:
    StateDigraph() = default;
    StateDigraph(std::vector<GameState> states, std::vector<bool> terminal,
                 std::vector<std::vector<StateIndex>> successors);

    [[nodiscard]] std::size_t size() const { return _states.size(); }
    [[nodiscard]] std::size_t arc_count() const { return _targets.size(); }
    [[nodiscard]] const GameState& state(StateIndex i) const { return _states[i]; }
    [[nodiscard]] std::span<const GameState> states() const { return _states; }
    [[nodiscard]] bool is_terminal(StateIndex i) const { return _terminal[i]; }
    [[nodiscard]] Turn turn(StateIndex i) const { return _states[i].turn; }

    [[nodiscard]] std::span<const StateIndex> successors(StateIndex i) const
    {
        return { _targets.data() + _offsets[i], _targets.data() + _offsets[i + 1] };
    }
    [[nodiscard]] std::span<const StateIndex> predecessors(StateIndex i) const
    {
        return { _sources.data() + _reverse_offsets[i], _sources.data() + _reverse_offsets[i + 1] };
    }

    [[nodiscard]] std::optional<StateIndex> index_of(const GameState& s) const;

private:
    std::vector<GameState> _states;
    std::vector<bool> _terminal;
    std::vector<std::size_t> _offsets{ 0 };
    std::vector<StateIndex> _targets;
    std::vector<std::size_t> _reverse_offsets{ 0 };
    std::vector<StateIndex> _sources;
};

[[nodiscard]] StateDigraph build_state_digraph(const GameSpec& spec,
                                               std::size_t capacity = kDefaultStateCapacity);

struct LabelTable {
    std::vector<ExtNat> label;

    [[nodiscard]] ExtNat operator[](StateIndex i) const { return label[i]; }
};

// Counter-based backward induction from the terminal states, linear in arcs.
[[nodiscard]] LabelTable compute_labels(const StateDigraph& d);

// Pursuer moves still to be made from a Pursuer-turn state with the given
// label: ceil(label / 2).
[[nodiscard]] inline ExtNat pursuer_moves_from_label(ExtNat label) { return label.half_up(); }

struct Strategy {
    static constexpr StateIndex kNone = static_cast<StateIndex>(-1);
    std::vector<StateIndex> choice;

    [[nodiscard]] std::optional<StateIndex> at(StateIndex s) const
    {
        if (s >= choice.size() || choice[s] == kNone)
            return std::nullopt;
        return choice[s];
    }
};

struct StrategyPair {
    Strategy pursuer;
    Strategy evader;
};

// Pursuer: least-index successor of minimum label. Evader: least-index
// successor of maximum label, infinity beating every finite value. Both are
// defined on every non-terminal state of their owner.
[[nodiscard]] StrategyPair extract_strategies(const StateDigraph& d, const LabelTable& labels);

struct SolveResult {
    Player winner = Player::Evader;
    std::optional<PositionId> best_start;
    ExtNat value = ExtNat::infinity(); // in Pursuer moves
};

[[nodiscard]] SolveResult solve(const GameSpec& spec, const StateDigraph& d, const LabelTable& labels);
[[nodiscard]] SolveResult solve(const GameSpec& spec, std::size_t capacity = kDefaultStateCapacity);

class UndefinedStrategyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PlayTrace {
    enum class Outcome { PursuerWin, EvaderSurvives };

    std::vector<GameState> moves;
    Outcome outcome = Outcome::EvaderSurvives;
    std::size_t pursuer_moves = 0;
};

// Alternating play from ((start), P). `cutoff` bounds the number of Pursuer
// moves; it defaults to the number of states plus one.
[[nodiscard]] PlayTrace play_trace(const GameSpec& spec, const StateDigraph& d, const Strategy& pursuer,
                                   const Strategy& evader, JointPosition start,
                                   std::optional<std::size_t> cutoff = std::nullopt);

} // namespace pursuit
