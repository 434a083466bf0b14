#pragma once

// Core abstraction of a generalized Cops and Robbers game: two players, the
// Pursuer and the Evader, each with a finite set of positions, alternating
// moves that only change the mover's own coordinate, a set of allowed start
// positions chosen Pursuer-first, and a set of final positions that end the
// game in the Pursuer's favour.
//
// Positions are dense integer indices into each player's position set. All
// move lists handed out by GameSpec are sorted and free of duplicates, which
// makes every downstream tie-break deterministic.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pursuit/ext_nat.hpp"

namespace pursuit {

inline constexpr std::size_t kDefaultStateCapacity = 50'000'000;

struct PositionId {
    std::uint32_t index = 0;

    auto operator<=>(const PositionId&) const = default;
};

struct JointPosition {
    PositionId pursuer;
    PositionId evader;

    auto operator<=>(const JointPosition&) const = default;
};

enum class Turn : std::uint8_t { PursuerToMove = 0, EvaderToMove = 1 };

enum class Player : std::uint8_t { Pursuer, Evader };

// Ordered by (pursuer index, evader index, turn) with PursuerToMove first.
struct GameState {
    JointPosition position;
    Turn turn = Turn::PursuerToMove;

    auto operator<=>(const GameState&) const = default;
};

enum class FinalCheckTiming : std::uint8_t { EveryStep, AfterEvaderMove, AfterPursuerMove };

using MoveList = std::vector<PositionId>;

[[nodiscard]] constexpr Turn other(Turn t)
{
    return t == Turn::PursuerToMove ? Turn::EvaderToMove : Turn::PursuerToMove;
}

[[nodiscard]] constexpr Player to_move(Turn t)
{
    return t == Turn::PursuerToMove ? Player::Pursuer : Player::Evader;
}

[[nodiscard]] std::string to_string(Turn t);
[[nodiscard]] std::string to_string(Player p);
[[nodiscard]] std::string to_string(FinalCheckTiming t);
[[nodiscard]] std::optional<FinalCheckTiming> parse_timing(const std::string& text);

class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidSpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raw ingredients of a game, filled in by game constructors.
struct GameRules {
    std::string name;
    std::size_t pursuer_position_count = 0;
    std::size_t evader_position_count = 0;
    std::function<bool(JointPosition)> is_final;
    std::function<MoveList(JointPosition)> pursuer_moves;
    std::function<MoveList(JointPosition)> evader_moves;
    MoveList initial_pursuer;
    std::function<MoveList(PositionId)> initial_evader;
    FinalCheckTiming final_check_timing = FinalCheckTiming::EveryStep;
    bool claims_position_independent = false;

    // Optional human readable position names; indices are used when absent.
    std::function<std::string(PositionId)> pursuer_name;
    std::function<std::string(PositionId)> evader_name;
};

// Immutable game definition. Safe to share between threads as long as the
// supplied callbacks are pure.
class GameSpec {
public:
    explicit GameSpec(GameRules rules);

    [[nodiscard]] const std::string& name() const { return _rules.name; }
    [[nodiscard]] std::size_t pursuer_position_count() const { return _rules.pursuer_position_count; }
    [[nodiscard]] std::size_t evader_position_count() const { return _rules.evader_position_count; }
    [[nodiscard]] FinalCheckTiming final_check_timing() const { return _rules.final_check_timing; }
    [[nodiscard]] bool claims_position_independent() const { return _rules.claims_position_independent; }

    [[nodiscard]] bool is_final(JointPosition pos) const { return _rules.is_final(pos); }

    // A_P(p, q): the Pursuer's next positions, sorted and deduplicated.
    [[nodiscard]] MoveList pursuer_moves(JointPosition pos) const;
    // A_E(p, q): the Evader's next positions, sorted and deduplicated.
    [[nodiscard]] MoveList evader_moves(JointPosition pos) const;
    [[nodiscard]] MoveList moves(JointPosition pos, Turn turn) const;

    // I_P, sorted and deduplicated.
    [[nodiscard]] const MoveList& initial_pursuer() const { return _initial_pursuer; }
    // I_E(p); empty for p outside I_P.
    [[nodiscard]] MoveList initial_evader(PositionId p) const;
    // I, sorted.
    [[nodiscard]] std::vector<JointPosition> initial_positions() const;

    [[nodiscard]] std::string pursuer_name(PositionId p) const;
    [[nodiscard]] std::string evader_name(PositionId q) const;

    [[nodiscard]] GameSpec with_timing(FinalCheckTiming timing) const;

    [[nodiscard]] bool valid_pursuer(PositionId p) const { return p.index < pursuer_position_count(); }
    [[nodiscard]] bool valid_evader(PositionId q) const { return q.index < evader_position_count(); }

private:
    GameRules _rules;
    MoveList _initial_pursuer;
};

struct Diagnostic {
    int rule = 0;
    std::optional<GameState> state;
    std::string message;
};

// Checks the game rules on every state reachable from the initial states.
// Violations are returned, never thrown.
[[nodiscard]] std::vector<Diagnostic> validate_spec(const GameSpec& spec,
                                                    std::size_t capacity = kDefaultStateCapacity);

// Final-position test gated by the game's FinalCheckTiming. `last_mover` is
// the player whose move produced the state; std::nullopt denotes the initial
// placement, which is always checked.
[[nodiscard]] bool is_final_now(const GameSpec& spec, const GameState& state,
                                std::optional<Player> last_mover);

// Whether a state reached during play is absorbing: the last mover is the
// player not to move in `state`.
[[nodiscard]] bool is_terminal(const GameSpec& spec, const GameState& state);

// Start positions are checked at placement regardless of timing.
[[nodiscard]] inline bool is_final_at_start(const GameSpec& spec, JointPosition pos)
{
    return spec.is_final(pos);
}

// States reachable from {((p,q), P) : p in I_P, q in I_E(p)} by alternating
// allowed moves, never expanding terminal states. Sorted by
// (pursuer, evader, turn). Throws CapacityError past `capacity` states and
// InvalidSpecError on out-of-range ids or empty move lists.
[[nodiscard]] std::vector<GameState> reachable_states(const GameSpec& spec,
                                                      std::size_t capacity = kDefaultStateCapacity);

struct StartChoice {
    std::optional<PositionId> best_start;
    ExtNat value = ExtNat::infinity();
};

// min over p in I_P of max over q in I_E(p) of value(p, q). best_start is the
// least-index p attaining a finite minimum, absent when every start has an
// infinite worst case.
template <typename ValueFn>
[[nodiscard]] StartChoice optimal_start(const GameSpec& spec, ValueFn&& value)
{
    StartChoice choice;
    for (auto p : spec.initial_pursuer()) {
        ExtNat worst{ 0 };
        for (auto q : spec.initial_evader(p)) {
            worst = std::max(worst, static_cast<ExtNat>(value(p, q)));
            if (worst.is_infinite())
                break;
        }
        if (worst.is_finite() && worst < choice.value) {
            choice.value = worst;
            choice.best_start = p;
        }
    }
    return choice;
}

// Dense key for a state; unique per spec.
[[nodiscard]] inline std::uint64_t state_key(const GameSpec& spec, const GameState& s)
{
    return (static_cast<std::uint64_t>(s.position.pursuer.index) * spec.evader_position_count()
            + s.position.evader.index) * 2
           + static_cast<std::uint64_t>(s.turn);
}

} // namespace pursuit
