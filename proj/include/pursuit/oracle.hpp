#pragma once

// Brute-force reference solver. It enumerates states on its own and decides
// "the Pursuer wins within m of its own moves" by memoized depth-bounded
// minimax, sharing no code with the labelling, relation or matrix engines.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "pursuit/ext_nat.hpp"
#include "pursuit/game.hpp"

namespace pursuit {

inline constexpr std::size_t kDefaultOracleCapacity = 200'000;

struct OracleResult {
    Player winner = Player::Evader;
    ExtNat value = ExtNat::infinity(); // Pursuer moves under optimal play
    std::optional<PositionId> best_start;
    // Win/loss for the Pursuer at every state the oracle enumerated.
    std::map<GameState, bool> pursuer_wins;
};

[[nodiscard]] OracleResult oracle_solve(const GameSpec& spec, std::size_t capacity = kDefaultOracleCapacity);

// Pursuer moves needed from a Pursuer-turn start under optimal play
// (0 when final at placement), infinity when the Evader survives.
[[nodiscard]] std::map<JointPosition, ExtNat> oracle_start_values(const GameSpec& spec,
                                                                  std::size_t capacity = kDefaultOracleCapacity);

class LimitExceededError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A positional Evader strategy: one chosen move per non-terminal reachable
// Evader-turn state, sorted by state.
using EvaderPolicy = std::vector<std::pair<GameState, PositionId>>;

// Number of positional Evader strategies (product of Evader out-degrees),
// saturating at limit + 1.
[[nodiscard]] std::uint64_t count_evader_strategies(const GameSpec& spec, std::uint64_t limit);

// Calls `visit` once per positional Evader strategy, in lexicographic order
// of the choices. Throws LimitExceededError when there are more than `limit`
// strategies (and always for limit 0).
void enumerate_evader_strategies(const GameSpec& spec, std::uint64_t limit,
                                 const std::function<void(const EvaderPolicy&)>& visit);

} // namespace pursuit
