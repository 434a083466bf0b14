#pragma once

// Constructors for well-known pursuit games. Every constructor returns a spec
// that passes validate_spec on well-formed input.
//
// Cop teams are encoded as k-tuples of vertices in mixed radix with the first
// cop most significant: (c_0, ..., c_{k-1}) -> c_0 n^{k-1} + ... + c_{k-1}.
// This matches the vertex numbering of the k-fold categorical product.

#include <cstdint>
#include <vector>

#include "pursuit/game.hpp"
#include "pursuit/graph.hpp"

namespace pursuit {

[[nodiscard]] std::vector<std::uint32_t> decode_team(std::uint64_t index, std::uint32_t n, std::uint32_t k);
[[nodiscard]] std::uint64_t encode_team(const std::vector<std::uint32_t>& team, std::uint32_t n);

// k cops and one robber moving along (closed, when reflexive) neighbourhoods;
// capture when the robber shares a vertex with some cop. All starts allowed.
[[nodiscard]] GameSpec classic_cops(const InputGraph& g, std::uint32_t k);

// Capture when the robber is within distance d of some cop. d = 0 is the
// classic game.
[[nodiscard]] GameSpec distance_k_cops(const InputGraph& g, std::uint32_t k, std::uint32_t d);

// Classic capture plus every position with the robber on a trap.
[[nodiscard]] GameSpec traps_cops(const InputGraph& g, std::uint32_t k, const std::vector<std::uint32_t>& traps);

// Pursuer positions of the tandem game, in index order: 2 * pairs cop tuples
// whose members 2i and 2i+1 are equal or adjacent.
[[nodiscard]] std::vector<std::vector<std::uint32_t>> tandem_teams(const InputGraph& g, std::uint32_t pairs);

[[nodiscard]] GameSpec tandem_cops(const InputGraph& g, std::uint32_t pairs);

enum class GuardMoves { AllGuards, OneGuard };

// Guard sets (the Evader) are k-subsets of V(G) in lexicographic order.
[[nodiscard]] std::vector<std::vector<std::uint32_t>> guard_sets(std::uint32_t n, std::uint32_t k);

// Pursuer = attacked vertex, Evader = guard set. The Evader loses when after
// its move the attacked vertex carries no guard.
[[nodiscard]] GameSpec eternal_domination(const InputGraph& g, std::uint32_t k,
                                          GuardMoves variant = GuardMoves::AllGuards);

inline constexpr std::uint32_t kMaxSeepageVertices = 20;

// Pursuer positions are protected-vertex bitmasks (bit v = vertex v), the
// Evader position is the sludge vertex. Each Pursuer move protects up to
// `greens` new vertices not holding sludge; the sludge stays or follows an arc
// into an unprotected vertex. Final when no sink is reachable from the sludge
// through unprotected vertices.
[[nodiscard]] GameSpec seepage(const InputGraph& dag, std::uint32_t source, const std::vector<std::uint32_t>& sinks,
                               std::uint32_t greens);

} // namespace pursuit
