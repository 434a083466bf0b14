#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace pursuit {

// A finite graph as read from a graph file. Undirected edges are stored once,
// in the orientation given. A reflexive graph has an implied loop at every
// vertex.
struct InputGraph {
    std::uint32_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    bool directed = false;
    bool reflexive = false;

    bool operator==(const InputGraph&) const = default;
};

using Adjacency = std::vector<std::vector<std::uint32_t>>;

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

// Throws std::invalid_argument on out-of-range endpoints or duplicate edges.
void check_graph(const InputGraph& g);

// Sorted out-neighbourhoods; loops included when the graph is reflexive or
// listed explicitly.
[[nodiscard]] Adjacency out_neighbourhoods(const InputGraph& g);

// Arc-count distances (loops ignored), kUnreachable when there is no path.
[[nodiscard]] std::vector<std::vector<std::uint32_t>> all_pairs_distances(const InputGraph& g);

[[nodiscard]] InputGraph make_path(std::uint32_t n, bool reflexive = true);
[[nodiscard]] InputGraph make_cycle(std::uint32_t n, bool reflexive = true);
[[nodiscard]] InputGraph make_complete(std::uint32_t n, bool reflexive = true);
[[nodiscard]] InputGraph make_petersen(bool reflexive = true);

} // namespace pursuit
