#include "pursuit/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>

namespace pursuit {

void check_graph(const InputGraph& g)
{
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (auto [u, v] : g.edges) {
        if (u >= g.n || v >= g.n)
            throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v)
                                        + ") has an endpoint outside 0.." + std::to_string(g.n) + "-1");
        const std::pair key = g.directed ? std::pair{ u, v } : std::pair{ std::min(u, v), std::max(u, v) };
        if (!seen.insert(key).second)
            throw std::invalid_argument("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
        if (u == v && g.reflexive)
            throw std::invalid_argument("loop at " + std::to_string(u) + " is already implied by a reflexive graph");
    }
}

Adjacency out_neighbourhoods(const InputGraph& g)
{
    Adjacency adj(g.n);
    for (auto [u, v] : g.edges) {
        adj[u].push_back(v);
        if (!g.directed)
            adj[v].push_back(u);
    }
    if (g.reflexive)
        for (std::uint32_t v = 0; v < g.n; ++v)
            adj[v].push_back(v);
    for (auto& out : adj) {
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return adj;
}

std::vector<std::vector<std::uint32_t>> all_pairs_distances(const InputGraph& g)
{
    const auto adj = out_neighbourhoods(g);
    std::vector<std::vector<std::uint32_t>> dist(g.n, std::vector<std::uint32_t>(g.n, kUnreachable));
    for (std::uint32_t s = 0; s < g.n; ++s) {
        auto& row = dist[s];
        row[s] = 0;
        std::deque<std::uint32_t> queue{ s };
        while (!queue.empty()) {
            const auto v = queue.front();
            queue.pop_front();
            for (auto w : adj[v])
                if (row[w] == kUnreachable) {
                    row[w] = row[v] + 1;
                    queue.push_back(w);
                }
        }
    }
    return dist;
}

InputGraph make_path(std::uint32_t n, bool reflexive)
{
    InputGraph g{ n, {}, false, reflexive };
    for (std::uint32_t v = 0; v + 1 < n; ++v)
        g.edges.emplace_back(v, v + 1);
    return g;
}

InputGraph make_cycle(std::uint32_t n, bool reflexive)
{
    if (n < 3)
        throw std::invalid_argument("make_cycle: n must be at least 3");
    auto g = make_path(n, reflexive);
    g.edges.emplace_back(n - 1, 0);
    return g;
}

InputGraph make_complete(std::uint32_t n, bool reflexive)
{
    InputGraph g{ n, {}, false, reflexive };
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v)
            g.edges.emplace_back(u, v);
    return g;
}

InputGraph make_petersen(bool reflexive)
{
    InputGraph g{ 10, {}, false, reflexive };
    for (std::uint32_t i = 0; i < 5; ++i) {
        g.edges.emplace_back(i, (i + 1) % 5);         // outer cycle
        g.edges.emplace_back(i, i + 5);               // spokes
        g.edges.emplace_back(i + 5, (i + 2) % 5 + 5); // inner pentagram
    }
    return g;
}

} // namespace pursuit
