#include "pursuit/games.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pursuit {

namespace {

std::uint64_t checked_power(std::uint32_t n, std::uint32_t k)
{
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        total *= n;
        if (total > (std::uint64_t{ 1 } << 31))
            throw CapacityError("cop team space " + std::to_string(n) + "^" + std::to_string(k) + " is too large");
    }
    return total;
}

std::string team_name(const std::vector<std::uint32_t>& team)
{
    if (team.size() == 1)
        return std::to_string(team.front());
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < team.size(); ++i)
        os << (i ? "," : "") << team[i];
    os << ")";
    return os.str();
}

std::string set_name(const std::vector<std::uint32_t>& members)
{
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < members.size(); ++i)
        os << (i ? "," : "") << members[i];
    os << "}";
    return os.str();
}

MoveList as_moves(const std::vector<std::uint32_t>& v)
{
    MoveList out;
    out.reserve(v.size());
    for (auto x : v)
        out.push_back({ x });
    return out;
}

MoveList all_positions(std::size_t count)
{
    MoveList out(count);
    for (std::uint32_t i = 0; i < count; ++i)
        out[i] = { i };
    return out;
}

// All teams reachable in one step: each cop independently moves to an
// out-neighbour.
std::vector<std::uint32_t> team_steps(const Adjacency& adj, const std::vector<std::uint32_t>& team, std::uint32_t n)
{
    std::vector<std::uint32_t> out{ 0 };
    for (auto cop : team) {
        std::vector<std::uint32_t> next;
        next.reserve(out.size() * adj[cop].size());
        for (auto prefix : out)
            for (auto w : adj[cop])
                next.push_back(prefix * n + w);
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Shared data of the cop-team families.
struct CopTeamGame {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::vector<std::vector<std::uint32_t>> teams;   // pursuer index -> team
    std::vector<std::vector<std::uint32_t>> steps;   // pursuer index -> next pursuer indices
    Adjacency robber;                                 // robber moves
    std::vector<bool> final;                          // p * n + q
};

GameSpec make_cop_game(std::string name, std::shared_ptr<const CopTeamGame> game)
{
    GameRules rules;
    rules.name = std::move(name);
    rules.pursuer_position_count = game->teams.size();
    rules.evader_position_count = game->n;
    rules.is_final = [game](JointPosition pos) {
        return static_cast<bool>(game->final[pos.pursuer.index * game->n + pos.evader.index]);
    };
    rules.pursuer_moves = [game](JointPosition pos) { return as_moves(game->steps[pos.pursuer.index]); };
    rules.evader_moves = [game](JointPosition pos) { return as_moves(game->robber[pos.evader.index]); };
    rules.initial_pursuer = all_positions(game->teams.size());
    rules.initial_evader = [game](PositionId) { return all_positions(game->n); };
    rules.final_check_timing = FinalCheckTiming::EveryStep;
    rules.claims_position_independent = true;
    rules.pursuer_name = [game](PositionId p) { return team_name(game->teams[p.index]); };
    return GameSpec{ std::move(rules) };
}

std::shared_ptr<CopTeamGame> full_team_game(const InputGraph& g, std::uint32_t k)
{
    check_graph(g);
    if (k == 0)
        throw std::invalid_argument("at least one cop is required");
    if (g.n == 0)
        throw std::invalid_argument("graph has no vertices");
    const auto count = checked_power(g.n, k);
    auto game = std::make_shared<CopTeamGame>();
    game->n = g.n;
    game->k = k;
    game->robber = out_neighbourhoods(g);
    game->teams.reserve(count);
    game->steps.reserve(count);
    for (std::uint64_t p = 0; p < count; ++p) {
        game->teams.push_back(decode_team(p, g.n, k));
        game->steps.push_back(team_steps(game->robber, game->teams.back(), g.n));
    }
    game->final.assign(count * g.n, false);
    for (std::uint64_t p = 0; p < count; ++p)
        for (auto cop : game->teams[p])
            game->final[p * g.n + cop] = true;
    return game;
}

std::string cop_name(const char* family, std::uint32_t k)
{
    return std::string{ family } + "(k=" + std::to_string(k) + ")";
}

bool perfect_matching(const std::vector<std::uint32_t>& from, const std::vector<std::uint32_t>& to,
                      const Adjacency& adj)
{
    const auto k = from.size();
    auto compatible = [&](std::size_t i, std::size_t j) {
        return from[i] == to[j] || std::binary_search(adj[from[i]].begin(), adj[from[i]].end(), to[j]);
    };
    std::vector<int> match(k, -1); // to-index -> from-index
    std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t i, std::vector<bool>& used) {
        for (std::size_t j = 0; j < k; ++j) {
            if (used[j] || !compatible(i, j))
                continue;
            used[j] = true;
            if (match[j] < 0 || augment(static_cast<std::size_t>(match[j]), used)) {
                match[j] = static_cast<int>(i);
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<bool> used(k, false);
        if (!augment(i, used))
            return false;
    }
    return true;
}

} // namespace

std::vector<std::uint32_t> decode_team(std::uint64_t index, std::uint32_t n, std::uint32_t k)
{
    std::vector<std::uint32_t> team(k);
    for (std::uint32_t i = k; i-- > 0;) {
        team[i] = static_cast<std::uint32_t>(index % n);
        index /= n;
    }
    return team;
}

std::uint64_t encode_team(const std::vector<std::uint32_t>& team, std::uint32_t n)
{
    std::uint64_t index = 0;
    for (auto c : team)
        index = index * n + c;
    return index;
}

GameSpec classic_cops(const InputGraph& g, std::uint32_t k)
{
    return make_cop_game(cop_name("classic_cops", k), full_team_game(g, k));
}

GameSpec distance_k_cops(const InputGraph& g, std::uint32_t k, std::uint32_t d)
{
    if (d == 0)
        return classic_cops(g, k);
    auto game = full_team_game(g, k);
    const auto dist = all_pairs_distances(g);
    for (std::size_t p = 0; p < game->teams.size(); ++p)
        for (std::uint32_t q = 0; q < g.n; ++q)
            for (auto cop : game->teams[p])
                if (dist[q][cop] <= d)
                    game->final[p * g.n + q] = true;
    return make_cop_game("distance_k_cops(k=" + std::to_string(k) + ",d=" + std::to_string(d) + ")", game);
}

GameSpec traps_cops(const InputGraph& g, std::uint32_t k, const std::vector<std::uint32_t>& traps)
{
    auto game = full_team_game(g, k);
    for (auto t : traps) {
        if (t >= g.n)
            throw std::invalid_argument("trap vertex " + std::to_string(t) + " is not a vertex");
        for (std::size_t p = 0; p < game->teams.size(); ++p)
            game->final[p * g.n + t] = true;
    }
    return make_cop_game("traps_cops(k=" + std::to_string(k) + ",traps=" + std::to_string(traps.size()) + ")", game);
}

std::vector<std::vector<std::uint32_t>> tandem_teams(const InputGraph& g, std::uint32_t pairs)
{
    check_graph(g);
    if (pairs == 0)
        throw std::invalid_argument("at least one pair of cops is required");
    const auto dist = all_pairs_distances(g);
    auto close = [&](std::uint32_t a, std::uint32_t b) { return dist[a][b] <= 1 || dist[b][a] <= 1; };
    const auto count = checked_power(g.n, 2 * pairs);
    std::vector<std::vector<std::uint32_t>> teams;
    for (std::uint64_t p = 0; p < count; ++p) {
        auto team = decode_team(p, g.n, 2 * pairs);
        bool ok = true;
        for (std::uint32_t i = 0; i < pairs && ok; ++i)
            ok = close(team[2 * i], team[2 * i + 1]);
        if (ok)
            teams.push_back(std::move(team));
    }
    return teams;
}

GameSpec tandem_cops(const InputGraph& g, std::uint32_t pairs)
{
    auto game = std::make_shared<CopTeamGame>();
    game->n = g.n;
    game->k = 2 * pairs;
    game->teams = tandem_teams(g, pairs);
    game->robber = out_neighbourhoods(g);

    std::unordered_map<std::uint64_t, std::uint32_t> index;
    for (std::uint32_t i = 0; i < game->teams.size(); ++i)
        index.emplace(encode_team(game->teams[i], g.n), i);
    for (const auto& team : game->teams) {
        std::vector<std::uint32_t> allowed;
        for (auto code : team_steps(game->robber, team, g.n))
            if (auto it = index.find(code); it != index.end())
                allowed.push_back(it->second);
        std::sort(allowed.begin(), allowed.end());
        game->steps.push_back(std::move(allowed));
    }
    game->final.assign(game->teams.size() * g.n, false);
    for (std::size_t p = 0; p < game->teams.size(); ++p)
        for (auto cop : game->teams[p])
            game->final[p * g.n + cop] = true;
    return make_cop_game("tandem_cops(pairs=" + std::to_string(pairs) + ")", game);
}

std::vector<std::vector<std::uint32_t>> guard_sets(std::uint32_t n, std::uint32_t k)
{
    std::vector<std::vector<std::uint32_t>> sets;
    if (k > n)
        return sets;
    std::vector<std::uint32_t> current(k);
    std::iota(current.begin(), current.end(), 0u);
    while (true) {
        sets.push_back(current);
        std::int64_t i = static_cast<std::int64_t>(k) - 1;
        while (i >= 0 && current[static_cast<std::size_t>(i)] == n - k + static_cast<std::uint32_t>(i))
            --i;
        if (i < 0)
            break;
        ++current[static_cast<std::size_t>(i)];
        for (auto j = static_cast<std::size_t>(i) + 1; j < k; ++j)
            current[j] = current[j - 1] + 1;
    }
    return sets;
}

GameSpec eternal_domination(const InputGraph& g, std::uint32_t k, GuardMoves variant)
{
    check_graph(g);
    if (k == 0 || k > g.n)
        throw std::invalid_argument("guard count must be between 1 and the number of vertices");
    checked_power(g.n, k);

    struct Data {
        std::uint32_t n = 0;
        std::vector<std::vector<std::uint32_t>> sets;
        std::vector<std::vector<std::uint32_t>> moves;
        std::vector<std::vector<bool>> holds; // set index -> vertex -> guarded
    };
    auto data = std::make_shared<Data>();
    data->n = g.n;
    data->sets = guard_sets(g.n, k);
    const auto adj = out_neighbourhoods(g);

    std::map<std::vector<std::uint32_t>, std::uint32_t> index;
    for (std::uint32_t i = 0; i < data->sets.size(); ++i)
        index.emplace(data->sets[i], i);
    for (const auto& set : data->sets) {
        std::vector<bool> guarded(g.n, false);
        for (auto v : set)
            guarded[v] = true;
        data->holds.push_back(std::move(guarded));
    }

    data->moves.resize(data->sets.size());
    for (std::uint32_t i = 0; i < data->sets.size(); ++i) {
        const auto& from = data->sets[i];
        auto& out = data->moves[i];
        if (variant == GuardMoves::AllGuards) {
            for (std::uint32_t j = 0; j < data->sets.size(); ++j)
                if (perfect_matching(from, data->sets[j], adj))
                    out.push_back(j);
        } else {
            out.push_back(i);
            for (std::size_t slot = 0; slot < from.size(); ++slot)
                for (auto w : adj[from[slot]]) {
                    if (data->holds[i][w])
                        continue;
                    auto to = from;
                    to[slot] = w;
                    std::sort(to.begin(), to.end());
                    out.push_back(index.at(to));
                }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
        }
    }

    GameRules rules;
    rules.name = "eternal_domination(k=" + std::to_string(k)
                 + (variant == GuardMoves::OneGuard ? ",one_guard" : "") + ")";
    rules.pursuer_position_count = g.n;
    rules.evader_position_count = data->sets.size();
    rules.is_final = [data](JointPosition pos) { return !data->holds[pos.evader.index][pos.pursuer.index]; };
    rules.pursuer_moves = [n = g.n](JointPosition) { return all_positions(n); };
    rules.evader_moves = [data](JointPosition pos) { return as_moves(data->moves[pos.evader.index]); };
    rules.initial_pursuer = all_positions(g.n);
    rules.initial_evader = [data](PositionId p) {
        MoveList out;
        for (std::uint32_t i = 0; i < data->sets.size(); ++i)
            if (data->holds[i][p.index])
                out.push_back({ i });
        return out;
    };
    rules.final_check_timing = FinalCheckTiming::AfterEvaderMove;
    rules.claims_position_independent = true;
    rules.evader_name = [data](PositionId q) { return set_name(data->sets[q.index]); };
    return GameSpec{ std::move(rules) };
}

GameSpec seepage(const InputGraph& dag, std::uint32_t source, const std::vector<std::uint32_t>& sinks,
                 std::uint32_t greens)
{
    check_graph(dag);
    if (!dag.directed)
        throw std::invalid_argument("seepage is played on a directed graph");
    if (dag.n > kMaxSeepageVertices)
        throw CapacityError("seepage protected-set space 2^" + std::to_string(dag.n) + " exceeds the supported 2^"
                            + std::to_string(kMaxSeepageVertices));
    if (greens == 0)
        throw std::invalid_argument("at least one green is required");
    if (source >= dag.n)
        throw std::invalid_argument("source is not a vertex");

    const auto n = dag.n;
    std::vector<std::uint32_t> out_mask(n, 0), in_degree(n, 0), out_degree(n, 0);
    for (auto [u, v] : dag.edges) {
        if (u == v)
            throw std::invalid_argument("seepage graph must be acyclic (loop at " + std::to_string(u) + ")");
        out_mask[u] |= 1u << v;
        ++in_degree[v];
        ++out_degree[u];
    }
    // Kahn's algorithm for acyclicity.
    {
        auto indeg = in_degree;
        std::vector<std::uint32_t> ready;
        for (std::uint32_t v = 0; v < n; ++v)
            if (indeg[v] == 0)
                ready.push_back(v);
        std::uint32_t seen = 0;
        while (!ready.empty()) {
            const auto v = ready.back();
            ready.pop_back();
            ++seen;
            for (std::uint32_t w = 0; w < n; ++w)
                if ((out_mask[v] >> w & 1u) && --indeg[w] == 0)
                    ready.push_back(w);
        }
        if (seen != n)
            throw std::invalid_argument("seepage graph must be acyclic");
    }
    for (std::uint32_t v = 0; v < n; ++v)
        if (in_degree[v] == 0 && v != source)
            throw std::invalid_argument("vertex " + std::to_string(v) + " is a second source");
    if (in_degree[source] != 0)
        throw std::invalid_argument("source has incoming arcs");
    std::uint32_t sink_mask = 0;
    for (auto s : sinks) {
        if (s >= n || out_degree[s] != 0)
            throw std::invalid_argument("sink " + std::to_string(s) + " must be a vertex of out-degree 0");
        sink_mask |= 1u << s;
    }

    GameRules rules;
    rules.name = "seepage(greens=" + std::to_string(greens) + ")";
    rules.pursuer_position_count = std::size_t{ 1 } << n;
    rules.evader_position_count = n;
    rules.is_final = [out_mask, sink_mask](JointPosition pos) {
        const auto blocked = pos.pursuer.index;
        std::uint32_t reach = 1u << pos.evader.index;
        while (true) {
            std::uint32_t grown = reach;
            for (std::uint32_t v = 0; v < out_mask.size(); ++v)
                if (reach >> v & 1u)
                    grown |= out_mask[v] & ~blocked;
            if (grown == reach)
                break;
            reach = grown;
        }
        return (reach & sink_mask) == 0;
    };
    rules.pursuer_moves = [n, greens](JointPosition pos) {
        const auto protected_now = pos.pursuer.index;
        std::vector<std::uint32_t> free;
        for (std::uint32_t v = 0; v < n; ++v)
            if (!(protected_now >> v & 1u) && v != pos.evader.index)
                free.push_back(v);
        MoveList out;
        // Every subset of `free` with at most `greens` members.
        std::vector<std::uint32_t> chosen;
        std::function<void(std::size_t, std::uint32_t)> extend = [&](std::size_t from, std::uint32_t mask) {
            out.push_back({ mask });
            if (chosen.size() == greens)
                return;
            for (std::size_t i = from; i < free.size(); ++i) {
                chosen.push_back(free[i]);
                extend(i + 1, mask | (1u << free[i]));
                chosen.pop_back();
            }
        };
        extend(0, protected_now);
        return out;
    };
    rules.evader_moves = [out_mask](JointPosition pos) {
        MoveList out{ pos.evader };
        const auto open = out_mask[pos.evader.index] & ~pos.pursuer.index;
        for (std::uint32_t v = 0; v < out_mask.size(); ++v)
            if (open >> v & 1u)
                out.push_back({ v });
        return out;
    };
    rules.initial_pursuer = { PositionId{ 0 } };
    rules.initial_evader = [source](PositionId) { return MoveList{ { source } }; };
    rules.final_check_timing = FinalCheckTiming::EveryStep;
    rules.claims_position_independent = false;
    rules.pursuer_name = [n](PositionId p) {
        std::vector<std::uint32_t> members;
        for (std::uint32_t v = 0; v < n; ++v)
            if (p.index >> v & 1u)
                members.push_back(v);
        return set_name(members);
    };
    return GameSpec{ std::move(rules) };
}

} // namespace pursuit
