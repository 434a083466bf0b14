#pragma once

// Helpers shared by the unit tests and the acceptance binary: a random
// position-independent game generator, a naive labelling reference, tree
// enumeration and field-by-field spec comparison.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pursuit/game.hpp"
#include "pursuit/graph.hpp"
#include "pursuit/position_independent.hpp"

namespace pursuit_test {

using namespace pursuit;

struct RandomGameOptions {
    std::uint32_t max_pursuer = 60;
    std::uint32_t max_evader = 60;
    std::uint32_t min_positions = 2;
    // F density drawn uniformly from [min, max] percent.
    double min_final_percent = 2.0;
    double max_final_percent = 20.0;
    std::uint32_t max_extra_arcs = 3;
    bool loops = true;
    // I = P_P x P_E instead of random start sets.
    bool full_initial = false;
    // G_P gets a Hamiltonian cycle, which makes it strongly connected.
    bool strongly_connected_pursuer = false;
    FinalCheckTiming timing = FinalCheckTiming::EveryStep;
};

struct RandomGame {
    PositionDigraph pursuer;
    PositionDigraph evader;
    std::vector<bool> final; // p * |P_E| + q
    GameSpec spec;
};

inline PositionDigraph random_digraph(std::mt19937_64& rng, std::uint32_t n, const RandomGameOptions& o,
                                      bool cycle)
{
    std::uniform_int_distribution<std::uint32_t> vertex(0, n - 1);
    std::uniform_int_distribution<std::uint32_t> extra(0, o.max_extra_arcs);
    std::vector<std::vector<std::uint32_t>> out(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (o.loops)
            out[v].push_back(v);
        if (cycle)
            out[v].push_back((v + 1) % n);
        for (auto k = extra(rng); k > 0; --k)
            out[v].push_back(vertex(rng));
        if (out[v].empty())
            out[v].push_back(vertex(rng));
        std::sort(out[v].begin(), out[v].end());
        out[v].erase(std::unique(out[v].begin(), out[v].end()), out[v].end());
    }
    return PositionDigraph{ std::move(out) };
}

inline RandomGame random_game(std::mt19937_64& rng, const RandomGameOptions& o = {})
{
    const auto np = std::uniform_int_distribution<std::uint32_t>(o.min_positions, o.max_pursuer)(rng);
    const auto ne = std::uniform_int_distribution<std::uint32_t>(o.min_positions, o.max_evader)(rng);
    auto gp = random_digraph(rng, np, o, o.strongly_connected_pursuer);
    auto ge = random_digraph(rng, ne, o, false);

    const auto percent = std::uniform_real_distribution<double>(o.min_final_percent, o.max_final_percent)(rng);
    std::bernoulli_distribution is_final(percent / 100.0);
    auto final = std::make_shared<std::vector<bool>>(np * ne);
    for (std::size_t i = 0; i < final->size(); ++i)
        (*final)[i] = is_final(rng);

    MoveList starts;
    auto evader_starts = std::make_shared<std::vector<MoveList>>(np);
    std::bernoulli_distribution coin(0.5);
    for (std::uint32_t p = 0; p < np; ++p) {
        if (o.full_initial || coin(rng)) {
            starts.push_back({ p });
            for (std::uint32_t q = 0; q < ne; ++q)
                if (o.full_initial || coin(rng))
                    (*evader_starts)[p].push_back({ q });
            if ((*evader_starts)[p].empty())
                (*evader_starts)[p].push_back({ std::uniform_int_distribution<std::uint32_t>(0, ne - 1)(rng) });
        }
    }
    if (starts.empty()) {
        starts.push_back({ 0 });
        for (std::uint32_t q = 0; q < ne; ++q)
            (*evader_starts)[0].push_back({ q });
    }

    auto moves_of = [](const PositionDigraph& g, std::uint32_t v) {
        MoveList m;
        for (auto w : g.out_neighbours(v))
            m.push_back({ w });
        return m;
    };
    GameRules rules;
    rules.name = "random(" + std::to_string(np) + "x" + std::to_string(ne) + ")";
    rules.pursuer_position_count = np;
    rules.evader_position_count = ne;
    rules.is_final = [final, ne](JointPosition pos) { return (*final)[pos.pursuer.index * ne + pos.evader.index]; };
    rules.pursuer_moves = [gp, moves_of](JointPosition pos) { return moves_of(gp, pos.pursuer.index); };
    rules.evader_moves = [ge, moves_of](JointPosition pos) { return moves_of(ge, pos.evader.index); };
    rules.initial_pursuer = starts;
    rules.initial_evader = [evader_starts](PositionId p) {
        return p.index < evader_starts->size() ? (*evader_starts)[p.index] : MoveList{};
    };
    rules.final_check_timing = o.timing;
    rules.claims_position_independent = true;
    return { std::move(gp), std::move(ge), *final, GameSpec{ std::move(rules) } };
}

// Whether a state is absorbing, restated from the timing rule: the player who
// just moved is the one not to move now.
inline bool absorbing(const GameSpec& spec, const GameState& s)
{
    if (!spec.is_final(s.position))
        return false;
    switch (spec.final_check_timing()) {
    case FinalCheckTiming::EveryStep: return true;
    case FinalCheckTiming::AfterPursuerMove: return s.turn == Turn::EvaderToMove;
    case FinalCheckTiming::AfterEvaderMove: return s.turn == Turn::PursuerToMove;
    }
    return true;
}

// Breadth-first enumeration of the reachable states, written independently of
// the library's explorer.
inline std::set<GameState> bfs_states(const GameSpec& spec)
{
    std::set<GameState> seen;
    std::deque<GameState> queue;
    for (auto p : spec.initial_pursuer())
        for (auto q : spec.initial_evader(p)) {
            GameState s{ { p, q }, Turn::PursuerToMove };
            if (seen.insert(s).second)
                queue.push_back(s);
        }
    while (!queue.empty()) {
        const auto s = queue.front();
        queue.pop_front();
        if (absorbing(spec, s))
            continue;
        for (auto m : spec.moves(s.position, s.turn)) {
            GameState t = s;
            t.turn = s.turn == Turn::PursuerToMove ? Turn::EvaderToMove : Turn::PursuerToMove;
            (s.turn == Turn::PursuerToMove ? t.position.pursuer : t.position.evader) = m;
            if (seen.insert(t).second)
                queue.push_back(t);
        }
    }
    return seen;
}

// The textbook labelling: terminal states 0, then repeat 1 + min / 1 + max
// over successors until nothing changes.
inline std::map<GameState, ExtNat> naive_labels(const GameSpec& spec)
{
    const auto states = bfs_states(spec);
    std::map<GameState, ExtNat> label;
    std::map<GameState, std::vector<GameState>> succ;
    for (const auto& s : states) {
        label[s] = absorbing(spec, s) ? ExtNat{ 0 } : ExtNat::infinity();
        if (absorbing(spec, s))
            continue;
        for (auto m : spec.moves(s.position, s.turn)) {
            GameState t = s;
            t.turn = other(s.turn);
            (s.turn == Turn::PursuerToMove ? t.position.pursuer : t.position.evader) = m;
            succ[s].push_back(t);
        }
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& [s, next] : succ) {
            ExtNat best = s.turn == Turn::PursuerToMove ? ExtNat::infinity() : ExtNat{ 0 };
            for (const auto& t : next)
                best = s.turn == Turn::PursuerToMove ? std::min(best, label[t]) : std::max(best, label[t]);
            const auto v = best.successor();
            if (v != label[s]) {
                label[s] = v;
                changed = true;
            }
        }
    }
    return label;
}

// Canonical string of a rooted tree (sorted child encodings).
inline std::string rooted_code(const Adjacency& adj, std::uint32_t v, std::uint32_t parent)
{
    std::vector<std::string> children;
    for (auto w : adj[v])
        if (w != parent && w != v)
            children.push_back(rooted_code(adj, w, v));
    std::sort(children.begin(), children.end());
    std::string code = "(";
    for (const auto& c : children)
        code += c;
    return code + ")";
}

// Canonical form of a free tree: the smaller rooted code over its centres.
inline std::string tree_code(const InputGraph& tree)
{
    const auto n = tree.n;
    if (n <= 1)
        return "()";
    auto adj = out_neighbourhoods(tree);
    std::vector<std::uint32_t> degree(n);
    for (std::uint32_t v = 0; v < n; ++v)
        for (auto w : adj[v])
            degree[v] += w != v ? 1 : 0;
    std::vector<std::uint32_t> layer;
    for (std::uint32_t v = 0; v < n; ++v)
        if (degree[v] <= 1)
            layer.push_back(v);
    auto remaining = n;
    while (remaining > 2) {
        remaining -= static_cast<std::uint32_t>(layer.size());
        std::vector<std::uint32_t> next;
        for (auto v : layer)
            for (auto w : adj[v])
                if (w != v && --degree[w] == 1)
                    next.push_back(w);
        layer = next;
    }
    std::string best;
    for (auto c : layer) {
        auto code = rooted_code(adj, c, c);
        if (best.empty() || code < best)
            best = code;
    }
    return best;
}

// All non-isomorphic trees on n vertices, built by attaching a leaf to every
// vertex of every tree on n - 1 vertices.
inline std::vector<InputGraph> nonisomorphic_trees(std::uint32_t n, bool reflexive = true)
{
    std::vector<InputGraph> trees{ InputGraph{ 1, {}, false, reflexive } };
    for (std::uint32_t size = 2; size <= n; ++size) {
        std::map<std::string, InputGraph> next;
        for (const auto& t : trees)
            for (std::uint32_t v = 0; v < t.n; ++v) {
                auto grown = t;
                grown.n = size;
                grown.edges.emplace_back(v, size - 1);
                next.emplace(tree_code(grown), grown);
            }
        trees.clear();
        for (auto& [code, t] : next)
            trees.push_back(std::move(t));
    }
    return n == 0 ? std::vector<InputGraph>{} : trees;
}

// Compares two specs on every position: counts, timing, starts, F and both
// move functions. Returns a description of the first difference, or "".
inline std::string spec_difference(const GameSpec& a, const GameSpec& b)
{
    if (a.pursuer_position_count() != b.pursuer_position_count())
        return "pursuer position count";
    if (a.evader_position_count() != b.evader_position_count())
        return "evader position count";
    if (a.final_check_timing() != b.final_check_timing())
        return "final check timing";
    if (a.initial_pursuer() != b.initial_pursuer())
        return "I_P";
    for (auto p : a.initial_pursuer())
        if (a.initial_evader(p) != b.initial_evader(p))
            return "I_E(" + std::to_string(p.index) + ")";
    for (std::uint32_t p = 0; p < a.pursuer_position_count(); ++p)
        for (std::uint32_t q = 0; q < a.evader_position_count(); ++q) {
            const JointPosition pos{ { p }, { q } };
            const auto where = " at (" + std::to_string(p) + ", " + std::to_string(q) + ")";
            if (a.is_final(pos) != b.is_final(pos))
                return "F" + where;
            if (a.pursuer_moves(pos) != b.pursuer_moves(pos))
                return "A_P" + where;
            if (a.evader_moves(pos) != b.evader_moves(pos))
                return "A_E" + where;
        }
    return {};
}

} // namespace pursuit_test
