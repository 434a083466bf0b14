#include "pursuit/state_digraph.hpp"

#include <algorithm>
#include <deque>

namespace pursuit {

StateDigraph::StateDigraph(std::vector<GameState> states, std::vector<bool> terminal,
                           std::vector<std::vector<StateIndex>> successors)
    : _states{ std::move(states) }, _terminal{ std::move(terminal) }
{
    const auto n = _states.size();
    _offsets.reserve(n + 1);
    for (auto& out : successors) {
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        _targets.insert(_targets.end(), out.begin(), out.end());
        _offsets.push_back(_targets.size());
    }

    std::vector<std::size_t> in_degree(n, 0);
    for (auto t : _targets)
        ++in_degree[t];
    _reverse_offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        _reverse_offsets[i + 1] = _reverse_offsets[i] + in_degree[i];
    _sources.resize(_targets.size());
    auto cursor = _reverse_offsets;
    for (StateIndex s = 0; s < n; ++s)
        for (auto t : this->successors(s))
            _sources[cursor[t]++] = s;
}

std::optional<StateIndex> StateDigraph::index_of(const GameState& s) const
{
    auto it = std::lower_bound(_states.begin(), _states.end(), s);
    if (it == _states.end() || *it != s)
        return std::nullopt;
    return static_cast<StateIndex>(it - _states.begin());
}

StateDigraph build_state_digraph(const GameSpec& spec, std::size_t capacity)
{
    auto states = reachable_states(spec, capacity);
    const auto n = states.size();
    std::vector<bool> terminal(n, false);
    std::vector<std::vector<StateIndex>> successors(n);

    auto find = [&](const GameState& s) {
        auto it = std::lower_bound(states.begin(), states.end(), s);
        return static_cast<StateIndex>(it - states.begin());
    };

    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = states[i];
        if (is_terminal(spec, s)) {
            terminal[i] = true;
            continue;
        }
        for (auto m : spec.moves(s.position, s.turn)) {
            GameState t = s;
            t.turn = other(s.turn);
            (s.turn == Turn::PursuerToMove ? t.position.pursuer : t.position.evader) = m;
            successors[i].push_back(find(t));
        }
    }
    return StateDigraph{ std::move(states), std::move(terminal), std::move(successors) };
}

LabelTable compute_labels(const StateDigraph& d)
{
    const auto n = d.size();
    LabelTable table;
    table.label.assign(n, ExtNat::infinity());
    std::vector<std::size_t> unlabelled(n, 0);
    std::deque<StateIndex> ready;

    for (StateIndex s = 0; s < n; ++s) {
        unlabelled[s] = d.successors(s).size();
        if (d.is_terminal(s)) {
            table.label[s] = ExtNat{ 0 };
            ready.push_back(s);
        }
    }

    // FIFO order pops labels in nondecreasing order, so the first labelled
    // successor of a Pursuer-turn state is a minimum and the last labelled
    // successor of an Evader-turn state is a maximum.
    while (!ready.empty()) {
        const auto s = ready.front();
        ready.pop_front();
        const auto next = table.label[s].successor();
        for (auto u : d.predecessors(s)) {
            if (table.label[u].is_finite())
                continue;
            if (d.turn(u) == Turn::PursuerToMove || --unlabelled[u] == 0) {
                table.label[u] = next;
                ready.push_back(u);
            }
        }
    }
    return table;
}

StrategyPair extract_strategies(const StateDigraph& d, const LabelTable& labels)
{
    StrategyPair out;
    out.pursuer.choice.assign(d.size(), Strategy::kNone);
    out.evader.choice.assign(d.size(), Strategy::kNone);
    for (StateIndex s = 0; s < d.size(); ++s) {
        const auto succ = d.successors(s);
        if (d.is_terminal(s) || succ.empty())
            continue;
        StateIndex best = succ.front();
        if (d.turn(s) == Turn::PursuerToMove) {
            for (auto t : succ)
                if (labels[t] < labels[best])
                    best = t;
            out.pursuer.choice[s] = best;
        } else {
            for (auto t : succ)
                if (labels[t] > labels[best])
                    best = t;
            out.evader.choice[s] = best;
        }
    }
    return out;
}

SolveResult solve(const GameSpec& spec, const StateDigraph& d, const LabelTable& labels)
{
    const auto choice = optimal_start(spec, [&](PositionId p, PositionId q) {
        if (is_final_at_start(spec, { p, q }))
            return ExtNat{ 0 };
        const auto s = d.index_of(GameState{ { p, q }, Turn::PursuerToMove });
        return s ? pursuer_moves_from_label(labels[*s]) : ExtNat::infinity();
    });
    SolveResult result;
    result.best_start = choice.best_start;
    result.value = choice.value;
    result.winner = choice.best_start ? Player::Pursuer : Player::Evader;
    return result;
}

SolveResult solve(const GameSpec& spec, std::size_t capacity)
{
    const auto d = build_state_digraph(spec, capacity);
    return solve(spec, d, compute_labels(d));
}

PlayTrace play_trace(const GameSpec& spec, const StateDigraph& d, const Strategy& pursuer,
                     const Strategy& evader, JointPosition start, std::optional<std::size_t> cutoff)
{
    const auto limit = cutoff.value_or(d.size() + 1);
    PlayTrace trace;
    GameState current{ start, Turn::PursuerToMove };
    trace.moves.push_back(current);
    if (is_final_at_start(spec, start)) {
        trace.outcome = PlayTrace::Outcome::PursuerWin;
        return trace;
    }

    auto index = d.index_of(current);
    if (!index)
        throw std::invalid_argument("play_trace: start position is not a state of the digraph");
    while (true) {
        if (d.is_terminal(*index)) {
            trace.outcome = PlayTrace::Outcome::PursuerWin;
            return trace;
        }
        const bool pursuer_turn = d.turn(*index) == Turn::PursuerToMove;
        if (pursuer_turn && trace.pursuer_moves == limit) {
            trace.outcome = PlayTrace::Outcome::EvaderSurvives;
            return trace;
        }
        const auto next = (pursuer_turn ? pursuer : evader).at(*index);
        if (!next)
            throw UndefinedStrategyError("no " + std::string{ pursuer_turn ? "Pursuer" : "Evader" }
                                         + " choice at state " + std::to_string(*index));
        if (pursuer_turn)
            ++trace.pursuer_moves;
        index = *next;
        trace.moves.push_back(d.state(*index));
    }
}

} // namespace pursuit
