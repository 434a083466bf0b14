#include "pursuit/oracle.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

namespace pursuit {

namespace {

class MinimaxOracle {
public:
    MinimaxOracle(const GameSpec& spec, std::size_t capacity) : _spec{ spec }, _capacity{ capacity }
    {
        for (auto start : spec.initial_positions())
            if (!is_final_now(spec, GameState{ start, Turn::PursuerToMove }, std::nullopt))
                intern(GameState{ start, Turn::PursuerToMove });
        // Breadth-first closure; successor lists are filled on the way.
        for (std::uint32_t s = 0; s < _states.size(); ++s)
            expand(s);
        _horizon = static_cast<std::int64_t>(_states.size());
    }

    [[nodiscard]] std::size_t size() const { return _states.size(); }
    [[nodiscard]] const GameState& state(std::uint32_t s) const { return _states[s]; }
    [[nodiscard]] std::int64_t horizon() const { return _horizon; }

    [[nodiscard]] std::optional<std::uint32_t> find(const GameState& s) const
    {
        auto it = _ids.find(state_key(_spec, s));
        if (it == _ids.end())
            return std::nullopt;
        return it->second;
    }

    // Whether the Pursuer, with at most `budget` more moves of its own, can
    // force a terminal state from `root`.
    bool wins(std::uint32_t root, std::int64_t budget)
    {
        if (auto known = lookup(root, budget))
            return *known;

        struct Frame {
            std::uint32_t state;
            std::int64_t budget;
            std::size_t next = 0;
        };
        std::vector<Frame> stack{ { root, budget } };
        std::optional<bool> returned;

        while (!stack.empty()) {
            auto& f = stack.back();
            const bool pursuer_turn = _states[f.state].turn == Turn::PursuerToMove;
            const auto& succ = _successors[f.state];

            // The Pursuer needs one winning child, the Evader one losing child.
            std::optional<bool> outcome;
            if (returned && *returned == pursuer_turn)
                outcome = pursuer_turn;
            returned.reset();

            bool descended = false;
            while (!outcome && f.next < succ.size()) {
                const auto child = succ[f.next++];
                const auto child_budget = pursuer_turn ? f.budget - 1 : f.budget;
                const auto known = lookup(child, child_budget);
                if (!known) {
                    stack.push_back({ child, child_budget }); // invalidates f
                    descended = true;
                    break;
                }
                if (*known == pursuer_turn)
                    outcome = pursuer_turn;
            }
            if (descended)
                continue;
            if (!outcome)
                outcome = !pursuer_turn;

            const auto done = stack.back();
            record(done.state, done.budget, *outcome);
            stack.pop_back();
            returned = outcome;
        }
        return *returned;
    }

    // Least budget that wins, or infinity.
    ExtNat least_winning_budget(std::uint32_t s)
    {
        if (!wins(s, _horizon))
            return ExtNat::infinity();
        std::int64_t hi = 0;
        while (!wins(s, hi))
            hi = std::max<std::int64_t>(1, hi * 2);
        std::int64_t lo = hi / 2; // wins(lo) is false unless hi == 0
        if (hi == 0)
            return ExtNat{ 0 };
        while (hi - lo > 1) {
            const auto mid = lo + (hi - lo) / 2;
            (wins(s, mid) ? hi : lo) = mid;
        }
        return ExtNat{ static_cast<std::uint32_t>(hi) };
    }

private:
    std::uint32_t intern(const GameState& s)
    {
        const auto key = state_key(_spec, s);
        if (auto it = _ids.find(key); it != _ids.end())
            return it->second;
        if (_states.size() >= _capacity)
            throw CapacityError("oracle capacity of " + std::to_string(_capacity) + " states exceeded");
        const auto id = static_cast<std::uint32_t>(_states.size());
        _ids.emplace(key, id);
        _states.push_back(s);
        _terminal.push_back(is_terminal(_spec, s));
        _successors.emplace_back();
        _losing_up_to.push_back(-1);
        _winning_from.push_back(std::numeric_limits<std::int64_t>::max());
        return id;
    }

    void expand(std::uint32_t s)
    {
        if (_terminal[s])
            return;
        const auto from = _states[s];
        std::vector<std::uint32_t> out;
        for (auto m : _spec.moves(from.position, from.turn)) {
            GameState next = from;
            next.turn = other(from.turn);
            if (from.turn == Turn::PursuerToMove)
                next.position.pursuer = m;
            else
                next.position.evader = m;
            out.push_back(intern(next));
        }
        _successors[s] = std::move(out);
    }

    std::optional<bool> lookup(std::uint32_t s, std::int64_t budget) const
    {
        if (_terminal[s])
            return true;
        if (budget < 0)
            return false;
        if (budget >= _winning_from[s])
            return true;
        if (budget <= _losing_up_to[s])
            return false;
        if (budget == 0 && _states[s].turn == Turn::PursuerToMove)
            return false;
        return std::nullopt;
    }

    void record(std::uint32_t s, std::int64_t budget, bool win)
    {
        if (win)
            _winning_from[s] = std::min(_winning_from[s], budget);
        else
            _losing_up_to[s] = std::max(_losing_up_to[s], budget);
    }

    const GameSpec& _spec;
    std::size_t _capacity;
    std::unordered_map<std::uint64_t, std::uint32_t> _ids;
    std::vector<GameState> _states;
    std::vector<bool> _terminal;
    std::vector<std::vector<std::uint32_t>> _successors;
    std::vector<std::int64_t> _losing_up_to;
    std::vector<std::int64_t> _winning_from;
    std::int64_t _horizon = 0;
};

} // namespace

std::map<JointPosition, ExtNat> oracle_start_values(const GameSpec& spec, std::size_t capacity)
{
    MinimaxOracle oracle{ spec, capacity };
    std::map<JointPosition, ExtNat> values;
    for (auto start : spec.initial_positions()) {
        const GameState s{ start, Turn::PursuerToMove };
        if (is_final_now(spec, s, std::nullopt))
            values[start] = ExtNat{ 0 };
        else
            values[start] = oracle.least_winning_budget(*oracle.find(s));
    }
    return values;
}

OracleResult oracle_solve(const GameSpec& spec, std::size_t capacity)
{
    MinimaxOracle oracle{ spec, capacity };
    OracleResult result;

    for (auto p : spec.initial_pursuer()) {
        ExtNat worst{ 0 };
        for (auto q : spec.initial_evader(p)) {
            const GameState s{ { p, q }, Turn::PursuerToMove };
            if (is_final_now(spec, s, std::nullopt))
                continue;
            worst = std::max(worst, oracle.least_winning_budget(*oracle.find(s)));
            if (worst.is_infinite())
                break;
        }
        if (worst.is_finite() && worst < result.value) {
            result.value = worst;
            result.best_start = p;
        }
    }
    result.winner = result.best_start ? Player::Pursuer : Player::Evader;

    for (std::uint32_t s = 0; s < oracle.size(); ++s)
        result.pursuer_wins[oracle.state(s)] = oracle.wins(s, oracle.horizon());
    return result;
}

namespace {

std::vector<std::pair<GameState, MoveList>> evader_choice_points(const GameSpec& spec)
{
    std::map<GameState, bool> seen;
    std::deque<GameState> queue;
    for (auto start : spec.initial_positions()) {
        GameState s{ start, Turn::PursuerToMove };
        if (is_final_now(spec, s, std::nullopt) || seen.count(s))
            continue;
        seen[s] = true;
        queue.push_back(s);
    }
    std::vector<std::pair<GameState, MoveList>> points;
    while (!queue.empty()) {
        const auto s = queue.front();
        queue.pop_front();
        if (is_terminal(spec, s))
            continue;
        const auto moves = spec.moves(s.position, s.turn);
        if (s.turn == Turn::EvaderToMove)
            points.emplace_back(s, moves);
        for (auto m : moves) {
            GameState t = s;
            t.turn = other(s.turn);
            (s.turn == Turn::PursuerToMove ? t.position.pursuer : t.position.evader) = m;
            if (seen.emplace(t, true).second)
                queue.push_back(t);
        }
    }
    std::sort(points.begin(), points.end());
    return points;
}

} // namespace

std::uint64_t count_evader_strategies(const GameSpec& spec, std::uint64_t limit)
{
    std::uint64_t count = 1;
    for (const auto& [state, moves] : evader_choice_points(spec)) {
        if (moves.empty())
            return 0;
        if (count > (limit + 1) / moves.size() + 1)
            return limit + 1;
        count = std::min<std::uint64_t>(count * moves.size(), limit + 1);
    }
    return count;
}

void enumerate_evader_strategies(const GameSpec& spec, std::uint64_t limit,
                                 const std::function<void(const EvaderPolicy&)>& visit)
{
    if (limit == 0)
        throw LimitExceededError("strategy limit must be positive");
    const auto total = count_evader_strategies(spec, limit);
    if (total > limit)
        throw LimitExceededError("more than " + std::to_string(limit) + " positional Evader strategies");

    const auto points = evader_choice_points(spec);
    std::vector<std::size_t> digits(points.size(), 0);
    EvaderPolicy policy;
    policy.reserve(points.size());
    for (const auto& [state, moves] : points)
        policy.emplace_back(state, moves.front());
    if (total == 0)
        return;

    while (true) {
        visit(policy);
        std::size_t i = points.size();
        while (i > 0) {
            --i;
            if (++digits[i] < points[i].second.size()) {
                policy[i].second = points[i].second[digits[i]];
                break;
            }
            digits[i] = 0;
            policy[i].second = points[i].second.front();
            if (i == 0)
                return;
        }
        if (points.empty())
            return;
    }
}

} // namespace pursuit
