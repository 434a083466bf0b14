#include "pursuit/game.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace pursuit {

std::string to_string(Turn t)
{
    return t == Turn::PursuerToMove ? "P" : "E";
}

std::string to_string(Player p)
{
    return p == Player::Pursuer ? "Pursuer" : "Evader";
}

std::string to_string(FinalCheckTiming t)
{
    switch (t) {
    case FinalCheckTiming::EveryStep: return "every_step";
    case FinalCheckTiming::AfterEvaderMove: return "after_evader_move";
    case FinalCheckTiming::AfterPursuerMove: return "after_pursuer_move";
    }
    return "unknown";
}

std::optional<FinalCheckTiming> parse_timing(const std::string& text)
{
    for (auto t : { FinalCheckTiming::EveryStep, FinalCheckTiming::AfterEvaderMove,
                    FinalCheckTiming::AfterPursuerMove })
        if (to_string(t) == text)
            return t;
    return std::nullopt;
}

namespace {

void normalize(MoveList& moves)
{
    std::sort(moves.begin(), moves.end());
    moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
}

std::string describe(const GameSpec& spec, const GameState& s)
{
    std::ostringstream os;
    os << "((" << spec.pursuer_name(s.position.pursuer) << ", " << spec.evader_name(s.position.evader)
       << "), " << to_string(s.turn) << ")";
    return os.str();
}

// Visited-set over states: a bit vector when the dense key space is small
// enough, a hash set otherwise.
class StateSet {
public:
    explicit StateSet(const GameSpec& spec) : _spec{ spec }
    {
        const auto keys = static_cast<long double>(spec.pursuer_position_count())
                          * static_cast<long double>(spec.evader_position_count()) * 2;
        if (keys <= static_cast<long double>(kDenseLimit))
            _dense.assign(static_cast<std::size_t>(keys), false);
    }

    // Returns true when the state was not present before.
    bool insert(const GameState& s)
    {
        const auto key = state_key(_spec, s);
        if (!_dense.empty()) {
            if (_dense[key])
                return false;
            _dense[key] = true;
            return true;
        }
        return _sparse.insert(key).second;
    }

private:
    static constexpr std::uint64_t kDenseLimit = std::uint64_t{ 1 } << 30;
    const GameSpec& _spec;
    std::vector<bool> _dense;
    std::unordered_set<std::uint64_t> _sparse;
};

// Forward exploration shared by validation and enumeration. `report` receives
// (rule, state, message) for every problem and returns false to abort.
template <typename Report>
std::vector<GameState> explore(const GameSpec& spec, std::size_t capacity, Report&& report)
{
    std::vector<GameState> found;
    std::deque<GameState> queue;
    StateSet seen{ spec };

    auto admit = [&](const GameState& s) {
        if (!seen.insert(s))
            return true;
        if (found.size() >= capacity)
            return report(0, s, "state capacity of " + std::to_string(capacity) + " exceeded");
        found.push_back(s);
        queue.push_back(s);
        return true;
    };

    for (auto p : spec.initial_pursuer()) {
        if (!spec.valid_pursuer(p)) {
            if (!report(3, std::nullopt, "initial Pursuer position " + std::to_string(p.index)
                                             + " is not an allowed Pursuer position"))
                return found;
            continue;
        }
        const auto evaders = spec.initial_evader(p);
        if (evaders.empty()
            && !report(5, std::nullopt, "I_E(" + spec.pursuer_name(p) + ") is empty"))
            return found;
        for (auto q : evaders) {
            if (!spec.valid_evader(q)) {
                if (!report(3, std::nullopt, "initial Evader position " + std::to_string(q.index)
                                                 + " is not an allowed Evader position"))
                    return found;
                continue;
            }
            if (!admit(GameState{ { p, q }, Turn::PursuerToMove }))
                return found;
        }
    }

    while (!queue.empty()) {
        const auto s = queue.front();
        queue.pop_front();
        if (is_terminal(spec, s))
            continue;
        const auto next = spec.moves(s.position, s.turn);
        if (next.empty()) {
            if (!report(4, s, "no allowed move for the " + to_string(to_move(s.turn)) + " at "
                                  + describe(spec, s)))
                return found;
            continue;
        }
        for (auto m : next) {
            GameState t = s;
            t.turn = other(s.turn);
            if (s.turn == Turn::PursuerToMove) {
                if (!spec.valid_pursuer(m)) {
                    if (!report(3, s, "Pursuer move to invalid position " + std::to_string(m.index)
                                          + " at " + describe(spec, s)))
                        return found;
                    continue;
                }
                t.position.pursuer = m;
            } else {
                if (!spec.valid_evader(m)) {
                    if (!report(3, s, "Evader move to invalid position " + std::to_string(m.index)
                                          + " at " + describe(spec, s)))
                        return found;
                    continue;
                }
                t.position.evader = m;
            }
            if (!admit(t))
                return found;
        }
    }
    return found;
}

} // namespace

GameSpec::GameSpec(GameRules rules) : _rules{ std::move(rules) }
{
    if (_rules.pursuer_position_count == 0 || _rules.evader_position_count == 0)
        throw std::invalid_argument("GameSpec: position sets must be nonempty");
    if (!_rules.is_final || !_rules.pursuer_moves || !_rules.evader_moves || !_rules.initial_evader)
        throw std::invalid_argument("GameSpec: missing rule callback");
    _initial_pursuer = _rules.initial_pursuer;
    normalize(_initial_pursuer);
}

MoveList GameSpec::pursuer_moves(JointPosition pos) const
{
    auto m = _rules.pursuer_moves(pos);
    normalize(m);
    return m;
}

MoveList GameSpec::evader_moves(JointPosition pos) const
{
    auto m = _rules.evader_moves(pos);
    normalize(m);
    return m;
}

MoveList GameSpec::moves(JointPosition pos, Turn turn) const
{
    return turn == Turn::PursuerToMove ? pursuer_moves(pos) : evader_moves(pos);
}

MoveList GameSpec::initial_evader(PositionId p) const
{
    if (!std::binary_search(_initial_pursuer.begin(), _initial_pursuer.end(), p))
        return {};
    auto m = _rules.initial_evader(p);
    normalize(m);
    return m;
}

std::vector<JointPosition> GameSpec::initial_positions() const
{
    std::vector<JointPosition> out;
    for (auto p : _initial_pursuer)
        for (auto q : initial_evader(p))
            out.push_back({ p, q });
    return out;
}

std::string GameSpec::pursuer_name(PositionId p) const
{
    return _rules.pursuer_name ? _rules.pursuer_name(p) : std::to_string(p.index);
}

std::string GameSpec::evader_name(PositionId q) const
{
    return _rules.evader_name ? _rules.evader_name(q) : std::to_string(q.index);
}

GameSpec GameSpec::with_timing(FinalCheckTiming timing) const
{
    auto rules = _rules;
    rules.final_check_timing = timing;
    return GameSpec{ std::move(rules) };
}

bool is_final_now(const GameSpec& spec, const GameState& state, std::optional<Player> last_mover)
{
    if (!spec.is_final(state.position))
        return false;
    if (!last_mover)
        return true;
    switch (spec.final_check_timing()) {
    case FinalCheckTiming::EveryStep: return true;
    case FinalCheckTiming::AfterEvaderMove: return *last_mover == Player::Evader;
    case FinalCheckTiming::AfterPursuerMove: return *last_mover == Player::Pursuer;
    }
    return true;
}

bool is_terminal(const GameSpec& spec, const GameState& state)
{
    return is_final_now(spec, state, to_move(other(state.turn)));
}

std::vector<Diagnostic> validate_spec(const GameSpec& spec, std::size_t capacity)
{
    std::vector<Diagnostic> diagnostics;
    if (spec.initial_pursuer().empty())
        diagnostics.push_back({ 5, std::nullopt, "rule 5: I_P is empty" });
    (void)explore(spec, capacity, [&](int rule, std::optional<GameState> s, std::string message) {
        diagnostics.push_back({ rule, s, "rule " + std::to_string(rule) + ": " + std::move(message) });
        return rule != 0;
    });
    return diagnostics;
}

std::vector<GameState> reachable_states(const GameSpec& spec, std::size_t capacity)
{
    auto states = explore(spec, capacity, [](int rule, std::optional<GameState>, std::string message) -> bool {
        if (rule == 0)
            throw CapacityError(message);
        if (rule == 5)
            return true;
        throw InvalidSpecError("rule " + std::to_string(rule) + ": " + message);
    });
    std::sort(states.begin(), states.end());
    return states;
}

} // namespace pursuit
