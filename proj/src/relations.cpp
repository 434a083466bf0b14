#include "pursuit/relations.hpp"

#include <algorithm>

namespace pursuit {

RelationTable::RelationTable(std::size_t pursuer_count, std::size_t evader_count)
    : _pursuer_count{ pursuer_count }, _evader_count{ evader_count },
      _rank(pursuer_count * evader_count, ExtNat::infinity()),
      _moves(pursuer_count * evader_count, ExtNat::infinity())
{
}

namespace {

// Per reachable, non-terminal Evader-turn state: for every Evader move x,
// either the Pursuer-turn position (p, x) is terminal or the list of Pursuer
// replies from it.
struct Candidate {
    JointPosition position;
    std::vector<std::vector<PositionId>> replies; // empty vector marks a terminal (p, x)
    std::vector<PositionId> evader_moves;
};

} // namespace

RelationTable compute_relations(const GameSpec& spec, std::size_t capacity)
{
    RelationTable table{ spec.pursuer_position_count(), spec.evader_position_count() };

    for (std::uint32_t p = 0; p < spec.pursuer_position_count(); ++p)
        for (std::uint32_t q = 0; q < spec.evader_position_count(); ++q)
            if (is_terminal(spec, GameState{ { { p }, { q } }, Turn::EvaderToMove })) {
                table.set_rank({ q }, { p }, ExtNat{ 0 });
                table.set_pursuer_moves({ q }, { p }, ExtNat{ 0 });
            }

    std::vector<Candidate> pending;
    for (const auto& s : reachable_states(spec, capacity)) {
        if (s.turn != Turn::EvaderToMove || is_terminal(spec, s))
            continue;
        Candidate c;
        c.position = s.position;
        c.evader_moves = spec.evader_moves(s.position);
        for (auto x : c.evader_moves) {
            const JointPosition after{ s.position.pursuer, x };
            if (is_terminal(spec, GameState{ after, Turn::PursuerToMove }))
                c.replies.emplace_back();
            else
                c.replies.push_back(spec.pursuer_moves(after));
        }
        pending.push_back(std::move(c));
    }

    // Pass i assigns rank i to every pending pair whose condition holds
    // against ranks < i, which were all assigned by earlier passes.
    for (std::uint32_t level = 1; !pending.empty(); ++level) {
        std::vector<std::pair<JointPosition, ExtNat>> promoted;
        std::vector<Candidate> still_pending;
        const ExtNat bound{ level };
        for (auto& c : pending) {
            bool holds = true;
            // Replies of rank below the level include one needing the fewest
            // Pursuer moves, so the move count can be settled here too.
            ExtNat moves{ 0 };
            for (std::size_t k = 0; k < c.evader_moves.size() && holds; ++k) {
                const auto& replies = c.replies[k];
                if (replies.empty())
                    continue;
                const auto x = c.evader_moves[k];
                holds = false;
                ExtNat fewest = ExtNat::infinity();
                for (auto w : replies)
                    if (table.rank(x, w) < bound) {
                        holds = true;
                        fewest = std::min(fewest, table.pursuer_moves(x, w));
                    }
                moves = std::max(moves, fewest.successor());
            }
            if (holds)
                promoted.emplace_back(c.position, moves);
            else
                still_pending.push_back(std::move(c));
        }
        if (promoted.empty())
            break;
        for (auto [pos, moves] : promoted) {
            table.set_rank(pos.evader, pos.pursuer, bound);
            table.set_pursuer_moves(pos.evader, pos.pursuer, moves);
        }
        table.stabilization_index = level;
        pending = std::move(still_pending);
    }
    return table;
}

ExtNat start_length(const GameSpec& spec, const RelationTable& r, JointPosition start)
{
    if (is_final_at_start(spec, start))
        return ExtNat{ 0 };
    ExtNat best = ExtNat::infinity();
    for (auto w : spec.pursuer_moves(start))
        best = std::min(best, r.pursuer_moves(start.evader, w));
    return best.successor();
}

RelationalVerdict pursuer_wins_relational(const GameSpec& spec, const RelationTable& r)
{
    const auto choice = optimal_start(spec, [&](PositionId p, PositionId q) {
        return start_length(spec, r, { p, q });
    });
    return { choice.best_start ? Player::Pursuer : Player::Evader, choice.best_start };
}

ExtNat game_length(const GameSpec& spec, const RelationTable& r)
{
    return optimal_start(spec, [&](PositionId p, PositionId q) {
               return start_length(spec, r, { p, q });
           })
        .value;
}

ExtNat rank_game_length(const GameSpec& spec, const RelationTable& r)
{
    return optimal_start(spec, [&](PositionId p, PositionId q) {
               if (is_final_at_start(spec, { p, q }))
                   return ExtNat{ 0 };
               ExtNat best = ExtNat::infinity();
               for (auto w : spec.pursuer_moves({ p, q }))
                   best = std::min(best, r.rank(q, w));
               return best.successor();
           })
        .value;
}

std::vector<LabelRankViolation> check_label_rank_correspondence(const GameSpec& spec,
                                                               const StateDigraph& d,
                                                               const LabelTable& labels,
                                                               const RelationTable& r)
{
    (void)spec;
    std::vector<LabelRankViolation> violations;
    for (StateIndex s = 0; s < d.size(); ++s) {
        const auto& state = d.state(s);
        if (state.turn != Turn::EvaderToMove)
            continue;
        const auto label = labels[s];
        const auto rank = r.rank(state.position.evader, state.position.pursuer);
        if (label.half_up() != rank)
            violations.push_back({ state, label, rank });
    }
    return violations;
}

} // namespace pursuit
