#include <gtest/gtest.h>

#include <set>

#include "pursuit/games.hpp"
#include "pursuit/oracle.hpp"
#include "pursuit/state_digraph.hpp"

using namespace pursuit;

namespace {

// One Pursuer position; the Evader walks 0 -> {0,1}, 1 -> {0,1,2}, 2 -> {2}.
// Nothing is final.
GameSpec fan_game()
{
    GameRules rules;
    rules.name = "fan";
    rules.pursuer_position_count = 1;
    rules.evader_position_count = 3;
    rules.is_final = [](JointPosition) { return false; };
    rules.pursuer_moves = [](JointPosition) { return MoveList{ { 0 } }; };
    rules.evader_moves = [](JointPosition pos) {
        switch (pos.evader.index) {
        case 0: return MoveList{ { 0 }, { 1 } };
        case 1: return MoveList{ { 0 }, { 1 }, { 2 } };
        default: return MoveList{ { 2 } };
        }
    };
    rules.initial_pursuer = { { 0 } };
    rules.initial_evader = [](PositionId) { return MoveList{ { 0 } }; };
    return GameSpec{ rules };
}

} // namespace

TEST(Oracle, SmallGames)
{
    const auto p3 = oracle_solve(classic_cops(make_path(3), 1));
    EXPECT_EQ(p3.winner, Player::Pursuer);
    EXPECT_EQ(p3.value, ExtNat{ 1 });
    ASSERT_TRUE(p3.best_start);
    EXPECT_EQ(p3.best_start->index, 1u);

    const auto c4 = oracle_solve(classic_cops(make_cycle(4), 1));
    EXPECT_EQ(c4.winner, Player::Evader);
    EXPECT_TRUE(c4.value.is_infinite());
    EXPECT_FALSE(c4.best_start);

    const auto trapped = oracle_solve(traps_cops(make_cycle(4), 1, { 0, 1, 2, 3 }));
    EXPECT_EQ(trapped.winner, Player::Pursuer);
    EXPECT_EQ(trapped.value, ExtNat{ 0 });

    EXPECT_EQ(oracle_solve(fan_game()).winner, Player::Evader);
}

TEST(Oracle, StartValues)
{
    const auto values = oracle_start_values(classic_cops(make_path(3), 1));
    EXPECT_EQ(values.size(), 9u);
    EXPECT_EQ(values.at({ { 1 }, { 0 } }), ExtNat{ 1 });
    EXPECT_EQ(values.at({ { 0 }, { 2 } }), ExtNat{ 2 });
    EXPECT_EQ(values.at({ { 0 }, { 0 } }), ExtNat{ 0 });
    for (const auto& [pos, value] : oracle_start_values(classic_cops(make_cycle(4), 1))) {
        const auto gap = (pos.pursuer.index + 4 - pos.evader.index) % 4;
        EXPECT_EQ(value, gap == 2 ? ExtNat::infinity() : ExtNat{ gap == 0 ? 0u : 1u });
    }
}

TEST(Oracle, Capacity)
{
    EXPECT_THROW((void)oracle_solve(classic_cops(make_petersen(), 3), 100), CapacityError);
    EXPECT_NO_THROW((void)oracle_solve(classic_cops(make_path(3), 1), 18));
}

TEST(EvaderStrategies, CountAndEnumerate)
{
    const auto spec = fan_game();
    EXPECT_EQ(count_evader_strategies(spec, 100), 6u);
    EXPECT_EQ(count_evader_strategies(spec, 3), 4u);

    std::set<EvaderPolicy> seen;
    enumerate_evader_strategies(spec, 6, [&](const EvaderPolicy& policy) {
        EXPECT_EQ(policy.size(), 3u);
        EXPECT_TRUE(std::is_sorted(policy.begin(), policy.end()));
        for (const auto& [state, move] : policy) {
            const auto allowed = spec.evader_moves(state.position);
            EXPECT_NE(std::find(allowed.begin(), allowed.end(), move), allowed.end());
        }
        seen.insert(policy);
    });
    EXPECT_EQ(seen.size(), 6u);
    EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));

    EXPECT_THROW(enumerate_evader_strategies(spec, 5, [](const EvaderPolicy&) {}), LimitExceededError);
    EXPECT_THROW(enumerate_evader_strategies(spec, 0, [](const EvaderPolicy&) {}), LimitExceededError);
}

TEST(EvaderStrategies, OptimalPursuerBeatsEveryPolicyOnP2)
{
    const auto spec = classic_cops(make_path(2), 1);
    const auto d = build_state_digraph(spec);
    const auto labels = compute_labels(d);
    const auto strategies = extract_strategies(d, labels);
    const auto values = oracle_start_values(spec);
    std::size_t policies = 0;
    enumerate_evader_strategies(spec, 1000, [&](const EvaderPolicy& policy) {
        ++policies;
        std::map<GameState, PositionId> choice(policy.begin(), policy.end());
        for (const auto& start : spec.initial_positions()) {
            const auto bound = values.at(start).value();
            auto s = *d.index_of({ start, Turn::PursuerToMove });
            std::size_t moves = 0;
            while (!d.is_terminal(s) && moves <= bound) {
                if (d.turn(s) == Turn::PursuerToMove) {
                    ++moves;
                    s = *strategies.pursuer.at(s);
                } else {
                    auto next = d.state(s);
                    next.turn = Turn::PursuerToMove;
                    next.position.evader = choice.at(d.state(s));
                    s = *d.index_of(next);
                }
            }
            EXPECT_TRUE(d.is_terminal(s));
            EXPECT_LE(moves, bound);
        }
    });
    EXPECT_GT(policies, 1u);
}
