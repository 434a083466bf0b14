#include <gtest/gtest.h>

#include "pursuit/game.hpp"
#include "pursuit/games.hpp"
#include "pursuit/graph.hpp"
#include "support.hpp"

using namespace pursuit;
using namespace pursuit_test;

namespace {

// Two positions per player, everything allowed, F = {(0, 0)}.
GameRules tiny_rules()
{
    GameRules rules;
    rules.name = "tiny";
    rules.pursuer_position_count = 2;
    rules.evader_position_count = 2;
    rules.is_final = [](JointPosition pos) { return pos.pursuer.index == 0 && pos.evader.index == 0; };
    rules.pursuer_moves = [](JointPosition) { return MoveList{ { 0 }, { 1 } }; };
    rules.evader_moves = [](JointPosition) { return MoveList{ { 0 }, { 1 } }; };
    rules.initial_pursuer = { { 0 }, { 1 } };
    rules.initial_evader = [](PositionId) { return MoveList{ { 0 }, { 1 } }; };
    return rules;
}

} // namespace

TEST(ValidateSpec, ClassicGameIsClean)
{
    EXPECT_TRUE(validate_spec(classic_cops(make_path(3), 1)).empty());
}

TEST(ValidateSpec, EmptyEvaderMovesAtReachableState)
{
    auto rules = tiny_rules();
    rules.evader_moves = [](JointPosition pos) {
        return pos.pursuer.index == 1 && pos.evader.index == 1 ? MoveList{} : MoveList{ { 0 }, { 1 } };
    };
    const auto problems = validate_spec(GameSpec{ rules });
    ASSERT_EQ(problems.size(), 1u);
    EXPECT_EQ(problems[0].rule, 4);
    ASSERT_TRUE(problems[0].state);
    EXPECT_EQ(problems[0].state->position, (JointPosition{ { 1 }, { 1 } }));
    EXPECT_EQ(problems[0].state->turn, Turn::EvaderToMove);
}

TEST(ValidateSpec, EmptyInitialEvaderSet)
{
    auto rules = tiny_rules();
    rules.initial_pursuer = { { 1 } };
    rules.initial_evader = [](PositionId) { return MoveList{}; };
    const auto problems = validate_spec(GameSpec{ rules });
    ASSERT_EQ(problems.size(), 1u);
    EXPECT_EQ(problems[0].rule, 5);
}

TEST(ValidateSpec, OutOfRangeMove)
{
    auto rules = tiny_rules();
    rules.pursuer_moves = [](JointPosition) { return MoveList{ { 0 }, { 5 } }; };
    const auto problems = validate_spec(GameSpec{ rules });
    ASSERT_FALSE(problems.empty());
    EXPECT_EQ(problems[0].rule, 3);
}

TEST(GameSpec, NormalizesMoveLists)
{
    auto rules = tiny_rules();
    rules.pursuer_moves = [](JointPosition) { return MoveList{ { 1 }, { 0 }, { 1 } }; };
    const GameSpec spec{ rules };
    EXPECT_EQ(spec.pursuer_moves({ { 0 }, { 1 } }), (MoveList{ { 0 }, { 1 } }));
    EXPECT_TRUE(spec.initial_evader({ 7 }).empty());
    EXPECT_EQ(spec.initial_positions().size(), 4u);
}

TEST(ReachableStates, ClassicPathOnThreeVertices)
{
    const auto spec = classic_cops(make_path(3), 1);
    const auto states = reachable_states(spec);
    const auto oracle = bfs_states(spec);
    EXPECT_EQ(std::set<GameState>(states.begin(), states.end()), oracle);
    // 9 Pursuer-turn starts plus the 9 Evader-turn states after one cop move,
    // three of them on the diagonal.
    EXPECT_EQ(states.size(), 18u);
    EXPECT_TRUE(std::is_sorted(states.begin(), states.end()));
}

TEST(ReachableStates, FinalAtStartHasNoSuccessors)
{
    auto rules = tiny_rules();
    rules.initial_pursuer = { { 0 } };
    rules.initial_evader = [](PositionId) { return MoveList{ { 0 } }; };
    const auto states = reachable_states(GameSpec{ rules });
    ASSERT_EQ(states.size(), 1u);
    EXPECT_EQ(states[0], (GameState{ { { 0 }, { 0 } }, Turn::PursuerToMove }));
}

TEST(ReachableStates, SeepageMatchesIndependentEnumeration)
{
    const InputGraph diamond{ 4, { { 0, 1 }, { 0, 2 }, { 1, 3 }, { 2, 3 } }, true, false };
    const auto spec = seepage(diamond, 0, { 3 }, 1);
    const auto states = reachable_states(spec);
    EXPECT_EQ(std::set<GameState>(states.begin(), states.end()), bfs_states(spec));
}

TEST(ReachableStates, RandomGamesUnderEveryTiming)
{
    std::mt19937_64 rng{ 11 };
    for (int i = 0; i < 30; ++i) {
        RandomGameOptions o;
        o.max_pursuer = 12;
        o.max_evader = 12;
        o.loops = i % 2 == 0;
        o.timing = static_cast<FinalCheckTiming>(i % 3);
        const auto game = random_game(rng, o);
        const auto states = reachable_states(game.spec);
        EXPECT_EQ(std::set<GameState>(states.begin(), states.end()), bfs_states(game.spec)) << i;
    }
}

TEST(ReachableStates, CapacityIsEnforced)
{
    EXPECT_THROW((void)reachable_states(classic_cops(make_path(5), 1), 10), CapacityError);
}

TEST(FinalCheck, EveryStepIsTimingIndependent)
{
    const GameSpec spec{ tiny_rules() };
    const GameState s{ { { 0 }, { 0 } }, Turn::EvaderToMove };
    EXPECT_TRUE(is_final_now(spec, s, Player::Pursuer));
    EXPECT_TRUE(is_final_now(spec, s, Player::Evader));
    EXPECT_TRUE(is_final_now(spec, s, std::nullopt));
}

TEST(FinalCheck, AfterEvaderMoveIgnoresPursuerMoves)
{
    auto rules = tiny_rules();
    rules.final_check_timing = FinalCheckTiming::AfterEvaderMove;
    const GameSpec spec{ rules };
    EXPECT_FALSE(is_final_now(spec, { { { 0 }, { 0 } }, Turn::EvaderToMove }, Player::Pursuer));
    EXPECT_TRUE(is_final_now(spec, { { { 0 }, { 0 } }, Turn::PursuerToMove }, Player::Evader));
    EXPECT_TRUE(is_final_now(spec, { { { 0 }, { 0 } }, Turn::PursuerToMove }, std::nullopt));
    EXPECT_FALSE(is_terminal(spec, { { { 0 }, { 0 } }, Turn::EvaderToMove }));
    EXPECT_TRUE(is_terminal(spec, { { { 0 }, { 0 } }, Turn::PursuerToMove }));
}

TEST(FinalCheck, EternalDominationOnTriangle)
{
    // One guard on vertex 0; the attack moves to vertex 1, then the guard
    // follows.
    const auto spec = eternal_domination(make_complete(3), 1);
    EXPECT_EQ(spec.final_check_timing(), FinalCheckTiming::AfterEvaderMove);
    EXPECT_TRUE(spec.is_final({ { 1 }, { 0 } }));
    EXPECT_FALSE(is_final_now(spec, { { { 1 }, { 0 } }, Turn::EvaderToMove }, Player::Pursuer));
    EXPECT_FALSE(is_final_now(spec, { { { 1 }, { 1 } }, Turn::PursuerToMove }, Player::Evader));
}

TEST(Timing, NamesRoundTrip)
{
    for (auto t : { FinalCheckTiming::EveryStep, FinalCheckTiming::AfterEvaderMove, FinalCheckTiming::AfterPursuerMove })
        EXPECT_EQ(parse_timing(to_string(t)), t);
    EXPECT_FALSE(parse_timing("sometimes"));
}

TEST(OptimalStart, LeastIndexAmongEqualValues)
{
    const GameSpec spec{ tiny_rules() };
    const auto choice = optimal_start(spec, [](PositionId p, PositionId q) {
        return p.index == 0 ? ExtNat{ 2 + q.index } : ExtNat{ 3 };
    });
    EXPECT_EQ(choice.value, ExtNat{ 3 });
    ASSERT_TRUE(choice.best_start);
    EXPECT_EQ(choice.best_start->index, 0u);

    const auto none = optimal_start(spec, [](PositionId, PositionId) { return ExtNat::infinity(); });
    EXPECT_FALSE(none.best_start);
    EXPECT_TRUE(none.value.is_infinite());
}
