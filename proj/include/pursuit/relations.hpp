#pragma once

// The nondecreasing relation sequence from Evader positions to Pursuer
// positions. q is related to p at level i when, with the Evader to move at
// (p, q), every Evader move either ends the game or admits a Pursuer reply
// into a pair related at a level below i. The table stores, for each pair,
// the least such level (its rank), or infinity.

#include <cstdint>
#include <vector>

#include "pursuit/ext_nat.hpp"
#include "pursuit/game.hpp"
#include "pursuit/state_digraph.hpp"

namespace pursuit {

class RelationTable {
public:
    RelationTable() = default;
    RelationTable(std::size_t pursuer_count, std::size_t evader_count);

    // rank(q, p): least i with q related to p at level i.
    [[nodiscard]] ExtNat rank(PositionId evader, PositionId pursuer) const
    {
        return _rank[evader.index * _pursuer_count + pursuer.index];
    }
    void set_rank(PositionId evader, PositionId pursuer, ExtNat value)
    {
        _rank[evader.index * _pursuer_count + pursuer.index] = value;
    }

    // Pursuer moves still needed from the Evader-turn pair under optimal
    // play. Equal to the rank, except one less when the Evader's last move is
    // forced into a final position.
    [[nodiscard]] ExtNat pursuer_moves(PositionId evader, PositionId pursuer) const
    {
        return _moves[evader.index * _pursuer_count + pursuer.index];
    }
    void set_pursuer_moves(PositionId evader, PositionId pursuer, ExtNat value)
    {
        _moves[evader.index * _pursuer_count + pursuer.index] = value;
    }

    [[nodiscard]] std::size_t pursuer_count() const { return _pursuer_count; }
    [[nodiscard]] std::size_t evader_count() const { return _evader_count; }

    // Least t after which the relation no longer grows.
    std::uint32_t stabilization_index = 0;

private:
    std::size_t _pursuer_count = 0;
    std::size_t _evader_count = 0;
    std::vector<ExtNat> _rank;
    std::vector<ExtNat> _moves;
};

[[nodiscard]] RelationTable compute_relations(const GameSpec& spec,
                                              std::size_t capacity = kDefaultStateCapacity);

struct RelationalVerdict {
    Player winner = Player::Evader;
    std::optional<PositionId> witness;
};

// Winner from the start condition: some p in I_P such that every q in I_E(p)
// is final at placement or has a Pursuer reply w with rank(q, w) finite. The
// witness is the least such p with the shortest game.
[[nodiscard]] RelationalVerdict pursuer_wins_relational(const GameSpec& spec, const RelationTable& r);

// Length of a single start, in Pursuer moves: 0 when (p, q) is final,
// otherwise 1 + min over Pursuer replies w of pursuer_moves(q, w).
[[nodiscard]] ExtNat start_length(const GameSpec& spec, const RelationTable& r, JointPosition start);

// min over p in I_P of max over q in I_E(p) of start_length.
[[nodiscard]] ExtNat game_length(const GameSpec& spec, const RelationTable& r);

// The same min-max with 1 + min rank(q, w) per start. Overcounts by one when
// optimal play ends with the Evader forced into a final position; equal to
// game_length otherwise.
[[nodiscard]] ExtNat rank_game_length(const GameSpec& spec, const RelationTable& r);

struct LabelRankViolation {
    GameState state;
    ExtNat label;
    ExtNat rank;
};

// Every Evader-turn state with label k must have rank ceil(k / 2), with label
// 0 matching rank 0 and infinity matching infinity.
[[nodiscard]] std::vector<LabelRankViolation> check_label_rank_correspondence(const GameSpec& spec,
                                                                             const StateDigraph& d,
                                                                             const LabelTable& labels,
                                                                             const RelationTable& r);

} // namespace pursuit
