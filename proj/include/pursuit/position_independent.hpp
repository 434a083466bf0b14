#pragma once

// Games in which, away from final positions, each player's moves depend only
// on that player's own position. Such a game is described by two position
// digraphs (one per player); their categorical product is the round summary
// digraph, on which the relation sequence becomes a matrix filled sweep by
// sweep and the Pursuer's win is characterized by a removable vertex ordering.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pursuit/ext_nat.hpp"
#include "pursuit/game.hpp"

namespace pursuit {

class PositionDigraph {
public:
    PositionDigraph() = default;
    explicit PositionDigraph(std::vector<std::vector<std::uint32_t>> out_neighbours);

    [[nodiscard]] std::size_t vertex_count() const { return _out.size(); }
    [[nodiscard]] std::span<const std::uint32_t> out_neighbours(std::uint32_t v) const { return _out[v]; }
    [[nodiscard]] bool has_arc(std::uint32_t from, std::uint32_t to) const;
    [[nodiscard]] std::size_t arc_count() const;

    bool operator==(const PositionDigraph&) const = default;

private:
    std::vector<std::vector<std::uint32_t>> _out;
};

// Vertex (a, b) is indexed a * |V(h)| + b; (a, b) -> (c, d) iff a -> c in g and
// b -> d in h.
[[nodiscard]] PositionDigraph categorical_product(const PositionDigraph& g, const PositionDigraph& h);

[[nodiscard]] bool is_strongly_connected(const PositionDigraph& g);

struct IndependenceCounterexample {
    Player player = Player::Pursuer;
    JointPosition first;
    JointPosition second;
    MoveList first_moves;
    MoveList second_moves;

    [[nodiscard]] std::string describe(const GameSpec& spec) const;
};

struct IndependenceReport {
    bool independent = false;
    std::optional<IndependenceCounterexample> counterexample;
};

// Compares A_P over all positions whose Pursuer-turn state is live and A_E
// over all positions whose Evader-turn state is live.
[[nodiscard]] IndependenceReport verify_position_independence(const GameSpec& spec);

class DependenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PositionDigraphs {
    PositionDigraph pursuer;
    PositionDigraph evader;
};

// Throws DependenceError when the game is position dependent.
[[nodiscard]] PositionDigraphs derive_position_digraphs(const GameSpec& spec);

// Which positions end the game, split by who is next to move. Under
// EveryStep both predicates coincide with membership in F.
struct FinalPositions {
    std::size_t pursuer_count = 0;
    std::size_t evader_count = 0;
    std::vector<bool> evader_turn;  // ((p, q), E) is terminal
    std::vector<bool> pursuer_turn; // ((p, q), P) is terminal

    [[nodiscard]] bool at_evader_turn(std::uint32_t p, std::uint32_t q) const
    {
        return evader_turn[p * evader_count + q];
    }
    [[nodiscard]] bool at_pursuer_turn(std::uint32_t p, std::uint32_t q) const
    {
        return pursuer_turn[p * evader_count + q];
    }
};

[[nodiscard]] FinalPositions final_positions(std::size_t pursuer_count, std::size_t evader_count,
                                             const std::function<bool(JointPosition)>& is_final,
                                             FinalCheckTiming timing = FinalCheckTiming::EveryStep);
[[nodiscard]] FinalPositions final_positions(const GameSpec& spec);

class RelationMatrix {
public:
    RelationMatrix() = default;
    RelationMatrix(std::size_t pursuer_count, std::size_t evader_count)
        : _pursuer_count{ pursuer_count }, _evader_count{ evader_count },
          _entries(pursuer_count * evader_count, ExtNat::infinity()),
          _moves(pursuer_count * evader_count, ExtNat::infinity())
    {
    }

    [[nodiscard]] ExtNat at(std::uint32_t p, std::uint32_t q) const { return _entries[p * _evader_count + q]; }
    void set(std::uint32_t p, std::uint32_t q, ExtNat v) { _entries[p * _evader_count + q] = v; }

    // Pursuer moves still needed from ((p, q), E); the entry itself, or one
    // less when the Evader's last move is forced into a final position.
    [[nodiscard]] ExtNat pursuer_moves(std::uint32_t p, std::uint32_t q) const
    {
        return _moves[p * _evader_count + q];
    }
    void set_pursuer_moves(std::uint32_t p, std::uint32_t q, ExtNat v) { _moves[p * _evader_count + q] = v; }

    [[nodiscard]] std::size_t pursuer_count() const { return _pursuer_count; }
    [[nodiscard]] std::size_t evader_count() const { return _evader_count; }
    [[nodiscard]] bool all_finite() const;
    [[nodiscard]] ExtNat max_finite_entry() const;

    std::size_t sweeps = 0;

private:
    std::size_t _pursuer_count = 0;
    std::size_t _evader_count = 0;
    std::vector<ExtNat> _entries;
    std::vector<ExtNat> _moves;
};

// Zero on final positions, then sweeps i = 1, 2, ... row by row: entry (p, q)
// becomes i when every Evader move x from q either ends the game or admits a
// Pursuer move y from p with entry (y, x) < i. Stops after a sweep that
// assigns nothing; unassigned entries stay infinite.
[[nodiscard]] RelationMatrix fill_relation_matrix(const PositionDigraph& pursuer,
                                                  const PositionDigraph& evader,
                                                  const FinalPositions& final);

class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Winner from the full-relation criterion. Requires a strongly connected
// Pursuer digraph and I = X x P_E; throws PreconditionError otherwise.
[[nodiscard]] Player full_relation_winner(const PositionDigraph& pursuer, const RelationMatrix& matrix,
                                          std::span<const JointPosition> initial);

struct RemovableOrdering {
    std::vector<JointPosition> sequence;
    PositionId witness_start;
};

// Finite-entry vertices sorted by (entry, pursuer, evader) plus the optimal
// start; absent when the Pursuer has no winning start.
[[nodiscard]] std::optional<RemovableOrdering> extract_removable_ordering(const RelationMatrix& matrix,
                                                                          const PositionDigraph& pursuer,
                                                                          const GameSpec& spec);

// Independent check of the removability conditions and the witness start.
[[nodiscard]] bool verify_removable_ordering(const RemovableOrdering& ordering, const PositionDigraph& pursuer,
                                             const PositionDigraph& evader, const FinalPositions& final,
                                             const GameSpec& spec);

struct MatrixLength {
    ExtNat value = ExtNat::infinity();
    std::optional<PositionId> best_start;
    // max over p of min over q of the matrix entries; reported for
    // comparison only.
    ExtNat max_min_diagnostic = ExtNat::infinity();
    // min-max of 1 + min entry per start, comparison only.
    ExtNat entry_length_diagnostic = ExtNat::infinity();
};

[[nodiscard]] MatrixLength matrix_game_length(const RelationMatrix& matrix, const PositionDigraph& pursuer,
                                              const GameSpec& spec);

} // namespace pursuit
