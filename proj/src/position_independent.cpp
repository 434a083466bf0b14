#include "pursuit/position_independent.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>

namespace pursuit {

PositionDigraph::PositionDigraph(std::vector<std::vector<std::uint32_t>> out_neighbours)
    : _out{ std::move(out_neighbours) }
{
    for (auto& out : _out) {
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        for (auto v : out)
            if (v >= _out.size())
                throw std::out_of_range("PositionDigraph: arc head out of range");
    }
}

bool PositionDigraph::has_arc(std::uint32_t from, std::uint32_t to) const
{
    const auto& out = _out[from];
    return std::binary_search(out.begin(), out.end(), to);
}

std::size_t PositionDigraph::arc_count() const
{
    std::size_t total = 0;
    for (const auto& out : _out)
        total += out.size();
    return total;
}

PositionDigraph categorical_product(const PositionDigraph& g, const PositionDigraph& h)
{
    const auto hn = static_cast<std::uint32_t>(h.vertex_count());
    std::vector<std::vector<std::uint32_t>> out(g.vertex_count() * h.vertex_count());
    for (std::uint32_t a = 0; a < g.vertex_count(); ++a)
        for (std::uint32_t b = 0; b < hn; ++b) {
            auto& arcs = out[a * hn + b];
            arcs.reserve(g.out_neighbours(a).size() * h.out_neighbours(b).size());
            for (auto c : g.out_neighbours(a))
                for (auto d : h.out_neighbours(b))
                    arcs.push_back(c * hn + d);
        }
    return PositionDigraph{ std::move(out) };
}

bool is_strongly_connected(const PositionDigraph& g)
{
    const auto n = g.vertex_count();
    if (n == 0)
        return true;
    std::vector<std::vector<std::uint32_t>> reverse(n);
    for (std::uint32_t v = 0; v < n; ++v)
        for (auto w : g.out_neighbours(v))
            reverse[w].push_back(v);

    auto reaches_all = [n](auto&& neighbours) {
        std::vector<bool> seen(n, false);
        std::deque<std::uint32_t> queue{ 0 };
        seen[0] = true;
        std::size_t count = 1;
        while (!queue.empty()) {
            const auto v = queue.front();
            queue.pop_front();
            for (auto w : neighbours(v))
                if (!seen[w]) {
                    seen[w] = true;
                    ++count;
                    queue.push_back(w);
                }
        }
        return count == n;
    };
    return reaches_all([&](std::uint32_t v) { return g.out_neighbours(v); })
           && reaches_all([&](std::uint32_t v) { return std::span<const std::uint32_t>{ reverse[v] }; });
}

std::string IndependenceCounterexample::describe(const GameSpec& spec) const
{
    auto list = [](const MoveList& moves) {
        std::ostringstream os;
        os << "{";
        for (std::size_t i = 0; i < moves.size(); ++i)
            os << (i ? "," : "") << moves[i].index;
        os << "}";
        return os.str();
    };
    auto pos = [&](JointPosition jp) {
        return "(" + spec.pursuer_name(jp.pursuer) + ", " + spec.evader_name(jp.evader) + ")";
    };
    std::ostringstream os;
    os << to_string(player) << " moves differ: " << pos(first) << " -> " << list(first_moves) << " but "
       << pos(second) << " -> " << list(second_moves);
    return os.str();
}

IndependenceReport verify_position_independence(const GameSpec& spec)
{
    const auto np = static_cast<std::uint32_t>(spec.pursuer_position_count());
    const auto ne = static_cast<std::uint32_t>(spec.evader_position_count());

    for (std::uint32_t p = 0; p < np; ++p) {
        std::optional<std::pair<JointPosition, MoveList>> reference;
        for (std::uint32_t q = 0; q < ne; ++q) {
            const JointPosition pos{ { p }, { q } };
            if (is_terminal(spec, GameState{ pos, Turn::PursuerToMove }))
                continue;
            auto moves = spec.pursuer_moves(pos);
            if (!reference)
                reference.emplace(pos, std::move(moves));
            else if (moves != reference->second)
                return { false, IndependenceCounterexample{ Player::Pursuer, reference->first, pos,
                                                            reference->second, std::move(moves) } };
        }
    }
    for (std::uint32_t q = 0; q < ne; ++q) {
        std::optional<std::pair<JointPosition, MoveList>> reference;
        for (std::uint32_t p = 0; p < np; ++p) {
            const JointPosition pos{ { p }, { q } };
            if (is_terminal(spec, GameState{ pos, Turn::EvaderToMove }))
                continue;
            auto moves = spec.evader_moves(pos);
            if (!reference)
                reference.emplace(pos, std::move(moves));
            else if (moves != reference->second)
                return { false, IndependenceCounterexample{ Player::Evader, reference->first, pos,
                                                            reference->second, std::move(moves) } };
        }
    }
    return { true, std::nullopt };
}

PositionDigraphs derive_position_digraphs(const GameSpec& spec)
{
    const auto report = verify_position_independence(spec);
    if (!report.independent)
        throw DependenceError("game is position dependent: " + report.counterexample->describe(spec));

    const auto np = static_cast<std::uint32_t>(spec.pursuer_position_count());
    const auto ne = static_cast<std::uint32_t>(spec.evader_position_count());

    auto to_indices = [](const MoveList& moves) {
        std::vector<std::uint32_t> out;
        out.reserve(moves.size());
        for (auto m : moves)
            out.push_back(m.index);
        return out;
    };

    std::vector<std::vector<std::uint32_t>> pursuer(np), evader(ne);
    for (std::uint32_t p = 0; p < np; ++p) {
        std::uint32_t q = 0;
        while (q < ne && is_terminal(spec, GameState{ { { p }, { q } }, Turn::PursuerToMove }))
            ++q;
        pursuer[p] = to_indices(spec.pursuer_moves({ { p }, { q < ne ? q : 0 } }));
    }
    for (std::uint32_t q = 0; q < ne; ++q) {
        std::uint32_t p = 0;
        while (p < np && is_terminal(spec, GameState{ { { p }, { q } }, Turn::EvaderToMove }))
            ++p;
        evader[q] = to_indices(spec.evader_moves({ { p < np ? p : 0 }, { q } }));
    }
    return { PositionDigraph{ std::move(pursuer) }, PositionDigraph{ std::move(evader) } };
}

FinalPositions final_positions(std::size_t pursuer_count, std::size_t evader_count,
                               const std::function<bool(JointPosition)>& is_final, FinalCheckTiming timing)
{
    FinalPositions f;
    f.pursuer_count = pursuer_count;
    f.evader_count = evader_count;
    f.evader_turn.assign(pursuer_count * evader_count, false);
    f.pursuer_turn.assign(pursuer_count * evader_count, false);
    const bool check_after_pursuer = timing != FinalCheckTiming::AfterEvaderMove;
    const bool check_after_evader = timing != FinalCheckTiming::AfterPursuerMove;
    for (std::uint32_t p = 0; p < pursuer_count; ++p)
        for (std::uint32_t q = 0; q < evader_count; ++q) {
            if (!is_final({ { p }, { q } }))
                continue;
            f.evader_turn[p * evader_count + q] = check_after_pursuer;
            f.pursuer_turn[p * evader_count + q] = check_after_evader;
        }
    return f;
}

FinalPositions final_positions(const GameSpec& spec)
{
    return final_positions(spec.pursuer_position_count(), spec.evader_position_count(),
                           [&](JointPosition pos) { return spec.is_final(pos); }, spec.final_check_timing());
}

bool RelationMatrix::all_finite() const
{
    return std::all_of(_entries.begin(), _entries.end(), [](ExtNat v) { return v.is_finite(); });
}

ExtNat RelationMatrix::max_finite_entry() const
{
    ExtNat best{ 0 };
    for (auto v : _entries)
        if (v.is_finite())
            best = std::max(best, v);
    return best;
}

RelationMatrix fill_relation_matrix(const PositionDigraph& pursuer, const PositionDigraph& evader,
                                    const FinalPositions& final)
{
    const auto np = static_cast<std::uint32_t>(pursuer.vertex_count());
    const auto ne = static_cast<std::uint32_t>(evader.vertex_count());
    if (final.pursuer_count != np || final.evader_count != ne)
        throw std::invalid_argument("fill_relation_matrix: final-position table has the wrong shape");

    RelationMatrix m{ np, ne };
    for (std::uint32_t p = 0; p < np; ++p)
        for (std::uint32_t q = 0; q < ne; ++q)
            if (final.at_evader_turn(p, q)) {
                m.set(p, q, ExtNat{ 0 });
                m.set_pursuer_moves(p, q, ExtNat{ 0 });
            }

    for (std::uint32_t level = 1;; ++level) {
        ++m.sweeps;
        const ExtNat bound{ level };
        bool assigned = false;
        for (std::uint32_t p = 0; p < np; ++p) {
            const auto replies = pursuer.out_neighbours(p);
            for (std::uint32_t q = 0; q < ne; ++q) {
                if (m.at(p, q).is_finite())
                    continue;
                bool holds = true;
                ExtNat moves{ 0 };
                for (auto x : evader.out_neighbours(q)) {
                    if (final.at_pursuer_turn(p, x))
                        continue;
                    ExtNat fewest = ExtNat::infinity();
                    for (auto y : replies)
                        if (m.at(y, x) < bound)
                            fewest = std::min(fewest, m.pursuer_moves(y, x));
                    if (fewest.is_infinite()) {
                        holds = false;
                        break;
                    }
                    moves = std::max(moves, fewest.successor());
                }
                if (holds) {
                    m.set(p, q, bound);
                    m.set_pursuer_moves(p, q, moves);
                    assigned = true;
                }
            }
        }
        if (!assigned)
            break;
    }
    return m;
}

Player full_relation_winner(const PositionDigraph& pursuer, const RelationMatrix& matrix,
                            std::span<const JointPosition> initial)
{
    if (!is_strongly_connected(pursuer))
        throw PreconditionError("the Pursuer's position digraph is not strongly connected; "
                                "use the general start-condition criterion instead");
    if (initial.empty())
        throw PreconditionError("the set of start positions is empty");
    std::map<std::uint32_t, std::vector<bool>> rows;
    for (auto pos : initial) {
        auto& row = rows.try_emplace(pos.pursuer.index, matrix.evader_count(), false).first->second;
        row[pos.evader.index] = true;
    }
    for (const auto& [p, row] : rows)
        if (std::find(row.begin(), row.end(), false) != row.end())
            throw PreconditionError("start positions are not of the form X x P_E (Pursuer position "
                                    + std::to_string(p) + " lacks some Evader start); "
                                    "use the general start-condition criterion instead");
    return matrix.all_finite() ? Player::Pursuer : Player::Evader;
}

MatrixLength matrix_game_length(const RelationMatrix& matrix, const PositionDigraph& pursuer,
                                const GameSpec& spec)
{
    MatrixLength out;
    auto length_by = [&](auto&& table) {
        return optimal_start(spec, [&](PositionId p, PositionId q) {
            if (is_final_at_start(spec, { p, q }))
                return ExtNat{ 0 };
            ExtNat best = ExtNat::infinity();
            for (auto y : pursuer.out_neighbours(p.index))
                best = std::min(best, table(y, q.index));
            return best.successor();
        });
    };
    const auto choice = length_by([&](std::uint32_t y, std::uint32_t q) { return matrix.pursuer_moves(y, q); });
    out.value = choice.value;
    out.best_start = choice.best_start;
    out.entry_length_diagnostic = length_by([&](std::uint32_t y, std::uint32_t q) { return matrix.at(y, q); }).value;

    ExtNat max_min{ 0 };
    for (std::uint32_t p = 0; p < matrix.pursuer_count(); ++p) {
        ExtNat row_min = ExtNat::infinity();
        for (std::uint32_t q = 0; q < matrix.evader_count(); ++q)
            row_min = std::min(row_min, matrix.at(p, q));
        max_min = std::max(max_min, row_min);
    }
    out.max_min_diagnostic = max_min;
    return out;
}

std::optional<RemovableOrdering> extract_removable_ordering(const RelationMatrix& matrix,
                                                            const PositionDigraph& pursuer,
                                                            const GameSpec& spec)
{
    const auto length = matrix_game_length(matrix, pursuer, spec);
    if (!length.best_start)
        return std::nullopt;

    std::vector<std::tuple<ExtNat, std::uint32_t, std::uint32_t>> finite;
    for (std::uint32_t p = 0; p < matrix.pursuer_count(); ++p)
        for (std::uint32_t q = 0; q < matrix.evader_count(); ++q)
            if (matrix.at(p, q).is_finite())
                finite.emplace_back(matrix.at(p, q), p, q);
    std::sort(finite.begin(), finite.end());

    RemovableOrdering ordering;
    ordering.witness_start = *length.best_start;
    ordering.sequence.reserve(finite.size());
    for (const auto& [entry, p, q] : finite)
        ordering.sequence.push_back({ { p }, { q } });
    return ordering;
}

bool verify_removable_ordering(const RemovableOrdering& ordering, const PositionDigraph& pursuer,
                               const PositionDigraph& evader, const FinalPositions& final,
                               const GameSpec& spec)
{
    const auto np = pursuer.vertex_count();
    const auto ne = evader.vertex_count();
    std::vector<bool> listed(np * ne, false);

    for (auto pos : ordering.sequence) {
        const auto p = pos.pursuer.index;
        const auto q = pos.evader.index;
        if (p >= np || q >= ne)
            return false;
        bool removable = final.at_evader_turn(p, q);
        if (!removable) {
            removable = true;
            for (auto x : evader.out_neighbours(q)) {
                if (final.at_pursuer_turn(p, x))
                    continue;
                bool covered = false;
                for (auto y : pursuer.out_neighbours(p))
                    if (listed[y * ne + x]) {
                        covered = true;
                        break;
                    }
                if (!covered) {
                    removable = false;
                    break;
                }
            }
        }
        if (!removable)
            return false;
        listed[p * ne + q] = true;
    }

    const auto w = ordering.witness_start;
    const auto& starts = spec.initial_pursuer();
    if (w.index >= np || !std::binary_search(starts.begin(), starts.end(), w))
        return false;
    for (auto q : spec.initial_evader(w)) {
        if (spec.is_final({ w, q }))
            continue;
        bool reply = false;
        for (auto y : pursuer.out_neighbours(w.index))
            reply = reply || listed[y * ne + q.index];
        if (!reply)
            return false;
    }
    return true;
}

} // namespace pursuit
