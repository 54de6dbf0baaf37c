#include <algorithm>
#include <sstream>

#include "solchess/reduction.hpp"

namespace solchess {

namespace {

std::string pos_str(Position p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

/// Emits moves onto a live board so every generated move is checked the
/// moment it is produced; failures carry the move index and both roles.
class MoveEmitter {
public:
    MoveEmitter(BoardState board, const ReductionLayout& layout)
        : board_(std::move(board)), layout_(layout) {}

    void move(Position from, Position to) {
        try {
            board_ = apply_move(board_, Move{from, to});
        } catch (const BoardError& e) {
            std::ostringstream out;
            out << "witness synthesis failed at move " << witness_.moves.size() << " (" << pos_str(from)
                << " -> " << pos_str(to) << "): " << e.what();
            auto from_role = layout_.role_at(from);
            auto to_role = layout_.role_at(to);
            out << "; source square role: " << (from_role ? from_role->describe() : "none")
                << "; target square role: " << (to_role ? to_role->describe() : "none");
            throw SynthesisError(out.str(), witness_.moves.size());
        }
        witness_.moves.push_back(Move{from, to});
    }

    /// Capture everything on column x strictly below `from`, nearest first,
    /// until the square `stop` has been captured.
    Position sweep_column_down(Position from, Position stop) {
        Position cur = from;
        while (true) {
            std::optional<Position> next;
            for (const Piece& p : board_.pieces())
                if (p.pos.x == cur.x && p.pos.y < cur.y && (!next || p.pos.y > next->y))
                    next = p.pos;
            if (!next)
                throw SynthesisError("column sweep from " + pos_str(from) + " found nothing below " +
                                         pos_str(cur) + " before reaching " + pos_str(stop),
                                     witness_.moves.size());
            move(cur, *next);
            cur = *next;
            if (cur == stop) return cur;
        }
    }

    /// Capture everything on row y strictly left of `from` until `stop`.
    Position sweep_row_left(Position from, Position stop) {
        Position cur = from;
        while (true) {
            std::optional<Position> next;
            for (const Piece& p : board_.pieces())
                if (p.pos.y == cur.y && p.pos.x < cur.x && (!next || p.pos.x > next->x))
                    next = p.pos;
            if (!next)
                throw SynthesisError("row sweep from " + pos_str(from) + " found nothing left of " +
                                         pos_str(cur) + " before reaching " + pos_str(stop),
                                     witness_.moves.size());
            move(cur, *next);
            cur = *next;
            if (cur == stop) return cur;
        }
    }

    const BoardState& board() const { return board_; }
    Witness take() { return std::move(witness_); }

private:
    BoardState board_;
    const ReductionLayout& layout_;
    Witness witness_;
};

}  // namespace

Witness synthesize_witness(const CnfInstance& cnf, const Assignment& assignment,
                           const ReductionLayout& layout, const SynthOptions& options) {
    const CnfInstance padded = pad_single_clause(cnf);
    if (cnf.num_vars != layout.n || static_cast<int>(padded.clauses.size()) != layout.m_padded)
        throw ReductionError("layout does not match the instance");
    if (assignment.num_vars() != cnf.num_vars)
        throw SynthesisError("assignment does not cover all variables", 0);
    if (!satisfies(padded, assignment))
        throw SynthesisError("assignment does not satisfy the instance", 0);

    // Pick, per clause, the literals resolved forward (b1 captures b2).
    // Forward-resolved literals park a bishop on the variable column where
    // the variable rook will collect it, so they must be satisfied.
    std::vector<std::vector<int>> forward(padded.clauses.size());
    for (int j = 1; j <= layout.m_padded; ++j) {
        const Clause& clause = padded.clauses[static_cast<std::size_t>(j - 1)];
        auto satisfied = [&](int k) {
            return satisfies(clause.literals[static_cast<std::size_t>(k - 1)], assignment);
        };
        if (options.rook_collision.count(j)) {
            if (!satisfied(1) || !satisfied(3))
                throw SynthesisError("rook collision for clause " + std::to_string(j) +
                                         " needs literals 1 and 3 satisfied",
                                     0);
            forward[static_cast<std::size_t>(j - 1)] = {1, 3};
            continue;
        }
        int z = 0;
        if (auto it = options.forced_choice.find(j); it != options.forced_choice.end()) {
            if (it->second < 1 || it->second > 3 || !satisfied(it->second))
                throw SynthesisError("forced choice for clause " + std::to_string(j) +
                                         " is not a satisfied literal",
                                     0);
            z = it->second;
        } else {
            for (int k = 1; k <= 3 && z == 0; ++k)
                if (satisfied(k)) z = k;
        }
        forward[static_cast<std::size_t>(j - 1)] = {z};
    }

    auto literal_at = [&](int j, int k) -> const LiteralPlacement& {
        for (const LiteralPlacement& lp : layout.literals)
            if (lp.j == j && lp.k == k) return lp;
        throw ReductionError("layout is missing literal (" + std::to_string(j) + "," +
                             std::to_string(k) + ")");
    };

    MoveEmitter emit(layout.board(), layout);

    // Bishop resolution: forward literals send b1 onto the b2 square (on a
    // variable column); the rest send b2 onto the b1 square (on a clause row).
    for (int j = 1; j <= layout.m_padded; ++j) {
        const auto& fwd = forward[static_cast<std::size_t>(j - 1)];
        for (int k = 1; k <= 3; ++k) {
            const LiteralPlacement& lp = literal_at(j, k);
            if (std::find(fwd.begin(), fwd.end(), k) != fwd.end())
                emit.move(lp.b1, lp.b2);
            else
                emit.move(lp.b2, lp.b1);
        }
    }

    // Variable rooks: gate toward the column of the assigned value, then
    // sweep that column down to the cleaning pawn.
    for (const VariableGadget& v : layout.variables) {
        const bool value = assignment.value(v.i);
        const Position p1 = v.gate[0], p2 = v.gate[1], p3 = v.gate[2];
        Position rook = v.rook;
        if (value) {
            emit.move(rook, p3);
            emit.move(p3, p2);
            emit.move(p2, p1);
            rook = p1;  // (iM, row): true column
        } else {
            emit.move(rook, p1);
            emit.move(p1, p2);
            emit.move(p2, p3);
            rook = p3;  // (iM+2, row-2): false column
        }
        const Coord col = value ? v.true_column_x : v.false_column_x;
        emit.sweep_column_down(rook, Position{col, -col});
    }

    // Clause rooks: slot 0 starts in the k=2 row and can stay or drop to the
    // k=1 row; slot 1 starts in the k=3 row and can stay or drop to the k=2
    // row. Each covered row is swept left to its cleaning pawn.
    for (const ClauseGadget& c : layout.clauses) {
        const auto& fwd = forward[static_cast<std::size_t>(c.j - 1)];
        auto run_gate = [&](int slot, bool stay) -> Position {
            const Position rook = c.rooks[static_cast<std::size_t>(slot)];
            const auto& g = c.gate[static_cast<std::size_t>(slot)];
            if (stay) {
                emit.move(rook, g[0]);
                emit.move(g[0], g[1]);
                emit.move(g[1], g[2]);
                return g[2];  // (x-2, y): original row
            }
            emit.move(rook, g[2]);
            emit.move(g[2], g[1]);
            emit.move(g[1], g[0]);
            return g[0];  // (x, y-2): one row down
        };

        if (fwd.size() == 2) {
            // Rows 1 and 3 resolved forward; both rooks converge on the k=2
            // row and one captures the other before the sweep.
            Position a = run_gate(0, /*stay=*/true);
            Position b = run_gate(1, /*stay=*/false);
            emit.move(a, b);
            emit.sweep_row_left(b, Position{-c.rows[1], c.rows[1]});
            continue;
        }

        const int z = fwd.front();
        std::array<Position, 2> landed;
        switch (z) {
            case 1:
                landed = {run_gate(0, true), run_gate(1, true)};  // rows 2 and 3
                break;
            case 2:
                landed = {run_gate(0, false), run_gate(1, true)};  // rows 1 and 3
                break;
            default:
                landed = {run_gate(0, false), run_gate(1, false)};  // rows 1 and 2
                break;
        }
        for (const Position& rook : landed)
            emit.sweep_row_left(rook, Position{-rook.y, rook.y});
    }

    // Cleaning bishop: everything left sits on the x+y = 0 anti-diagonal.
    // Take the upper-left arm outward, then the lower-right arm outward.
    Position bishop = layout.cleaning_bishop;
    std::vector<Position> upper, lower;
    for (const ClauseGadget& c : layout.clauses)
        for (const Coord row : c.rows) upper.push_back(Position{-row, row});
    for (const VariableGadget& v : layout.variables) {
        lower.push_back(Position{v.true_column_x, -v.true_column_x});
        lower.push_back(Position{v.false_column_x, -v.false_column_x});
    }
    std::sort(upper.begin(), upper.end(), [](Position a, Position b) { return a.y < b.y; });
    std::sort(lower.begin(), lower.end(), [](Position a, Position b) { return a.x < b.x; });
    for (const Position& target : upper) {
        emit.move(bishop, target);
        bishop = target;
    }
    for (const Position& target : lower) {
        emit.move(bishop, target);
        bishop = target;
    }

    if (!is_solved(emit.board()))
        throw SynthesisError("synthesis finished with " + std::to_string(emit.board().size()) +
                                 " pieces left",
                             0);
    return emit.take();
}

Assignment extract_assignment(const ReductionLayout& layout, const Witness& w) {
    const BoardState initial = layout.board();
    const WitnessReport report = validate_witness(initial, w);
    if (!report.ok)
        throw ReductionError("witness does not solve the reduced board (move " +
                             std::to_string(report.failed_index) + ": " + report.reason + ")");

    struct RookTrack {
        Position pos;
        bool alive = true;
        bool committed = false;
        bool value = false;
        std::vector<Position> gate_left;
    };
    std::vector<RookTrack> tracks;
    tracks.reserve(layout.variables.size());
    for (const VariableGadget& v : layout.variables) {
        RookTrack t;
        t.pos = v.rook;
        t.gate_left = {v.gate[0], v.gate[1], v.gate[2]};
        tracks.push_back(t);
    }

    for (const Move& m : w.moves) {
        for (std::size_t idx = 0; idx < tracks.size(); ++idx) {
            RookTrack& t = tracks[idx];
            if (!t.alive) continue;
            if (m.to == t.pos && !(m.from == t.pos)) {
                t.alive = false;
                continue;
            }
            if (m.from == t.pos) {
                t.pos = m.to;
                auto it = std::find(t.gate_left.begin(), t.gate_left.end(), m.to);
                if (it != t.gate_left.end()) t.gate_left.erase(it);
                if (!t.committed && t.gate_left.empty()) {
                    t.committed = true;
                    t.value = (t.pos.x == layout.variables[idx].true_column_x);
                }
            }
        }
    }

    Assignment assignment(layout.n);
    for (std::size_t idx = 0; idx < tracks.size(); ++idx)
        assignment.set(layout.variables[idx].i, tracks[idx].committed && tracks[idx].value);
    return assignment;
}

}  // namespace solchess
