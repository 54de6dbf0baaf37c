#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "solchess/board.hpp"
#include "solchess/cnf.hpp"
#include "solchess/engine.hpp"

namespace solchess {

/// Paper mode reproduces the source coordinate formulas verbatim; Amended
/// mode moves the variable band above every clause-side placement and keeps
/// it on even parity (see reduce() notes). Everything else is identical.
enum class ReductionMode { Paper, Amended };

std::string to_string(ReductionMode mode);
std::optional<ReductionMode> reduction_mode_from_string(const std::string& s);

struct GadgetRole {
    enum class Type {
        VariableRook,          // (i)
        VariableGatePawn,      // (i, idx 1..3)
        ClauseRook,            // (j, slot 0..1)
        ClauseGatePawn,        // (j, slot, idx 1..3)
        LiteralBishopB1,       // (j, k)
        LiteralBishopB2,       // (j, k)
        CleaningBishop,        // ()
        CleaningPawnClause,    // (j, k)
        CleaningPawnVariable,  // (i, side 0=true column, 1=false column)
    };

    Type type = Type::CleaningBishop;
    int a = 0;
    int b = 0;
    int c = 0;

    PieceKind piece_kind() const;
    std::string describe() const;

    friend bool operator==(const GadgetRole&, const GadgetRole&) = default;
};

struct VariableGadget {
    int i = 0;
    Position rook;
    std::array<Position, 3> gate;      // p1, p2, p3
    Coord true_column_x = 0;           // i*M, hosts b2 of positive literals
    Coord false_column_x = 0;          // i*M+2, hosts b2 of negative literals
    std::array<Position, 2> cleaning;  // on true column, on false column

    friend bool operator==(const VariableGadget&, const VariableGadget&) = default;
};

struct ClauseGadget {
    int j = 0;
    std::array<Coord, 3> rows;                    // rows of literals k=1,2,3
    std::array<Position, 2> rooks;                // slot 0 starts in rows[1], slot 1 in rows[2]
    std::array<std::array<Position, 3>, 2> gate;  // per slot: p1, p2, p3
    std::array<Position, 3> cleaning;             // (-rows[k], rows[k])

    friend bool operator==(const ClauseGadget&, const ClauseGadget&) = default;
};

struct LiteralPlacement {
    int j = 0;
    int k = 0;
    int var = 0;
    bool positive = true;
    int occurrence = 0;  // earlier literals of the same variable in this clause
    Position b1;
    Position b2;

    friend bool operator==(const LiteralPlacement&, const LiteralPlacement&) = default;
};

/// Bookkeeping for every placed piece: which gadget it belongs to and why.
/// Needed by the verifier checks, witness synthesis and assignment extraction.
struct ReductionLayout {
    ReductionMode mode = ReductionMode::Amended;
    int n = 0;
    int m_original = 0;
    int m_padded = 0;
    Coord column_spacing = 0;  // M = 8 m^2
    Position cleaning_bishop;
    std::vector<VariableGadget> variables;
    std::vector<ClauseGadget> clauses;
    std::vector<LiteralPlacement> literals;

    /// Rebuilds the role lookup; call after filling the vectors by hand
    /// (reduce() and the JSON reader do it for you).
    void rebuild_role_map();

    std::optional<GadgetRole> role_at(Position pos) const;
    const std::vector<std::pair<Position, GadgetRole>>& placements() const {
        return placements_;
    }

    /// Board implied by the layout (all pieces at their initial squares).
    BoardState board() const;

private:
    std::vector<std::pair<Position, GadgetRole>> placements_;  // sorted by position
};

class ReductionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Compiles a 3-CNF into a capture-only chess instance.
///
/// With t = (i+j) mod m and M = 8 m^2, a literal of variable i in clause j,
/// slot k, places b1 at (iM-7-2t+2k, 6mj+2k) and b2 at (iM, 6mj+7+2t) when
/// positive, (iM+2, 6mj+9+2t) when negative. Repeated occurrences of one
/// variable inside a clause would all share one b2 square under those
/// formulas, so occurrence o of the same variable in a clause uses t+3o,
/// which moves the pair to its own otherwise-unused diagonal. The variable
/// rook row is 5m^2+8i in Paper mode and 6m^2+8m+8i+4 in Amended mode (even,
/// and above every bumped b2). Placement collisions abort with both roles
/// named; nothing is ever overwritten.
std::pair<BoardState, ReductionLayout> reduce(const CnfInstance& cnf, ReductionMode mode);

/// Piece count of a reduced instance: 17 m + 6 n + 1 for the padded clause
/// count m. The historically quoted size for this construction, 17m + 1 + 4n,
/// undercounts the cleaning pawns and per-literal bishops; callers comparing
/// against it should expect a mismatch.
std::size_t piece_count(int n, int m_padded);

struct SynthOptions {
    /// Force the chosen (bishop-forward) literal of clause j; must be
    /// satisfied by the assignment.
    std::map<int, int> forced_choice;
    /// Clauses whose literals 1 and 3 are both resolved forward so that the
    /// two clause rooks meet in the middle row and one captures the other.
    /// Requires literals 1 and 3 of the clause to be satisfied.
    std::set<int> rook_collision;
};

class SynthesisError : public std::runtime_error {
public:
    SynthesisError(std::string message, std::size_t move_index)
        : std::runtime_error(std::move(message)), move_index(move_index) {}
    std::size_t move_index = 0;
};

/// Builds a solving witness for the reduced instance from a satisfying
/// assignment: bishop pairs resolve per clause choice, variable rooks run
/// their gates toward the column of their truth value and sweep it, clause
/// rooks cover the unchosen rows, and the cleaning bishop finishes the
/// anti-diagonal. Throws SynthesisError if the assignment does not satisfy
/// the instance or a generated move fails playback.
Witness synthesize_witness(const CnfInstance& cnf, const Assignment& assignment,
                           const ReductionLayout& layout, const SynthOptions& options = {});

/// Reads the truth assignment off a validated witness: variable i is true
/// iff its rook sits on the true column (iM) right after capturing the last
/// pawn of its gate. A rook that never finishes its gate leaves the variable
/// false. Throws ReductionError when the witness does not solve the board.
Assignment extract_assignment(const ReductionLayout& layout, const Witness& w);

}  // namespace solchess
