#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "solchess/board.hpp"
#include "solchess/cnf.hpp"
#include "solchess/engine.hpp"
#include "solchess/reduction.hpp"
#include "solchess/solver.hpp"

namespace solchess {

class VerifierError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class CheckStatus { Pass, Fail, Inconclusive };

std::string to_string(CheckStatus status);

/// Result of one mechanical check. A failing report always carries a
/// concrete counterexample (positions, roles, moves) in `details`, so it can
/// be replayed in isolation.
struct CheckReport {
    std::string name;
    CheckStatus status = CheckStatus::Fail;
    nlohmann::json details;  // sub-check results and counterexamples
    nlohmann::json stats;    // counts, elapsed milliseconds

    bool passed() const { return status == CheckStatus::Pass; }
    nlohmann::json to_json() const;
};

/// Exhaustive SAT oracle over all 2^n assignments, n <= 24. Returns the
/// first satisfying assignment in binary counting order (x1 = low bit),
/// or nullopt when none exists. Throws std::invalid_argument for larger n.
std::optional<Assignment> brute_force_sat(const CnfInstance& cnf);

/// Every literal bishop must have exactly one legal move: capturing its
/// partner. Also re-verifies, for every b1, the two coordinate bands
/// (i-1)M < x-y < iM and iM+6mj-3m < x+y < iM+6mj+3m, and reports the
/// board's color separation as an independent sub-check.
CheckReport check_bishop_isolation(const BoardState& board, const ReductionLayout& layout);

/// Literal bishops on black squares, every other piece on white squares.
CheckReport check_color_separation(const BoardState& board, const ReductionLayout& layout);

/// No rook can leave its line outside a gate: pieces on clause rows (outside
/// gates) share their column with no other piece, pieces on variable columns
/// share their row with no other piece, and the variable band stays clear of
/// the clause rows. Reports every coincidence found.
CheckReport check_rook_confinement(const BoardState& board, const ReductionLayout& layout);

/// Replays a solving witness and verifies that, for every literal pair, some
/// rook captured a piece standing on that pair's b1 or b2 square.
/// Throws VerifierError when the witness does not solve the board.
CheckReport check_rook_capture_requirement(const BoardState& board, const ReductionLayout& layout,
                                           const Witness& w);

/// Desk-scale equivalence: satisfiable iff solvable. Runs the SAT oracle,
/// reduces, solves, and (when satisfiable) also synthesizes and validates a
/// witness so the forward direction never depends on the search. A solver
/// resource limit yields Inconclusive, never Fail.
CheckReport round_trip(const CnfInstance& cnf, ReductionMode mode, const SolverConfig& solver_cfg);

}  // namespace solchess
