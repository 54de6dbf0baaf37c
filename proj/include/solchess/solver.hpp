#pragma once

#include <cstdint>
#include <optional>

#include "solchess/board.hpp"
#include "solchess/engine.hpp"

namespace solchess {

struct SolverConfig {
    std::optional<std::uint64_t> max_states;
    std::optional<double> time_limit_seconds;
    int parallel_workers = 1;
    bool enable_memo = true;
    /// Sound static refutation: prunes states where two pieces provably can
    /// never be captured (over-approximate reachability; exactness preserved).
    bool enable_stuck_prune = true;
    /// Sound commutation reduction: of two successive moves on four distinct
    /// squares that commute, only the sorted order is explored. Every
    /// reachable state keeps its swap-minimal path, so decisions and the
    /// lexicographically-first witness are unchanged.
    bool commutation_prune = true;
    /// Deterministic move-ordering heuristic (pieces with a unique capture
    /// first, bishop-pair trades before cleanup captures). Cannot change the
    /// decision, only how fast a witness is found; when off, the sequential
    /// witness is the lexicographically-first solution.
    bool unique_capture_first = false;
    /// Test hook: deterministically shuffles the move order at every node.
    /// The decision must not depend on it.
    std::optional<std::uint64_t> shuffle_seed;
};

enum class VerdictKind { Solvable, Unsolvable, ResourceExceeded };

struct Verdict {
    VerdictKind kind = VerdictKind::Unsolvable;
    Witness witness;  // meaningful only when kind == Solvable
    std::uint64_t states_explored = 0;
    double elapsed_seconds = 0.0;
};

/// Exact decision by depth-first search over capture sequences. The memo
/// stores canonical keys of refuted states only, so Unsolvable always means
/// an exhaustive refutation; resource limits surface as ResourceExceeded,
/// never as Unsolvable. With one worker the returned witness is the
/// lexicographically first solution under the engine's move ordering.
/// Throws std::invalid_argument on an empty board.
Verdict solve(const BoardState& state, const SolverConfig& cfg = {});

/// Number of distinct solving move sequences, saturating at `cap`.
/// Plain recursive enumeration; exponential, test-scale only.
std::uint64_t count_solutions(const BoardState& state, std::uint64_t cap);

}  // namespace solchess
