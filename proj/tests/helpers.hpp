#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "solchess/board.hpp"
#include "solchess/cnf.hpp"
#include "solchess/engine.hpp"

namespace solchess::test {

/// The four-piece example board: rook (0,1), pawn (1,1), bishop (1,2),
/// knight (3,0) on a 4x4 board.
inline BoardState figure_one() {
    BoardState b;
    b.set_bounds(Bounds{0, 0, 3, 3});
    b.add({0, 1}, PieceKind::Rook);
    b.add({1, 1}, PieceKind::Pawn);
    b.add({1, 2}, PieceKind::Bishop);
    b.add({3, 0}, PieceKind::Knight);
    return b;
}

inline Witness figure_one_witness() {
    return Witness{{Move{{3, 0}, {1, 1}}, Move{{0, 1}, {1, 1}}, Move{{1, 1}, {1, 2}}}};
}

/// Random board with `pieces` pieces inside [0,size)^2; deterministic per seed.
inline BoardState random_board(std::mt19937_64& rng, int pieces, Coord size) {
    std::uniform_int_distribution<Coord> coord(0, size - 1);
    std::uniform_int_distribution<int> kind(0, 5);
    BoardState b;
    while (b.size() < static_cast<std::size_t>(pieces)) {
        Position p{coord(rng), coord(rng)};
        if (!b.occupied(p)) b.add(p, all_piece_kinds[static_cast<std::size_t>(kind(rng))]);
    }
    return b;
}

/// Independent decision oracle: plain recursion over legal moves, no memo.
inline bool naive_solvable(const BoardState& state) {
    if (is_solved(state)) return true;
    for (const Move& m : legal_moves(state))
        if (naive_solvable(apply_move(state, m))) return true;
    return false;
}

inline Clause make_clause(int v1, int v2, int v3) {
    auto lit = [](int v) { return Literal{v < 0 ? -v : v, v > 0}; };
    return Clause{{lit(v1), lit(v2), lit(v3)}};
}

inline CnfInstance make_cnf(int num_vars, std::vector<std::array<int, 3>> clauses) {
    CnfInstance cnf;
    cnf.num_vars = num_vars;
    for (const auto& c : clauses) cnf.clauses.push_back(make_clause(c[0], c[1], c[2]));
    return cnf;
}

/// Random 3-CNF whose clauses use three distinct variables; needs n >= 3.
inline CnfInstance random_distinct_cnf(std::mt19937_64& rng, int n, int m) {
    std::uniform_int_distribution<int> var(1, n);
    std::uniform_int_distribution<int> sign(0, 1);
    CnfInstance cnf;
    cnf.num_vars = n;
    for (int j = 0; j < m; ++j) {
        int a = var(rng), b = var(rng), c = var(rng);
        while (b == a) b = var(rng);
        while (c == a || c == b) c = var(rng);
        cnf.clauses.push_back(Clause{{Literal{a, sign(rng) == 0}, Literal{b, sign(rng) == 0},
                                      Literal{c, sign(rng) == 0}}});
    }
    return cnf;
}

/// Random 3-CNF with arbitrary (possibly repeated) variables per clause.
inline CnfInstance random_cnf(std::mt19937_64& rng, int n, int m) {
    std::uniform_int_distribution<int> var(1, n);
    std::uniform_int_distribution<int> sign(0, 1);
    CnfInstance cnf;
    cnf.num_vars = n;
    for (int j = 0; j < m; ++j)
        cnf.clauses.push_back(Clause{{Literal{var(rng), sign(rng) == 0},
                                      Literal{var(rng), sign(rng) == 0},
                                      Literal{var(rng), sign(rng) == 0}}});
    return cnf;
}

}  // namespace solchess::test
