#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "solchess/formats.hpp"
#include "solchess/reduction.hpp"
#include "solchess/solver.hpp"

using namespace solchess;
using test::make_cnf;

namespace {

/// Deterministic 3-CNF over n variables / m clauses; small n forces repeated
/// variables inside clauses, which the reducer must handle.
CnfInstance grid_cnf(int n, int m) {
    CnfInstance cnf;
    cnf.num_vars = n;
    for (int j = 0; j < m; ++j) {
        std::array<Literal, 3> lits;
        for (int t = 0; t < 3; ++t) {
            const int var = (j + t) % n + 1;
            lits[static_cast<std::size_t>(t)] = Literal{var, (j + t) % 2 == 0};
        }
        cnf.clauses.push_back(Clause{lits});
    }
    return cnf;
}

const CnfInstance kFlagshipUnsat = make_cnf(1, {{{1, 1, 1}}, {{-1, -1, -1}}});
const CnfInstance kFlagshipSat = make_cnf(1, {{{1, 1, 1}}, {{1, 1, -1}}});

Assignment all_true(int n) {
    Assignment a(n);
    for (int i = 1; i <= n; ++i) a.set(i, true);
    return a;
}

}  // namespace

TEST_CASE("paper-mode coordinates for the n=1, m=2 instance") {
    auto [board, layout] = reduce(kFlagshipUnsat, ReductionMode::Paper);
    CHECK(layout.column_spacing == 32);
    CHECK(layout.m_padded == 2);

    const VariableGadget& v = layout.variables.at(0);
    CHECK(v.rook == Position{34, 28});  // (iM+2, 5m^2+8i)
    CHECK(v.gate[0] == Position{32, 28});
    CHECK(v.gate[1] == Position{32, 26});
    CHECK(v.gate[2] == Position{34, 26});
    CHECK(v.true_column_x == 32);
    CHECK(v.false_column_x == 34);
    CHECK(v.cleaning[0] == Position{32, -32});
    CHECK(v.cleaning[1] == Position{34, -34});

    const ClauseGadget& c1 = layout.clauses.at(0);
    CHECK(c1.rows == std::array<Coord, 3>{14, 16, 18});
    CHECK(c1.rooks[0] == Position{42, 16});  // (Mn+10j, 6mj+4)
    CHECK(c1.rooks[1] == Position{38, 18});  // (Mn+10j-4, 6mj+6)
    CHECK(layout.clauses.at(1).rows == std::array<Coord, 3>{26, 28, 30});

    // Rook gate pawns at offsets (0,-2), (-2,-2), (-2,0) from each rook.
    CHECK(c1.gate[0][0] == Position{42, 14});
    CHECK(c1.gate[0][1] == Position{40, 14});
    CHECK(c1.gate[0][2] == Position{40, 16});

    const LiteralPlacement& first = layout.literals.at(0);
    CHECK(first.j == 1);
    CHECK(first.k == 1);
    CHECK(first.occurrence == 0);
    CHECK(first.b1 == Position{27, 14});  // (iM-7-2t+2k, 6mj+2k), t=0
    CHECK(first.b2 == Position{32, 19});  // (iM, 6mj+7+2t)

    CHECK(layout.cleaning_bishop == Position{0, 0});
    CHECK(board.size() == 41);
    CHECK(board.size() == piece_count(1, 2));
}

TEST_CASE("amended mode lifts the variable band and changes nothing else") {
    auto [paper_board, paper] = reduce(kFlagshipUnsat, ReductionMode::Paper);
    auto [amended_board, amended] = reduce(kFlagshipUnsat, ReductionMode::Amended);

    // 6m^2 + 8m + 8i + 4: even parity, above every clause row and bishop.
    CHECK(amended.variables.at(0).rook == Position{34, 52});
    CHECK(amended.variables.at(0).gate[0] == Position{32, 52});
    CHECK(amended.variables.at(0).gate[1] == Position{32, 50});
    CHECK(amended.variables.at(0).gate[2] == Position{34, 50});

    CHECK(amended.literals == paper.literals);
    CHECK(amended.clauses.at(0).rooks == paper.clauses.at(0).rooks);
    CHECK(amended.clauses.at(1).rows == paper.clauses.at(1).rows);
    CHECK(amended_board.size() == paper_board.size());
}

TEST_CASE("repeated variables inside a clause get separated diagonals") {
    auto [board, layout] = reduce(kFlagshipUnsat, ReductionMode::Amended);
    REQUIRE(layout.literals.size() == 6);

    std::set<Coord> diagonals;
    for (const LiteralPlacement& lp : layout.literals) {
        // Pair shares one up-right diagonal.
        CHECK(lp.b1.x - lp.b1.y == lp.b2.x - lp.b2.y);
        diagonals.insert(lp.b1.x - lp.b1.y);
        // Positive literals put b2 on the true column, negative on the false.
        const VariableGadget& v = layout.variables.at(static_cast<std::size_t>(lp.var - 1));
        CHECK(lp.b2.x == (lp.positive ? v.true_column_x : v.false_column_x));
    }
    CHECK(diagonals.size() == 6);

    // Occurrence bumps are 0, 3, 6 over the base offset.
    CHECK(layout.literals.at(0).b2 == Position{32, 19});
    CHECK(layout.literals.at(1).b2 == Position{32, 25});
    CHECK(layout.literals.at(2).b2 == Position{32, 31});
}

TEST_CASE("piece count matches the role enumeration, not the quoted size") {
    CHECK(piece_count(1, 2) == 41);
    CHECK(piece_count(2, 2) == 47);
    // The quoted transformation size 17m+1+4n undercounts: 39 for (1,2).
    CHECK(17 * 2 + 1 + 4 * 1 == 39);
    CHECK(piece_count(1, 2) != 39);
    CHECK_THROWS_AS(piece_count(1, 1), ReductionError);

    for (int n = 1; n <= 5; ++n) {
        for (int m = 2; m <= 5; ++m) {
            auto [board, layout] = reduce(grid_cnf(n, m), ReductionMode::Amended);
            CHECK(board.size() == piece_count(n, m));
            CHECK(board.size() ==
                  static_cast<std::size_t>(17 * m + 6 * n + 1));
        }
    }
}

TEST_CASE("m=1 instances are padded by duplicating the clause") {
    auto [board, layout] = reduce(make_cnf(1, {{{1, 1, 1}}}), ReductionMode::Amended);
    CHECK(layout.m_original == 1);
    CHECK(layout.m_padded == 2);
    CHECK(board.size() == piece_count(1, 2));
}

TEST_CASE("placement collisions abort with both roles named") {
    // Paper mode, m=5: the variable gate pawn of x1 sits at (200, 133), and a
    // second positive occurrence of x1 in clause 4 puts a b2 on that square.
    CnfInstance cnf;
    cnf.num_vars = 1;
    for (int j = 0; j < 5; ++j) cnf.clauses.push_back(test::make_clause(1, 1, 1));
    CHECK_THROWS_WITH_AS(reduce(cnf, ReductionMode::Paper), doctest::Contains("collision"),
                         ReductionError);
    // The amended band clears the bishops; the same instance reduces fine.
    CHECK_NOTHROW(reduce(cnf, ReductionMode::Amended));
}

TEST_CASE("reduce validates its input") {
    CnfInstance bad = make_cnf(1, {{{1, 1, 2}}});  // variable 2 out of range
    CHECK_THROWS_AS(reduce(bad, ReductionMode::Amended), ReductionError);
    CnfInstance empty;
    empty.num_vars = 1;
    CHECK_THROWS_AS(reduce(empty, ReductionMode::Amended), ReductionError);
}

TEST_CASE("layout roles cover the whole board and round-trip through JSON") {
    auto [board, layout] = reduce(grid_cnf(3, 3), ReductionMode::Amended);
    CHECK(layout.placements().size() == board.size());
    for (const Piece& p : board.pieces()) {
        auto role = layout.role_at(p.pos);
        REQUIRE(role.has_value());
        CHECK(role->piece_kind() == p.kind);
    }
    CHECK_FALSE(layout.role_at({1, 1}).has_value());

    const ReductionLayout parsed = parse_layout_json(emit_layout_json(layout));
    CHECK(parsed.board() == board);
    CHECK(parsed.m_padded == layout.m_padded);
    CHECK(parsed.literals == layout.literals);
    CHECK(to_string(parsed.mode) == "amended");
}

// ---------------------------------------------------------------------------
// Witness synthesis and assignment extraction.

TEST_CASE("synthesized witness solves the n=1 satisfiable instance") {
    auto [board, layout] = reduce(kFlagshipSat, ReductionMode::Amended);
    const Witness w = synthesize_witness(kFlagshipSat, all_true(1), layout);
    CHECK(w.moves.size() == 40);  // piece_count(1,2) - 1
    CHECK(validate_witness(board, w).ok);
}

TEST_CASE("synthesis rejects a non-satisfying assignment before emitting moves") {
    auto [board, layout] = reduce(kFlagshipUnsat, ReductionMode::Amended);
    Assignment a(1);
    CHECK_THROWS_WITH_AS(synthesize_witness(kFlagshipUnsat, a, layout),
                         doctest::Contains("does not satisfy"), SynthesisError);
}

TEST_CASE("synthesis covers false assignments and negative literals") {
    const CnfInstance cnf = make_cnf(2, {{{-1, 2, 2}}, {{-1, -2, 1}}});
    auto [board, layout] = reduce(cnf, ReductionMode::Amended);
    Assignment a(2);  // x1=false, x2=false
    REQUIRE(satisfies(cnf, a));
    const Witness w = synthesize_witness(cnf, a, layout);
    CHECK(w.moves.size() == board.size() - 1);
    CHECK(validate_witness(board, w).ok);
}

TEST_CASE("rook collision route: both clause rooks meet and one captures the other") {
    auto [board, layout] = reduce(kFlagshipSat, ReductionMode::Amended);
    SynthOptions options;
    options.rook_collision = {1};  // literals 1 and 3 of clause 1 are satisfied
    const Witness w = synthesize_witness(kFlagshipSat, all_true(1), layout, options);
    CHECK(w.moves.size() == 40);
    CHECK(validate_witness(board, w).ok);

    // The two rooks of clause 1 really do meet: some move goes from one
    // clause-1 rook gate exit onto the other rook.
    const ClauseGadget& c1 = layout.clauses.at(0);
    const Position stay_exit = c1.gate[0][2];
    const Position drop_exit = c1.gate[1][0];
    bool collided = false;
    for (const Move& m : w.moves)
        if (m.from == stay_exit && m.to == drop_exit) collided = true;
    CHECK(collided);
}

TEST_CASE("collision route requires literals 1 and 3 to be satisfied") {
    const CnfInstance cnf = make_cnf(1, {{{-1, 1, 1}}, {{1, 1, 1}}});
    auto [board, layout] = reduce(cnf, ReductionMode::Amended);
    SynthOptions options;
    options.rook_collision = {1};  // literal 1 of clause 1 is false under all_true
    CHECK_THROWS_AS(synthesize_witness(cnf, all_true(1), layout, options), SynthesisError);
}

TEST_CASE("assignment extraction inverts synthesis") {
    const CnfInstance cnf = make_cnf(3, {{{1, -2, 3}}, {{-1, 2, 3}}, {{1, 2, -3}}});
    auto [board, layout] = reduce(cnf, ReductionMode::Amended);
    std::mt19937_64 rng(4242);
    int tested = 0;
    for (int bits = 0; bits < 8; ++bits) {
        Assignment a(3);
        for (int i = 1; i <= 3; ++i) a.set(i, (bits >> (i - 1)) & 1);
        if (!satisfies(cnf, a)) continue;
        ++tested;
        const Witness w = synthesize_witness(cnf, a, layout);
        const Assignment extracted = extract_assignment(layout, w);
        CHECK(extracted == a);
        CHECK(satisfies(cnf, extracted));
    }
    CHECK(tested >= 4);
}

TEST_CASE("extraction reads the false column as false") {
    const CnfInstance cnf = make_cnf(1, {{{-1, -1, -1}}, {{-1, -1, -1}}});
    auto [board, layout] = reduce(cnf, ReductionMode::Amended);
    Assignment a(1);  // x1 = false
    const Witness w = synthesize_witness(cnf, a, layout);
    const Assignment extracted = extract_assignment(layout, w);
    CHECK_FALSE(extracted.value(1));
}

TEST_CASE("extraction rejects witnesses that do not solve the board") {
    auto [board, layout] = reduce(kFlagshipSat, ReductionMode::Amended);
    Witness w = synthesize_witness(kFlagshipSat, all_true(1), layout);
    w.moves.pop_back();
    CHECK_THROWS_AS(extract_assignment(layout, w), ReductionError);
}

TEST_CASE("synthesis works across modes and sizes with repeated variables") {
    std::mt19937_64 rng(20260201);
    for (int round = 0; round < 12; ++round) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const int m = 2 + static_cast<int>(rng() % 3);
        const CnfInstance cnf = test::random_cnf(rng, n, m);
        Assignment found(n);
        bool sat = false;
        for (int bits = 0; bits < (1 << n) && !sat; ++bits) {
            Assignment a(n);
            for (int i = 1; i <= n; ++i) a.set(i, (bits >> (i - 1)) & 1);
            if (satisfies(cnf, a)) {
                found = a;
                sat = true;
            }
        }
        if (!sat) continue;
        auto [board, layout] = reduce(cnf, ReductionMode::Amended);
        const Witness w = synthesize_witness(cnf, found, layout);
        CHECK(w.moves.size() == board.size() - 1);
        CHECK(validate_witness(board, w).ok);
        CHECK(satisfies(cnf, extract_assignment(layout, w)));
    }
}
