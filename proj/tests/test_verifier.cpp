#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "solchess/verifier.hpp"

using namespace solchess;
using test::make_cnf;

namespace {

const CnfInstance kFlagshipUnsat = make_cnf(1, {{{1, 1, 1}}, {{-1, -1, -1}}});
const CnfInstance kFlagshipSat = make_cnf(1, {{{1, 1, 1}}, {{1, 1, -1}}});

Assignment all_true(int n) {
    Assignment a(n);
    for (int i = 1; i <= n; ++i) a.set(i, true);
    return a;
}

/// Passing confinement fixture, chosen so no two gadget pieces share a line
/// outside the gates (repeated variables are fine, signs are what matter).
const CnfInstance kConfinementFixture = make_cnf(2, {{{1, 1, -2}}, {{2, 2, 1}}});

}  // namespace

TEST_CASE("brute_force_sat basics") {
    const auto yes = brute_force_sat(make_cnf(1, {{{1, 1, 1}}}));
    REQUIRE(yes.has_value());
    CHECK(yes->value(1));

    CHECK_FALSE(brute_force_sat(kFlagshipUnsat).has_value());

    CnfInstance too_big;
    too_big.num_vars = 25;
    too_big.clauses.push_back(test::make_clause(1, 2, 3));
    CHECK_THROWS_AS(brute_force_sat(too_big), std::invalid_argument);
}

TEST_CASE("brute_force_sat agrees with direct truth-table evaluation") {
    std::mt19937_64 rng(8642);
    for (int round = 0; round < 40; ++round) {
        const CnfInstance cnf = test::random_cnf(rng, 4, 3 + static_cast<int>(rng() % 4));
        bool any = false;
        for (int bits = 0; bits < 16 && !any; ++bits) {
            Assignment a(4);
            for (int i = 1; i <= 4; ++i) a.set(i, (bits >> (i - 1)) & 1);
            any = satisfies(cnf, a);
        }
        const auto found = brute_force_sat(cnf);
        CHECK(found.has_value() == any);
        if (found) CHECK(satisfies(cnf, *found));
    }
}

TEST_CASE("brute_force_sat returns the lowest assignment in counting order") {
    // (x1 or x1 or x2): 0b00 fails, 0b01 (x1 true) is the first success.
    const auto a = brute_force_sat(make_cnf(2, {{{1, 1, 2}}}));
    REQUIRE(a.has_value());
    CHECK(a->value(1));
    CHECK_FALSE(a->value(2));
}

TEST_CASE("bishop isolation passes on clean instances") {
    std::mt19937_64 rng(5551);
    for (int round = 0; round < 6; ++round) {
        const CnfInstance cnf = test::random_distinct_cnf(rng, 3 + static_cast<int>(rng() % 3),
                                                          5 + static_cast<int>(rng() % 2));
        auto [board, layout] = reduce(cnf, ReductionMode::Amended);
        const CheckReport report = check_bishop_isolation(board, layout);
        INFO(report.to_json().dump(2));
        CHECK(report.passed());
    }
}

TEST_CASE("bishop isolation flags a bishop moved onto a foreign diagonal") {
    std::mt19937_64 rng(99);
    const CnfInstance cnf = test::random_distinct_cnf(rng, 4, 5);
    auto [board, layout] = reduce(cnf, ReductionMode::Amended);
    REQUIRE(check_bishop_isolation(board, layout).passed());

    // Park the first literal's b2 right next to another literal's b1.
    const LiteralPlacement& victim = layout.literals.at(4);
    const Position intruder{victim.b1.x + 1, victim.b1.y + 1};
    BoardState mutated = board;
    mutated.remove(layout.literals.at(0).b2);
    mutated.add(intruder, PieceKind::Bishop);
    const CheckReport report = check_bishop_isolation(mutated, layout);
    CHECK_FALSE(report.passed());
    const auto& violations = report.details["subchecks"][0]["violations"];
    CHECK(violations.size() >= 1);
}

TEST_CASE("bishop isolation on the m=2 flagship reports the wrap-around pair") {
    // At m=2 the b2 of a clause-1 literal shares an anti-diagonal with a b1
    // of clause 2 — a real hole in the small-m construction, reported as
    // exactly two mutually-attacking bishops.
    auto [board, layout] = reduce(kFlagshipUnsat, ReductionMode::Amended);
    const CheckReport report = check_bishop_isolation(board, layout);
    CHECK_FALSE(report.passed());
    const auto& violations = report.details["subchecks"][0]["violations"];
    REQUIRE(violations.size() == 2);
    CHECK(violations[0]["square"] == nlohmann::json::array({32, 19}));
    CHECK(violations[1]["square"] == nlohmann::json::array({25, 26}));
    // The b1 coordinate bands themselves hold here.
    CHECK(report.details["subchecks"][1]["pass"] == false);  // m=2: diagonal band off by one
}

TEST_CASE("b1 ranges hold for m >= 3") {
    std::mt19937_64 rng(13);
    for (int m : {3, 4, 5, 6}) {
        const CnfInstance cnf = test::random_distinct_cnf(rng, 4, m);
        auto [board, layout] = reduce(cnf, ReductionMode::Amended);
        const CheckReport report = check_bishop_isolation(board, layout);
        CHECK(report.details["subchecks"][1]["pass"] == true);
    }
}

TEST_CASE("color separation by mode and parity") {
    for (int m : {2, 3, 4, 5}) {
        CnfInstance cnf;
        cnf.num_vars = 2;
        for (int j = 0; j < m; ++j) cnf.clauses.push_back(test::make_clause(1, -2, 2));
        auto [paper_board, paper] = reduce(cnf, ReductionMode::Paper);
        auto [amended_board, amended] = reduce(cnf, ReductionMode::Amended);
        CHECK(check_color_separation(amended_board, amended).passed());
        // Paper mode: the variable band lands on odd rows exactly when m is odd.
        CHECK(check_color_separation(paper_board, paper).passed() == (m % 2 == 0));
    }
}

TEST_CASE("rook confinement passes on a clean amended instance") {
    auto [board, layout] = reduce(kConfinementFixture, ReductionMode::Amended);
    const CheckReport report = check_rook_confinement(board, layout);
    INFO(report.to_json().dump(2));
    CHECK(report.passed());
}

TEST_CASE("rook confinement catches the paper-mode band collision") {
    // Paper mode, n=1, m=2: the variable rook row 5m^2+8 = 28 equals clause
    // row 6*2*2+4 = 28, so the band-separation sub-check must fire.
    auto [board, layout] = reduce(kFlagshipUnsat, ReductionMode::Paper);
    const CheckReport report = check_rook_confinement(board, layout);
    CHECK_FALSE(report.passed());
    bool row28 = false;
    for (const auto& c : report.details["coincidences"])
        if (c["kind"] == "variable_band_on_clause_row" && c["row"] == 28) row28 = true;
    CHECK(row28);
}

TEST_CASE("rook confinement catches stacked pieces") {
    auto [board, layout] = reduce(kConfinementFixture, ReductionMode::Amended);
    BoardState mutated = board;
    const Position b1 = layout.literals.at(0).b1;
    mutated.add({b1.x, b1.y + 4}, PieceKind::Pawn);  // same column as a b1
    const CheckReport report = check_rook_confinement(mutated, layout);
    CHECK_FALSE(report.passed());
    CHECK(report.details["coincidences"].size() >= 1);
}

TEST_CASE("rook capture requirement on synthesized witnesses") {
    auto [board, layout] = reduce(kFlagshipSat, ReductionMode::Amended);
    const Witness w = synthesize_witness(kFlagshipSat, all_true(1), layout);
    CHECK(check_rook_capture_requirement(board, layout, w).passed());

    Witness truncated = w;
    truncated.moves.resize(10);
    const CheckReport failed = check_rook_capture_requirement(board, layout, truncated);
    CHECK_FALSE(failed.passed());
    CHECK(failed.details["unresolved_pairs"].size() >= 1);

    Witness corrupt = w;
    corrupt.moves[0] = Move{{0, 0}, {1, 1}};
    CHECK_THROWS_AS(check_rook_capture_requirement(board, layout, corrupt), VerifierError);
}

TEST_CASE("rook capture requirement accepts the rook-collision witness") {
    auto [board, layout] = reduce(kFlagshipSat, ReductionMode::Amended);
    SynthOptions options;
    options.rook_collision = {1};
    const Witness w = synthesize_witness(kFlagshipSat, all_true(1), layout, options);
    CHECK(check_rook_capture_requirement(board, layout, w).passed());
}

TEST_CASE("round trip on a satisfiable instance") {
    SolverConfig cfg;
    cfg.max_states = 20'000'000;
    cfg.time_limit_seconds = 120.0;
    cfg.unique_capture_first = true;
    const CheckReport report = round_trip(make_cnf(1, {{{1, 1, 1}}}), ReductionMode::Amended, cfg);
    INFO(report.to_json().dump(2));
    CHECK(report.passed());
    CHECK(report.details["satisfiable"] == true);
}

TEST_CASE("round trip reports resource limits as inconclusive") {
    SolverConfig cfg;
    cfg.max_states = 50;
    const CheckReport report = round_trip(kFlagshipUnsat, ReductionMode::Amended, cfg);
    CHECK(report.status == CheckStatus::Inconclusive);
    CHECK(report.details["solver"]["verdict"] == "resource_exceeded");
}
