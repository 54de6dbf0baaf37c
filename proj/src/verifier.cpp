#include "solchess/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace solchess {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

json pos_json(Position p) { return json::array({p.x, p.y}); }

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool is_literal_bishop(const GadgetRole& role) {
    return role.type == GadgetRole::Type::LiteralBishopB1 ||
           role.type == GadgetRole::Type::LiteralBishopB2;
}

json color_separation_violations(const BoardState& board, const ReductionLayout& layout) {
    json violations = json::array();
    for (const auto& [pos, role] : layout.placements()) {
        if (!board.occupied(pos)) continue;
        const Color color = square_color(pos);
        const bool want_black = is_literal_bishop(role);
        const bool is_black = color == Color::Black;
        if (want_black != is_black) {
            violations.push_back({{"square", pos_json(pos)},
                                  {"role", role.describe()},
                                  {"color", is_black ? "black" : "white"},
                                  {"expected", want_black ? "black" : "white"}});
        }
    }
    return violations;
}

}  // namespace

std::string to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

json CheckReport::to_json() const {
    return json{{"check", name}, {"status", to_string(status)}, {"details", details},
                {"stats", stats}};
}

std::optional<Assignment> brute_force_sat(const CnfInstance& cnf) {
    if (cnf.num_vars < 1) throw std::invalid_argument("brute_force_sat: no variables");
    if (cnf.num_vars > 24)
        throw std::invalid_argument("brute_force_sat: " + std::to_string(cnf.num_vars) +
                                    " variables exceed the 2^24 enumeration bound");
    const std::uint64_t total = std::uint64_t{1} << cnf.num_vars;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        Assignment a(cnf.num_vars);
        for (int i = 1; i <= cnf.num_vars; ++i) a.set(i, (bits >> (i - 1)) & 1);
        if (satisfies(cnf, a)) return a;
    }
    return std::nullopt;
}

CheckReport check_bishop_isolation(const BoardState& board, const ReductionLayout& layout) {
    const auto start = Clock::now();
    CheckReport report;
    report.name = "bishop_isolation";

    const std::vector<Move> moves = legal_moves(board);
    json isolation_violations = json::array();
    std::size_t bishops_checked = 0;

    auto moves_from = [&](Position from) {
        json list = json::array();
        for (const Move& m : moves)
            if (m.from == from) list.push_back({{"to", pos_json(m.to)}});
        return list;
    };

    for (const LiteralPlacement& lp : layout.literals) {
        for (int side = 0; side < 2; ++side) {
            const Position self = side == 0 ? lp.b1 : lp.b2;
            const Position partner = side == 0 ? lp.b2 : lp.b1;
            ++bishops_checked;
            if (board.at(self) != PieceKind::Bishop) {
                isolation_violations.push_back({{"literal", {{"j", lp.j}, {"k", lp.k}}},
                                                {"square", pos_json(self)},
                                                {"problem", "no bishop on its start square"}});
                continue;
            }
            json from_here = moves_from(self);
            const bool single_partner_capture =
                from_here.size() == 1 && from_here[0]["to"] == pos_json(partner);
            if (!single_partner_capture) {
                isolation_violations.push_back({{"literal", {{"j", lp.j}, {"k", lp.k}}},
                                                {"square", pos_json(self)},
                                                {"expected_target", pos_json(partner)},
                                                {"actual_moves", from_here}});
            }
        }
    }

    json range_violations = json::array();
    const Coord M = layout.column_spacing;
    const Coord m = layout.m_padded;
    for (const LiteralPlacement& lp : layout.literals) {
        const Coord diag = lp.b1.x - lp.b1.y;
        const Coord anti = lp.b1.x + lp.b1.y;
        const Coord i = lp.var;
        const Coord lo_d = (i - 1) * M, hi_d = i * M;
        const Coord mid = i * M + 6 * m * lp.j;
        if (!(lo_d < diag && diag < hi_d))
            range_violations.push_back({{"literal", {{"j", lp.j}, {"k", lp.k}}},
                                        {"family", "diagonal"},
                                        {"value", diag},
                                        {"bounds", json::array({lo_d, hi_d})}});
        if (!(mid - 3 * m < anti && anti < mid + 3 * m))
            range_violations.push_back({{"literal", {{"j", lp.j}, {"k", lp.k}}},
                                        {"family", "anti_diagonal"},
                                        {"value", anti},
                                        {"bounds", json::array({mid - 3 * m, mid + 3 * m})}});
    }

    const json color_violations = color_separation_violations(board, layout);

    report.details = {
        {"subchecks",
         json::array({json{{"name", "isolation"},
                           {"pass", isolation_violations.empty()},
                           {"violations", isolation_violations}},
                      json{{"name", "b1_ranges"},
                           {"pass", range_violations.empty()},
                           {"violations", range_violations}},
                      json{{"name", "color_separation"},
                           {"pass", color_violations.empty()},
                           {"violations", color_violations}}})}};
    report.stats = {{"bishops_checked", bishops_checked},
                    {"legal_moves_total", moves.size()},
                    {"elapsed_ms", ms_since(start)}};
    report.status = isolation_violations.empty() && range_violations.empty() ? CheckStatus::Pass
                                                                             : CheckStatus::Fail;
    return report;
}

CheckReport check_color_separation(const BoardState& board, const ReductionLayout& layout) {
    const auto start = Clock::now();
    CheckReport report;
    report.name = "color_separation";
    const json violations = color_separation_violations(board, layout);
    report.details = {{"violations", violations}};
    report.stats = {{"pieces_checked", layout.placements().size()}, {"elapsed_ms", ms_since(start)}};
    report.status = violations.empty() ? CheckStatus::Pass : CheckStatus::Fail;
    return report;
}

CheckReport check_rook_confinement(const BoardState& board, const ReductionLayout& layout) {
    const auto start = Clock::now();
    CheckReport report;
    report.name = "rook_confinement";

    // Pieces whose line discipline the construction relies on, gates excluded.
    std::vector<std::pair<Position, GadgetRole>> row_pieces;  // on clause rows: column must be unique
    std::vector<std::pair<Position, GadgetRole>> col_pieces;  // on variable columns: row must be unique
    for (const auto& [pos, role] : layout.placements()) {
        switch (role.type) {
            case GadgetRole::Type::LiteralBishopB1:
            case GadgetRole::Type::CleaningPawnClause: row_pieces.push_back({pos, role}); break;
            case GadgetRole::Type::LiteralBishopB2:
            case GadgetRole::Type::CleaningPawnVariable: col_pieces.push_back({pos, role}); break;
            default: break;
        }
    }

    json coincidences = json::array();
    auto describe_at = [&](Position q) {
        auto role = layout.role_at(q);
        return role ? role->describe() : std::string("piece outside the layout");
    };

    for (const auto& [pos, role] : row_pieces) {
        for (const Piece& q : board.pieces()) {
            if (q.pos == pos) continue;
            if (q.pos.x == pos.x)
                coincidences.push_back({{"kind", "shared_column"},
                                        {"piece", role.describe()},
                                        {"square", pos_json(pos)},
                                        {"other", describe_at(q.pos)},
                                        {"other_square", pos_json(q.pos)}});
        }
    }
    for (const auto& [pos, role] : col_pieces) {
        for (const Piece& q : board.pieces()) {
            if (q.pos == pos) continue;
            if (q.pos.y == pos.y)
                coincidences.push_back({{"kind", "shared_row"},
                                        {"piece", role.describe()},
                                        {"square", pos_json(pos)},
                                        {"other", describe_at(q.pos)},
                                        {"other_square", pos_json(q.pos)}});
        }
    }

    // The variable band (rook and gate pawns) must stay clear of every clause
    // row, and clause-side pieces clear of every variable column; otherwise a
    // rook could turn off its line outside a gate.
    std::vector<Coord> clause_rows;
    for (const ClauseGadget& c : layout.clauses)
        clause_rows.insert(clause_rows.end(), c.rows.begin(), c.rows.end());
    std::vector<Coord> variable_columns;
    for (const VariableGadget& v : layout.variables) {
        variable_columns.push_back(v.true_column_x);
        variable_columns.push_back(v.false_column_x);
    }
    auto contains = [](const std::vector<Coord>& xs, Coord v) {
        return std::find(xs.begin(), xs.end(), v) != xs.end();
    };
    for (const auto& [pos, role] : layout.placements()) {
        const bool variable_side = role.type == GadgetRole::Type::VariableRook ||
                                   role.type == GadgetRole::Type::VariableGatePawn;
        const bool clause_side = role.type == GadgetRole::Type::ClauseRook ||
                                 role.type == GadgetRole::Type::ClauseGatePawn;
        if (variable_side && contains(clause_rows, pos.y))
            coincidences.push_back({{"kind", "variable_band_on_clause_row"},
                                    {"piece", role.describe()},
                                    {"square", pos_json(pos)},
                                    {"row", pos.y}});
        if (clause_side && contains(variable_columns, pos.x))
            coincidences.push_back({{"kind", "clause_gate_on_variable_column"},
                                    {"piece", role.describe()},
                                    {"square", pos_json(pos)},
                                    {"column", pos.x}});
    }

    report.details = {{"coincidences", coincidences}};
    report.stats = {{"row_pieces", row_pieces.size()},
                    {"column_pieces", col_pieces.size()},
                    {"elapsed_ms", ms_since(start)}};
    report.status = coincidences.empty() ? CheckStatus::Pass : CheckStatus::Fail;
    return report;
}

CheckReport check_rook_capture_requirement(const BoardState& board, const ReductionLayout& layout,
                                           const Witness& w) {
    const auto start = Clock::now();
    // An illegal move is an input error; a legal prefix that merely fails to
    // solve the board (a truncated witness) is a reportable failure.
    const WitnessReport playback = validate_witness(board, w);
    if (!playback.ok && playback.failed_index < w.moves.size())
        throw VerifierError("invalid witness (move " + std::to_string(playback.failed_index) +
                            ": " + playback.reason + ")");

    // Identity tracking: every piece is named by its start square.
    std::map<Position, Position> current_to_origin;
    for (const Piece& p : board.pieces()) current_to_origin[p.pos] = p.pos;

    std::map<Position, std::pair<int, int>> pair_square;  // b1/b2 square -> (j,k)
    std::map<std::pair<int, int>, bool> resolved;
    for (const LiteralPlacement& lp : layout.literals) {
        pair_square[lp.b1] = {lp.j, lp.k};
        pair_square[lp.b2] = {lp.j, lp.k};
        resolved[{lp.j, lp.k}] = false;
    }

    for (const Move& m : w.moves) {
        const Position origin = current_to_origin.at(m.from);
        const auto role = layout.role_at(origin);
        const bool rook_mover = role && (role->type == GadgetRole::Type::VariableRook ||
                                         role->type == GadgetRole::Type::ClauseRook);
        if (rook_mover) {
            auto it = pair_square.find(m.to);
            if (it != pair_square.end()) resolved[it->second] = true;
        }
        current_to_origin.erase(m.to);
        current_to_origin[m.to] = origin;
        current_to_origin.erase(m.from);
    }

    json unresolved = json::array();
    for (const auto& [jk, ok] : resolved)
        if (!ok) unresolved.push_back({{"j", jk.first}, {"k", jk.second}});

    CheckReport report;
    report.name = "rook_capture_requirement";
    report.details = {{"unresolved_pairs", unresolved}, {"playback_solved", playback.ok}};
    report.stats = {{"pairs", resolved.size()},
                    {"moves", w.moves.size()},
                    {"elapsed_ms", ms_since(start)}};
    report.status =
        unresolved.empty() && playback.ok ? CheckStatus::Pass : CheckStatus::Fail;
    return report;
}

CheckReport round_trip(const CnfInstance& cnf, ReductionMode mode, const SolverConfig& solver_cfg) {
    const auto start = Clock::now();
    CheckReport report;
    report.name = "round_trip";

    const std::optional<Assignment> sat = brute_force_sat(cnf);
    auto [board, layout] = reduce(cnf, mode);

    json details;
    details["mode"] = to_string(mode);
    details["satisfiable"] = sat.has_value();
    details["pieces"] = board.size();

    bool forward_ok = true;
    if (sat) {
        try {
            const Witness w = synthesize_witness(cnf, *sat, layout);
            details["synthesized_witness_length"] = w.moves.size();
        } catch (const std::exception& e) {
            forward_ok = false;
            details["synthesis_error"] = e.what();
        }
    }

    const Verdict verdict = solve(board, solver_cfg);
    details["solver"] = {{"states_explored", verdict.states_explored},
                         {"elapsed_seconds", verdict.elapsed_seconds}};

    report.stats = {{"elapsed_ms", ms_since(start)},
                    {"states_explored", verdict.states_explored}};

    if (verdict.kind == VerdictKind::ResourceExceeded) {
        details["solver"]["verdict"] = "resource_exceeded";
        report.details = details;
        report.status = forward_ok ? CheckStatus::Inconclusive : CheckStatus::Fail;
        return report;
    }

    const bool solvable = verdict.kind == VerdictKind::Solvable;
    details["solver"]["verdict"] = solvable ? "solvable" : "unsolvable";
    if (solvable) details["solver"]["witness_length"] = verdict.witness.moves.size();
    const bool agree = solvable == sat.has_value();
    details["agreement"] = agree;
    report.details = details;
    report.status = agree && forward_ok ? CheckStatus::Pass : CheckStatus::Fail;
    return report;
}

}  // namespace solchess
