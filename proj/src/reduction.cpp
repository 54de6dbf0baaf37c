#include "solchess/reduction.hpp"

#include <algorithm>
#include <sstream>

namespace solchess {

std::string to_string(ReductionMode mode) {
    return mode == ReductionMode::Paper ? "paper" : "amended";
}

std::optional<ReductionMode> reduction_mode_from_string(const std::string& s) {
    if (s == "paper") return ReductionMode::Paper;
    if (s == "amended") return ReductionMode::Amended;
    return std::nullopt;
}

PieceKind GadgetRole::piece_kind() const {
    switch (type) {
        case Type::VariableRook:
        case Type::ClauseRook: return PieceKind::Rook;
        case Type::LiteralBishopB1:
        case Type::LiteralBishopB2:
        case Type::CleaningBishop: return PieceKind::Bishop;
        case Type::VariableGatePawn:
        case Type::ClauseGatePawn:
        case Type::CleaningPawnClause:
        case Type::CleaningPawnVariable: return PieceKind::Pawn;
    }
    throw ReductionError("invalid gadget role");
}

std::string GadgetRole::describe() const {
    std::ostringstream out;
    switch (type) {
        case Type::VariableRook: out << "variable_rook(i=" << a << ")"; break;
        case Type::VariableGatePawn: out << "variable_gate_pawn(i=" << a << ",idx=" << b << ")"; break;
        case Type::ClauseRook: out << "clause_rook(j=" << a << ",slot=" << b << ")"; break;
        case Type::ClauseGatePawn:
            out << "clause_gate_pawn(j=" << a << ",slot=" << b << ",idx=" << c << ")";
            break;
        case Type::LiteralBishopB1: out << "literal_bishop_b1(j=" << a << ",k=" << b << ")"; break;
        case Type::LiteralBishopB2: out << "literal_bishop_b2(j=" << a << ",k=" << b << ")"; break;
        case Type::CleaningBishop: out << "cleaning_bishop"; break;
        case Type::CleaningPawnClause: out << "cleaning_pawn_clause(j=" << a << ",k=" << b << ")"; break;
        case Type::CleaningPawnVariable:
            out << "cleaning_pawn_variable(i=" << a << ",side=" << (b == 0 ? "true" : "false") << ")";
            break;
    }
    return out.str();
}

void ReductionLayout::rebuild_role_map() {
    placements_.clear();
    auto put = [&](Position pos, GadgetRole role) { placements_.push_back({pos, role}); };

    put(cleaning_bishop, GadgetRole{GadgetRole::Type::CleaningBishop, 0, 0, 0});
    for (const VariableGadget& v : variables) {
        put(v.rook, GadgetRole{GadgetRole::Type::VariableRook, v.i, 0, 0});
        for (int idx = 0; idx < 3; ++idx)
            put(v.gate[static_cast<std::size_t>(idx)],
                GadgetRole{GadgetRole::Type::VariableGatePawn, v.i, idx + 1, 0});
        put(v.cleaning[0], GadgetRole{GadgetRole::Type::CleaningPawnVariable, v.i, 0, 0});
        put(v.cleaning[1], GadgetRole{GadgetRole::Type::CleaningPawnVariable, v.i, 1, 0});
    }
    for (const ClauseGadget& c : clauses) {
        for (int slot = 0; slot < 2; ++slot) {
            put(c.rooks[static_cast<std::size_t>(slot)],
                GadgetRole{GadgetRole::Type::ClauseRook, c.j, slot, 0});
            for (int idx = 0; idx < 3; ++idx)
                put(c.gate[static_cast<std::size_t>(slot)][static_cast<std::size_t>(idx)],
                    GadgetRole{GadgetRole::Type::ClauseGatePawn, c.j, slot, idx + 1});
        }
        for (int k = 1; k <= 3; ++k)
            put(c.cleaning[static_cast<std::size_t>(k - 1)],
                GadgetRole{GadgetRole::Type::CleaningPawnClause, c.j, k, 0});
    }
    for (const LiteralPlacement& lp : literals) {
        put(lp.b1, GadgetRole{GadgetRole::Type::LiteralBishopB1, lp.j, lp.k, 0});
        put(lp.b2, GadgetRole{GadgetRole::Type::LiteralBishopB2, lp.j, lp.k, 0});
    }

    std::sort(placements_.begin(), placements_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < placements_.size(); ++i) {
        if (placements_[i].first == placements_[i - 1].first)
            throw ReductionError("placement collision at (" + std::to_string(placements_[i].first.x) +
                                 "," + std::to_string(placements_[i].first.y) + "): " +
                                 placements_[i - 1].second.describe() + " vs " +
                                 placements_[i].second.describe());
    }
}

std::optional<GadgetRole> ReductionLayout::role_at(Position pos) const {
    auto it = std::lower_bound(placements_.begin(), placements_.end(), pos,
                               [](const auto& a, Position p) { return a.first < p; });
    if (it == placements_.end() || !(it->first == pos)) return std::nullopt;
    return it->second;
}

BoardState ReductionLayout::board() const {
    BoardState state;
    for (const auto& [pos, role] : placements_) state.add(pos, role.piece_kind());
    return state;
}

std::size_t piece_count(int n, int m_padded) {
    if (m_padded < 2) throw ReductionError("piece_count requires m_padded >= 2");
    return static_cast<std::size_t>(17) * static_cast<std::size_t>(m_padded) +
           static_cast<std::size_t>(6) * static_cast<std::size_t>(n) + 1;
}

std::pair<BoardState, ReductionLayout> reduce(const CnfInstance& cnf, ReductionMode mode) {
    if (cnf.num_vars < 1) throw ReductionError("instance must have at least one variable");
    if (cnf.clauses.empty()) throw ReductionError("instance must have at least one clause");
    for (const Clause& c : cnf.clauses)
        for (const Literal& lit : c.literals)
            if (lit.var < 1 || lit.var > cnf.num_vars)
                throw ReductionError("literal variable out of range");

    const CnfInstance padded = pad_single_clause(cnf);
    const int n = cnf.num_vars;
    const int m = static_cast<int>(padded.clauses.size());
    if (m < 2) throw ReductionError("clause count too small after padding");
    const Coord M = 8 * static_cast<Coord>(m) * static_cast<Coord>(m);

    ReductionLayout layout;
    layout.mode = mode;
    layout.n = n;
    layout.m_original = static_cast<int>(cnf.clauses.size());
    layout.m_padded = m;
    layout.column_spacing = M;
    layout.cleaning_bishop = Position{0, 0};

    for (int i = 1; i <= n; ++i) {
        const Coord col = static_cast<Coord>(i) * M;
        const Coord row = mode == ReductionMode::Paper
                              ? 5 * static_cast<Coord>(m) * m + 8 * static_cast<Coord>(i)
                              : 6 * static_cast<Coord>(m) * m + 8 * static_cast<Coord>(m) +
                                    8 * static_cast<Coord>(i) + 4;
        VariableGadget v;
        v.i = i;
        v.true_column_x = col;
        v.false_column_x = col + 2;
        v.rook = Position{col + 2, row};
        v.gate = {Position{col, row}, Position{col, row - 2}, Position{col + 2, row - 2}};
        v.cleaning = {Position{col, -col}, Position{col + 2, -(col + 2)}};
        layout.variables.push_back(v);
    }

    for (int j = 1; j <= m; ++j) {
        ClauseGadget c;
        c.j = j;
        const Coord base = 6 * static_cast<Coord>(m) * static_cast<Coord>(j);
        c.rows = {base + 2, base + 4, base + 6};
        const Coord gate_x = static_cast<Coord>(n) * M + 10 * static_cast<Coord>(j);
        c.rooks = {Position{gate_x, base + 4}, Position{gate_x - 4, base + 6}};
        for (int slot = 0; slot < 2; ++slot) {
            const Position r = c.rooks[static_cast<std::size_t>(slot)];
            c.gate[static_cast<std::size_t>(slot)] = {
                Position{r.x, r.y - 2}, Position{r.x - 2, r.y - 2}, Position{r.x - 2, r.y}};
        }
        for (int k = 1; k <= 3; ++k) {
            const Coord row = c.rows[static_cast<std::size_t>(k - 1)];
            c.cleaning[static_cast<std::size_t>(k - 1)] = Position{-row, row};
        }
        layout.clauses.push_back(c);

        const Clause& clause = padded.clauses[static_cast<std::size_t>(j - 1)];
        std::array<int, 3> occurrence{};
        std::map<int, int> seen;
        for (int k = 1; k <= 3; ++k) {
            const int var = clause.literals[static_cast<std::size_t>(k - 1)].var;
            occurrence[static_cast<std::size_t>(k - 1)] = seen[var]++;
        }
        for (int k = 1; k <= 3; ++k) {
            const Literal lit = clause.literals[static_cast<std::size_t>(k - 1)];
            const Coord i = lit.var;
            const Coord t = (i + j) % m;
            const Coord tau = t + 3 * occurrence[static_cast<std::size_t>(k - 1)];
            LiteralPlacement lp;
            lp.j = j;
            lp.k = k;
            lp.var = lit.var;
            lp.positive = lit.positive;
            lp.occurrence = occurrence[static_cast<std::size_t>(k - 1)];
            lp.b1 = Position{i * M - 7 - 2 * tau + 2 * k, base + 2 * k};
            lp.b2 = lit.positive ? Position{i * M, base + 7 + 2 * tau}
                                 : Position{i * M + 2, base + 9 + 2 * tau};
            layout.literals.push_back(lp);
        }
    }

    layout.rebuild_role_map();  // throws on any placement collision
    return {layout.board(), layout};
}

}  // namespace solchess
