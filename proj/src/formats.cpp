#include "solchess/formats.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace solchess {

using nlohmann::json;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

Coord parse_coord(const std::string& token, const std::string& context) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw FormatError("malformed number '" + token + "' in " + context);
    }
}

json position_json(Position p) { return json::array({p.x, p.y}); }

Position position_from_json(const json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw FormatError("expected [x,y] pair in " + context);
    return Position{j[0].get<Coord>(), j[1].get<Coord>()};
}

json parse_json_text(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw FormatError("invalid JSON in " + what);
    return j;
}

}  // namespace

BoardState parse_puzzle(const std::string& text, PuzzleFormat format) {
    if (format == PuzzleFormat::Json) {
        const json j = parse_json_text(text, "puzzle");
        if (!j.is_object() || !j.contains("pieces") || !j["pieces"].is_array())
            throw FormatError("puzzle JSON must be an object with a 'pieces' array");
        std::optional<Bounds> bounds;
        if (j.contains("bounds")) {
            const json& b = j["bounds"];
            for (const char* field : {"min_x", "min_y", "max_x", "max_y"})
                if (!b.contains(field) || !b[field].is_number_integer())
                    throw FormatError("puzzle bounds must carry integer min_x/min_y/max_x/max_y");
            bounds = Bounds{b["min_x"].get<Coord>(), b["min_y"].get<Coord>(),
                            b["max_x"].get<Coord>(), b["max_y"].get<Coord>()};
        }
        BoardState state;
        state.set_bounds(bounds);
        for (const json& pj : j["pieces"]) {
            if (!pj.contains("kind") || !pj["kind"].is_string() || pj["kind"].get<std::string>().size() != 1)
                throw FormatError("piece entry needs a one-letter 'kind'");
            const char letter = pj["kind"].get<std::string>()[0];
            const auto kind = piece_from_letter(letter);
            if (!kind) throw FormatError(std::string("unknown piece letter '") + letter + "'");
            if (!pj.contains("x") || !pj.contains("y") || !pj["x"].is_number_integer() ||
                !pj["y"].is_number_integer())
                throw FormatError("piece entry needs integer x and y");
            try {
                state.add(Position{pj["x"].get<Coord>(), pj["y"].get<Coord>()}, *kind);
            } catch (const BoardError& e) {
                throw FormatError(e.what());
            }
        }
        return state;
    }

    BoardState state;
    bool saw_bounds = false;
    bool saw_piece = false;
    for (const std::string& raw : split_lines(text)) {
        if (blank(raw) || raw[0] == '#') continue;
        std::istringstream in(raw);
        std::string head;
        in >> head;
        if (head == "bounds") {
            if (saw_bounds) throw FormatError("duplicate bounds line");
            if (saw_piece) throw FormatError("bounds line must precede pieces");
            std::string a, b, c, d, extra;
            if (!(in >> a >> b >> c >> d) || (in >> extra))
                throw FormatError("bounds line needs exactly four integers");
            state.set_bounds(Bounds{parse_coord(a, "bounds"), parse_coord(b, "bounds"),
                                    parse_coord(c, "bounds"), parse_coord(d, "bounds")});
            saw_bounds = true;
            continue;
        }
        if (head.size() != 1 || !piece_from_letter(head[0]))
            throw FormatError("unknown piece letter '" + head + "'");
        std::string xs, ys, extra;
        if (!(in >> xs >> ys) || (in >> extra))
            throw FormatError("piece line '" + raw + "' needs '<letter> <x> <y>'");
        try {
            state.add(Position{parse_coord(xs, raw), parse_coord(ys, raw)},
                      *piece_from_letter(head[0]));
        } catch (const BoardError& e) {
            throw FormatError(e.what());
        }
        saw_piece = true;
    }
    return state;
}

BoardState parse_puzzle_auto(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return parse_puzzle(text, c == '{' ? PuzzleFormat::Json : PuzzleFormat::Compact);
    }
    return parse_puzzle(text, PuzzleFormat::Compact);
}

std::string emit_puzzle(const BoardState& state, PuzzleFormat format) {
    if (state.empty()) throw FormatError("empty instance");
    if (format == PuzzleFormat::Json) {
        json j;
        j["pieces"] = json::array();
        for (const Piece& p : state.pieces())
            j["pieces"].push_back({{"kind", std::string(1, piece_letter(p.kind))},
                                   {"x", p.pos.x},
                                   {"y", p.pos.y}});
        if (state.bounds()) {
            const Bounds& b = *state.bounds();
            j["bounds"] = {{"min_x", b.min_x}, {"min_y", b.min_y},
                           {"max_x", b.max_x}, {"max_y", b.max_y}};
        }
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    if (state.bounds()) {
        const Bounds& b = *state.bounds();
        out << "bounds " << b.min_x << ' ' << b.min_y << ' ' << b.max_x << ' ' << b.max_y << '\n';
    }
    for (const Piece& p : state.pieces())
        out << piece_letter(p.kind) << ' ' << p.pos.x << ' ' << p.pos.y << '\n';
    return out.str();
}

BoardState normalize(const BoardState& state) {
    if (state.empty()) return state;
    const Bounds h = state.hull();
    const Coord dx = -h.min_x;
    const Coord dy = -h.min_y;
    BoardState out;
    if (state.bounds()) {
        const Bounds& b = *state.bounds();
        out.set_bounds(Bounds{b.min_x + dx, b.min_y + dy, b.max_x + dx, b.max_y + dy});
    }
    for (const Piece& p : state.pieces())
        out.add(Position{p.pos.x + dx, p.pos.y + dy}, p.kind);
    return out;
}

CnfInstance parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string token;
    bool saw_header = false;
    long long declared_vars = 0, declared_clauses = 0;
    CnfInstance cnf;
    std::vector<long long> current;

    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (blank(line)) continue;
        std::istringstream ls(line);
        std::string first;
        ls >> first;
        if (first == "c" || first.rfind("c", 0) == 0 && first.size() > 1) continue;
        if (first == "p") {
            if (saw_header) throw FormatError("duplicate DIMACS header");
            std::string fmt;
            if (!(ls >> fmt >> declared_vars >> declared_clauses) || fmt != "cnf")
                throw FormatError("malformed DIMACS header; expected 'p cnf <vars> <clauses>'");
            if (declared_vars <= 0) throw FormatError("DIMACS header must declare at least one variable");
            saw_header = true;
            continue;
        }
        if (!saw_header) throw FormatError("missing DIMACS header before clauses");
        ls.clear();
        ls.str(line);
        long long lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (current.size() != 3)
                    throw FormatError("clause with " + std::to_string(current.size()) +
                                      " literals; exactly 3 required");
                Clause clause;
                for (int t = 0; t < 3; ++t) {
                    const long long v = current[static_cast<std::size_t>(t)];
                    const long long var = v < 0 ? -v : v;
                    if (var < 1 || var > declared_vars)
                        throw FormatError("variable index " + std::to_string(var) +
                                          " out of range 1.." + std::to_string(declared_vars));
                    clause.literals[static_cast<std::size_t>(t)] =
                        Literal{static_cast<int>(var), v > 0};
                }
                cnf.clauses.push_back(clause);
                current.clear();
            } else {
                current.push_back(lit);
            }
        }
        if (ls.fail() && !ls.eof()) throw FormatError("malformed literal in clause line: " + line);
    }
    if (!saw_header) throw FormatError("missing DIMACS header");
    if (!current.empty()) throw FormatError("unterminated clause (missing trailing 0)");
    if (static_cast<long long>(cnf.clauses.size()) != declared_clauses)
        throw FormatError("header declares " + std::to_string(declared_clauses) + " clauses but " +
                          std::to_string(cnf.clauses.size()) + " found");
    cnf.num_vars = static_cast<int>(declared_vars);
    return cnf;
}

std::string emit_dimacs(const CnfInstance& cnf) {
    std::ostringstream out;
    out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
    for (const Clause& c : cnf.clauses) {
        for (const Literal& lit : c.literals) out << (lit.positive ? lit.var : -lit.var) << ' ';
        out << "0\n";
    }
    return out.str();
}

std::string emit_witness_json(const Witness& w) {
    json j;
    j["moves"] = json::array();
    for (const Move& m : w.moves)
        j["moves"].push_back({{"from", position_json(m.from)}, {"to", position_json(m.to)}});
    return j.dump(2) + "\n";
}

Witness parse_witness_json(const std::string& text) {
    const json j = parse_json_text(text, "witness");
    if (!j.is_object() || !j.contains("moves") || !j["moves"].is_array())
        throw FormatError("witness JSON must be an object with a 'moves' array");
    Witness w;
    for (const json& mj : j["moves"]) {
        if (!mj.contains("from") || !mj.contains("to"))
            throw FormatError("witness move needs 'from' and 'to'");
        w.moves.push_back(Move{position_from_json(mj["from"], "witness move"),
                               position_from_json(mj["to"], "witness move")});
    }
    return w;
}

std::string emit_layout_json(const ReductionLayout& layout) {
    json j;
    j["mode"] = to_string(layout.mode);
    j["n"] = layout.n;
    j["m_original"] = layout.m_original;
    j["m_padded"] = layout.m_padded;
    j["column_spacing"] = layout.column_spacing;
    j["cleaning_bishop"] = position_json(layout.cleaning_bishop);

    j["variables"] = json::array();
    for (const VariableGadget& v : layout.variables) {
        json vj;
        vj["i"] = v.i;
        vj["rook"] = position_json(v.rook);
        vj["gate"] = json::array();
        for (const Position& p : v.gate) vj["gate"].push_back(position_json(p));
        vj["true_column_x"] = v.true_column_x;
        vj["false_column_x"] = v.false_column_x;
        vj["cleaning"] = json::array({position_json(v.cleaning[0]), position_json(v.cleaning[1])});
        j["variables"].push_back(vj);
    }

    j["clauses"] = json::array();
    for (const ClauseGadget& c : layout.clauses) {
        json cj;
        cj["j"] = c.j;
        cj["rows"] = json::array({c.rows[0], c.rows[1], c.rows[2]});
        cj["rooks"] = json::array({position_json(c.rooks[0]), position_json(c.rooks[1])});
        cj["gate"] = json::array();
        for (const auto& slot : c.gate) {
            json sj = json::array();
            for (const Position& p : slot) sj.push_back(position_json(p));
            cj["gate"].push_back(sj);
        }
        cj["cleaning"] = json::array();
        for (const Position& p : c.cleaning) cj["cleaning"].push_back(position_json(p));
        j["clauses"].push_back(cj);
    }

    j["literals"] = json::array();
    for (const LiteralPlacement& lp : layout.literals) {
        j["literals"].push_back({{"j", lp.j},
                                 {"k", lp.k},
                                 {"var", lp.var},
                                 {"positive", lp.positive},
                                 {"occurrence", lp.occurrence},
                                 {"b1", position_json(lp.b1)},
                                 {"b2", position_json(lp.b2)}});
    }
    return j.dump(2) + "\n";
}

ReductionLayout parse_layout_json(const std::string& text) {
    const json j = parse_json_text(text, "layout");
    if (!j.is_object()) throw FormatError("layout JSON must be an object");
    for (const char* field : {"mode", "n", "m_original", "m_padded", "column_spacing",
                              "cleaning_bishop", "variables", "clauses", "literals"})
        if (!j.contains(field)) throw FormatError(std::string("layout JSON missing '") + field + "'");

    ReductionLayout layout;
    const auto mode = reduction_mode_from_string(j["mode"].get<std::string>());
    if (!mode) throw FormatError("unknown reduction mode '" + j["mode"].get<std::string>() + "'");
    layout.mode = *mode;
    layout.n = j["n"].get<int>();
    layout.m_original = j["m_original"].get<int>();
    layout.m_padded = j["m_padded"].get<int>();
    layout.column_spacing = j["column_spacing"].get<Coord>();
    layout.cleaning_bishop = position_from_json(j["cleaning_bishop"], "cleaning_bishop");

    for (const json& vj : j["variables"]) {
        VariableGadget v;
        v.i = vj["i"].get<int>();
        v.rook = position_from_json(vj["rook"], "variable rook");
        for (int t = 0; t < 3; ++t)
            v.gate[static_cast<std::size_t>(t)] =
                position_from_json(vj["gate"].at(static_cast<std::size_t>(t)), "variable gate");
        v.true_column_x = vj["true_column_x"].get<Coord>();
        v.false_column_x = vj["false_column_x"].get<Coord>();
        v.cleaning[0] = position_from_json(vj["cleaning"].at(0), "variable cleaning");
        v.cleaning[1] = position_from_json(vj["cleaning"].at(1), "variable cleaning");
        layout.variables.push_back(v);
    }

    for (const json& cj : j["clauses"]) {
        ClauseGadget c;
        c.j = cj["j"].get<int>();
        for (int t = 0; t < 3; ++t) c.rows[static_cast<std::size_t>(t)] =
            cj["rows"].at(static_cast<std::size_t>(t)).get<Coord>();
        c.rooks[0] = position_from_json(cj["rooks"].at(0), "clause rook");
        c.rooks[1] = position_from_json(cj["rooks"].at(1), "clause rook");
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 3; ++t)
                c.gate[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] =
                    position_from_json(cj["gate"].at(static_cast<std::size_t>(s))
                                           .at(static_cast<std::size_t>(t)),
                                       "clause gate");
        for (int t = 0; t < 3; ++t)
            c.cleaning[static_cast<std::size_t>(t)] = position_from_json(
                cj["cleaning"].at(static_cast<std::size_t>(t)), "clause cleaning");
        layout.clauses.push_back(c);
    }

    for (const json& lj : j["literals"]) {
        LiteralPlacement lp;
        lp.j = lj["j"].get<int>();
        lp.k = lj["k"].get<int>();
        lp.var = lj["var"].get<int>();
        lp.positive = lj["positive"].get<bool>();
        lp.occurrence = lj["occurrence"].get<int>();
        lp.b1 = position_from_json(lj["b1"], "literal b1");
        lp.b2 = position_from_json(lj["b2"], "literal b2");
        layout.literals.push_back(lp);
    }

    layout.rebuild_role_map();
    return layout;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write file: " + path);
    out << contents;
}

}  // namespace solchess
