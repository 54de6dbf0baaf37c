#pragma once

#include <string>

#include "solchess/board.hpp"
#include "solchess/cnf.hpp"
#include "solchess/engine.hpp"
#include "solchess/reduction.hpp"

namespace solchess {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class PuzzleFormat { Compact, Json };

/// Compact: optional first line "bounds minx miny maxx maxy", then one piece
/// per line "<letter> <x> <y>" with letters K Q R B N P.
/// JSON: {"pieces":[{"kind":"R","x":0,"y":1},...],"bounds":{...}?}.
BoardState parse_puzzle(const std::string& text, PuzzleFormat format);

/// Sniffs JSON by a leading '{'; everything else parses as compact.
BoardState parse_puzzle_auto(const std::string& text);

/// Emits with piece lines sorted by (y, x); parse(emit(s)) == s.
/// Throws FormatError on an empty board.
std::string emit_puzzle(const BoardState& state, PuzzleFormat format);

/// Translates all pieces (and bounds) by one offset so min x = min y = 0.
BoardState normalize(const BoardState& state);

/// Strict DIMACS subset: header "p cnf <vars> <clauses>", comment lines "c",
/// 0-terminated clauses of exactly three literals each.
CnfInstance parse_dimacs(const std::string& text);
std::string emit_dimacs(const CnfInstance& cnf);

/// Witness JSON: {"moves":[{"from":[x,y],"to":[x,y]},...]}.
std::string emit_witness_json(const Witness& w);
Witness parse_witness_json(const std::string& text);

/// Layout JSON: gadget-structured piece list with roles, mode and sizes.
std::string emit_layout_json(const ReductionLayout& layout);
ReductionLayout parse_layout_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace solchess
