#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "solchess/board.hpp"

namespace solchess {

/// Order-insensitive 128-bit key: equal for equal (kind, position) multisets.
struct CanonicalKey {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalKeyHash {
    std::size_t operator()(const CanonicalKey& k) const noexcept {
        return static_cast<std::size_t>(k.lo ^ (k.hi * 0x9e3779b97f4a7c15ULL));
    }
};

CanonicalKey canonical_key(const BoardState& state);

/// XOR contribution of a single piece; canonical_key is the XOR over pieces.
/// Exposed so search code can update keys incrementally.
CanonicalKey piece_key(PieceKind kind, Position pos);

inline CanonicalKey key_xor(CanonicalKey a, CanonicalKey b) {
    return CanonicalKey{a.lo ^ b.lo, a.hi ^ b.hi};
}

class BoardIndex;

/// True iff the piece at `from` may capture on `to` under capture-only rules:
/// occupancy of `to` is not consulted, path squares strictly between must be
/// empty for sliders, pawns capture to (x-1,y+1) / (x+1,y+1) only.
/// Throws BoardError if `from` is empty.
bool attacks(const BoardState& state, Position from, Position to);

/// Same, reusing a prebuilt index (search hot path).
bool attacks(const BoardState& state, const BoardIndex& index, Position from, Position to);

/// All capture moves: ordered pairs of occupied squares (a,b), a != b, where
/// the piece at a attacks b. Sorted by (from.y, from.x, to.y, to.x).
std::vector<Move> legal_moves(const BoardState& state);
std::vector<Move> legal_moves(const BoardState& state, const BoardIndex& index);

/// Applies a capture. Throws BoardError naming the violated rule when the
/// move is not legal in `state`.
BoardState apply_move(const BoardState& state, Move m);

inline bool is_solved(const BoardState& state) { return state.size() == 1; }

struct Witness {
    std::vector<Move> moves;

    friend bool operator==(const Witness&, const Witness&) = default;
};

/// Playback result; failure is a value, not an exception.
struct WitnessReport {
    bool ok = false;
    std::size_t failed_index = 0;  // index of first illegal move, or moves.size()
                                   // when playback ran clean but did not solve
    std::string reason;
};

WitnessReport validate_witness(const BoardState& initial, const Witness& w);

/// Per-state line index for slider moves; avoids square-by-square scans on
/// boards whose coordinates are far apart (reduced instances).
class BoardIndex {
public:
    explicit BoardIndex(const BoardState& state);

    /// Nearest occupied square strictly beyond `from` in the given direction
    /// on the shared line; dx/dy in {-1,0,1}, not both zero, rook or bishop
    /// direction only.
    std::optional<Position> nearest(Position from, int dx, int dy) const;

    /// True iff no occupied square lies strictly between a and b (which must
    /// share a rook or bishop line).
    bool clear_between(Position a, Position b) const;

private:
    struct Line {
        std::vector<std::pair<Coord, Position>> entries;  // sorted by key
    };
    // rows keyed by y (entry key x), cols keyed by x (entry key y),
    // diagonals keyed by x-y, anti-diagonals keyed by x+y (entry key x).
    std::vector<std::pair<Coord, Line>> rows_, cols_, diag_, anti_;

    static const Line* find(const std::vector<std::pair<Coord, Line>>& lines, Coord key);
};

}  // namespace solchess
