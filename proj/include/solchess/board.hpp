#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace solchess {

using Coord = std::int64_t;

/// Square of the unbounded integer board. Ordering is (y, x) so that board
/// scans and serialized piece lists are row-major and reproducible.
struct Position {
    Coord x = 0;
    Coord y = 0;

    friend bool operator==(const Position&, const Position&) = default;
    friend auto operator<=>(const Position& a, const Position& b) {
        if (auto c = a.y <=> b.y; c != 0) return c;
        return a.x <=> b.x;
    }
};

enum class Color { White, Black };

/// (x+y) even -> White, odd -> Black; negative coordinates use the
/// mathematical (Euclidean) parity, so (-3,2) is Black.
inline Color square_color(Position p) {
    const Coord s = p.x + p.y;
    return (s % 2 + 2) % 2 == 0 ? Color::White : Color::Black;
}

enum class PieceKind : std::uint8_t { King, Queen, Rook, Bishop, Knight, Pawn };

inline constexpr std::array<PieceKind, 6> all_piece_kinds = {
    PieceKind::King,   PieceKind::Queen,  PieceKind::Rook,
    PieceKind::Bishop, PieceKind::Knight, PieceKind::Pawn,
};

char piece_letter(PieceKind kind);
std::optional<PieceKind> piece_from_letter(char letter);

/// Ordered capture: the piece at `from` takes the piece at `to`.
struct Move {
    Position from;
    Position to;

    friend bool operator==(const Move&, const Move&) = default;
    friend auto operator<=>(const Move& a, const Move& b) {
        if (auto c = a.from <=> b.from; c != 0) return c;
        return a.to <=> b.to;
    }
};

struct Bounds {
    Coord min_x = 0, min_y = 0, max_x = 0, max_y = 0;

    bool contains(Position p) const {
        return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
    }
    friend bool operator==(const Bounds&, const Bounds&) = default;
};

struct Piece {
    Position pos;
    PieceKind kind;

    friend bool operator==(const Piece&, const Piece&) = default;
};

class BoardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Occupancy map of the board: at most one piece per square, pieces of equal
/// kind interchangeable. Value type; all engine operations are pure.
class BoardState {
public:
    BoardState() = default;

    /// Throws BoardError on duplicate squares or squares outside bounds.
    static BoardState from_pieces(std::vector<Piece> pieces,
                                  std::optional<Bounds> bounds = std::nullopt);

    void add(Position pos, PieceKind kind);  // throws on duplicate / out of bounds
    void remove(Position pos);               // throws if empty

    std::optional<PieceKind> at(Position pos) const;
    bool occupied(Position pos) const { return at(pos).has_value(); }

    std::size_t size() const { return pieces_.size(); }
    bool empty() const { return pieces_.empty(); }

    /// Pieces sorted by (y, x).
    const std::vector<Piece>& pieces() const { return pieces_; }

    const std::optional<Bounds>& bounds() const { return bounds_; }
    void set_bounds(std::optional<Bounds> bounds);  // throws if a piece falls outside

    /// Smallest rectangle containing every piece. Throws on empty board.
    Bounds hull() const;

    friend bool operator==(const BoardState& a, const BoardState& b) {
        return a.pieces_ == b.pieces_ && a.bounds_ == b.bounds_;
    }

private:
    std::vector<Piece> pieces_;  // sorted by (y, x)
    std::optional<Bounds> bounds_;
};

}  // namespace solchess
