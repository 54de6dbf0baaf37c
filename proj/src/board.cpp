#include "solchess/board.hpp"

#include <algorithm>

namespace solchess {

char piece_letter(PieceKind kind) {
    switch (kind) {
        case PieceKind::King: return 'K';
        case PieceKind::Queen: return 'Q';
        case PieceKind::Rook: return 'R';
        case PieceKind::Bishop: return 'B';
        case PieceKind::Knight: return 'N';
        case PieceKind::Pawn: return 'P';
    }
    throw BoardError("invalid piece kind");
}

std::optional<PieceKind> piece_from_letter(char letter) {
    switch (letter) {
        case 'K': return PieceKind::King;
        case 'Q': return PieceKind::Queen;
        case 'R': return PieceKind::Rook;
        case 'B': return PieceKind::Bishop;
        case 'N': return PieceKind::Knight;
        case 'P': return PieceKind::Pawn;
        default: return std::nullopt;
    }
}

namespace {

std::vector<Piece>::const_iterator find_pos(const std::vector<Piece>& pieces, Position pos) {
    auto it = std::lower_bound(pieces.begin(), pieces.end(), pos,
                               [](const Piece& p, Position q) { return p.pos < q; });
    if (it != pieces.end() && it->pos == pos) return it;
    return pieces.end();
}

std::string pos_str(Position p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

}  // namespace

BoardState BoardState::from_pieces(std::vector<Piece> pieces, std::optional<Bounds> bounds) {
    BoardState state;
    state.bounds_ = bounds;
    for (const Piece& p : pieces) state.add(p.pos, p.kind);
    return state;
}

void BoardState::add(Position pos, PieceKind kind) {
    if (bounds_ && !bounds_->contains(pos))
        throw BoardError("piece outside declared bounds at " + pos_str(pos));
    auto it = std::lower_bound(pieces_.begin(), pieces_.end(), pos,
                               [](const Piece& p, Position q) { return p.pos < q; });
    if (it != pieces_.end() && it->pos == pos)
        throw BoardError("duplicate square " + pos_str(pos));
    pieces_.insert(it, Piece{pos, kind});
}

void BoardState::remove(Position pos) {
    auto it = find_pos(pieces_, pos);
    if (it == pieces_.end()) throw BoardError("no piece at " + pos_str(pos));
    pieces_.erase(it);
}

std::optional<PieceKind> BoardState::at(Position pos) const {
    auto it = find_pos(pieces_, pos);
    if (it == pieces_.end()) return std::nullopt;
    return it->kind;
}

void BoardState::set_bounds(std::optional<Bounds> bounds) {
    if (bounds) {
        for (const Piece& p : pieces_) {
            if (!bounds->contains(p.pos))
                throw BoardError("piece outside declared bounds at " + pos_str(p.pos));
        }
    }
    bounds_ = bounds;
}

Bounds BoardState::hull() const {
    if (pieces_.empty()) throw BoardError("empty board has no hull");
    Bounds h{pieces_.front().pos.x, pieces_.front().pos.y,
             pieces_.front().pos.x, pieces_.front().pos.y};
    for (const Piece& p : pieces_) {
        h.min_x = std::min(h.min_x, p.pos.x);
        h.max_x = std::max(h.max_x, p.pos.x);
        h.min_y = std::min(h.min_y, p.pos.y);
        h.max_y = std::max(h.max_y, p.pos.y);
    }
    return h;
}

}  // namespace solchess
