#include "solchess/engine.hpp"

#include <algorithm>
#include <cstdlib>

namespace solchess {

namespace {

std::string pos_str(Position p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

std::uint64_t mix64(std::uint64_t v) {
    // splitmix64 finalizer
    v += 0x9e3779b97f4a7c15ULL;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
    return v ^ (v >> 31);
}

}  // namespace

CanonicalKey piece_key(PieceKind kind, Position pos) {
    const std::uint64_t seed = static_cast<std::uint64_t>(kind) + 1;
    const std::uint64_t x = static_cast<std::uint64_t>(pos.x);
    const std::uint64_t y = static_cast<std::uint64_t>(pos.y);
    std::uint64_t a = mix64(seed ^ mix64(x) ^ (mix64(y) << 1 | mix64(y) >> 63));
    std::uint64_t b = mix64(a ^ 0xd1b54a32d192ed03ULL ^ mix64(y ^ 0x8cb92ba72f3d8dd7ULL) ^ x);
    return CanonicalKey{a, b};
}

CanonicalKey canonical_key(const BoardState& state) {
    CanonicalKey key;
    for (const Piece& p : state.pieces()) key = key_xor(key, piece_key(p.kind, p.pos));
    return key;
}

// ---------------------------------------------------------------------------
// BoardIndex

BoardIndex::BoardIndex(const BoardState& state) {
    auto push = [](std::vector<std::pair<Coord, Line>>& lines, Coord key, Coord entry_key,
                   Position pos) {
        auto it = std::lower_bound(lines.begin(), lines.end(), key,
                                   [](const auto& l, Coord k) { return l.first < k; });
        if (it == lines.end() || it->first != key) it = lines.insert(it, {key, Line{}});
        it->second.entries.push_back({entry_key, pos});
    };
    for (const Piece& p : state.pieces()) {
        push(rows_, p.pos.y, p.pos.x, p.pos);
        push(cols_, p.pos.x, p.pos.y, p.pos);
        push(diag_, p.pos.x - p.pos.y, p.pos.x, p.pos);
        push(anti_, p.pos.x + p.pos.y, p.pos.x, p.pos);
    }
    auto sort_all = [](std::vector<std::pair<Coord, Line>>& lines) {
        for (auto& [key, line] : lines) std::sort(line.entries.begin(), line.entries.end());
    };
    sort_all(rows_);
    sort_all(cols_);
    sort_all(diag_);
    sort_all(anti_);
}

const BoardIndex::Line* BoardIndex::find(const std::vector<std::pair<Coord, Line>>& lines,
                                         Coord key) {
    auto it = std::lower_bound(lines.begin(), lines.end(), key,
                               [](const auto& l, Coord k) { return l.first < k; });
    if (it == lines.end() || it->first != key) return nullptr;
    return &it->second;
}

std::optional<Position> BoardIndex::nearest(Position from, int dx, int dy) const {
    const Line* line = nullptr;
    Coord entry_key = 0;
    bool forward = false;
    if (dy == 0) {
        line = find(rows_, from.y);
        entry_key = from.x;
        forward = dx > 0;
    } else if (dx == 0) {
        line = find(cols_, from.x);
        entry_key = from.y;
        forward = dy > 0;
    } else if (dx == dy) {
        line = find(diag_, from.x - from.y);
        entry_key = from.x;
        forward = dx > 0;
    } else {
        line = find(anti_, from.x + from.y);
        entry_key = from.x;
        forward = dx > 0;
    }
    if (!line) return std::nullopt;
    const auto& e = line->entries;
    auto it = std::lower_bound(e.begin(), e.end(), entry_key,
                               [](const auto& a, Coord k) { return a.first < k; });
    if (forward) {
        if (it != e.end() && it->first == entry_key) ++it;
        if (it == e.end()) return std::nullopt;
        return it->second;
    }
    if (it == e.begin()) return std::nullopt;
    --it;
    if (it->first == entry_key) {
        if (it == e.begin()) return std::nullopt;
        --it;
    }
    return it->second;
}

bool BoardIndex::clear_between(Position a, Position b) const {
    const Coord dx = b.x - a.x;
    const Coord dy = b.y - a.y;
    const int sx = dx == 0 ? 0 : (dx > 0 ? 1 : -1);
    const int sy = dy == 0 ? 0 : (dy > 0 ? 1 : -1);
    auto hit = nearest(a, sx, sy);
    if (!hit) return true;
    // Nearest occupied square in that direction is at or beyond b?
    const Coord dist_b = std::max(std::llabs(dx), std::llabs(dy));
    const Coord dist_hit =
        std::max(std::llabs(hit->x - a.x), std::llabs(hit->y - a.y));
    return dist_hit >= dist_b;
}

// ---------------------------------------------------------------------------
// attacks / legal_moves / apply_move

namespace {

bool attacks_with_index(const BoardState& state, const BoardIndex& index, Position from,
                        Position to, PieceKind kind) {
    if (from == to) return false;
    const Coord dx = to.x - from.x;
    const Coord dy = to.y - from.y;
    const Coord ax = std::llabs(dx);
    const Coord ay = std::llabs(dy);
    switch (kind) {
        case PieceKind::Rook:
            if (dx != 0 && dy != 0) return false;
            return index.clear_between(from, to);
        case PieceKind::Bishop:
            if (ax != ay) return false;
            return index.clear_between(from, to);
        case PieceKind::Queen:
            if (dx != 0 && dy != 0 && ax != ay) return false;
            return index.clear_between(from, to);
        case PieceKind::Knight:
            return (ax == 1 && ay == 2) || (ax == 2 && ay == 1);
        case PieceKind::King:
            return std::max(ax, ay) == 1;
        case PieceKind::Pawn:
            return dy == 1 && ax == 1;  // forward is +y
    }
    (void)state;
    return false;
}

}  // namespace

bool attacks(const BoardState& state, Position from, Position to) {
    BoardIndex index(state);
    return attacks(state, index, from, to);
}

bool attacks(const BoardState& state, const BoardIndex& index, Position from, Position to) {
    const auto kind = state.at(from);
    if (!kind) throw BoardError("no piece at source " + pos_str(from));
    return attacks_with_index(state, index, from, to, *kind);
}

std::vector<Move> legal_moves(const BoardState& state) {
    BoardIndex index(state);
    return legal_moves(state, index);
}

std::vector<Move> legal_moves(const BoardState& state, const BoardIndex& index) {
    std::vector<Move> moves;
    if (state.size() < 2) return moves;

    auto push_nearest = [&](Position from, int dx, int dy) {
        if (auto hit = index.nearest(from, dx, dy)) moves.push_back(Move{from, *hit});
    };
    auto push_if_occupied = [&](Position from, Coord dx, Coord dy) {
        Position to{from.x + dx, from.y + dy};
        if (state.occupied(to)) moves.push_back(Move{from, to});
    };

    for (const Piece& p : state.pieces()) {
        switch (p.kind) {
            case PieceKind::Rook:
                push_nearest(p.pos, 1, 0);
                push_nearest(p.pos, -1, 0);
                push_nearest(p.pos, 0, 1);
                push_nearest(p.pos, 0, -1);
                break;
            case PieceKind::Bishop:
                push_nearest(p.pos, 1, 1);
                push_nearest(p.pos, 1, -1);
                push_nearest(p.pos, -1, 1);
                push_nearest(p.pos, -1, -1);
                break;
            case PieceKind::Queen:
                for (int dx = -1; dx <= 1; ++dx)
                    for (int dy = -1; dy <= 1; ++dy)
                        if (dx != 0 || dy != 0) push_nearest(p.pos, dx, dy);
                break;
            case PieceKind::Knight:
                for (auto [dx, dy] : {std::pair<Coord, Coord>{1, 2}, {2, 1}, {-1, 2}, {-2, 1},
                                      {1, -2}, {2, -1}, {-1, -2}, {-2, -1}})
                    push_if_occupied(p.pos, dx, dy);
                break;
            case PieceKind::King:
                for (Coord dx = -1; dx <= 1; ++dx)
                    for (Coord dy = -1; dy <= 1; ++dy)
                        if (dx != 0 || dy != 0) push_if_occupied(p.pos, dx, dy);
                break;
            case PieceKind::Pawn:
                push_if_occupied(p.pos, -1, 1);
                push_if_occupied(p.pos, 1, 1);
                break;
        }
    }
    std::sort(moves.begin(), moves.end());
    return moves;
}

BoardState apply_move(const BoardState& state, Move m) {
    const auto mover = state.at(m.from);
    if (!mover) throw BoardError("illegal move: no piece at source " + pos_str(m.from));
    if (m.from == m.to) throw BoardError("illegal move: source equals destination " + pos_str(m.from));
    if (!state.occupied(m.to))
        throw BoardError("illegal move: destination square " + pos_str(m.to) + " is empty");

    BoardIndex index(state);
    const Coord ax = std::llabs(m.to.x - m.from.x);
    const Coord ay = std::llabs(m.to.y - m.from.y);
    const bool on_line = (m.from.x == m.to.x || m.from.y == m.to.y || ax == ay);
    const bool slider = (*mover == PieceKind::Rook || *mover == PieceKind::Bishop ||
                         *mover == PieceKind::Queen);
    if (!attacks_with_index(state, index, m.from, m.to, *mover)) {
        if (slider && on_line && !index.clear_between(m.from, m.to))
            throw BoardError("illegal move: path blocked between " + pos_str(m.from) + " and " +
                             pos_str(m.to));
        throw BoardError("illegal move: " + std::string(1, piece_letter(*mover)) +
                         " cannot capture from " + pos_str(m.from) + " to " + pos_str(m.to));
    }

    BoardState next = state;
    next.remove(m.to);
    next.remove(m.from);
    next.add(m.to, *mover);
    return next;
}

WitnessReport validate_witness(const BoardState& initial, const Witness& w) {
    BoardState state = initial;
    for (std::size_t i = 0; i < w.moves.size(); ++i) {
        try {
            state = apply_move(state, w.moves[i]);
        } catch (const BoardError& e) {
            return WitnessReport{false, i, e.what()};
        }
    }
    if (!is_solved(state))
        return WitnessReport{false, w.moves.size(),
                             "board not solved: " + std::to_string(state.size()) +
                                 " pieces remain after final move"};
    return WitnessReport{true, 0, ""};
}

}  // namespace solchess
