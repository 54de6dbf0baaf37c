#include "solchess/solver.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <chrono>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_set>
#include <vector>

namespace solchess {

namespace {

using Clock = std::chrono::steady_clock;

/// Insert-only concurrent set of refuted state keys.
class RefutationSet {
public:
    bool contains(const CanonicalKey& key) const {
        const Shard& s = shard(key);
        std::lock_guard<std::mutex> lock(s.mu);
        return s.keys.count(key) != 0;
    }
    void insert(const CanonicalKey& key) {
        Shard& s = shard(key);
        std::lock_guard<std::mutex> lock(s.mu);
        s.keys.insert(key);
    }

private:
    static constexpr std::size_t kShards = 64;
    struct Shard {
        mutable std::mutex mu;
        std::unordered_set<CanonicalKey, CanonicalKeyHash> keys;
    };
    Shard& shard(const CanonicalKey& key) { return shards_[key.lo % kShards]; }
    const Shard& shard(const CanonicalKey& key) const { return shards_[key.lo % kShards]; }
    Shard shards_[kShards];
};

enum class Outcome { Solved, Refuted, Limit, Aborted };

/// Over-approximate future reachability. Occupancy only shrinks (a move
/// vacates its source and never refills a square), so a piece can only ever
/// stand on squares occupied right now, within the component of its
/// share-a-line graph (blockers ignored: they only disappear). A piece is
/// provably safe when no other piece, from anywhere in that piece's own
/// over-approximated range, could attack any square the piece might occupy.
/// Two provably safe pieces refute the state: both would have to survive.
class StuckAnalysis {
public:
    explicit StuckAnalysis(const BoardState& state) : pieces_(state.pieces()) {
        const std::size_t n = pieces_.size();
        for (const Piece& p : pieces_) {
            switch (p.kind) {
                case PieceKind::Rook: has_rook_ = true; break;
                case PieceKind::Bishop: has_bishop_ = true; break;
                case PieceKind::Queen: has_queen_ = true; break;
                case PieceKind::Knight: has_knight_ = true; break;
                case PieceKind::King: has_king_ = true; break;
                case PieceKind::Pawn: has_pawn_ = true; break;
            }
        }
        if (has_rook_) line_ = components([](Position a, Position b) {
                return a.x == b.x || a.y == b.y;
            });
        if (has_bishop_) diag_ = components([](Position a, Position b) {
                return a.x - a.y == b.x - b.y || a.x + a.y == b.x + b.y;
            });
        if (has_queen_) any_ = components([](Position a, Position b) {
                return a.x == b.x || a.y == b.y || a.x - a.y == b.x - b.y ||
                       a.x + a.y == b.x + b.y;
            });
        if (has_knight_) knight_ = components([](Position a, Position b) {
                const Coord ax = std::llabs(a.x - b.x), ay = std::llabs(a.y - b.y);
                return (ax == 1 && ay == 2) || (ax == 2 && ay == 1);
            });
        if (has_king_) king_ = components([](Position a, Position b) {
                return std::max(std::llabs(a.x - b.x), std::llabs(a.y - b.y)) == 1;
            });
        if (has_pawn_) {
            pawn_reach_.assign(n, {});
            for (std::size_t i = 0; i < n; ++i) {
                if (pieces_[i].kind != PieceKind::Pawn) continue;
                std::vector<std::size_t> stack{i};
                std::vector<bool> seen(n, false);
                seen[i] = true;
                while (!stack.empty()) {
                    const std::size_t at = stack.back();
                    stack.pop_back();
                    pawn_reach_[i].push_back(at);
                    for (std::size_t k = 0; k < n; ++k) {
                        if (!seen[k] && pieces_[k].pos.y == pieces_[at].pos.y + 1 &&
                            std::llabs(pieces_[k].pos.x - pieces_[at].pos.x) == 1) {
                            seen[k] = true;
                            stack.push_back(k);
                        }
                    }
                }
            }
        }
    }

    bool two_safe_pieces() const {
        int safe = 0;
        for (std::size_t s = 0; s < pieces_.size(); ++s)
            if (is_safe(s) && ++safe >= 2) return true;
        return false;
    }

private:
    template <typename SharesLine>
    std::vector<int> components(SharesLine shares) const {
        const std::size_t n = pieces_.size();
        std::vector<int> parent(n);
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
        auto find = [&parent](int v) {
            while (parent[static_cast<std::size_t>(v)] != v) {
                parent[static_cast<std::size_t>(v)] =
                    parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
                v = parent[static_cast<std::size_t>(v)];
            }
            return v;
        };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i + 1; k < n; ++k)
                if (shares(pieces_[i].pos, pieces_[k].pos)) {
                    const int a = find(static_cast<int>(i)), b = find(static_cast<int>(k));
                    if (a != b) parent[static_cast<std::size_t>(a)] = b;
                }
        std::vector<int> comp(n);
        for (std::size_t i = 0; i < n; ++i) comp[i] = find(static_cast<int>(i));
        return comp;
    }

    /// Squares (as piece indexes) the piece could ever stand on.
    std::vector<std::size_t> range_of(std::size_t p) const {
        if (pieces_[p].kind == PieceKind::Pawn) return pawn_reach_[p];
        const std::vector<int>* comp = nullptr;
        switch (pieces_[p].kind) {
            case PieceKind::Rook: comp = &line_; break;
            case PieceKind::Bishop: comp = &diag_; break;
            case PieceKind::Queen: comp = &any_; break;
            case PieceKind::Knight: comp = &knight_; break;
            case PieceKind::King: comp = &king_; break;
            default: break;
        }
        std::vector<std::size_t> out;
        for (std::size_t q = 0; q < pieces_.size(); ++q)
            if ((*comp)[q] == (*comp)[p]) out.push_back(q);
        return out;
    }

    /// Could piece p, from any square it might ever occupy, capture a piece
    /// standing on square r (a currently occupied square)?
    bool could_attack(std::size_t p, Position r) const {
        const std::size_t n = pieces_.size();
        switch (pieces_[p].kind) {
            case PieceKind::Rook:
                for (std::size_t q = 0; q < n; ++q) {
                    const Position a = pieces_[q].pos;
                    if (line_[q] == line_[p] && !(a == r) && (a.x == r.x || a.y == r.y))
                        return true;
                }
                return false;
            case PieceKind::Bishop:
                for (std::size_t q = 0; q < n; ++q) {
                    const Position a = pieces_[q].pos;
                    if (diag_[q] == diag_[p] && !(a == r) &&
                        (a.x - a.y == r.x - r.y || a.x + a.y == r.x + r.y))
                        return true;
                }
                return false;
            case PieceKind::Queen:
                for (std::size_t q = 0; q < n; ++q) {
                    const Position a = pieces_[q].pos;
                    if (any_[q] == any_[p] && !(a == r) &&
                        (a.x == r.x || a.y == r.y || a.x - a.y == r.x - r.y ||
                         a.x + a.y == r.x + r.y))
                        return true;
                }
                return false;
            case PieceKind::Knight:
                for (std::size_t q = 0; q < n; ++q) {
                    const Position a = pieces_[q].pos;
                    const Coord ax = std::llabs(a.x - r.x), ay = std::llabs(a.y - r.y);
                    if (knight_[q] == knight_[p] &&
                        ((ax == 1 && ay == 2) || (ax == 2 && ay == 1)))
                        return true;
                }
                return false;
            case PieceKind::King:
                for (std::size_t q = 0; q < n; ++q) {
                    const Position a = pieces_[q].pos;
                    if (king_[q] == king_[p] && !(a == r) &&
                        std::max(std::llabs(a.x - r.x), std::llabs(a.y - r.y)) == 1)
                        return true;
                }
                return false;
            case PieceKind::Pawn:
                for (const std::size_t q : pawn_reach_[p]) {
                    const Position a = pieces_[q].pos;
                    if (a.y + 1 == r.y && std::llabs(a.x - r.x) == 1) return true;
                }
                return false;
        }
        return false;
    }

    bool is_safe(std::size_t s) const {
        for (const std::size_t r : range_of(s)) {
            const Position at = pieces_[r].pos;
            for (std::size_t p = 0; p < pieces_.size(); ++p)
                if (p != s && could_attack(p, at)) return false;
        }
        return true;
    }

    const std::vector<Piece>& pieces_;
    bool has_rook_ = false, has_bishop_ = false, has_queen_ = false;
    bool has_knight_ = false, has_king_ = false, has_pawn_ = false;
    std::vector<int> line_, diag_, any_, knight_, king_;
    std::vector<std::vector<std::size_t>> pawn_reach_;
};

struct SearchShared {
    RefutationSet memo;
    bool enable_memo = true;
    bool enable_stuck_prune = true;
    bool commutation_prune = true;
    bool unique_capture_first = false;
    std::optional<std::uint64_t> shuffle_seed;
    std::optional<std::uint64_t> max_states;
    std::optional<Clock::time_point> deadline;
    std::atomic<std::uint64_t> states{0};
    std::atomic<bool> stop{false};       // a solution was found somewhere
    std::atomic<bool> limit_hit{false};
};

/// Heuristic rank (lower explores first): rook moves drive the gate and
/// sweep machinery, bishop-on-bishop trades resolve pairs, bishop captures
/// of other kinds are cleanup and come last. Within a rank, pieces with a
/// single capture option lead.
void order_moves(const BoardState& state, std::vector<Move>& moves) {
    std::vector<int> fan(moves.size(), 0);
    for (std::size_t i = 0; i < moves.size(); ++i)
        for (std::size_t k = 0; k < moves.size(); ++k)
            if (moves[k].from == moves[i].from) ++fan[i];
    auto rank = [&](const Move& m) {
        const PieceKind mover = *state.at(m.from);
        const PieceKind victim = *state.at(m.to);
        if (mover == PieceKind::Bishop)
            return victim == PieceKind::Bishop ? 1 : 3;
        if (mover == PieceKind::Rook || mover == PieceKind::Queen) return 0;
        return 2;
    };
    std::vector<std::size_t> idx(moves.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const int ra = rank(moves[a]), rb = rank(moves[b]);
        if (ra != rb) return ra < rb;
        const bool ua = fan[a] == 1, ub = fan[b] == 1;
        if (ua != ub) return ua;
        return moves[a] < moves[b];
    });
    std::vector<Move> out;
    out.reserve(moves.size());
    for (std::size_t i : idx) out.push_back(moves[i]);
    moves = out;
}

BoardState apply_unchecked(const BoardState& state, Move m) {
    BoardState next = state;
    const PieceKind mover = *state.at(m.from);
    next.remove(m.to);
    next.remove(m.from);
    next.add(m.to, mover);
    return next;
}

CanonicalKey child_key(const BoardState& state, CanonicalKey key, Move m) {
    const PieceKind mover = *state.at(m.from);
    const PieceKind captured = *state.at(m.to);
    key = key_xor(key, piece_key(mover, m.from));
    key = key_xor(key, piece_key(captured, m.to));
    key = key_xor(key, piece_key(mover, m.to));
    return key;
}

/// Context of the move that produced the current node; used by the
/// commutation reduction and to salt the memo key (a pruned subtree is only
/// equivalent for searches entering through the same move).
struct Arrival {
    const BoardState* parent = nullptr;
    const BoardIndex* parent_index = nullptr;
    Move move;
};

bool squares_disjoint(const Move& a, const Move& b) {
    return !(a.from == b.from) && !(a.from == b.to) && !(a.to == b.from) && !(a.to == b.to);
}

CanonicalKey arrival_salt(CanonicalKey key, const Move& m) {
    const CanonicalKey f = piece_key(PieceKind::King, m.from);
    const CanonicalKey t = piece_key(PieceKind::Queen, m.to);
    return CanonicalKey{key.lo ^ (f.lo * 3 + t.hi), key.hi ^ (t.lo * 5 + f.hi)};
}

Outcome dfs(const BoardState& state, CanonicalKey key, const Arrival* arrival,
            SearchShared& shared, std::vector<Move>& path) {
    if (is_solved(state)) return Outcome::Solved;
    if (shared.stop.load(std::memory_order_relaxed)) return Outcome::Aborted;

    const std::uint64_t seen = shared.states.fetch_add(1, std::memory_order_relaxed) + 1;
    if (shared.max_states && seen > *shared.max_states) {
        shared.limit_hit.store(true, std::memory_order_relaxed);
        return Outcome::Limit;
    }
    if (shared.deadline && (seen & 0xfff) == 0 && Clock::now() >= *shared.deadline) {
        shared.limit_hit.store(true, std::memory_order_relaxed);
        return Outcome::Limit;
    }

    const CanonicalKey memo_key =
        shared.commutation_prune && arrival ? arrival_salt(key, arrival->move) : key;
    if (shared.enable_memo && shared.memo.contains(memo_key)) return Outcome::Refuted;

    const BoardIndex index(state);
    std::vector<Move> moves = legal_moves(state, index);
    if (moves.empty()) {  // >= 2 pieces, nothing can capture: dead end
        if (shared.enable_memo) shared.memo.insert(memo_key);
        return Outcome::Refuted;
    }
    if (shared.enable_stuck_prune && StuckAnalysis(state).two_safe_pieces()) {
        if (shared.enable_memo) shared.memo.insert(memo_key);
        return Outcome::Refuted;
    }

    if (shared.commutation_prune && arrival) {
        // Two successive moves on four distinct squares commute: both orders
        // are legal and land in the same state. Explore only the sorted
        // order; every reachable state (and the lexicographically-first
        // solution) survives via its swap-minimal move sequence.
        const Move last = arrival->move;
        std::erase_if(moves, [&](const Move& n) {
            return n < last && squares_disjoint(n, last) &&
                   attacks(*arrival->parent, *arrival->parent_index, n.from, n.to);
        });
        if (moves.empty()) {
            if (shared.enable_memo) shared.memo.insert(memo_key);
            return Outcome::Refuted;
        }
    }

    if (shared.shuffle_seed) {
        std::mt19937_64 rng(*shared.shuffle_seed ^ key.lo ^ (key.hi << 1));
        std::shuffle(moves.begin(), moves.end(), rng);
    } else if (shared.unique_capture_first) {
        order_moves(state, moves);
    }

    for (const Move& m : moves) {
        const BoardState next = apply_unchecked(state, m);
        path.push_back(m);
        const Arrival next_arrival{&state, &index, m};
        const Outcome r = dfs(next, child_key(state, key, m), &next_arrival, shared, path);
        if (r == Outcome::Solved) return Outcome::Solved;
        path.pop_back();
        if (r == Outcome::Limit || r == Outcome::Aborted) return r;
    }
    if (shared.enable_memo) shared.memo.insert(memo_key);
    return Outcome::Refuted;
}

}  // namespace

Verdict solve(const BoardState& state, const SolverConfig& cfg) {
    if (state.empty()) throw std::invalid_argument("solve: empty board");

    const auto start = Clock::now();
    Verdict verdict;
    if (is_solved(state)) {
        verdict.kind = VerdictKind::Solvable;
        verdict.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return verdict;
    }

    SearchShared shared;
    shared.enable_memo = cfg.enable_memo;
    shared.enable_stuck_prune = cfg.enable_stuck_prune;
    shared.commutation_prune = cfg.commutation_prune;
    shared.unique_capture_first = cfg.unique_capture_first;
    shared.shuffle_seed = cfg.shuffle_seed;
    shared.max_states = cfg.max_states;
    if (cfg.time_limit_seconds)
        shared.deadline = start + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(*cfg.time_limit_seconds));

    const CanonicalKey root_key = canonical_key(state);
    const int workers = std::max(1, cfg.parallel_workers);

    if (workers == 1) {
        std::vector<Move> path;
        const Outcome r = dfs(state, root_key, nullptr, shared, path);
        verdict.states_explored = shared.states.load();
        verdict.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
        switch (r) {
            case Outcome::Solved:
                verdict.kind = VerdictKind::Solvable;
                verdict.witness.moves = path;
                break;
            case Outcome::Refuted: verdict.kind = VerdictKind::Unsolvable; break;
            default: verdict.kind = VerdictKind::ResourceExceeded; break;
        }
        return verdict;
    }

    // Parallel mode: workers claim root moves; the refutation memo is shared.
    const BoardIndex root_index(state);
    const std::vector<Move> root_moves = legal_moves(state, root_index);
    std::atomic<std::size_t> next_root{0};
    std::atomic<bool> any_limit{false};
    std::mutex result_mu;
    std::optional<Witness> found;

    auto work = [&]() {
        std::vector<Move> path;
        while (true) {
            const std::size_t idx = next_root.fetch_add(1);
            if (idx >= root_moves.size()) return;
            if (shared.stop.load(std::memory_order_relaxed)) return;
            const Move m = root_moves[idx];
            const BoardState next = apply_unchecked(state, m);
            path.clear();
            const Arrival arrival{&state, &root_index, m};
            const Outcome r = dfs(next, child_key(state, root_key, m), &arrival, shared, path);
            if (r == Outcome::Solved) {
                std::lock_guard<std::mutex> lock(result_mu);
                if (!found) {
                    Witness w;
                    w.moves.push_back(m);
                    w.moves.insert(w.moves.end(), path.begin(), path.end());
                    found = std::move(w);
                }
                shared.stop.store(true, std::memory_order_relaxed);
                return;
            }
            if (r == Outcome::Limit) {
                any_limit.store(true, std::memory_order_relaxed);
                return;
            }
            if (r == Outcome::Aborted) return;
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();

    verdict.states_explored = shared.states.load();
    verdict.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (found) {
        verdict.kind = VerdictKind::Solvable;
        verdict.witness = std::move(*found);
    } else if (any_limit.load() || shared.limit_hit.load()) {
        verdict.kind = VerdictKind::ResourceExceeded;
    } else {
        verdict.kind = VerdictKind::Unsolvable;
    }
    return verdict;
}

namespace {

std::uint64_t count_rec(const BoardState& state, std::uint64_t cap) {
    if (is_solved(state)) return 1;
    std::uint64_t total = 0;
    for (const Move& m : legal_moves(state)) {
        total += count_rec(apply_unchecked(state, m), cap - total);
        if (total >= cap) return cap;
    }
    return total;
}

}  // namespace

std::uint64_t count_solutions(const BoardState& state, std::uint64_t cap) {
    if (state.empty()) throw std::invalid_argument("count_solutions: empty board");
    if (cap == 0) return 0;
    return count_rec(state, cap);
}

}  // namespace solchess
