#include <cstdint>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "solchess/formats.hpp"
#include "solchess/reduction.hpp"
#include "solchess/solver.hpp"
#include "solchess/verifier.hpp"

namespace {

using namespace solchess;

constexpr int kExitSolvable = 0;   // also: pass / sat
constexpr int kExitUnsolvable = 1; // also: fail / unsat
constexpr int kExitUsage = 2;      // usage or input error
constexpr int kExitResource = 3;   // resource limit hit

SolverConfig solver_config(std::uint64_t max_states, double time_limit, int workers) {
    SolverConfig cfg;
    if (max_states > 0) cfg.max_states = max_states;
    if (time_limit > 0) cfg.time_limit_seconds = time_limit;
    cfg.parallel_workers = workers;
    return cfg;
}

int cmd_solve(const std::string& puzzle_path, const std::string& witness_out,
              std::uint64_t max_states, double time_limit, int workers) {
    const BoardState board = parse_puzzle_auto(read_file(puzzle_path));
    const Verdict verdict = solve(board, solver_config(max_states, time_limit, workers));
    switch (verdict.kind) {
        case VerdictKind::Solvable:
            std::cout << "solvable: " << verdict.witness.moves.size() << " moves ("
                      << verdict.states_explored << " states, " << verdict.elapsed_seconds
                      << "s)\n";
            if (!witness_out.empty()) write_file(witness_out, emit_witness_json(verdict.witness));
            return kExitSolvable;
        case VerdictKind::Unsolvable:
            std::cout << "unsolvable (" << verdict.states_explored << " states, "
                      << verdict.elapsed_seconds << "s)\n";
            return kExitUnsolvable;
        case VerdictKind::ResourceExceeded:
            std::cout << "resource limit exceeded (" << verdict.states_explored << " states, "
                      << verdict.elapsed_seconds << "s)\n";
            return kExitResource;
    }
    return kExitUsage;
}

int cmd_reduce(const std::string& cnf_path, const std::string& mode_name,
               const std::string& puzzle_out, const std::string& layout_out) {
    const CnfInstance cnf = parse_dimacs(read_file(cnf_path));
    const auto mode = reduction_mode_from_string(mode_name);
    if (!mode) {
        std::cerr << "unknown mode '" << mode_name << "' (expected paper or amended)\n";
        return kExitUsage;
    }
    auto [board, layout] = reduce(cnf, *mode);
    const Bounds h = board.hull();
    std::cout << "pieces: " << board.size() << "\n"
              << "bounding box: x " << h.min_x << ".." << h.max_x << ", y " << h.min_y << ".."
              << h.max_y << "\n";
    const CheckReport colors = check_color_separation(board, layout);
    if (!colors.passed())
        std::cout << "warning: color separation fails for this mode/instance ("
                  << colors.details["violations"].size() << " pieces on the wrong color)\n";
    if (!puzzle_out.empty()) write_file(puzzle_out, emit_puzzle(board, PuzzleFormat::Compact));
    if (!layout_out.empty()) write_file(layout_out, emit_layout_json(layout));
    return kExitSolvable;
}

int report_exit(const CheckReport& report, const std::string& out_path) {
    const std::string text = report.to_json().dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    if (report.status == CheckStatus::Inconclusive) return kExitResource;
    return report.passed() ? kExitSolvable : kExitUnsolvable;
}

int cmd_verify_layout(const std::string& puzzle_path, const std::string& layout_path,
                      const std::string& out_path) {
    const BoardState board = parse_puzzle_auto(read_file(puzzle_path));
    const ReductionLayout layout = parse_layout_json(read_file(layout_path));
    const CheckReport isolation = check_bishop_isolation(board, layout);
    const CheckReport colors = check_color_separation(board, layout);
    const CheckReport confinement = check_rook_confinement(board, layout);
    CheckReport combined;
    combined.name = "layout";
    combined.details = {{"reports", nlohmann::json::array({isolation.to_json(), colors.to_json(),
                                                           confinement.to_json()})}};
    combined.stats = nlohmann::json::object();
    combined.status = isolation.passed() && colors.passed() && confinement.passed()
                          ? CheckStatus::Pass
                          : CheckStatus::Fail;
    return report_exit(combined, out_path);
}

int cmd_verify_witness(const std::string& puzzle_path, const std::string& witness_path,
                       const std::string& layout_path, const std::string& out_path) {
    const BoardState board = parse_puzzle_auto(read_file(puzzle_path));
    const Witness w = parse_witness_json(read_file(witness_path));
    const WitnessReport playback = validate_witness(board, w);
    CheckReport report;
    report.name = "witness";
    report.details = {{"ok", playback.ok}};
    if (!playback.ok) {
        report.details["failed_index"] = playback.failed_index;
        report.details["reason"] = playback.reason;
    }
    report.status = playback.ok ? CheckStatus::Pass : CheckStatus::Fail;
    report.stats = {{"moves", w.moves.size()}};
    if (playback.ok && !layout_path.empty()) {
        const ReductionLayout layout = parse_layout_json(read_file(layout_path));
        const CheckReport rooks = check_rook_capture_requirement(board, layout, w);
        report.details["rook_capture_requirement"] = rooks.to_json();
        if (!rooks.passed()) report.status = CheckStatus::Fail;
    }
    return report_exit(report, out_path);
}

int cmd_verify_roundtrip(const std::string& cnf_path, const std::string& mode_name,
                         std::uint64_t max_states, double time_limit, int workers,
                         const std::string& out_path) {
    const CnfInstance cnf = parse_dimacs(read_file(cnf_path));
    const auto mode = reduction_mode_from_string(mode_name);
    if (!mode) {
        std::cerr << "unknown mode '" << mode_name << "'\n";
        return kExitUsage;
    }
    const CheckReport report =
        round_trip(cnf, *mode, solver_config(max_states, time_limit, workers));
    return report_exit(report, out_path);
}

int cmd_synth(const std::string& cnf_path, const std::string& assignment_spec, bool auto_assign,
              const std::string& mode_name, const std::string& witness_out,
              const std::string& layout_out, const std::string& puzzle_out) {
    const CnfInstance cnf = parse_dimacs(read_file(cnf_path));
    const auto mode = reduction_mode_from_string(mode_name);
    if (!mode) {
        std::cerr << "unknown mode '" << mode_name << "'\n";
        return kExitUsage;
    }

    Assignment assignment(cnf.num_vars);
    if (auto_assign) {
        const auto found = brute_force_sat(cnf);
        if (!found) {
            std::cout << "unsatisfiable\n";
            return kExitUnsolvable;
        }
        assignment = *found;
    } else {
        // Assignment spec: whitespace/comma-separated signed variable indexes,
        // e.g. "1 -2 3" sets x1=true, x2=false, x3=true. Unlisted variables
        // default to false.
        std::string token;
        std::istringstream in(assignment_spec);
        while (std::getline(in, token, ' ')) {
            for (char& c : token)
                if (c == ',') c = ' ';
            std::istringstream ts(token);
            long long v;
            while (ts >> v) {
                const long long var = v < 0 ? -v : v;
                if (v == 0 || var > cnf.num_vars) {
                    std::cerr << "assignment literal " << v << " out of range\n";
                    return kExitUsage;
                }
                assignment.set(static_cast<int>(var), v > 0);
            }
            if (ts.fail() && !ts.eof()) {
                std::cerr << "malformed assignment spec near '" << token << "'\n";
                return kExitUsage;
            }
        }
    }

    auto [board, layout] = reduce(cnf, *mode);
    Witness w;
    try {
        w = synthesize_witness(cnf, assignment, layout);
    } catch (const SynthesisError& e) {
        std::cerr << e.what() << "\n";
        return kExitUnsolvable;
    }
    const WitnessReport playback = validate_witness(board, w);
    if (!playback.ok) {
        std::cerr << "internal error: synthesized witness failed playback at move "
                  << playback.failed_index << ": " << playback.reason << "\n";
        return kExitUnsolvable;
    }
    std::cout << "witness: " << w.moves.size() << " moves\n";
    if (!witness_out.empty()) write_file(witness_out, emit_witness_json(w));
    if (!layout_out.empty()) write_file(layout_out, emit_layout_json(layout));
    if (!puzzle_out.empty()) write_file(puzzle_out, emit_puzzle(board, PuzzleFormat::Compact));
    return kExitSolvable;
}

int cmd_gen(int pieces, std::int64_t size, std::uint64_t seed, bool solvable,
            const std::string& out_path) {
    if (pieces < 1 || size < 1 || pieces > size * size) {
        std::cerr << "need 1 <= pieces <= size*size\n";
        return kExitUsage;
    }
    constexpr int kMaxAttempts = 2000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(attempt));
        std::uniform_int_distribution<std::int64_t> coord(0, size - 1);
        std::uniform_int_distribution<int> kind_dist(0, 5);
        BoardState board;
        board.set_bounds(Bounds{0, 0, size - 1, size - 1});
        while (board.size() < static_cast<std::size_t>(pieces)) {
            const Position p{coord(rng), coord(rng)};
            if (!board.occupied(p)) board.add(p, all_piece_kinds[static_cast<std::size_t>(kind_dist(rng))]);
        }
        if (solvable) {
            SolverConfig cfg;
            cfg.max_states = 5'000'000;
            const Verdict verdict = solve(board, cfg);
            if (verdict.kind != VerdictKind::Solvable) continue;
        }
        const std::string text = emit_puzzle(board, PuzzleFormat::Compact);
        if (out_path.empty())
            std::cout << text;
        else
            write_file(out_path, text);
        return kExitSolvable;
    }
    std::cerr << "no solvable placement found in " << kMaxAttempts << " attempts\n";
    return kExitResource;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capture-only chess toolkit: exact solver, 3-SAT reduction, verifier"};
    app.require_subcommand(1);

    std::string puzzle_path, cnf_path, witness_path, layout_path, out_path;
    std::string witness_out, layout_out, puzzle_out, report_out;
    std::string mode_name = "amended";
    std::string assignment_spec;
    bool auto_assign = false;
    std::uint64_t max_states = 0;
    double time_limit = 0.0;
    int workers = 1;
    int pieces = 4;
    std::int64_t size = 8;
    std::uint64_t seed = 1;
    bool solvable_only = false;

    auto* solve_cmd = app.add_subcommand("solve", "decide a puzzle and optionally write a witness");
    solve_cmd->add_option("puzzle", puzzle_path, "puzzle file (compact or JSON)")->required();
    solve_cmd->add_option("--witness", witness_out, "write witness JSON here when solvable");
    solve_cmd->add_option("--max-states", max_states, "abort after this many states");
    solve_cmd->add_option("--time-limit", time_limit, "abort after this many seconds");
    solve_cmd->add_option("--workers", workers, "parallel workers (default 1)");

    auto* reduce_cmd = app.add_subcommand("reduce", "compile DIMACS 3-CNF into a puzzle");
    reduce_cmd->add_option("cnf", cnf_path, "DIMACS file")->required();
    reduce_cmd->add_option("--mode", mode_name, "paper | amended (default amended)");
    reduce_cmd->add_option("-o,--output", puzzle_out, "puzzle file to write");
    reduce_cmd->add_option("--layout", layout_out, "layout JSON to write");

    auto* verify_cmd = app.add_subcommand("verify", "mechanical checks");
    auto* verify_layout = verify_cmd->add_subcommand("layout", "bishop isolation, colors, confinement");
    verify_layout->add_option("--puzzle", puzzle_path)->required();
    verify_layout->add_option("--layout", layout_path)->required();
    verify_layout->add_option("-o,--output", report_out, "report JSON file (default stdout)");
    auto* verify_witness = verify_cmd->add_subcommand("witness", "playback plus rook-capture check");
    verify_witness->add_option("--puzzle", puzzle_path)->required();
    verify_witness->add_option("--witness", witness_path)->required();
    verify_witness->add_option("--layout", layout_path, "enables the rook-capture check");
    verify_witness->add_option("-o,--output", report_out);
    auto* verify_roundtrip = verify_cmd->add_subcommand("roundtrip", "sat oracle vs solver");
    verify_roundtrip->add_option("--cnf", cnf_path)->required();
    verify_roundtrip->add_option("--mode", mode_name);
    verify_roundtrip->add_option("--max-states", max_states);
    verify_roundtrip->add_option("--time-limit", time_limit);
    verify_roundtrip->add_option("--workers", workers);
    verify_roundtrip->add_option("-o,--output", report_out);
    verify_cmd->require_subcommand(1);

    auto* synth_cmd = app.add_subcommand("synth", "witness from a satisfying assignment");
    synth_cmd->add_option("cnf", cnf_path, "DIMACS file")->required();
    synth_cmd->add_option("--assignment", assignment_spec, "signed indexes, e.g. '1 -2 3'");
    synth_cmd->add_flag("--auto", auto_assign, "find an assignment with the SAT oracle");
    synth_cmd->add_option("--mode", mode_name);
    synth_cmd->add_option("-o,--output", witness_out, "witness JSON to write");
    synth_cmd->add_option("--layout", layout_out, "layout JSON to write");
    synth_cmd->add_option("--puzzle", puzzle_out, "puzzle file to write");

    auto* gen_cmd = app.add_subcommand("gen", "random puzzle generator");
    gen_cmd->add_option("--pieces", pieces, "piece count (default 4)");
    gen_cmd->add_option("--size", size, "board size N (default 8)");
    gen_cmd->add_option("--seed", seed, "RNG seed (default 1)");
    gen_cmd->add_flag("--solvable", solvable_only, "rejection-sample until solvable");
    gen_cmd->add_option("-o,--output", out_path, "puzzle file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (solve_cmd->parsed())
            return cmd_solve(puzzle_path, witness_out, max_states, time_limit, workers);
        if (reduce_cmd->parsed()) return cmd_reduce(cnf_path, mode_name, puzzle_out, layout_out);
        if (verify_layout->parsed()) return cmd_verify_layout(puzzle_path, layout_path, report_out);
        if (verify_witness->parsed())
            return cmd_verify_witness(puzzle_path, witness_path, layout_path, report_out);
        if (verify_roundtrip->parsed())
            return cmd_verify_roundtrip(cnf_path, mode_name, max_states, time_limit, workers,
                                        report_out);
        if (synth_cmd->parsed())
            return cmd_synth(cnf_path, assignment_spec, auto_assign, mode_name, witness_out,
                             layout_out, puzzle_out);
        if (gen_cmd->parsed()) return cmd_gen(pieces, size, seed, solvable_only, out_path);
    } catch (const SynthesisError& e) {
        std::cerr << e.what() << "\n";
        return kExitUnsolvable;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
