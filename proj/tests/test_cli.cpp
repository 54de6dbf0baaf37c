#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "solchess/formats.hpp"

namespace fs = std::filesystem;
using namespace solchess;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SOLCHESS_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "solchess_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string write_scratch(const std::string& name, const std::string& contents) {
    const fs::path p = scratch_dir() / name;
    std::ofstream(p) << contents;
    return p.string();
}

const char* kFigureOne = "bounds 0 0 3 3\nR 0 1\nP 1 1\nB 1 2\nN 3 0\n";

}  // namespace

TEST_CASE("solve: exit codes and witness file") {
    const std::string puzzle = write_scratch("figure1.txt", kFigureOne);
    const std::string wpath = (scratch_dir() / "figure1.witness.json").string();

    const RunResult solved = run_cli("solve " + puzzle + " --witness " + wpath);
    CHECK(solved.exit_code == 0);
    CHECK(solved.output.find("solvable: 3 moves") != std::string::npos);
    const Witness w = parse_witness_json(read_file(wpath));
    CHECK(w.moves.size() == 3);

    const std::string stuck = write_scratch("stuck.txt", "R 0 0\nR 5 5\n");
    CHECK(run_cli("solve " + stuck).exit_code == 1);

    const std::string six = write_scratch("six.txt", "R 0 0\nR 0 1\nR 0 2\nR 1 0\nR 1 1\nR 1 2\n");
    CHECK(run_cli("solve " + six + " --max-states 2").exit_code == 3);

    CHECK(run_cli("solve /nonexistent/path").exit_code == 2);
    const std::string bad = write_scratch("bad.txt", "Z 0 0\n");
    CHECK(run_cli("solve " + bad).exit_code == 2);
}

TEST_CASE("reduce: writes puzzle and layout, reports size") {
    const std::string cnf = write_scratch("sat.cnf", "p cnf 1 2\n1 1 1 0\n1 1 -1 0\n");
    const std::string puzzle = (scratch_dir() / "reduced.txt").string();
    const std::string layout = (scratch_dir() / "reduced.layout.json").string();

    const RunResult r = run_cli("reduce " + cnf + " -o " + puzzle + " --layout " + layout);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("pieces: 41") != std::string::npos);

    const BoardState board = parse_puzzle_auto(read_file(puzzle));
    CHECK(board.size() == 41);
    const ReductionLayout parsed = parse_layout_json(read_file(layout));
    CHECK(parsed.board() == board);

    const std::string bad = write_scratch("two.cnf", "p cnf 2 1\n1 -2 0\n");
    CHECK(run_cli("reduce " + bad).exit_code == 2);

    // Odd m in paper mode breaks color separation; the command still succeeds
    // but says so.
    const std::string odd = write_scratch("odd.cnf", "p cnf 1 3\n1 1 1 0\n1 1 1 0\n1 1 1 0\n");
    const RunResult warn = run_cli("reduce " + odd + " --mode paper");
    CHECK(warn.exit_code == 0);
    CHECK(warn.output.find("color separation") != std::string::npos);
}

TEST_CASE("synth: auto assignment and self-validation") {
    const std::string sat = write_scratch("sat2.cnf", "p cnf 1 2\n1 1 1 0\n1 1 -1 0\n");
    const std::string wpath = (scratch_dir() / "synth.witness.json").string();
    const std::string puzzle = (scratch_dir() / "synth.puzzle.txt").string();

    const RunResult ok = run_cli("synth " + sat + " --auto -o " + wpath + " --puzzle " + puzzle);
    CHECK(ok.exit_code == 0);
    const Witness w = parse_witness_json(read_file(wpath));
    const BoardState board = parse_puzzle_auto(read_file(puzzle));
    CHECK(validate_witness(board, w).ok);

    const std::string unsat = write_scratch("unsat.cnf", "p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n");
    CHECK(run_cli("synth " + unsat + " --auto").exit_code == 1);

    CHECK(run_cli("synth " + sat + " --assignment bogus").exit_code == 2);
    CHECK(run_cli("synth " + sat + " --assignment '1 5'").exit_code == 2);
    CHECK(run_cli("synth " + sat + " --assignment 1").exit_code == 0);
}

TEST_CASE("verify: witness and roundtrip subcommands") {
    const std::string cnf = write_scratch("rt.cnf", "p cnf 1 1\n1 1 1 0\n");
    CHECK(run_cli("verify roundtrip --cnf " + cnf + " --max-states 2000000").exit_code == 0);

    const std::string puzzle = write_scratch("vfig.txt", kFigureOne);
    const std::string good = write_scratch(
        "good.witness.json",
        R"({"moves":[{"from":[3,0],"to":[1,1]},{"from":[0,1],"to":[1,1]},{"from":[1,1],"to":[1,2]}]})");
    CHECK(run_cli("verify witness --puzzle " + puzzle + " --witness " + good).exit_code == 0);

    const std::string bad = write_scratch(
        "bad.witness.json", R"({"moves":[{"from":[0,1],"to":[3,0]}]})");
    const RunResult r = run_cli("verify witness --puzzle " + puzzle + " --witness " + bad);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("failed_index") != std::string::npos);
}

TEST_CASE("verify layout runs the mechanical checks") {
    const std::string cnf = write_scratch("lay.cnf", "p cnf 2 2\n1 1 -2 0\n2 2 1 0\n");
    const std::string puzzle = (scratch_dir() / "lay.puzzle.txt").string();
    const std::string layout = (scratch_dir() / "lay.layout.json").string();
    REQUIRE(run_cli("reduce " + cnf + " -o " + puzzle + " --layout " + layout).exit_code == 0);
    const RunResult r = run_cli("verify layout --puzzle " + puzzle + " --layout " + layout);
    CHECK(r.output.find("rook_confinement") != std::string::npos);
}

TEST_CASE("gen: deterministic per seed, solvable on request") {
    const std::string a = (scratch_dir() / "gen_a.txt").string();
    const std::string b = (scratch_dir() / "gen_b.txt").string();
    CHECK(run_cli("gen --pieces 5 --size 6 --seed 12 -o " + a).exit_code == 0);
    CHECK(run_cli("gen --pieces 5 --size 6 --seed 12 -o " + b).exit_code == 0);
    CHECK(read_file(a) == read_file(b));

    const std::string s = (scratch_dir() / "gen_s.txt").string();
    CHECK(run_cli("gen --pieces 6 --size 4 --seed 3 --solvable -o " + s).exit_code == 0);
    const BoardState board = parse_puzzle_auto(read_file(s));
    CHECK(board.size() == 6);

    CHECK(run_cli("gen --pieces 1 --size 3 --seed 9 --solvable -o " + a).exit_code == 0);
    CHECK(run_cli("gen --pieces 0").exit_code == 2);
}
