#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "septoku/census.hpp"
#include "septoku/errors.hpp"
#include "septoku/generator.hpp"
#include "septoku/modelexport.hpp"
#include "septoku/textio.hpp"

namespace fs = std::filesystem;
using namespace septoku;

namespace {

// Exit codes shared by every command.
constexpr int kFound = 0;
constexpr int kNone = 1;
constexpr int kMalformed = 2;
constexpr int kFailure = 3;

// Input file that failed to parse; keeps the path for the error message.
struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
  if (!out) throw Error("cannot write " + path);
}

template <typename F>
auto parse_file(const std::string& path, F parse) {
  try {
    return parse(read_input(path));
  } catch (const ParseError& e) {
    throw FileError(path + ": " + e.what());
  }
}

Puzzle load_puzzle(const std::string& path, const std::string& family) {
  Puzzle p = parse_file(path, [](const std::string& t) { return parse_puzzle(t); });
  if (!family.empty() && parse_family(family) != p.board->family())
    throw FileError(path + ": puzzle is for the " + std::string(family_name(p.board->family())) +
                    " board, not " + family);
  return p;
}

FilledBoard load_filled(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return parse_filled(t); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Septoku boards: solve, classify, generate and export puzzles"};
  app.require_subcommand(1);
  int exit_code = kFound;

  // solve
  std::string board_name, puzzle_path, format = "text";
  long long cap = 0;
  int threads = 1;
  auto* solve_cmd = app.add_subcommand("solve", "Print every solution of a puzzle");
  solve_cmd->add_option("--board", board_name, "Expected board family");
  solve_cmd->add_option("--puzzle", puzzle_path, "Puzzle file ('-' for stdin)")->required();
  solve_cmd->add_option("--cap", cap, "Stop after this many solutions (0 = all)")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--format", format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  solve_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  solve_cmd->callback([&] {
    Puzzle p = load_puzzle(puzzle_path, board_name);
    SolveOptions opts;
    opts.threads = threads;
    auto outcome = solve(p, cap > 0 ? std::optional<long long>(cap) : std::nullopt, opts);
    if (format == "structured") {
      nlohmann::json doc{{"family", family_name(p.board->family())},
                         {"status", solve_status_name(outcome.status)},
                         {"count", outcome.solutions.size()},
                         {"nodes", outcome.node_count},
                         {"solutions", nlohmann::json::array()}};
      for (const auto& s : outcome.solutions) doc["solutions"].push_back(s.values);
      std::cout << doc.dump(1) << "\n";
    } else {
      int k = 0;
      for (const auto& s : outcome.solutions) std::cout << "# solution " << ++k << "\n" << format_filled(s) << "\n";
      std::cout << outcome.solutions.size() << " solutions";
      if (outcome.status == SolveStatus::Capped) std::cout << " (capped)";
      std::cout << "\n";
    }
    exit_code = outcome.solutions.empty() ? kNone : kFound;
  });

  // census
  std::string census_out;
  bool with_t8 = false;
  auto* census_cmd = app.add_subcommand("census", "Enumerate and classify every valid board");
  census_cmd->add_option("--board", board_name, "Board family")->required();
  census_cmd->add_option("--out", census_out, "Write the full report here");
  census_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  census_cmd->add_flag("--t8", with_t8, "Also re-enumerate without the center circle (hexagon)");
  census_cmd->callback([&] {
    CensusOptions opts;
    opts.threads = threads;
    opts.check_t8 = with_t8;
    auto report = enumerate_classes(parse_family(board_name), opts);
    std::string text = format_census(report);
    if (census_out.empty()) {
      std::cout << text;
    } else {
      write_output(census_out, text);
      std::cout << "classes=" << report.classes.size() << " total=" << report.total_labeled_boards
                << "\n";
    }
    exit_code = report.all_checks_pass() ? kFound : kFailure;
  });

  // generate
  int seed_count = kMinimumUniqueSeeds, count = 1;
  std::uint64_t rng_seed = 1;
  long long attempts = kDefaultAttemptBudget;
  std::string out_dir;
  bool minimal = false;
  auto* gen_cmd = app.add_subcommand("generate", "Generate puzzles with a unique solution");
  gen_cmd->add_option("--board", board_name, "Board family")->required();
  gen_cmd->add_option("--seeds", seed_count, "Seeds per puzzle");
  gen_cmd->add_option("--rng-seed", rng_seed, "Random stream seed");
  gen_cmd->add_option("--count", count, "Number of puzzles")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--attempts", attempts, "Candidates tried per puzzle")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--out-dir", out_dir, "Write puzzle_<k>.puz files here");
  gen_cmd->add_flag("--minimal", minimal, "Only keep puzzles where every seed is needed");
  gen_cmd->callback([&] {
    Family family = parse_family(board_name);
    if (seed_count < kMinimumUniqueSeeds) {
      std::cerr << "refused: " << seed_count << " seeds cannot determine a unique solution; "
                << "with at most five seeds two symbols are absent and can be swapped, so at least "
                << kMinimumUniqueSeeds << " seeds are needed\n";
      exit_code = kMalformed;
      return;
    }
    PuzzleGenerator gen(family, rng_seed);
    GenerationOptions opts{seed_count, attempts, minimal};
    if (!out_dir.empty()) fs::create_directories(out_dir);
    for (int k = 1; k <= count; ++k) {
      auto outcome = gen.next(opts);
      if (!outcome.puzzle) {
        std::cerr << "no unique puzzle after " << attempts << " attempts\n";
        exit_code = kFailure;
        return;
      }
      auto check = solve(*outcome.puzzle, 2);
      if (check.solutions.size() != 1)
        throw Error("generated puzzle failed re-verification");
      std::ostringstream text;
      text << "# puzzle " << k << ": " << seed_count << " seeds, unique solution ("
           << outcome.stats.candidates << " candidates)\n"
           << format_puzzle(*outcome.puzzle);
      if (out_dir.empty()) {
        std::cout << text.str() << "\n";
      } else {
        auto path = fs::path(out_dir) / ("puzzle_" + std::to_string(k) + ".puz");
        write_output(path.string(), text.str());
        std::cout << path.string() << "\n";
      }
    }
  });

  // export-model
  std::vector<std::string> nogood_paths;
  std::string model_format = "lp", model_out;
  auto* export_cmd = app.add_subcommand("export-model", "Write the integer-programming model");
  export_cmd->add_option("--board", board_name, "Expected board family");
  export_cmd->add_option("--puzzle", puzzle_path, "Puzzle file")->required();
  export_cmd->add_option("--nogood", nogood_paths, "Board file to exclude (repeatable)");
  export_cmd->add_option("--format", model_format, "lp or gams")->check(CLI::IsMember({"lp", "gams"}));
  export_cmd->add_option("--out", model_out, "Output file");
  export_cmd->callback([&] {
    Puzzle p = load_puzzle(puzzle_path, board_name);
    std::vector<FilledBoard> nogoods;
    for (const auto& path : nogood_paths) nogoods.push_back(load_filled(path));
    write_output(model_out, export_model(p, nogoods, parse_model_format(model_format)));
  });

  // solve-model: a file-based oracle with the interface CommandOracle expects
  std::string model_path, solution_path;
  auto* solve_model_cmd =
      app.add_subcommand("solve-model", "Solve an LP model file; exit 0 feasible, 1 infeasible");
  solve_model_cmd->add_option("model", model_path, "LP model file")->required();
  solve_model_cmd->add_option("solution", solution_path, "Where to write 'cell symbol' lines")
      ->required();
  solve_model_cmd->callback([&] {
    IPModel model = parse_file(model_path, [](const std::string& t) { return parse_lp(t); });
    auto answer = solve_model(model);
    if (!answer.feasible) {
      exit_code = kNone;
      return;
    }
    write_output(solution_path, format_assignment(answer.assignment));
  });

  // exclude: enumerate solutions through repeated model solves
  std::string oracle_command, work_dir = "septoku-models";
  int max_iterations = 1000;
  auto* exclude_cmd =
      app.add_subcommand("exclude", "Enumerate solutions by re-solving the model with no-good cuts");
  exclude_cmd->add_option("--puzzle", puzzle_path, "Puzzle file")->required();
  exclude_cmd->add_option("--oracle", oracle_command, "External solver command (default: built in)");
  exclude_cmd->add_option("--work-dir", work_dir, "Directory for model and solution files");
  exclude_cmd->add_option("--max-iterations", max_iterations, "Oracle call limit")
      ->check(CLI::PositiveNumber);
  exclude_cmd->callback([&] {
    Puzzle p = load_puzzle(puzzle_path, "");
    std::unique_ptr<SolverOracle> oracle;
    if (oracle_command.empty()) oracle = std::make_unique<NativeOracle>();
    else oracle = std::make_unique<CommandOracle>(oracle_command, work_dir);
    auto outcome = enumerate_by_exclusion(p, *oracle, max_iterations);
    int k = 0;
    for (const auto& s : outcome.solutions) std::cout << "# solution " << ++k << "\n" << format_filled(s) << "\n";
    std::cout << outcome.solutions.size() << " solutions, " << outcome.oracle_calls << " oracle calls";
    if (outcome.status == SolveStatus::Capped) std::cout << " (capped)";
    std::cout << "\n";
    exit_code = outcome.solutions.empty() ? kNone : kFound;
  });

  // canonical
  std::string board_a, board_b;
  auto* canon_cmd = app.add_subcommand("canonical", "Print the canonical member of a board's class");
  canon_cmd->add_option("board", board_a, "Board file")->required();
  canon_cmd->callback([&] { std::cout << format_filled(canonical_form(load_filled(board_a))); });

  // equivalent
  auto* equiv_cmd = app.add_subcommand("equivalent", "Find a transform taking one board to another");
  equiv_cmd->add_option("from", board_a, "Board file")->required();
  equiv_cmd->add_option("to", board_b, "Board file")->required();
  equiv_cmd->callback([&] {
    auto witness = are_equivalent(load_filled(board_a), load_filled(board_b));
    if (witness) {
      std::cout << format_transform(*witness) << "\n";
    } else {
      std::cout << "not equivalent\n";
      exit_code = kNone;
    }
  });

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Name the census class of a board");
  classify_cmd->add_option("board", board_a, "Board file")->required();
  classify_cmd->callback([&] {
    FilledBoard b = load_filled(board_a);
    std::cout << classify(b, cached_census(b.family())) << "\n";
  });

  // board
  bool layout_only = false;
  auto* board_cmd = app.add_subcommand("board", "Describe a board family's cells and regions");
  board_cmd->add_option("--board", board_name, "Board family")->required();
  board_cmd->add_flag("--layout", layout_only, "Print the numbered cell layout instead");
  board_cmd->callback([&] {
    auto b = build_board(parse_family(board_name));
    if (layout_only) std::cout << render_layout(*b, [](CellId c) { return std::to_string(c); });
    else std::cout << describe_board(*b);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kMalformed;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const MalformedPuzzle& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return exit_code;
}
