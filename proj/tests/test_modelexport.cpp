#include <doctest.h>

#include <filesystem>
#include <set>

#include "fixtures.hpp"
#include "septoku/census.hpp"
#include "septoku/errors.hpp"
#include "septoku/generator.hpp"
#include "septoku/modelexport.hpp"

using namespace septoku;

namespace {

Puzzle reference_puzzle() {
  return Puzzle{build_board(Family::Hexagon),
                {fixtures::kPuzzleOneSeeds.begin(), fixtures::kPuzzleOneSeeds.end()}};
}

FilledBoard sol(int i) {
  return make_filled(build_board(Family::Hexagon),
                     fixtures::kPuzzleOneSolutions[static_cast<std::size_t>(i)]);
}

std::set<std::vector<Symbol>> value_set(const std::vector<FilledBoard>& boards) {
  std::set<std::vector<Symbol>> out;
  for (const auto& b : boards) out.insert(b.values);
  return out;
}

// Counts "name:" lines in the constraint section.
int count_prefix(const std::string& lp, const std::string& prefix) {
  int n = 0;
  for (std::size_t pos = lp.find("\n " + prefix); pos != std::string::npos;
       pos = lp.find("\n " + prefix, pos + 1))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("empty hexagon model sizes") {
  auto m = build_model(Puzzle{build_board(Family::Hexagon), {}}, {});
  CHECK(m.variable_count() == 259);
  CHECK(m.cell_constraints.size() == 37);
  CHECK(m.region_constraints.size() == 196);
  CHECK(m.seed_constraints.empty());
  CHECK(m.constraint_count() == 233);
  auto lp = write_lp(m);
  CHECK(count_prefix(lp, "fill_") == 37);
  CHECK(count_prefix(lp, "region_") == 196);
  CHECK(lp.find("x_37_7") != std::string::npos);
  CHECK(lp.find("x_38_1") == std::string::npos);
}

TEST_CASE("no-good cut shape") {
  auto m = build_model(reference_puzzle(), {sol(0)});
  REQUIRE(m.nogood_constraints.size() == 1);
  const auto& cut = m.nogood_constraints[0];
  CHECK(cut.terms.size() == 37);
  CHECK(cut.rhs == 36);
  CHECK(cut.sense == Sense::LessEqual);
  CHECK(m.seed_constraints.size() == 9);
  auto lp = write_lp(m);
  CHECK(lp.find("nogood_1:") != std::string::npos);
  CHECK(lp.find("<= 36") != std::string::npos);
}

TEST_CASE("mismatched no-good is rejected") {
  auto rh = cached_census(Family::Rhombus).classes[0].canonical;
  CHECK_THROWS_AS(build_model(reference_puzzle(), {rh}), FamilyMismatch);
  CHECK_THROWS_AS(export_model(reference_puzzle(), {rh}, ModelFormat::Gams), FamilyMismatch);
}

TEST_CASE("exports are byte-stable and round-trip") {
  auto p = reference_puzzle();
  std::vector<FilledBoard> cuts{sol(0), sol(2)};
  CHECK(export_model(p, cuts) == export_model(p, cuts));
  CHECK(export_model(p, cuts, ModelFormat::Gams) == export_model(p, cuts, ModelFormat::Gams));
  auto lp = export_model(p, cuts);
  auto parsed = parse_lp(lp);
  CHECK(parsed.cell_count == 37);
  CHECK(parsed.family == Family::Hexagon);
  CHECK(write_lp(parsed) == lp);
}

TEST_CASE("gams listing") {
  auto text = export_model(reference_puzzle(), {sol(0), sol(1)}, ModelFormat::Gams);
  CHECK(text.find("SET REGIONS (R,M)") != std::string::npos);
  CHECK(text.find("SET SEEDS (M,N)") != std::string::npos);
  CHECK(text.find("SET SOL2 (M,N)") != std::string::npos);
  CHECK(text.find("SUM(M$REGIONS(R,M),X(M,N)) =L= 1;") != std::string::npos);
  CHECK(text.find("/36/") != std::string::npos);
  CHECK(text.find("11.4, 11.8, 11.13, 11.19") != std::string::npos);
  CHECK(parse_model_format("gams") == ModelFormat::Gams);
  CHECK_THROWS_AS(parse_model_format("mps"), InvalidArgument);
}

TEST_CASE("lp parser errors carry positions") {
  CHECK_THROWS_AS(parse_lp("Subject To\n c: x_1_1 = 1\nEnd\n"), ParseError);
  try {
    parse_lp("Minimize\n obj: x_1_1\nSubject To\n c1: x_1_1 + y = 1\nEnd\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 14);
  }
  CHECK_THROWS_AS(parse_lp("Minimize\n obj: x_1_1\nSubject To\n c1: x_1_1 + x_1_2 = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_lp("Minimize\n obj: x_1_1\nSubject To\n c1: x_1_1 - x_1_2 = 1\nEnd\n"),
                  ParseError);
}

TEST_CASE("exclusion loop on the reference puzzle") {
  NativeOracle oracle;
  auto out = enumerate_by_exclusion(reference_puzzle(), oracle, 100);
  CHECK(out.oracle_calls == 5);
  CHECK(out.status == SolveStatus::Complete);
  std::set<std::vector<Symbol>> want(fixtures::kPuzzleOneSolutions.begin(),
                                     fixtures::kPuzzleOneSolutions.end());
  CHECK(value_set(out.solutions) == want);

  auto capped = enumerate_by_exclusion(reference_puzzle(), oracle, 3);
  CHECK(capped.status == SolveStatus::Capped);
  CHECK(capped.solutions.size() == 3);
  CHECK_THROWS_AS(enumerate_by_exclusion(reference_puzzle(), oracle, 0), InvalidArgument);
}

TEST_CASE("exclusion loop on the unsolvable and the full puzzle") {
  NativeOracle oracle;
  auto four = enumerate_by_exclusion(derive_standard_puzzles()[3], oracle, 10);
  CHECK(four.solutions.empty());
  CHECK(four.oracle_calls == 1);
  Puzzle full{build_board(Family::Hexagon), {}};
  for (CellId c = 1; c <= 37; ++c) full.seeds[c] = sol(3).at(c);
  auto one = enumerate_by_exclusion(full, oracle, 10);
  CHECK(one.solutions.size() == 1);
  CHECK(one.oracle_calls == 2);
}

TEST_CASE("a cut on a non-solution changes nothing") {
  auto p = reference_puzzle();
  auto other = solve(Puzzle{build_board(Family::Hexagon), {{1, 7}}}, 1).solutions.at(0);
  auto m = build_model(p, {other});
  auto answer = solve_model(m);
  REQUIRE(answer.feasible);
  CHECK(value_set(solve(p).solutions).count(answer.assignment) == 1);
  CHECK(solve_model(build_model(p, {})).assignment == answer.assignment);
}

TEST_CASE("exclusion matches direct solving on random puzzles") {
  NativeOracle oracle;
  for (Family f : kAllFamilies) {
    PuzzleGenerator gen(f, 77);
    for (int i = 0; i < 5; ++i) {
      auto p = gen.random_seeds(gen.random_board(), 5);
      auto direct = solve(p);
      auto looped = enumerate_by_exclusion(p, oracle, 1000);
      CHECK(looped.status == SolveStatus::Complete);
      CHECK(value_set(looped.solutions) == value_set(direct.solutions));
      CHECK(looped.oracle_calls == static_cast<int>(direct.solutions.size()) + 1);
    }
  }
}

TEST_CASE("assignment files") {
  std::vector<Symbol> a{3, 1, 2};
  CHECK(format_assignment(a) == "1 3\n2 1\n3 2\n");
  CHECK(parse_assignment("3 2\n1 3\n\n2 1\n", 3) == a);
  CHECK_THROWS_AS(parse_assignment("1 3\n2 1\n", 3), ParseError);
  CHECK_THROWS_AS(parse_assignment("1 3\n1 1\n3 2\n", 3), ParseError);
  CHECK_THROWS_AS(parse_assignment("1 9\n2 1\n3 2\n", 3), ParseError);
}

TEST_CASE("command oracle with a shell script") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "septoku_oracle_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  CommandOracle infeasible("false", dir);
  CHECK_FALSE(infeasible.solve(export_model(reference_puzzle(), {})).feasible);
  CommandOracle broken("sh -c 'exit 4' --", dir);
  CHECK_THROWS_AS(broken.solve(export_model(reference_puzzle(), {})), Error);
  fs::remove_all(dir);
}
