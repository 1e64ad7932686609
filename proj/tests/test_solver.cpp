#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "septoku/census.hpp"
#include "septoku/errors.hpp"
#include "septoku/generator.hpp"
#include "septoku/solver.hpp"

using namespace septoku;

namespace {

BoardRef hex() { return build_board(Family::Hexagon); }

std::set<std::vector<Symbol>> value_set(const std::vector<FilledBoard>& boards) {
  std::set<std::vector<Symbol>> out;
  for (const auto& b : boards) out.insert(b.values);
  return out;
}

std::vector<std::vector<int>> region_lists(const BoardSpec& b) {
  std::vector<std::vector<int>> out;
  for (const auto& r : b.regions()) out.push_back(r.cells);
  return out;
}

std::set<std::vector<Symbol>> brute_set(const Puzzle& p) {
  std::set<std::vector<Symbol>> out;
  fixtures::brute_solve(p.board->cell_count(), region_lists(*p.board),
                        {p.seeds.begin(), p.seeds.end()},
                        [&](const std::vector<int>& v) { out.insert(v); });
  return out;
}

}  // namespace

TEST_CASE("check_filled") {
  auto sol1 = make_filled(hex(), fixtures::kPuzzleOneSolutions[0]);
  CHECK(check_filled(sol1));
  auto swapped = sol1;
  std::swap(swapped.values[0], swapped.values[1]);
  CHECK_FALSE(check_filled(swapped));
  CHECK_FALSE(check_filled(make_filled(hex(), std::vector<Symbol>(37, 1))));
  for (const auto& s : fixtures::kPuzzleOneSolutions) CHECK(check_filled(make_filled(hex(), s)));
  CHECK_THROWS_AS(make_filled(hex(), std::vector<Symbol>(36, 1)), InvalidArgument);
  CHECK_THROWS_AS(make_filled(hex(), std::vector<Symbol>(37, 8)), InvalidArgument);
}

TEST_CASE("reference puzzle has the four listed solutions") {
  Puzzle p{hex(), {fixtures::kPuzzleOneSeeds.begin(), fixtures::kPuzzleOneSeeds.end()}};
  auto out = solve(p);
  CHECK(out.status == SolveStatus::Complete);
  std::set<std::vector<Symbol>> want(fixtures::kPuzzleOneSolutions.begin(),
                                     fixtures::kPuzzleOneSolutions.end());
  CHECK(value_set(out.solutions) == want);
  CHECK(brute_set(p) == want);
  CHECK(classify_uniqueness(p) == Uniqueness::Multiple);
}

TEST_CASE("standard puzzle four has no solution") {
  auto puzzles = derive_standard_puzzles();
  REQUIRE(puzzles.size() == 4);
  CHECK(solve(puzzles[3]).solutions.empty());
  CHECK(brute_set(puzzles[3]).empty());
  CHECK(classify_uniqueness(puzzles[3]) == Uniqueness::Unsolvable);
}

TEST_CASE("fully seeded board is unique") {
  auto sol1 = make_filled(hex(), fixtures::kPuzzleOneSolutions[1]);
  Puzzle p{hex(), {}};
  for (CellId c = 1; c <= 37; ++c) p.seeds[c] = sol1.at(c);
  CHECK(classify_uniqueness(p) == Uniqueness::Unique);
}

TEST_CASE("empty hexagon: all valid boards, matched by plain backtracking") {
  auto out = solve(Puzzle{hex(), {}});
  CHECK(out.solutions.size() == 120960);
  long long brute = 0;
  fixtures::brute_solve(37, fixtures::kHexRegions, {}, [&](const std::vector<int>&) { ++brute; });
  CHECK(brute == 120960);
}

TEST_CASE("cap and status") {
  Puzzle p{hex(), {fixtures::kPuzzleOneSeeds.begin(), fixtures::kPuzzleOneSeeds.end()}};
  auto two = solve(p, 2);
  CHECK(two.solutions.size() == 2);
  CHECK(two.status == SolveStatus::Capped);
  auto four = solve(p, 4);
  CHECK(four.solutions.size() == 4);
  CHECK(four.status == SolveStatus::Complete);
  auto all = solve(p);
  CHECK(std::equal(two.solutions.begin(), two.solutions.end(), all.solutions.begin()));
}

TEST_CASE("malformed puzzles") {
  CHECK_THROWS_AS(solve(Puzzle{hex(), {{38, 1}}}), MalformedPuzzle);
  CHECK_THROWS_AS(solve(Puzzle{hex(), {{1, 0}}}), MalformedPuzzle);
  CHECK_THROWS_AS(solve(Puzzle{hex(), {{1, 8}}}), MalformedPuzzle);
}

TEST_CASE("solution sets do not depend on cell order or thread count") {
  std::mt19937 rng(17);
  for (Family f : kAllFamilies) {
    PuzzleGenerator gen(f, 100 + static_cast<int>(f));
    for (int i = 0; i < 10; ++i) {
      auto board = gen.random_board();
      auto p = gen.random_seeds(board, 3 + static_cast<int>(rng() % 4));
      auto mrv = solve(p);
      SolveOptions seq{CellOrder::Sequential, 1};
      auto sequential = solve(p, std::nullopt, seq);
      CHECK(value_set(mrv.solutions) == value_set(sequential.solutions));
      CHECK(mrv.solutions.size() == value_set(mrv.solutions).size());
      SolveOptions par{CellOrder::MinRemaining, 4};
      auto parallel = solve(p, std::nullopt, par);
      CHECK(parallel.solutions == mrv.solutions);
      for (const auto& s : mrv.solutions) {
        CHECK(check_filled(s));
        for (auto [c, v] : p.seeds) CHECK(s.at(c) == v);
      }
    }
  }
}

TEST_CASE("parallel full enumeration is identical to serial") {
  auto serial = solve(Puzzle{build_board(Family::Flower), {}});
  auto parallel = solve(Puzzle{build_board(Family::Flower), {}}, std::nullopt, {CellOrder::MinRemaining, 8});
  CHECK(serial.solutions.size() == 15120);
  CHECK(serial.solutions == parallel.solutions);
}

TEST_CASE("solutions transform with the puzzle") {
  std::mt19937 rng(23);
  PuzzleGenerator gen(Family::Hexagon, 99);
  const auto& perms = SymbolPermutation::all();
  for (int i = 0; i < 20; ++i) {
    auto board = gen.random_board();
    auto p = gen.random_seeds(board, 4);
    Transform t{hex()->motions()[rng() % 12], perms[rng() % perms.size()]};
    auto moved = solve(apply_transform(p, t));
    std::set<std::vector<Symbol>> expected;
    for (const auto& s : solve(p).solutions) expected.insert(apply_transform(s, t).values);
    CHECK(value_set(moved.solutions) == expected);
  }
}

TEST_CASE("random small puzzles agree with plain backtracking") {
  PuzzleGenerator gen(Family::Hexagon, 7);
  for (int i = 0; i < 10; ++i) {
    auto p = gen.random_seeds(gen.random_board(), 5);
    CHECK(value_set(solve(p).solutions) == brute_set(p));
  }
}
