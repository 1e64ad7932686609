#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "septoku/census.hpp"
#include "septoku/solver.hpp"

namespace septoku {

/// Fewest seeds that can pin down a unique solution: with five or fewer seeds two symbols are
/// absent and swapping them yields a second solution.
inline constexpr int kMinimumUniqueSeeds = 6;

/// Default number of candidates tried per generated puzzle.
inline constexpr long long kDefaultAttemptBudget = 20000;

struct GenerationStats {
  long long candidates = 0;
  std::array<long long, 3> histogram{};  // indexed by Uniqueness
};

struct GenerationOptions {
  int seed_count = kMinimumUniqueSeeds;
  long long attempts = kDefaultAttemptBudget;
  /// Also require that dropping any single seed loses uniqueness.
  bool require_minimal = false;
};

struct GenerationOutcome {
  std::optional<Puzzle> puzzle;
  std::optional<FilledBoard> solution;
  GenerationStats stats;
};

/// Draws random boards and seed sets from one deterministic stream.
class PuzzleGenerator {
 public:
  PuzzleGenerator(Family family, std::uint64_t rng_seed);

  /// A random valid board: a census class representative under a random transform.
  FilledBoard random_board();
  /// `count` cells of `board` with pairwise distinct symbols (when count <= 7), as seeds.
  Puzzle random_seeds(const FilledBoard& board, int count);
  /// Throws InvalidArgument when the seed count is below kMinimumUniqueSeeds or attempts < 1.
  GenerationOutcome next(const GenerationOptions& options);

  std::mt19937_64& rng() { return rng_; }
  std::uint64_t draw(std::uint64_t bound);

 private:
  Family family_;
  BoardRef board_;
  std::mt19937_64 rng_;
};

GenerationOutcome generate_puzzle(Family family, std::uint64_t rng_seed,
                                  const GenerationOptions& options = {});

/// True when the puzzle is unique and every one-seed-smaller puzzle is not.
bool is_minimal(const Puzzle& puzzle);

/// For a puzzle whose seeds miss two symbols, the given solution with those two swapped;
/// this is a second solution whenever both symbols occur on the board.
std::optional<FilledBoard> absent_symbol_swap(const Puzzle& puzzle, const FilledBoard& solution);

struct LowerBoundReport {
  // Seed sets with at most five distinct symbols.
  long long symbolic_cases = 0;
  long long symbolic_solvable = 0;
  long long symbolic_swaps_verified = 0;
  long long symbolic_unique = 0;
  // Five-seed subsets of generated unique six-seed puzzles.
  long long unique_puzzles = 0;
  long long subsets = 0;
  std::array<long long, 3> subset_histogram{};  // indexed by Uniqueness

  bool pass() const {
    return symbolic_unique == 0 && symbolic_swaps_verified == symbolic_solvable &&
           subset_histogram[static_cast<std::size_t>(Uniqueness::Unique)] == 0;
  }
};

LowerBoundReport verify_seed_lower_bound(Family family, long long sample_size,
                                         std::uint64_t rng_seed);

}  // namespace septoku
