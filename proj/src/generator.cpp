#include "septoku/generator.hpp"

#include <algorithm>
#include <numeric>

#include "septoku/errors.hpp"

namespace septoku {

namespace {

template <typename T>
void shuffle_with(PuzzleGenerator& gen, std::vector<T>& items) {
  // Fisher-Yates with our own draws so the sequence does not depend on the standard library.
  for (std::size_t i = items.size(); i > 1; --i) {
    auto j = static_cast<std::size_t>(gen.draw(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace

PuzzleGenerator::PuzzleGenerator(Family family, std::uint64_t rng_seed)
    : family_(family), board_(build_board(family)), rng_(rng_seed) {}

std::uint64_t PuzzleGenerator::draw(std::uint64_t bound) { return rng_() % bound; }

FilledBoard PuzzleGenerator::random_board() {
  const auto& census = cached_census(family_);
  const auto& cls = census.classes[static_cast<std::size_t>(draw(census.classes.size()))];
  const auto& motions = board_->motions();
  SymmetryDescriptor motion = motions[static_cast<std::size_t>(draw(motions.size()))];
  std::vector<Symbol> images(kSymbolCount);
  std::iota(images.begin(), images.end(), 1);
  shuffle_with(*this, images);
  std::array<Symbol, kSymbolCount> table{};
  std::copy(images.begin(), images.end(), table.begin());
  return apply_transform(cls.canonical, Transform{motion, SymbolPermutation(table)});
}

Puzzle PuzzleGenerator::random_seeds(const FilledBoard& board, int count) {
  if (count < 0 || count > board.board->cell_count())
    throw InvalidArgument("seed count out of range");
  std::vector<CellId> cells(static_cast<std::size_t>(board.board->cell_count()));
  std::iota(cells.begin(), cells.end(), 1);
  shuffle_with(*this, cells);
  Puzzle out{board.board, {}};
  std::array<bool, kSymbolCount + 1> used{};
  const bool distinct = count <= kSymbolCount;
  for (CellId c : cells) {
    if (static_cast<int>(out.seeds.size()) == count) break;
    Symbol s = board.at(c);
    if (distinct && used[static_cast<std::size_t>(s)]) continue;
    used[static_cast<std::size_t>(s)] = true;
    out.seeds[c] = s;
  }
  if (static_cast<int>(out.seeds.size()) != count)
    throw InvalidArgument("board has too few distinct symbols for the requested seeds");
  return out;
}

GenerationOutcome PuzzleGenerator::next(const GenerationOptions& options) {
  if (options.seed_count < kMinimumUniqueSeeds)
    throw InvalidArgument("a puzzle with fewer than " + std::to_string(kMinimumUniqueSeeds) +
                          " seeds cannot have a unique solution");
  if (options.attempts < 1) throw InvalidArgument("attempt budget must be at least 1");
  GenerationOutcome outcome;
  for (long long attempt = 0; attempt < options.attempts; ++attempt) {
    FilledBoard board = random_board();
    Puzzle candidate = random_seeds(board, options.seed_count);
    ++outcome.stats.candidates;
    Uniqueness u = classify_uniqueness(candidate);
    ++outcome.stats.histogram[static_cast<std::size_t>(u)];
    if (u != Uniqueness::Unique) continue;
    if (options.require_minimal && !is_minimal(candidate)) continue;
    outcome.puzzle = std::move(candidate);
    outcome.solution = std::move(board);
    return outcome;
  }
  return outcome;
}

GenerationOutcome generate_puzzle(Family family, std::uint64_t rng_seed,
                                  const GenerationOptions& options) {
  PuzzleGenerator gen(family, rng_seed);
  return gen.next(options);
}

bool is_minimal(const Puzzle& puzzle) {
  if (classify_uniqueness(puzzle) != Uniqueness::Unique) return false;
  for (const auto& [cell, symbol] : puzzle.seeds) {
    Puzzle smaller = puzzle;
    smaller.seeds.erase(cell);
    if (classify_uniqueness(smaller) == Uniqueness::Unique) return false;
  }
  return true;
}

std::optional<FilledBoard> absent_symbol_swap(const Puzzle& puzzle, const FilledBoard& solution) {
  std::array<bool, kSymbolCount + 1> present{};
  for (const auto& [cell, symbol] : puzzle.seeds) present[static_cast<std::size_t>(symbol)] = true;
  std::vector<Symbol> absent;
  for (Symbol s = 1; s <= kSymbolCount; ++s)
    if (!present[static_cast<std::size_t>(s)]) absent.push_back(s);
  if (absent.size() < 2) return std::nullopt;
  std::array<Symbol, kSymbolCount> images{};
  std::iota(images.begin(), images.end(), 1);
  std::swap(images[static_cast<std::size_t>(absent[0] - 1)],
            images[static_cast<std::size_t>(absent[1] - 1)]);
  return apply_transform(solution, Transform{{}, SymbolPermutation(images)});
}

LowerBoundReport verify_seed_lower_bound(Family family, long long sample_size,
                                         std::uint64_t rng_seed) {
  if (sample_size < 0) throw InvalidArgument("sample size must be non-negative");
  PuzzleGenerator gen(family, rng_seed);
  LowerBoundReport report;

  // (a) Any seed set over at most five symbols: the absent-symbol swap is a second solution.
  for (long long i = 0; i < sample_size; ++i) {
    FilledBoard board = gen.random_board();
    std::vector<Symbol> symbols(kSymbolCount);
    std::iota(symbols.begin(), symbols.end(), 1);
    shuffle_with(gen, symbols);
    symbols.resize(static_cast<std::size_t>(gen.draw(6)));
    Puzzle puzzle{board.board, {}};
    for (CellId c = 1; c <= board.board->cell_count(); ++c) {
      bool allowed = std::find(symbols.begin(), symbols.end(), board.at(c)) != symbols.end();
      if (allowed && gen.draw(4) == 0) puzzle.seeds[c] = board.at(c);
    }
    ++report.symbolic_cases;
    auto first = solve(puzzle, 1);
    if (first.solutions.empty()) continue;
    ++report.symbolic_solvable;
    auto swapped = absent_symbol_swap(puzzle, first.solutions.front());
    if (swapped && check_filled(*swapped) && !(*swapped == first.solutions.front())) {
      bool keeps_seeds = std::all_of(puzzle.seeds.begin(), puzzle.seeds.end(), [&](const auto& kv) {
        return swapped->at(kv.first) == kv.second;
      });
      if (keeps_seeds) ++report.symbolic_swaps_verified;
    }
    if (classify_uniqueness(puzzle) == Uniqueness::Unique) ++report.symbolic_unique;
  }

  // (b) Drop one seed from generated unique six-seed puzzles.
  GenerationOptions options;
  options.seed_count = kMinimumUniqueSeeds;
  while (report.subsets < sample_size) {
    auto generated = gen.next(options);
    if (!generated.puzzle) throw Error("no unique six-seed puzzle within the attempt budget");
    ++report.unique_puzzles;
    for (const auto& [cell, symbol] : generated.puzzle->seeds) {
      if (report.subsets >= sample_size) break;
      Puzzle smaller = *generated.puzzle;
      smaller.seeds.erase(cell);
      ++report.subsets;
      ++report.subset_histogram[static_cast<std::size_t>(classify_uniqueness(smaller))];
    }
  }
  return report;
}

}  // namespace septoku
