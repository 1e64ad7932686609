#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "septoku/symmetry.hpp"
#include "septoku/topology.hpp"

namespace septoku {

/// A board plus a partial assignment. Seeds need not be mutually consistent.
struct Puzzle {
  BoardRef board;
  std::map<CellId, Symbol> seeds;

  friend bool operator==(const Puzzle& a, const Puzzle& b) {
    return a.board->family() == b.board->family() && a.seeds == b.seeds;
  }
};

/// Throws MalformedPuzzle for seeds off the board or outside 1..7.
void validate_puzzle(const Puzzle& puzzle);

/// Transform applied to the seeds of a puzzle.
Puzzle apply_transform(const Puzzle& puzzle, const Transform& t);

/// Cells plus the pairwise "must differ" relation induced by a list of regions. This is all the
/// search needs, so it can also run on region systems recovered from an exported model.
struct ConstraintSystem {
  int cell_count = 0;
  std::vector<std::vector<CellId>> peers;         // peers[c - 1], ascending
  std::vector<std::vector<CellId>> full_regions;  // regions with exactly kSymbolCount cells

  static ConstraintSystem from_board(const BoardSpec& board);
  static ConstraintSystem from_regions(int cell_count,
                                       const std::vector<std::vector<CellId>>& regions);
};

enum class CellOrder {
  MinRemaining,  // fewest candidates first, ties to the lowest cell id
  Sequential,    // lowest unassigned cell id
};

enum class SolveStatus { Complete, Capped };

std::string_view solve_status_name(SolveStatus status);

struct SolveOptions {
  CellOrder order = CellOrder::MinRemaining;
  /// Worker threads for uncapped searches; the result is identical for any value.
  int threads = 1;
};

struct SolveOutcome {
  std::vector<FilledBoard> solutions;
  long long node_count = 0;
  SolveStatus status = SolveStatus::Complete;
};

/// Called with each complete assignment (values[c - 1]); return false to stop the search.
using SolutionVisitor = std::function<bool(std::span<const Symbol>)>;

struct SearchStats {
  long long node_count = 0;
  bool stopped = false;
};

/// Depth-first search with forward checking. `givens` holds 0 for open cells. Solutions are
/// visited in a deterministic order fixed by `order` and ascending symbol choice.
SearchStats search_assignments(const ConstraintSystem& system, std::span<const Symbol> givens,
                               CellOrder order, const SolutionVisitor& visit);

bool check_filled(const FilledBoard& filled);

/// All solutions extending the seeds, or the first `cap` of them.
SolveOutcome solve(const Puzzle& puzzle, std::optional<long long> cap = std::nullopt,
                   const SolveOptions& options = {});

enum class Uniqueness { Unsolvable, Unique, Multiple };

std::string_view uniqueness_name(Uniqueness u);

Uniqueness classify_uniqueness(const Puzzle& puzzle);

}  // namespace septoku
