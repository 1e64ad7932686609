#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "septoku/solver.hpp"
#include "septoku/symmetry.hpp"

namespace septoku {

enum class TheoremId { T1, T2, T3, T7, T8 };

std::string_view theorem_name(TheoremId id);
TheoremId parse_theorem(std::string_view name);

struct TheoremResult {
  std::string name;  // "T1".."T8", or a named census check
  bool pass = true;
  long long checked = 0;
  std::string witness;  // first counterexample, empty on success
};

/// Three symbol pairs swapped by the half turn, plus the symbol that maps to itself.
struct PairingStructure {
  std::array<std::pair<Symbol, Symbol>, 3> pairs{};  // each (low, high), sorted
  Symbol fixed = 0;

  auto operator<=>(const PairingStructure&) const = default;
  std::string to_string() const;
};

struct CensusClass {
  std::string label;
  FilledBoard canonical;
  int stabilizer_size = 0;
  long long orbit_size = 0;
  std::vector<int> profile;  // per-symbol counts, ascending
  std::optional<PairingStructure> pairing;
  /// Hexagon class of the board's central 37 cells (rhombus and star only).
  std::optional<std::string> core_class;
};

struct CensusReport {
  Family family = Family::Hexagon;
  int cell_count = 0;
  int region_count = 0;
  long long transform_count = 0;
  long long raw_solutions = 0;
  long long total_labeled_boards = 0;
  std::vector<CensusClass> classes;
  std::vector<TheoremResult> checks;

  const TheoremResult* check(std::string_view name) const;
  bool all_checks_pass() const;
};

struct CensusOptions {
  bool check_t8 = true;
  int threads = 1;
};

/// Enumerates every valid board of the family, groups them into equivalence classes and runs
/// the theorem checks that apply to the family.
CensusReport enumerate_classes(Family family, const CensusOptions& options = {});

/// Process-wide cached census without the T8 check.
const CensusReport& cached_census(Family family);

/// Sorted per-symbol counts.
std::vector<int> symbol_profile(const FilledBoard& filled);

/// Label of the class containing `filled`. Throws ClassificationError.
std::string classify(const FilledBoard& filled, const CensusReport& report);

/// T1, T2, T3 need a hexagon board; T7 works on every family. Throws FamilyMismatch, or
/// InvalidArgument for T8 (use check_theorem_family).
TheoremResult check_theorem(const FilledBoard& filled, TheoremId id);
/// Family-wide statements; only T8 on the hexagon is defined.
TheoremResult check_theorem_family(Family family, TheoremId id);

/// Throws TheoremViolation naming the offending antipodal pair.
PairingStructure pairing_of(const FilledBoard& filled);

/// True when `symbol` occurs in every region of the board.
bool symbol_in_every_region(const FilledBoard& filled, Symbol symbol);

/// The center pattern every hexagon board can be relabelled into:
/// 12:1, 13:2, 18:6, 19:7, 20:3, 25:5, 26:4.
std::map<CellId, Symbol> standard_center_seeds();

/// The four standard puzzles: the standard center plus a 1 on circle center 8 or 21 and a 1 on a
/// corner, one per orbit under the transforms that fix the center pattern and the symbol 1.
/// Ordered by (circle center, corner); the last one has no solution.
std::vector<Puzzle> derive_standard_puzzles();

/// One solution of a standard puzzle, named after its census class. Boards of the two-fold
/// classes come in threes: X, X1 = X(Rot)^-1(654321), X2 = X(Flx)(Rot)(16)(25)(34).
struct StandardSolution {
  int puzzle = 0;  // 1-based index into derive_standard_puzzles()
  FilledBoard board;
  std::string name;
};

/// Names the twelve standard-form solutions. Throws ClassificationError if the identities
/// cannot be matched.
std::vector<StandardSolution> standard_form_atlas(const CensusReport& hexagon_report);

}  // namespace septoku
