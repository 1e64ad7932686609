#include "septoku/census.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "septoku/errors.hpp"

namespace septoku {

namespace {

const std::vector<std::vector<int>> kAllowedProfiles = {{5, 5, 5, 5, 5, 6, 6},
                                                        {5, 5, 5, 5, 5, 5, 7}};

void require_hexagon(const FilledBoard& filled, TheoremId id) {
  if (filled.family() != Family::Hexagon)
    throw FamilyMismatch(std::string(theorem_name(id)) + " is stated for the hexagon board, not " +
                         std::string(family_name(filled.family())));
}

std::string distinct_witness(const FilledBoard& filled, const std::vector<CellId>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      if (filled.at(cells[i]) == filled.at(cells[j]))
        return "cells " + std::to_string(cells[i]) + " and " + std::to_string(cells[j]) +
               " both hold " + std::to_string(filled.at(cells[i]));
  return {};
}

std::string values_string(const FilledBoard& filled) {
  std::string out;
  for (Symbol s : filled.values) out += static_cast<char>('0' + s);
  return out;
}

// Runs a per-board check across a solution list, keeping the first failure.
TheoremResult check_all(const std::string& name, const std::vector<FilledBoard>& boards,
                        const std::function<std::string(const FilledBoard&)>& fails) {
  TheoremResult result{name, true, 0, {}};
  for (const auto& b : boards) {
    ++result.checked;
    if (!result.pass) continue;
    std::string why = fails(b);
    if (!why.empty()) {
      result.pass = false;
      result.witness = values_string(b) + ": " + why;
    }
  }
  return result;
}

std::vector<std::vector<Symbol>> sorted_value_sets(const std::vector<FilledBoard>& boards) {
  std::vector<std::vector<Symbol>> out;
  out.reserve(boards.size());
  for (const auto& b : boards) out.push_back(b.values);
  std::sort(out.begin(), out.end());
  return out;
}

// Transform that maps the standard center onto itself under `motion`, if one exists.
std::optional<Transform> center_fixing_transform(const BoardSpec& board, SymmetryDescriptor motion,
                                                 const std::map<CellId, Symbol>& center) {
  auto map = symmetry_cell_map(board, motion);
  std::array<Symbol, kSymbolCount> images{};
  for (auto [cell, symbol] : center) {
    auto it = center.find(map(cell));
    if (it == center.end()) return std::nullopt;
    images[static_cast<std::size_t>(symbol - 1)] = it->second;
  }
  return Transform{motion, SymbolPermutation(images)};
}

std::optional<std::string> core_class_of(const FilledBoard& filled) {
  auto hex = build_board(Family::Hexagon);
  std::vector<Symbol> values;
  for (const auto& c : hex->coords()) {
    auto cell = filled.board->cell_at(c);
    if (!cell) return std::nullopt;
    values.push_back(filled.at(*cell));
  }
  FilledBoard core{hex, std::move(values)};
  if (!check_filled(core)) return std::nullopt;
  return classify(core, cached_census(Family::Hexagon));
}

}  // namespace

std::string_view theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::T1:
      return "T1";
    case TheoremId::T2:
      return "T2";
    case TheoremId::T3:
      return "T3";
    case TheoremId::T7:
      return "T7";
    case TheoremId::T8:
      return "T8";
  }
  return "?";
}

TheoremId parse_theorem(std::string_view name) {
  for (auto id : {TheoremId::T1, TheoremId::T2, TheoremId::T3, TheoremId::T7, TheoremId::T8})
    if (theorem_name(id) == name) return id;
  throw InvalidArgument("unknown theorem '" + std::string(name) + "'");
}

std::string PairingStructure::to_string() const {
  std::ostringstream out;
  for (auto [a, b] : pairs) out << '{' << a << ',' << b << '}';
  out << " fixed " << fixed;
  return out.str();
}

const TheoremResult* CensusReport::check(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool CensusReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

std::vector<int> symbol_profile(const FilledBoard& filled) {
  std::vector<int> counts(kSymbolCount, 0);
  for (Symbol s : filled.values) ++counts[static_cast<std::size_t>(s - 1)];
  std::sort(counts.begin(), counts.end());
  return counts;
}

bool symbol_in_every_region(const FilledBoard& filled, Symbol symbol) {
  for (const auto& reg : filled.board->regions()) {
    bool found = std::any_of(reg.cells.begin(), reg.cells.end(),
                             [&](CellId c) { return filled.at(c) == symbol; });
    if (!found) return false;
  }
  return true;
}

PairingStructure pairing_of(const FilledBoard& filled) {
  const BoardSpec& board = *filled.board;
  auto center = board.cell_at({0, 0});
  if (!center) throw TheoremViolation("board has no central cell");
  const Symbol fixed = filled.at(*center);
  std::array<Symbol, kSymbolCount + 1> partner{};
  for (CellId c = 1; c <= board.cell_count(); ++c) {
    CellId d = board.antipode(c);
    Symbol a = filled.at(c);
    Symbol b = filled.at(d);
    auto fail = [&](const std::string& why) {
      throw TheoremViolation("cells " + std::to_string(c) + " and " + std::to_string(d) + " (" +
                             std::to_string(a) + ", " + std::to_string(b) + "): " + why);
    };
    if (a == b) {
      if (a != fixed) fail("equal symbols other than the central one");
      continue;
    }
    if (a == fixed || b == fixed) fail("central symbol opposite a different symbol");
    if ((partner[a] != 0 && partner[a] != b) || (partner[b] != 0 && partner[b] != a))
      fail("symbol paired inconsistently");
    partner[a] = b;
    partner[b] = a;
  }
  PairingStructure out;
  out.fixed = fixed;
  std::size_t k = 0;
  for (Symbol s = 1; s <= kSymbolCount; ++s) {
    if (s == fixed) continue;
    if (partner[s] == 0) throw TheoremViolation("symbol " + std::to_string(s) + " is never paired");
    if (s < partner[s]) {
      if (k >= out.pairs.size()) throw TheoremViolation("more than three pairs");
      out.pairs[k++] = {s, partner[s]};
    }
  }
  if (k != out.pairs.size()) throw TheoremViolation("fewer than three pairs");
  return out;
}

TheoremResult check_theorem(const FilledBoard& filled, TheoremId id) {
  TheoremResult result{std::string(theorem_name(id)), true, 1, {}};
  switch (id) {
    case TheoremId::T1:
      require_hexagon(filled, id);
      result.witness = distinct_witness(filled, hexagon_circle_centers());
      break;
    case TheoremId::T2: {
      require_hexagon(filled, id);
      auto cells = hexagon_corners();
      cells.push_back(kHexagonCenter);
      result.witness = distinct_witness(filled, cells);
      break;
    }
    case TheoremId::T3: {
      require_hexagon(filled, id);
      auto profile = symbol_profile(filled);
      if (std::find(kAllowedProfiles.begin(), kAllowedProfiles.end(), profile) ==
          kAllowedProfiles.end()) {
        std::string p;
        for (int c : profile) p += (p.empty() ? "" : ",") + std::to_string(c);
        result.witness = "symbol counts " + p;
      }
      break;
    }
    case TheoremId::T7:
      try {
        pairing_of(filled);
      } catch (const TheoremViolation& e) {
        result.witness = e.what();
      }
      break;
    case TheoremId::T8:
      throw InvalidArgument("T8 is a statement about a whole family; use check_theorem_family");
  }
  result.pass = result.witness.empty();
  return result;
}

TheoremResult check_theorem_family(Family family, TheoremId id) {
  if (id != TheoremId::T8)
    throw InvalidArgument(std::string(theorem_name(id)) + " is checked per board");
  if (family != Family::Hexagon)
    throw FamilyMismatch("T8 is only stated for the hexagon board");
  auto board = build_board(Family::Hexagon);
  int center_circle = 0;
  for (const auto& reg : board->regions())
    if (reg.kind == RegionKind::Circle && reg.center == kHexagonCenter) center_circle = reg.id;
  auto relaxed = std::make_shared<const BoardSpec>(board->without_region(center_circle));
  auto strict_solutions = solve(Puzzle{board, {}}).solutions;
  auto relaxed_solutions = solve(Puzzle{relaxed, {}}).solutions;
  TheoremResult result{"T8", true, static_cast<long long>(relaxed_solutions.size()), {}};
  if (sorted_value_sets(strict_solutions) != sorted_value_sets(relaxed_solutions)) {
    result.pass = false;
    result.witness = "relaxed board has " + std::to_string(relaxed_solutions.size()) +
                     " solutions, strict board " + std::to_string(strict_solutions.size());
  }
  return result;
}

std::string classify(const FilledBoard& filled, const CensusReport& report) {
  if (filled.family() != report.family)
    throw FamilyMismatch("board and census belong to different families");
  if (!check_filled(filled)) throw ClassificationError("board is not valid");
  auto canon = canonical_form(filled);
  for (const auto& cls : report.classes)
    if (cls.canonical.values == canon.values) return cls.label;
  throw ClassificationError("valid board matches no census class; the census is incomplete");
}

std::map<CellId, Symbol> standard_center_seeds() {
  return {{12, 1}, {13, 2}, {18, 6}, {19, 7}, {20, 3}, {25, 5}, {26, 4}};
}

std::vector<Puzzle> derive_standard_puzzles() {
  auto board = build_board(Family::Hexagon);
  const auto center = standard_center_seeds();

  std::vector<Transform> fixing;
  for (auto motion : board->motions()) {
    auto t = center_fixing_transform(*board, motion, center);
    if (t && t->permutation(1) == 1) fixing.push_back(*t);
  }

  auto seeds_consistent = [&](const std::map<CellId, Symbol>& seeds) {
    for (const auto& reg : board->regions()) {
      std::set<Symbol> seen;
      for (CellId c : reg.cells) {
        auto it = seeds.find(c);
        if (it != seeds.end() && !seen.insert(it->second).second) return false;
      }
    }
    return true;
  };

  // Candidate placements keyed by (circle center, corner).
  std::set<std::pair<CellId, CellId>> candidates;
  for (CellId c : hexagon_circle_centers()) {
    if (c == kHexagonCenter) continue;
    for (CellId k : hexagon_corners()) {
      auto seeds = center;
      seeds[c] = 1;
      seeds[k] = 1;
      if (seeds_consistent(seeds)) candidates.insert({c, k});
    }
  }

  std::vector<Puzzle> out;
  std::set<std::pair<CellId, CellId>> covered;
  for (auto [c, k] : candidates) {
    if (covered.count({c, k})) continue;
    for (const auto& t : fixing) {
      auto map = symmetry_cell_map(*board, t.symmetry);
      covered.insert({map(c), map(k)});
    }
    auto seeds = center;
    seeds[c] = 1;
    seeds[k] = 1;
    out.push_back(Puzzle{board, std::move(seeds)});
  }
  return out;
}

std::vector<StandardSolution> standard_form_atlas(const CensusReport& hexagon_report) {
  if (hexagon_report.family != Family::Hexagon)
    throw FamilyMismatch("the standard-form atlas needs the hexagon census");
  const Transform turn = parse_transform("(Rot)^-1(654321)");
  const Transform flip = parse_transform("(Flx)(Rot)(16)(25)(34)");

  std::vector<StandardSolution> all;
  auto puzzles = derive_standard_puzzles();
  for (std::size_t i = 0; i < puzzles.size(); ++i)
    for (auto& b : solve(puzzles[i]).solutions)
      all.push_back(StandardSolution{static_cast<int>(i + 1), b, classify(b, hexagon_report)});

  auto index_of = [&](const FilledBoard& b) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < all.size(); ++i)
      if (all[i].board == b) return i;
    return std::nullopt;
  };

  for (const auto& cls : hexagon_report.classes) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (all[i].name == cls.label) members.push_back(i);
    if (members.size() == 1) continue;
    bool named = false;
    for (std::size_t x : members) {
      auto one = index_of(apply_transform(all[x].board, turn));
      auto two = index_of(apply_transform(all[x].board, flip));
      if (!one || !two || *one == x || *two == x || *one == *two) continue;
      if (all[*one].name != cls.label || all[*two].name != cls.label) continue;
      all[*one].name = cls.label + "1";
      all[*two].name = cls.label + "2";
      named = true;
      break;
    }
    if (!named)
      throw ClassificationError("no standard solution of class " + cls.label +
                                " satisfies the rotation and reflection identities");
  }
  return all;
}

CensusReport enumerate_classes(Family family, const CensusOptions& options) {
  auto board = build_board(family);
  SolveOptions solve_options;
  solve_options.threads = options.threads;
  auto solutions = solve(Puzzle{board, {}}, std::nullopt, solve_options).solutions;

  CensusReport report;
  report.family = family;
  report.cell_count = board->cell_count();
  report.region_count = static_cast<int>(board->regions().size());
  report.transform_count = transform_count(*board);
  report.raw_solutions = static_cast<long long>(solutions.size());

  std::map<std::vector<Symbol>, long long> class_counts;
  for (const auto& s : solutions) ++class_counts[canonical_form(s).values];

  for (const auto& [values, count] : class_counts) {
    CensusClass cls;
    cls.canonical = FilledBoard{board, values};
    cls.stabilizer_size = static_cast<int>(stabilizer(cls.canonical).size());
    cls.orbit_size = report.transform_count / cls.stabilizer_size;
    cls.profile = symbol_profile(cls.canonical);
    try {
      cls.pairing = pairing_of(cls.canonical);
    } catch (const TheoremViolation&) {
    }
    report.total_labeled_boards += cls.orbit_size;
    report.classes.push_back(std::move(cls));
  }

  if (family == Family::Hexagon) {
    // A, B, C for the classes with a two-element stabilizer, D, E, F for the six-fold ones.
    char next_low = 'A';
    char next_high = 'D';
    for (auto& cls : report.classes)
      cls.label = std::string(1, cls.stabilizer_size <= 2 ? next_low++ : next_high++);
  } else {
    int k = 1;
    for (auto& cls : report.classes)
      cls.label = std::string(family_name(family)) + "-" + std::to_string(k++);
    for (auto& cls : report.classes) cls.core_class = core_class_of(cls.canonical);
  }

  {
    TheoremResult orbit{"orbit-sum", report.total_labeled_boards == report.raw_solutions,
                        static_cast<long long>(report.classes.size()), {}};
    if (!orbit.pass)
      orbit.witness = "sum of orbit sizes " + std::to_string(report.total_labeled_boards) +
                      " differs from " + std::to_string(report.raw_solutions) + " solutions";
    report.checks.push_back(std::move(orbit));
  }
  report.checks.push_back(check_all("valid", solutions, [](const FilledBoard& b) {
    return check_filled(b) ? std::string() : std::string("region repeats a symbol");
  }));

  if (family == Family::Hexagon) {
    for (auto id : {TheoremId::T1, TheoremId::T2, TheoremId::T3}) {
      report.checks.push_back(check_all(std::string(theorem_name(id)), solutions,
                                        [id](const FilledBoard& b) {
                                          return check_theorem(b, id).witness;
                                        }));
    }
  }
  report.checks.push_back(check_all("T7", solutions, [](const FilledBoard& b) {
    return check_theorem(b, TheoremId::T7).witness;
  }));

  if (family == Family::Hexagon) {
    // A symbol occurring seven times lies in every region.
    report.checks.push_back(check_all("seven-coverage", solutions, [](const FilledBoard& b) {
      std::vector<int> counts(kSymbolCount + 1, 0);
      for (Symbol s : b.values) ++counts[static_cast<std::size_t>(s)];
      for (Symbol s = 1; s <= kSymbolCount; ++s)
        if (counts[static_cast<std::size_t>(s)] == 7 && !symbol_in_every_region(b, s))
          return "symbol " + std::to_string(s) + " misses a region";
      return std::string();
    }));

    // Classes reached from the four standard puzzles must be all classes.
    std::set<std::vector<Symbol>> from_standard;
    long long standard_solutions = 0;
    for (const auto& p : derive_standard_puzzles()) {
      for (const auto& s : solve(p).solutions) {
        ++standard_solutions;
        from_standard.insert(canonical_form(s).values);
      }
    }
    TheoremResult standard{"standard-form", from_standard.size() == class_counts.size(),
                           standard_solutions, {}};
    if (!standard.pass)
      standard.witness = std::to_string(from_standard.size()) + " classes from standard puzzles, " +
                         std::to_string(class_counts.size()) + " from full enumeration";
    report.checks.push_back(std::move(standard));

    if (options.check_t8) report.checks.push_back(check_theorem_family(family, TheoremId::T8));
  }
  return report;
}

const CensusReport& cached_census(Family family) {
  static std::recursive_mutex mutex;
  static std::map<Family, CensusReport> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(family);
  if (it == cache.end()) {
    CensusOptions options;
    options.check_t8 = false;
    it = cache.emplace(family, enumerate_classes(family, options)).first;
  }
  return it->second;
}

}  // namespace septoku
