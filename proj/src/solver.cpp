#include "septoku/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <set>
#include <thread>

#include "septoku/errors.hpp"

namespace septoku {

namespace {

using Mask = std::uint8_t;
constexpr Mask kAllSymbols = (1u << kSymbolCount) - 1;

Mask bit(Symbol s) { return static_cast<Mask>(1u << (s - 1)); }

struct Node {
  std::vector<Symbol> values;
  std::vector<Mask> candidates;
};

class Search {
 public:
  Search(const ConstraintSystem& system, CellOrder order, const SolutionVisitor& visit)
      : system_(system), order_(order), visit_(visit) {}

  // Places `symbol` and propagates naked and hidden singles; false on a contradiction.
  bool place(Node& node, int cell, Symbol symbol) {
    pending_.clear();
    pending_.emplace_back(cell, symbol);
    return settle(node);
  }

  // Runs propagation to a fixpoint.
  bool settle(Node& node) {
    do {
      while (!pending_.empty()) {
        auto [c, s] = pending_.back();
        pending_.pop_back();
        if (!assign(node, c, s)) return false;
      }
      if (!hidden_singles(node)) return false;
    } while (!pending_.empty());
    return true;
  }

  // -1 when every cell is assigned.
  int choose(const Node& node) const {
    int best = -1;
    int best_count = kSymbolCount + 1;
    for (int c = 0; c < system_.cell_count; ++c) {
      if (node.values[static_cast<std::size_t>(c)] != 0) continue;
      if (order_ == CellOrder::Sequential) return c;
      int count = std::popcount(node.candidates[static_cast<std::size_t>(c)]);
      if (count < best_count) {
        best = c;
        best_count = count;
        if (count <= 1) break;
      }
    }
    return best;
  }

  // Returns false once the visitor asks to stop.
  bool run(const Node& root) {
    if (levels_.size() < static_cast<std::size_t>(system_.cell_count) + 2)
      levels_.resize(static_cast<std::size_t>(system_.cell_count) + 2);
    return descend(root, 0);
  }

  long long nodes() const { return nodes_; }

 private:
  bool assign(Node& node, int cell, Symbol symbol) {
    auto c = static_cast<std::size_t>(cell);
    if (node.values[c] == symbol) return true;
    if (node.values[c] != 0 || !(node.candidates[c] & bit(symbol))) return false;
    node.values[c] = symbol;
    node.candidates[c] = bit(symbol);
    for (CellId peer : system_.peers[c]) {
      auto p = static_cast<std::size_t>(peer - 1);
      if (node.values[p] == symbol) return false;
      if (node.values[p] != 0) continue;
      node.candidates[p] &= static_cast<Mask>(~bit(symbol));
      if (node.candidates[p] == 0) return false;
      if (std::has_single_bit(node.candidates[p]))
        pending_.emplace_back(peer - 1, std::countr_zero(node.candidates[p]) + 1);
    }
    return true;
  }

  // A region of exactly seven cells holds every symbol once, so a symbol with a single
  // possible cell there is forced and one with none is a contradiction.
  bool hidden_singles(Node& node) {
    for (const auto& region : system_.full_regions) {
      Mask placed = 0;
      Mask once = 0;
      Mask twice = 0;
      for (CellId cell : region) {
        auto c = static_cast<std::size_t>(cell - 1);
        if (node.values[c] != 0) {
          placed |= bit(node.values[c]);
        } else {
          Mask m = node.candidates[c];
          twice |= once & m;
          once |= m;
        }
      }
      Mask missing = kAllSymbols & static_cast<Mask>(~placed);
      if (missing & static_cast<Mask>(~once)) return false;
      Mask forced = missing & once & static_cast<Mask>(~twice);
      if (!forced) continue;
      for (CellId cell : region) {
        auto c = static_cast<std::size_t>(cell - 1);
        if (node.values[c] != 0) continue;
        Mask hit = node.candidates[c] & forced;
        if (!hit) continue;
        if (!std::has_single_bit(hit)) return false;
        pending_.emplace_back(cell - 1, std::countr_zero(hit) + 1);
      }
      return true;
    }
    return true;
  }

  bool descend(const Node& node, std::size_t depth) {
    int cell = choose(node);
    if (cell < 0) return visit_(node.values);
    Mask options = node.candidates[static_cast<std::size_t>(cell)];
    Node& child = levels_[depth];
    for (Symbol s = 1; s <= kSymbolCount; ++s) {
      if (!(options & bit(s))) continue;
      ++nodes_;
      child.values.assign(node.values.begin(), node.values.end());
      child.candidates.assign(node.candidates.begin(), node.candidates.end());
      if (!place(child, cell, s)) continue;
      if (!descend(child, depth + 1)) return false;
    }
    return true;
  }

  const ConstraintSystem& system_;
  CellOrder order_;
  const SolutionVisitor& visit_;
  long long nodes_ = 0;
  std::vector<std::pair<int, Symbol>> pending_;
  std::vector<Node> levels_;
};

std::optional<Node> root_node(const ConstraintSystem& system, std::span<const Symbol> givens) {
  Node node{std::vector<Symbol>(static_cast<std::size_t>(system.cell_count), 0),
            std::vector<Mask>(static_cast<std::size_t>(system.cell_count), kAllSymbols)};
  SolutionVisitor none;
  Search helper(system, CellOrder::Sequential, none);
  for (int c = 0; c < system.cell_count; ++c) {
    Symbol s = givens[static_cast<std::size_t>(c)];
    if (s == 0) continue;
    if (!helper.place(node, c, s)) return std::nullopt;
  }
  // Hidden singles may apply before any placement.
  if (!helper.settle(node)) return std::nullopt;
  return node;
}

std::vector<Symbol> seed_vector(const Puzzle& puzzle) {
  std::vector<Symbol> givens(static_cast<std::size_t>(puzzle.board->cell_count()), 0);
  for (auto [cell, symbol] : puzzle.seeds) givens[static_cast<std::size_t>(cell - 1)] = symbol;
  return givens;
}

// Splits the first branching level across threads and concatenates results in branch order,
// which reproduces the sequential visiting order.
SolveOutcome solve_parallel(const Puzzle& puzzle, const ConstraintSystem& system,
                            const Node& root, const SolveOptions& options) {
  SolutionVisitor none;
  Search splitter(system, options.order, none);
  SolveOutcome outcome;
  int cell = splitter.choose(root);
  if (cell < 0) {
    outcome.solutions.push_back(FilledBoard{puzzle.board, root.values});
    return outcome;
  }
  std::vector<Node> branches;
  for (Symbol s = 1; s <= kSymbolCount; ++s) {
    if (!(root.candidates[static_cast<std::size_t>(cell)] & bit(s))) continue;
    ++outcome.node_count;
    Node child = root;
    if (splitter.place(child, cell, s)) branches.push_back(std::move(child));
  }
  std::vector<std::vector<FilledBoard>> found(branches.size());
  std::vector<long long> nodes(branches.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < branches.size(); i = next++) {
      SolutionVisitor collect = [&, i](std::span<const Symbol> values) {
        found[i].push_back(FilledBoard{puzzle.board, {values.begin(), values.end()}});
        return true;
      };
      Search search(system, options.order, collect);
      search.run(branches[i]);
      nodes[i] = search.nodes();
    }
  };
  std::vector<std::thread> pool;
  int workers = std::min<int>(options.threads, static_cast<int>(branches.size()));
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < branches.size(); ++i) {
    outcome.node_count += nodes[i];
    for (auto& f : found[i]) outcome.solutions.push_back(std::move(f));
  }
  return outcome;
}

}  // namespace

std::string_view solve_status_name(SolveStatus status) {
  return status == SolveStatus::Complete ? "complete" : "capped";
}

std::string_view uniqueness_name(Uniqueness u) {
  switch (u) {
    case Uniqueness::Unsolvable:
      return "unsolvable";
    case Uniqueness::Unique:
      return "unique";
    case Uniqueness::Multiple:
      return "multiple";
  }
  return "?";
}

void validate_puzzle(const Puzzle& puzzle) {
  if (!puzzle.board) throw MalformedPuzzle("puzzle has no board");
  for (auto [cell, symbol] : puzzle.seeds) {
    if (!puzzle.board->contains(cell))
      throw MalformedPuzzle("seed cell " + std::to_string(cell) + " is not on the " +
                            std::string(family_name(puzzle.board->family())) + " board");
    if (symbol < 1 || symbol > kSymbolCount)
      throw MalformedPuzzle("seed symbol " + std::to_string(symbol) + " at cell " +
                            std::to_string(cell) + " is outside 1..7");
  }
}

Puzzle apply_transform(const Puzzle& puzzle, const Transform& t) {
  validate_puzzle(puzzle);
  auto map = symmetry_cell_map(*puzzle.board, t.symmetry);
  Puzzle out{puzzle.board, {}};
  for (auto [cell, symbol] : puzzle.seeds) out.seeds[map(cell)] = t.permutation(symbol);
  return out;
}

ConstraintSystem ConstraintSystem::from_board(const BoardSpec& board) {
  ConstraintSystem out;
  out.cell_count = board.cell_count();
  for (CellId c = 1; c <= board.cell_count(); ++c) out.peers.push_back(board.peers(c));
  for (const auto& reg : board.regions())
    if (static_cast<int>(reg.cells.size()) == kSymbolCount) out.full_regions.push_back(reg.cells);
  return out;
}

ConstraintSystem ConstraintSystem::from_regions(int cell_count,
                                                const std::vector<std::vector<CellId>>& regions) {
  std::vector<std::set<CellId>> sets(static_cast<std::size_t>(cell_count));
  for (const auto& reg : regions) {
    for (CellId a : reg) {
      if (a < 1 || a > cell_count) throw InvalidArgument("region cell out of range");
      for (CellId b : reg)
        if (a != b) sets[static_cast<std::size_t>(a - 1)].insert(b);
    }
  }
  ConstraintSystem out;
  out.cell_count = cell_count;
  for (auto& s : sets) out.peers.emplace_back(s.begin(), s.end());
  for (const auto& reg : regions) {
    std::set<CellId> distinct(reg.begin(), reg.end());
    if (static_cast<int>(distinct.size()) == kSymbolCount)
      out.full_regions.emplace_back(distinct.begin(), distinct.end());
  }
  return out;
}

SearchStats search_assignments(const ConstraintSystem& system, std::span<const Symbol> givens,
                               CellOrder order, const SolutionVisitor& visit) {
  if (static_cast<int>(givens.size()) != system.cell_count)
    throw InvalidArgument("givens do not cover the board");
  SearchStats stats;
  auto root = root_node(system, givens);
  if (!root) return stats;
  Search search(system, order, visit);
  stats.stopped = !search.run(*root);
  stats.node_count = search.nodes();
  return stats;
}

bool check_filled(const FilledBoard& filled) {
  const BoardSpec& board = *filled.board;
  if (static_cast<int>(filled.values.size()) != board.cell_count()) return false;
  for (Symbol s : filled.values)
    if (s < 1 || s > kSymbolCount) return false;
  for (const auto& reg : board.regions()) {
    Mask seen = 0;
    for (CellId c : reg.cells) {
      Mask b = bit(filled.at(c));
      if (seen & b) return false;
      seen |= b;
    }
  }
  return true;
}

SolveOutcome solve(const Puzzle& puzzle, std::optional<long long> cap,
                   const SolveOptions& options) {
  validate_puzzle(puzzle);
  if (cap && *cap < 1) throw InvalidArgument("solution cap must be at least 1");
  const auto system = ConstraintSystem::from_board(*puzzle.board);
  const auto givens = seed_vector(puzzle);
  if (!cap && options.threads > 1) {
    auto root = root_node(system, givens);
    if (!root) return {};
    return solve_parallel(puzzle, system, *root, options);
  }
  SolveOutcome outcome;
  SolutionVisitor collect = [&](std::span<const Symbol> values) {
    if (cap && static_cast<long long>(outcome.solutions.size()) >= *cap) {
      outcome.status = SolveStatus::Capped;
      return false;
    }
    outcome.solutions.push_back(FilledBoard{puzzle.board, {values.begin(), values.end()}});
    return true;
  };
  outcome.node_count = search_assignments(system, givens, options.order, collect).node_count;
  return outcome;
}

Uniqueness classify_uniqueness(const Puzzle& puzzle) {
  auto outcome = solve(puzzle, 2);
  switch (outcome.solutions.size()) {
    case 0:
      return Uniqueness::Unsolvable;
    case 1:
      return Uniqueness::Unique;
    default:
      return Uniqueness::Multiple;
  }
}

}  // namespace septoku
