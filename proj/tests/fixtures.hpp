#pragma once

// Reference data and slow, independent re-implementations used to check the library.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "septoku/symmetry.hpp"

namespace fixtures {

using septoku::CellId;
using septoku::Symbol;

// The 28 hexagon regions in listing order: E rows, SW rows, SE rows, circles.
inline const std::vector<std::vector<int>> kHexRegions = {
    {1, 2, 3, 4},
    {5, 6, 7, 8, 9},
    {10, 11, 12, 13, 14, 15},
    {16, 17, 18, 19, 20, 21, 22},
    {23, 24, 25, 26, 27, 28},
    {29, 30, 31, 32, 33},
    {34, 35, 36, 37},
    {1, 5, 10, 16},
    {2, 6, 11, 17, 23},
    {3, 7, 12, 18, 24, 29},
    {4, 8, 13, 19, 25, 30, 34},
    {9, 14, 20, 26, 31, 35},
    {15, 21, 27, 32, 36},
    {22, 28, 33, 37},
    {4, 9, 15, 22},
    {3, 8, 14, 21, 28},
    {2, 7, 13, 20, 27, 33},
    {1, 6, 12, 19, 26, 32, 37},
    {5, 11, 18, 25, 31, 36},
    {10, 17, 24, 30, 35},
    {16, 23, 29, 34},
    {1, 2, 5, 6, 7, 11, 12},
    {3, 4, 7, 8, 9, 13, 14},
    {10, 11, 16, 17, 18, 23, 24},
    {12, 13, 18, 19, 20, 25, 26},
    {14, 15, 20, 21, 22, 27, 28},
    {24, 25, 29, 30, 31, 34, 35},
    {26, 27, 31, 32, 33, 36, 37},
};

inline const std::map<int, int> kPuzzleOneSeeds = {
    {12, 1}, {13, 2}, {20, 3}, {26, 4}, {25, 5}, {18, 6}, {19, 7}, {8, 1}, {16, 1}};

// The four completions of kPuzzleOneSeeds, values for cells 1..37.
inline const std::array<std::vector<int>, 4> kPuzzleOneSolutions = {{
    {2, 5, 4, 3, 3, 6, 7, 1, 5, 5, 4, 1, 2, 6, 7, 1, 2, 6, 7, 3, 5, 4, 7, 3, 5, 4, 1, 2,
     2, 4, 7, 3, 6, 6, 1, 2, 5},
    {2, 6, 4, 3, 7, 3, 5, 1, 6, 3, 4, 1, 2, 7, 5, 1, 5, 6, 7, 3, 2, 4, 2, 7, 5, 4, 1, 6,
     3, 4, 2, 6, 7, 6, 1, 3, 5},
    {5, 6, 4, 3, 2, 3, 7, 1, 6, 3, 4, 1, 2, 5, 7, 1, 5, 6, 7, 3, 2, 4, 7, 2, 5, 4, 1, 6,
     3, 4, 7, 6, 5, 6, 1, 3, 2},
    {2, 7, 4, 3, 3, 6, 5, 1, 7, 7, 4, 1, 2, 6, 5, 1, 5, 6, 7, 3, 2, 4, 2, 3, 5, 4, 1, 7,
     7, 4, 2, 3, 6, 6, 1, 7, 5},
}};

inline std::set<std::vector<int>> as_sets(const std::vector<std::vector<int>>& regions) {
  std::set<std::vector<int>> out;
  for (auto r : regions) {
    std::sort(r.begin(), r.end());
    out.insert(r);
  }
  return out;
}

// Axial motion written out directly: optional mirror (q, r) -> (q + r, -r), then k clockwise
// turns (q, r) -> (-r, q + r).
inline septoku::HexCoord move(septoku::HexCoord c, bool mirror, int turns) {
  if (mirror) c = {c.q + c.r, -c.r};
  for (int i = 0; i < turns; ++i) c = {-c.r, c.q + c.r};
  return c;
}

// Cell maps of every motion that keeps the cell set and the region sets, found by trying all 12.
inline std::vector<std::vector<CellId>> brute_motion_maps(const septoku::BoardSpec& board) {
  std::vector<std::vector<int>> regs;
  for (const auto& r : board.regions()) regs.push_back(r.cells);
  auto region_set = as_sets(regs);
  std::vector<std::vector<CellId>> out;
  for (int m = 0; m < 2; ++m) {
    for (int k = 0; k < 6; ++k) {
      std::vector<CellId> map;
      bool ok = true;
      for (CellId c = 1; c <= board.cell_count() && ok; ++c) {
        auto to = board.cell_at(move(board.coord(c), m == 1, k));
        if (!to) ok = false;
        else map.push_back(*to);
      }
      if (!ok) continue;
      std::vector<std::vector<int>> moved;
      for (const auto& r : regs) {
        std::vector<int> img;
        for (int c : r) img.push_back(map[static_cast<std::size_t>(c - 1)]);
        moved.push_back(img);
      }
      if (as_sets(moved) == region_set) out.push_back(map);
    }
  }
  return out;
}

// Applies every (motion, permutation) pair and keeps the smallest value vector.
inline std::vector<Symbol> brute_canonical(const septoku::FilledBoard& f) {
  auto maps = brute_motion_maps(*f.board);
  std::vector<Symbol> best;
  std::array<Symbol, 7> perm{};
  std::vector<Symbol> img(f.values.size());
  for (const auto& map : maps) {
    std::iota(perm.begin(), perm.end(), 1);
    do {
      for (std::size_t c = 0; c < f.values.size(); ++c)
        img[static_cast<std::size_t>(map[c] - 1)] = perm[static_cast<std::size_t>(f.values[c] - 1)];
      if (best.empty() || img < best) best = img;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return best;
}

inline int brute_stabilizer_size(const septoku::FilledBoard& f) {
  auto maps = brute_motion_maps(*f.board);
  int count = 0;
  std::array<Symbol, 7> perm{};
  for (const auto& map : maps) {
    std::iota(perm.begin(), perm.end(), 1);
    do {
      bool same = true;
      for (std::size_t c = 0; c < f.values.size() && same; ++c)
        same = f.values[static_cast<std::size_t>(map[c] - 1)] ==
               perm[static_cast<std::size_t>(f.values[c] - 1)];
      count += same;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return count;
}

// Plain backtracking in cell order over region lists; calls visit for every completion.
inline void brute_solve(int cells, const std::vector<std::vector<int>>& regions,
                        const std::map<int, int>& seeds,
                        const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<std::vector<int>> peers(static_cast<std::size_t>(cells + 1));
  for (const auto& r : regions)
    for (int a : r)
      for (int b : r)
        if (a != b) peers[static_cast<std::size_t>(a)].push_back(b);
  std::vector<int> v(static_cast<std::size_t>(cells + 1), 0);
  std::function<void(int)> go = [&](int c) {
    if (c > cells) {
      visit(std::vector<int>(v.begin() + 1, v.end()));
      return;
    }
    auto seeded = seeds.find(c);
    for (int s = 1; s <= 7; ++s) {
      if (seeded != seeds.end() && seeded->second != s) continue;
      bool ok = true;
      for (int p : peers[static_cast<std::size_t>(c)])
        if (v[static_cast<std::size_t>(p)] == s) {
          ok = false;
          break;
        }
      if (!ok) continue;
      v[static_cast<std::size_t>(c)] = s;
      go(c + 1);
      v[static_cast<std::size_t>(c)] = 0;
    }
  };
  go(1);
}

}  // namespace fixtures
