#include "septoku/topology.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "septoku/errors.hpp"

namespace septoku {

namespace {

constexpr std::array<HexCoord, 6> kNeighborOffsets = {
    HexCoord{1, 0}, HexCoord{-1, 0}, HexCoord{0, 1}, HexCoord{0, -1}, HexCoord{1, -1},
    HexCoord{-1, 1}};

HexCoord add(HexCoord a, HexCoord b) { return {a.q + b.q, a.r + b.r}; }

HexCoord step_of(Direction d) {
  switch (d) {
    case Direction::E:
      return {1, 0};
    case Direction::SE:
      return {0, 1};
    case Direction::SW:
      return {-1, 1};
  }
  return {};
}

// Coordinate held constant along a row of the given direction.
int row_key(Direction d, HexCoord c) {
  switch (d) {
    case Direction::E:
      return c.r;
    case Direction::SE:
      return c.q;
    case Direction::SW:
      return c.s();
  }
  return 0;
}

std::vector<HexCoord> circle_of(HexCoord center) {
  std::vector<HexCoord> out{center};
  for (auto off : kNeighborOffsets) out.push_back(add(center, off));
  return out;
}

std::vector<HexCoord> sorted_row_major(std::set<HexCoord> cells) {
  std::vector<HexCoord> out(cells.begin(), cells.end());
  std::sort(out.begin(), out.end(), [](HexCoord a, HexCoord b) {
    return a.r != b.r ? a.r < b.r : a.q < b.q;
  });
  return out;
}

std::vector<std::vector<CellId>> normalized_region_sets(const std::vector<Region>& regions) {
  std::vector<std::vector<CellId>> sets;
  sets.reserve(regions.size());
  for (const auto& reg : regions) sets.push_back(reg.cells);
  std::sort(sets.begin(), sets.end());
  return sets;
}

bool same_map(SymmetryDescriptor a, SymmetryDescriptor b) {
  // A linear map of the lattice is fixed by the images of two independent vectors.
  for (HexCoord probe : {HexCoord{1, 0}, HexCoord{0, 1}}) {
    if (apply_motion(a, probe) != apply_motion(b, probe)) return false;
  }
  return true;
}

struct BoardLayout {
  std::vector<HexCoord> cells;
  std::vector<HexCoord> circle_centers;
  int window = 0;  // 0: whole rows; otherwise rows longer than this are split into windows
};

BoardSpec assemble(Family family, const BoardLayout& layout) {
  std::vector<Region> regions;
  // Provisional board so maximal_runs can query coordinates.
  BoardSpec bare(family, layout.cells, {});
  auto push_rows = [&](Direction d, bool descending) {
    auto runs = maximal_runs(bare, d);
    std::stable_sort(runs.begin(), runs.end(), [&](const auto& a, const auto& b) {
      int ka = row_key(d, bare.coord(a.front()));
      int kb = row_key(d, bare.coord(b.front()));
      return descending ? ka > kb : ka < kb;
    });
    for (const auto& run : runs) {
      if (layout.window > 0 && static_cast<int>(run.size()) > layout.window) {
        auto windows = row_windows(run, layout.window);
        for (std::size_t k = 0; k < windows.size(); ++k) {
          Region reg;
          reg.kind = RegionKind::RowWindow;
          reg.direction = d;
          reg.offset = static_cast<int>(k);
          reg.cells = std::move(windows[k]);
          regions.push_back(std::move(reg));
        }
      } else {
        Region reg;
        reg.kind = RegionKind::Row;
        reg.direction = d;
        reg.cells = run;
        regions.push_back(std::move(reg));
      }
    }
  };
  push_rows(Direction::E, false);
  push_rows(Direction::SW, true);
  push_rows(Direction::SE, true);

  std::vector<CellId> centers;
  for (auto c : layout.circle_centers) centers.push_back(*bare.cell_at(c));
  std::sort(centers.begin(), centers.end());
  for (CellId center : centers) {
    Region reg;
    reg.kind = RegionKind::Circle;
    reg.center = center;
    for (auto c : circle_of(bare.coord(center))) reg.cells.push_back(*bare.cell_at(c));
    std::sort(reg.cells.begin(), reg.cells.end());
    regions.push_back(std::move(reg));
  }
  for (std::size_t i = 0; i < regions.size(); ++i) regions[i].id = static_cast<int>(i) + 1;
  return BoardSpec(family, layout.cells, std::move(regions));
}

// Centers on the even sublattice whose whole circle lies on the board.
std::vector<HexCoord> sublattice_centers(const std::vector<HexCoord>& cells) {
  std::set<HexCoord> on_board(cells.begin(), cells.end());
  std::vector<HexCoord> centers;
  for (auto c : cells) {
    if (c.q % 2 != 0 || c.r % 2 != 0) continue;
    auto circle = circle_of(c);
    if (std::all_of(circle.begin(), circle.end(),
                    [&](HexCoord x) { return on_board.count(x) > 0; })) {
      centers.push_back(c);
    }
  }
  return centers;
}

BoardLayout hexagon_layout() {
  std::set<HexCoord> cells;
  for (int r = -3; r <= 3; ++r)
    for (int q = std::max(-3, -3 - r); q <= std::min(3, 3 - r); ++q) cells.insert({q, r});
  BoardLayout layout;
  layout.cells = sorted_row_major(cells);
  layout.circle_centers = sublattice_centers(layout.cells);
  return layout;
}

BoardLayout rhombus_layout() {
  std::set<HexCoord> cells;
  for (int r = -3; r <= 3; ++r)
    for (int q = -3; q <= 3; ++q) cells.insert({q, r});
  BoardLayout layout;
  layout.cells = sorted_row_major(cells);
  layout.circle_centers = sublattice_centers(layout.cells);
  return layout;
}

BoardLayout star_layout() {
  std::set<HexCoord> cells;
  for (int r = -6; r <= 6; ++r) {
    for (int q = -6; q <= 6; ++q) {
      HexCoord c{q, r};
      bool up = c.q >= -3 && c.r >= -3 && c.s() >= -3;
      bool down = c.q <= 3 && c.r <= 3 && c.s() <= 3;
      if (up || down) cells.insert(c);
    }
  }
  BoardLayout layout;
  layout.cells = sorted_row_major(cells);
  layout.circle_centers = sublattice_centers(layout.cells);
  layout.window = kSymbolCount;
  return layout;
}

BoardLayout flower_layout() {
  std::vector<HexCoord> centers{{0, 0}};
  HexCoord petal{2, 1};
  for (int k = 0; k < 6; ++k) {
    centers.push_back(petal);
    petal = rotate_clockwise(petal);
  }
  std::set<HexCoord> cells;
  for (auto c : centers)
    for (auto x : circle_of(c)) cells.insert(x);
  BoardLayout layout;
  layout.cells = sorted_row_major(cells);
  layout.circle_centers = centers;
  return layout;
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::Hexagon:
      return "hexagon";
    case Family::Rhombus:
      return "rhombus";
    case Family::Star:
      return "star";
    case Family::Flower:
      return "flower";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : kAllFamilies)
    if (family_name(f) == name) return f;
  throw InvalidArgument("unknown board family '" + std::string(name) + "'");
}

std::string_view direction_name(Direction direction) {
  switch (direction) {
    case Direction::E:
      return "E";
    case Direction::SE:
      return "SE";
    case Direction::SW:
      return "SW";
  }
  return "?";
}

Direction parse_direction(std::string_view name) {
  for (Direction d : {Direction::E, Direction::SE, Direction::SW})
    if (direction_name(d) == name) return d;
  throw InvalidArgument("unknown row direction '" + std::string(name) + "'");
}

std::string_view region_kind_name(RegionKind kind) {
  switch (kind) {
    case RegionKind::Row:
      return "row";
    case RegionKind::Circle:
      return "circle";
    case RegionKind::RowWindow:
      return "window";
  }
  return "?";
}

HexCoord rotate_clockwise(HexCoord c) { return {-c.r, c.q + c.r}; }

HexCoord reflect_horizontal(HexCoord c) { return {c.q + c.r, -c.r}; }

HexCoord apply_motion(SymmetryDescriptor motion, HexCoord c) {
  if (motion.reflected) c = reflect_horizontal(c);
  for (int k = 0; k < ((motion.rotation % 6) + 6) % 6; ++k) c = rotate_clockwise(c);
  return c;
}

std::vector<SymmetryDescriptor> all_motions() {
  std::vector<SymmetryDescriptor> out;
  for (bool reflected : {false, true})
    for (int k = 0; k < 6; ++k) out.push_back({reflected, k});
  return out;
}

SymmetryDescriptor compose_motions(SymmetryDescriptor first, SymmetryDescriptor second) {
  for (auto candidate : all_motions()) {
    bool same = true;
    for (HexCoord probe : {HexCoord{1, 0}, HexCoord{0, 1}}) {
      if (apply_motion(candidate, probe) != apply_motion(second, apply_motion(first, probe))) {
        same = false;
        break;
      }
    }
    if (same) return candidate;
  }
  throw Error("motion composition left the dihedral group");
}

SymmetryDescriptor invert_motion(SymmetryDescriptor motion) {
  for (auto candidate : all_motions())
    if (same_map(compose_motions(motion, candidate), SymmetryDescriptor{})) return candidate;
  throw Error("motion has no inverse");
}

BoardSpec::BoardSpec(Family family, std::vector<HexCoord> cells, std::vector<Region> regions)
    : family_(family), coords_(std::move(cells)), regions_(std::move(regions)) {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!index_.emplace(coords_[i], static_cast<CellId>(i + 1)).second)
      throw InvalidArgument("duplicate cell coordinate");
  }
  cell_regions_.assign(coords_.size(), {});
  std::vector<std::set<CellId>> peer_sets(coords_.size());
  std::set<int> ids;
  for (auto& reg : regions_) {
    if (!ids.insert(reg.id).second) throw InvalidArgument("duplicate region id");
    std::sort(reg.cells.begin(), reg.cells.end());
    if (reg.cells.size() < 2 || reg.cells.size() > static_cast<std::size_t>(kSymbolCount))
      throw InvalidArgument("region " + std::to_string(reg.id) + " has " +
                            std::to_string(reg.cells.size()) + " cells");
    if (std::adjacent_find(reg.cells.begin(), reg.cells.end()) != reg.cells.end())
      throw InvalidArgument("region " + std::to_string(reg.id) + " repeats a cell");
    for (CellId c : reg.cells) check_cell(c);
    if (reg.kind == RegionKind::Circle) {
      check_cell(reg.center);
      std::vector<CellId> expect;
      for (auto x : circle_of(coord(reg.center))) {
        auto id = cell_at(x);
        if (!id) throw InvalidArgument("circle " + std::to_string(reg.center) + " leaves the board");
        expect.push_back(*id);
      }
      std::sort(expect.begin(), expect.end());
      if (expect != reg.cells)
        throw InvalidArgument("circle " + std::to_string(reg.center) + " is not a neighborhood");
    } else {
      HexCoord step = step_of(reg.direction);
      for (std::size_t i = 1; i < reg.cells.size(); ++i) {
        if (add(coord(reg.cells[i - 1]), step) != coord(reg.cells[i]))
          throw InvalidArgument("row region " + std::to_string(reg.id) + " is not a straight run");
      }
    }
    for (CellId c : reg.cells) {
      cell_regions_[c - 1].push_back(reg.id);
      for (CellId o : reg.cells)
        if (o != c) peer_sets[c - 1].insert(o);
    }
  }
  peers_.reserve(coords_.size());
  for (auto& s : peer_sets) peers_.emplace_back(s.begin(), s.end());

  const auto region_sets = normalized_region_sets(regions_);
  for (auto motion : all_motions()) {
    std::vector<CellId> map(coords_.size());
    bool ok = true;
    for (std::size_t i = 0; i < coords_.size() && ok; ++i) {
      auto image = cell_at(apply_motion(motion, coords_[i]));
      if (!image) ok = false;
      else map[i] = *image;
    }
    if (!ok) continue;
    std::vector<std::vector<CellId>> moved;
    moved.reserve(regions_.size());
    for (const auto& reg : regions_) {
      std::vector<CellId> img;
      for (CellId c : reg.cells) img.push_back(map[c - 1]);
      std::sort(img.begin(), img.end());
      moved.push_back(std::move(img));
    }
    std::sort(moved.begin(), moved.end());
    if (moved != region_sets) continue;
    motions_.push_back(motion);
    motion_maps_.push_back(std::move(map));
  }
}

void BoardSpec::check_cell(CellId cell) const {
  if (!contains(cell))
    throw LookupError("cell " + std::to_string(cell) + " is not on the " +
                      std::string(family_name(family_)) + " board");
}

HexCoord BoardSpec::coord(CellId cell) const {
  check_cell(cell);
  return coords_[cell - 1];
}

std::optional<CellId> BoardSpec::cell_at(HexCoord c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Region& BoardSpec::region(int id) const {
  for (const auto& reg : regions_)
    if (reg.id == id) return reg;
  throw LookupError("region " + std::to_string(id) + " does not exist");
}

std::vector<CellId> BoardSpec::region_cells(int id) const { return region(id).cells; }

std::vector<int> BoardSpec::regions_of_cell(CellId cell) const {
  check_cell(cell);
  return cell_regions_[cell - 1];
}

CellId BoardSpec::antipode(CellId cell) const {
  HexCoord c = coord(cell);
  auto image = cell_at({-c.q, -c.r});
  if (!image) throw UnsupportedSymmetry("board is not centrally symmetric");
  return *image;
}

const std::vector<CellId>& BoardSpec::peers(CellId cell) const {
  check_cell(cell);
  return peers_[cell - 1];
}

BoardSpec BoardSpec::without_region(int id) const {
  region(id);
  std::vector<Region> kept;
  for (const auto& reg : regions_)
    if (reg.id != id) kept.push_back(reg);
  return BoardSpec(family_, coords_, std::move(kept));
}

BoardRef build_board(Family family) {
  static const std::array<BoardRef, 4> boards = {
      std::make_shared<const BoardSpec>(assemble(Family::Hexagon, hexagon_layout())),
      std::make_shared<const BoardSpec>(assemble(Family::Rhombus, rhombus_layout())),
      std::make_shared<const BoardSpec>(assemble(Family::Star, star_layout())),
      std::make_shared<const BoardSpec>(assemble(Family::Flower, flower_layout())),
  };
  return boards[static_cast<std::size_t>(family)];
}

std::vector<std::vector<CellId>> maximal_runs(const BoardSpec& board, Direction direction,
                                              int min_len) {
  const HexCoord step = step_of(direction);
  std::vector<std::vector<CellId>> runs;
  for (CellId c = 1; c <= board.cell_count(); ++c) {
    HexCoord here = board.coord(c);
    // Start a run only at a cell with no predecessor along the direction.
    if (board.cell_at({here.q - step.q, here.r - step.r})) continue;
    std::vector<CellId> run;
    for (auto cur = std::optional<CellId>(c); cur; cur = board.cell_at(add(board.coord(*cur), step)))
      run.push_back(*cur);
    if (static_cast<int>(run.size()) >= min_len) runs.push_back(std::move(run));
  }
  return runs;
}

std::vector<std::vector<CellId>> row_windows(std::span<const CellId> row, int max_len) {
  if (max_len < 1) throw InvalidArgument("window length must be positive");
  if (static_cast<int>(row.size()) <= max_len) return {std::vector<CellId>(row.begin(), row.end())};
  std::vector<std::vector<CellId>> out;
  for (std::size_t start = 0; start + max_len <= row.size(); ++start)
    out.emplace_back(row.begin() + start, row.begin() + start + max_len);
  return out;
}

std::vector<CellId> hexagon_circle_centers() { return {6, 8, 17, 19, 21, 30, 32}; }

std::vector<CellId> hexagon_corners() { return {1, 4, 16, 22, 34, 37}; }

}  // namespace septoku
