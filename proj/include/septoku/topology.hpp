#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace septoku {

/// 1-based cell index, row-major top-to-bottom then left-to-right.
using CellId = int;
/// Symbols are 1..kSymbolCount; 0 marks an empty cell in partial assignments.
using Symbol = int;

inline constexpr int kSymbolCount = 7;

enum class Family { Hexagon, Rhombus, Star, Flower };

inline constexpr Family kAllFamilies[] = {Family::Hexagon, Family::Rhombus, Family::Star,
                                          Family::Flower};

std::string_view family_name(Family family);
/// Throws InvalidArgument for an unknown name.
Family parse_family(std::string_view name);

/// Axial coordinate on a pointy-top hex grid; r grows downwards, s = -q - r.
struct HexCoord {
  int q = 0;
  int r = 0;

  constexpr int s() const { return -q - r; }
  constexpr auto operator<=>(const HexCoord&) const = default;
};

/// Row directions. E rows keep r fixed, SE rows keep q fixed, SW rows keep s fixed.
enum class Direction { E, SE, SW };

std::string_view direction_name(Direction direction);
Direction parse_direction(std::string_view name);

enum class RegionKind { Row, Circle, RowWindow };

std::string_view region_kind_name(RegionKind kind);

struct Region {
  int id = 0;
  RegionKind kind = RegionKind::Row;
  Direction direction = Direction::E;  // Row and RowWindow
  CellId center = 0;                   // Circle
  int offset = 0;                      // RowWindow: start index inside the maximal run
  std::vector<CellId> cells;           // ascending
};

/// A rigid motion of the hex grid about the origin, read left to right:
/// first (Flx) if `reflected`, then (Rot)^rotation.
/// (Rot) turns the board 60 degrees clockwise; (Flx) mirrors it across the horizontal axis.
struct SymmetryDescriptor {
  bool reflected = false;
  int rotation = 0;  // 0..5

  auto operator<=>(const SymmetryDescriptor&) const = default;
};

HexCoord rotate_clockwise(HexCoord c);
HexCoord reflect_horizontal(HexCoord c);
HexCoord apply_motion(SymmetryDescriptor motion, HexCoord c);
/// The motion that performs `first` and then `second`.
SymmetryDescriptor compose_motions(SymmetryDescriptor first, SymmetryDescriptor second);
SymmetryDescriptor invert_motion(SymmetryDescriptor motion);
/// All twelve motions, rotations first.
std::vector<SymmetryDescriptor> all_motions();

/// One board family instance: cells with coordinates plus the list of regions that must hold
/// pairwise distinct symbols. Immutable after construction.
class BoardSpec {
 public:
  /// Cells are numbered 1..cells.size() in the given order. Validates region invariants and
  /// derives the motions that preserve both the cell set and the region system.
  BoardSpec(Family family, std::vector<HexCoord> cells, std::vector<Region> regions);

  Family family() const { return family_; }
  int cell_count() const { return static_cast<int>(coords_.size()); }
  int symbol_count() const { return kSymbolCount; }
  bool contains(CellId cell) const { return cell >= 1 && cell <= cell_count(); }

  HexCoord coord(CellId cell) const;
  std::optional<CellId> cell_at(HexCoord c) const;
  const std::vector<HexCoord>& coords() const { return coords_; }

  const std::vector<Region>& regions() const { return regions_; }
  const Region& region(int id) const;
  std::vector<CellId> region_cells(int id) const;
  std::vector<int> regions_of_cell(CellId cell) const;

  /// Image under the half turn.
  CellId antipode(CellId cell) const;

  /// Cells sharing at least one region with `cell`, ascending.
  const std::vector<CellId>& peers(CellId cell) const;

  /// Motions mapping the board and its region system onto themselves, in all_motions() order.
  const std::vector<SymmetryDescriptor>& motions() const { return motions_; }
  /// cell_map[i] is the image of cell i+1 under motions()[k].
  const std::vector<std::vector<CellId>>& motion_maps() const { return motion_maps_; }

  /// Copy of this board with one region deleted; remaining ids are unchanged.
  BoardSpec without_region(int id) const;

 private:
  void check_cell(CellId cell) const;

  Family family_;
  std::vector<HexCoord> coords_;
  std::map<HexCoord, CellId> index_;
  std::vector<Region> regions_;
  std::vector<std::vector<int>> cell_regions_;
  std::vector<std::vector<CellId>> peers_;
  std::vector<SymmetryDescriptor> motions_;
  std::vector<std::vector<CellId>> motion_maps_;
};

using BoardRef = std::shared_ptr<const BoardSpec>;

/// Shared, cached instance of a family's board.
BoardRef build_board(Family family);

/// Maximal straight runs of at least `min_len` cells along `direction`, each ascending.
std::vector<std::vector<CellId>> maximal_runs(const BoardSpec& board, Direction direction,
                                              int min_len = 2);

/// The row itself when it is short enough, otherwise every contiguous window of `max_len` cells.
std::vector<std::vector<CellId>> row_windows(std::span<const CellId> row, int max_len = 7);

/// Circle centers of the hexagon board: 6, 8, 17, 19, 21, 30, 32.
std::vector<CellId> hexagon_circle_centers();
/// Corners of the hexagon board: 1, 4, 16, 22, 34, 37.
std::vector<CellId> hexagon_corners();
inline constexpr CellId kHexagonCenter = 19;

}  // namespace septoku
