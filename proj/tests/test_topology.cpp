#include <doctest.h>

#include "fixtures.hpp"
#include "septoku/errors.hpp"
#include "septoku/topology.hpp"

using namespace septoku;

namespace {

int count_kind(const BoardSpec& b, RegionKind kind) {
  int n = 0;
  for (const auto& r : b.regions()) n += r.kind == kind;
  return n;
}

}  // namespace

TEST_CASE("hexagon regions match the reference table, in order") {
  auto b = build_board(Family::Hexagon);
  CHECK(b->cell_count() == 37);
  REQUIRE(b->regions().size() == fixtures::kHexRegions.size());
  for (std::size_t i = 0; i < fixtures::kHexRegions.size(); ++i) {
    CAPTURE(i);
    CHECK(b->regions()[i].id == static_cast<int>(i + 1));
    CHECK(b->regions()[i].cells == fixtures::kHexRegions[i]);
  }
}

TEST_CASE("region_cells examples") {
  auto b = build_board(Family::Hexagon);
  auto circle6 = std::find_if(b->regions().begin(), b->regions().end(),
                              [](const Region& r) { return r.kind == RegionKind::Circle && r.center == 6; });
  REQUIRE(circle6 != b->regions().end());
  CHECK(circle6->cells == std::vector<CellId>{1, 2, 5, 6, 7, 11, 12});
  CHECK(b->region_cells(16) == std::vector<CellId>{3, 8, 14, 21, 28});
  CHECK(b->region_cells(1) == std::vector<CellId>{1, 2, 3, 4});
  CHECK_THROWS_AS(b->region(0), LookupError);
  CHECK_THROWS_AS(b->region(29), LookupError);
}

TEST_CASE("regions_of_cell") {
  auto b = build_board(Family::Hexagon);
  CHECK(b->regions_of_cell(19).size() == 4);
  CHECK(b->regions_of_cell(13).size() == 5);
  CHECK(b->regions_of_cell(1).size() == 4);
  for (CellId c = 1; c <= 37; ++c) {
    auto n = b->regions_of_cell(c).size();
    CHECK((n == 4 || n == 5));
  }
  CHECK_THROWS_AS(b->regions_of_cell(38), LookupError);
  CHECK_THROWS_AS(b->regions_of_cell(0), LookupError);
}

TEST_CASE("antipode") {
  auto b = build_board(Family::Hexagon);
  CHECK(b->antipode(1) == 37);
  CHECK(b->antipode(19) == 19);
  CHECK(b->antipode(7) == 31);
  for (Family f : kAllFamilies) {
    auto bf = build_board(f);
    for (CellId c = 1; c <= bf->cell_count(); ++c) CHECK(bf->antipode(bf->antipode(c)) == c);
  }
}

TEST_CASE("row windows") {
  std::vector<CellId> five{1, 2, 3, 4, 5};
  CHECK(row_windows(five).size() == 1);
  std::vector<CellId> nine{1, 2, 3, 4, 5, 6, 7, 8, 9};
  auto w = row_windows(nine);
  REQUIRE(w.size() == 3);
  CHECK(w[2] == std::vector<CellId>{3, 4, 5, 6, 7, 8, 9});
  auto hex = build_board(Family::Hexagon);
  for (Direction d : {Direction::E, Direction::SE, Direction::SW})
    for (const auto& row : maximal_runs(*hex, d)) CHECK(row_windows(row).size() == 1);
}

TEST_CASE("variant geometry") {
  auto rh = build_board(Family::Rhombus);
  CHECK(rh->cell_count() == 49);
  CHECK(count_kind(*rh, RegionKind::Circle) == 9);

  auto fl = build_board(Family::Flower);
  CHECK(fl->cell_count() == 49);
  CHECK(fl->regions().size() == 34);
  int long_rows = 0;
  for (const auto& r : fl->regions()) long_rows += r.kind == RegionKind::Row && r.cells.size() == 7;
  CHECK(long_rows == 15);
  // flower circles tile the board
  std::set<CellId> covered;
  int circle_cells = 0;
  for (const auto& r : fl->regions())
    if (r.kind == RegionKind::Circle) {
      circle_cells += static_cast<int>(r.cells.size());
      covered.insert(r.cells.begin(), r.cells.end());
    }
  CHECK(circle_cells == 49);
  CHECK(covered.size() == 49);

  auto st = build_board(Family::Star);
  CHECK(st->cell_count() == 73);
  for (const auto& r : st->regions()) CHECK(r.cells.size() <= 7);
  CHECK(count_kind(*st, RegionKind::RowWindow) > 0);
}

TEST_CASE("circles are neighbourhoods and rows are straight") {
  for (Family f : kAllFamilies) {
    auto b = build_board(f);
    CAPTURE(family_name(f));
    for (const auto& r : b->regions()) {
      if (r.kind == RegionKind::Circle) {
        auto c = b->coord(r.center);
        std::set<HexCoord> want{c, {c.q + 1, c.r}, {c.q - 1, c.r}, {c.q, c.r + 1},
                                {c.q, c.r - 1}, {c.q + 1, c.r - 1}, {c.q - 1, c.r + 1}};
        std::set<HexCoord> got;
        for (CellId x : r.cells) got.insert(b->coord(x));
        CHECK(got == want);
      } else {
        std::set<int> fixed;
        for (CellId x : r.cells) {
          auto h = b->coord(x);
          fixed.insert(r.direction == Direction::E ? h.r : r.direction == Direction::SE ? h.q : h.s());
        }
        CHECK(fixed.size() == 1);
      }
    }
  }
}

TEST_CASE("symmetry groups agree with a direct search") {
  std::map<Family, std::size_t> expected{
      {Family::Hexagon, 12}, {Family::Rhombus, 4}, {Family::Star, 12}, {Family::Flower, 6}};
  for (Family f : kAllFamilies) {
    auto b = build_board(f);
    auto maps = fixtures::brute_motion_maps(*b);
    CHECK(maps.size() == expected[f]);
    CHECK(b->motion_maps() == maps);
  }
}

TEST_CASE("motion algebra") {
  auto motions = all_motions();
  CHECK(motions.size() == 12);
  HexCoord p{2, -1};
  for (auto a : motions) {
    CHECK(compose_motions(a, invert_motion(a)) == SymmetryDescriptor{});
    for (auto b : motions)
      CHECK(apply_motion(compose_motions(a, b), p) == apply_motion(b, apply_motion(a, p)));
  }
  // corner cycle under one clockwise turn
  auto hex = build_board(Family::Hexagon);
  const auto& rot = hex->motion_maps()[1];
  REQUIRE(hex->motions()[1] == SymmetryDescriptor{false, 1});
  std::vector<CellId> cycle{1, 4, 22, 37, 34, 16, 1};
  for (std::size_t i = 0; i + 1 < cycle.size(); ++i)
    CHECK(rot[static_cast<std::size_t>(cycle[i] - 1)] == cycle[i + 1]);
}

TEST_CASE("board construction rejects bad regions") {
  std::vector<HexCoord> cells{{0, 0}, {1, 0}, {2, 0}};
  Region dup{1, RegionKind::Row, Direction::E, 0, 0, {1, 1}};
  CHECK_THROWS_AS(BoardSpec(Family::Hexagon, cells, {dup}), InvalidArgument);
  Region bent{1, RegionKind::Row, Direction::SE, 0, 0, {1, 2}};
  CHECK_THROWS_AS(BoardSpec(Family::Hexagon, cells, {bent}), InvalidArgument);
  CHECK_THROWS_AS(parse_family("octagon"), InvalidArgument);
}

TEST_CASE("without_region") {
  auto hex = build_board(Family::Hexagon);
  auto smaller = hex->without_region(25);
  CHECK(smaller.regions().size() == 27);
  CHECK_THROWS_AS(smaller.region(25), LookupError);
  CHECK(smaller.region(26).cells == hex->region(26).cells);
}
