#include <doctest.h>

#include "fixtures.hpp"
#include "septoku/census.hpp"
#include "septoku/errors.hpp"
#include "septoku/generator.hpp"
#include "septoku/textio.hpp"

using namespace septoku;

TEST_CASE("hexagon layout") {
  auto hex = build_board(Family::Hexagon);
  auto text = render_layout(*hex, [](CellId c) { return std::to_string(c); });
  CHECK(text ==
        "      1   2   3   4\n"
        "    5   6   7   8   9\n"
        "  10  11  12  13  14  15\n"
        "16  17  18  19  20  21  22\n"
        "  23  24  25  26  27  28\n"
        "    29  30  31  32  33\n"
        "      34  35  36  37\n");
}

TEST_CASE("puzzle files in both notations") {
  auto p = parse_puzzle("family: hexagon\n# reference\n8=1\n12 = 1\n13=2\n16=1\n18=6\n19=7\n20=3\n25=5\n26=4\n");
  CHECK(p.seeds == std::map<CellId, Symbol>(fixtures::kPuzzleOneSeeds.begin(), fixtures::kPuzzleOneSeeds.end()));
  auto grid = format_puzzle(p);
  CHECK(grid ==
        "family: hexagon\n"
        "   . . . .\n"
        "  . . . 1 .\n"
        " . . 1 2 . .\n"
        "1 . 6 7 3 . .\n"
        " . . 5 4 . .\n"
        "  . . . . .\n"
        "   . . . .\n");
  auto again = parse_puzzle(grid);
  CHECK(again.seeds == p.seeds);
  CHECK(again.board->family() == Family::Hexagon);
}

TEST_CASE("every family round-trips puzzles and boards") {
  for (Family f : kAllFamilies) {
    PuzzleGenerator gen(f, 4);
    auto board = gen.random_board();
    auto p = gen.random_seeds(board, 10);
    CHECK(parse_puzzle(format_puzzle(p)).seeds == p.seeds);
    auto back = parse_filled(format_filled(board));
    CHECK(back == board);
  }
}

TEST_CASE("parse errors name the line and column") {
  auto expect_error = [](const std::string& text, int line, int column) {
    try {
      parse_puzzle(text);
      FAIL("expected a parse error for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == column);
    }
  };
  expect_error("8=1\n", 1, 1);
  expect_error("family: octagon\n", 1, 8);
  expect_error("family: hexagon\n1=1\n2=x\n", 3, 3);
  expect_error("family: hexagon\n40=1\n", 2, 1);
  expect_error("family: hexagon\n1=9\n", 2, 3);
  expect_error("family: hexagon\n1=1\n1=2\n", 3, 1);
  expect_error("family: hexagon\n . . 8 .\n", 2, 6);
  expect_error("family: hexagon\n . . . .\n", 2, 1);  // too few cells
  expect_error("family: hexagon\n1=1\n. . .\n", 3, 1);
  CHECK_THROWS_AS(parse_filled("family: hexagon\n1=1\n"), ParseError);
  auto sol1 = make_filled(build_board(Family::Hexagon), fixtures::kPuzzleOneSolutions[0]);
  auto text = format_filled(sol1);
  auto broken = text;
  broken[broken.find('2')] = '5';  // cell 1 now repeats a symbol of its row
  CHECK_THROWS_AS(parse_filled(broken), ParseError);
}

TEST_CASE("board descriptions round-trip") {
  for (Family f : kAllFamilies) {
    auto b = build_board(f);
    auto text = describe_board(*b);
    CHECK(text == describe_board(*b));
    auto rebuilt = parse_board_description(text);
    CHECK(rebuilt.cell_count() == b->cell_count());
    CHECK(rebuilt.coords() == b->coords());
    REQUIRE(rebuilt.regions().size() == b->regions().size());
    for (std::size_t i = 0; i < b->regions().size(); ++i) {
      CHECK(rebuilt.regions()[i].cells == b->regions()[i].cells);
      CHECK(rebuilt.regions()[i].kind == b->regions()[i].kind);
    }
    CHECK(rebuilt.motions() == b->motions());
    CHECK(describe_board(rebuilt) == text);
  }
  CHECK_THROWS_AS(parse_board_description("{"), ParseError);
  CHECK_THROWS_AS(parse_board_description("{\"family\": \"hexagon\"}"), ParseError);
}

TEST_CASE("census text ends with the summary line") {
  for (auto [f, want] : {std::pair{Family::Hexagon, std::string("classes=6 total=120960\n")},
                         std::pair{Family::Rhombus, std::string("classes=2 total=20160\n")},
                         std::pair{Family::Flower, std::string("classes=3 total=15120\n")}}) {
    auto text = format_census(cached_census(f));
    REQUIRE(text.size() > want.size());
    CHECK(text.substr(text.size() - want.size()) == want);
    CHECK(text == format_census(cached_census(f)));
  }
}
