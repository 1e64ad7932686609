#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "septoku/census.hpp"
#include "septoku/solver.hpp"
#include "septoku/symmetry.hpp"

namespace septoku {

/// Hexagonal ASCII drawing: one text line per board row, cells placed at column 2q + r so that
/// neighbouring rows interleave. Labels are left-aligned in a field as wide as the widest label.
std::string render_layout(const BoardSpec& board,
                          const std::function<std::string(CellId)>& label);

/// "family: <name>" followed by the layout, with '.' for empty cells.
std::string format_puzzle(const Puzzle& puzzle);
std::string format_filled(const FilledBoard& filled);

/// "family: <name>" then either "<cell>=<symbol>" seed lines or grid tokens ('1'..'7' or '.')
/// in cell order. Blank lines and lines starting with '#' are ignored. Throws ParseError.
Puzzle parse_puzzle(std::string_view text);
/// A puzzle file with every cell given and a valid assignment. Throws ParseError.
FilledBoard parse_filled(std::string_view text);

/// JSON document with the family, cells {id, q, r} and regions {id, kind, cells, ...}.
std::string describe_board(const BoardSpec& board);
/// Rebuilds a board from describe_board output. Throws ParseError.
BoardSpec parse_board_description(std::string_view text);

/// Human-readable census with per-class details and check results; the last line is
/// "classes=K total=T".
std::string format_census(const CensusReport& report);

}  // namespace septoku
