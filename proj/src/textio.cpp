#include "septoku/textio.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include <json.hpp>

#include "septoku/errors.hpp"

namespace septoku {

namespace {

using nlohmann::json;

std::string family_header(Family family) {
  return "family: " + std::string(family_name(family)) + "\n";
}

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(std::string_view s, int line, int column, const char* what) {
  if (s.empty()) throw ParseError(line, column, std::string("missing ") + what);
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9')
      throw ParseError(line, column, std::string("expected ") + what + ", got '" + std::string(s) + "'");
    if (v > 100000) throw ParseError(line, column, std::string(what) + " too large");
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

std::string render_layout(const BoardSpec& board,
                          const std::function<std::string(CellId)>& label) {
  std::vector<std::string> labels;
  std::size_t width = 1;
  int min_x = INT_MAX;
  for (CellId c = 1; c <= board.cell_count(); ++c) {
    labels.push_back(label(c));
    width = std::max(width, labels.back().size());
    auto h = board.coord(c);
    min_x = std::min(min_x, 2 * h.q + h.r);
  }
  const int unit = static_cast<int>(width + 2) / 2;
  std::ostringstream out;
  std::string line;
  int current_r = board.coord(1).r;
  auto flush = [&] {
    auto end = line.find_last_not_of(' ');
    out << line.substr(0, end == std::string::npos ? 0 : end + 1) << "\n";
    line.clear();
  };
  for (CellId c = 1; c <= board.cell_count(); ++c) {
    auto h = board.coord(c);
    if (h.r != current_r) {
      flush();
      current_r = h.r;
    }
    auto col = static_cast<std::size_t>((2 * h.q + h.r - min_x) * unit);
    if (line.size() < col) line.resize(col, ' ');
    std::string cell = labels[static_cast<std::size_t>(c - 1)];
    cell.resize(width, ' ');
    line += cell;
  }
  flush();
  return out.str();
}

std::string format_puzzle(const Puzzle& puzzle) {
  return family_header(puzzle.board->family()) + render_layout(*puzzle.board, [&](CellId c) {
           auto it = puzzle.seeds.find(c);
           return it == puzzle.seeds.end() ? std::string(".") : std::to_string(it->second);
         });
}

std::string format_filled(const FilledBoard& filled) {
  return family_header(filled.family()) +
         render_layout(*filled.board, [&](CellId c) { return std::to_string(filled.at(c)); });
}

Puzzle parse_puzzle(std::string_view text) {
  std::optional<Puzzle> puzzle;
  enum class Mode { Unknown, Seeds, Grid } mode = Mode::Unknown;
  int grid_cell = 0;
  int line_no = 0;
  int last_line = 1;  // last non-blank line, for errors about the file as a whole
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    last_line = line_no;
    const int indent = static_cast<int>(raw.find_first_not_of(" \t")) + 1;

    if (!puzzle) {
      constexpr std::string_view key = "family:";
      if (line.substr(0, key.size()) != key)
        throw ParseError(line_no, indent, "expected 'family: <name>' header");
      try {
        puzzle = Puzzle{build_board(parse_family(trim(line.substr(key.size())))), {}};
      } catch (const InvalidArgument& e) {
        throw ParseError(line_no, indent + static_cast<int>(key.size()), e.what());
      }
      continue;
    }
    const BoardSpec& board = *puzzle->board;

    if (line.find('=') != std::string_view::npos) {
      if (mode == Mode::Grid) throw ParseError(line_no, indent, "seed line after grid rows");
      mode = Mode::Seeds;
      auto eq = line.find('=');
      int cell = parse_int(trim(line.substr(0, eq)), line_no, indent, "cell id");
      int col_sym = indent + static_cast<int>(eq) + 1;
      int symbol = parse_int(trim(line.substr(eq + 1)), line_no, col_sym, "symbol");
      if (!board.contains(cell))
        throw ParseError(line_no, indent, "cell " + std::to_string(cell) + " is not on the " +
                                              std::string(family_name(board.family())) + " board");
      if (symbol < 1 || symbol > kSymbolCount)
        throw ParseError(line_no, col_sym, "symbol must be 1..7");
      if (!puzzle->seeds.emplace(cell, symbol).second)
        throw ParseError(line_no, indent, "cell " + std::to_string(cell) + " seeded twice");
      continue;
    }

    if (mode == Mode::Seeds) throw ParseError(line_no, indent, "grid row after seed lines");
    mode = Mode::Grid;
    for (std::size_t i = 0; i < raw.size();) {
      char ch = raw[i];
      if (ch == ' ' || ch == '\t' || ch == '\r') {
        ++i;
        continue;
      }
      const int column = static_cast<int>(i) + 1;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
      std::string_view tok = raw.substr(i, j - i);
      i = j;
      if (tok.size() != 1 || !(tok[0] == '.' || (tok[0] >= '1' && tok[0] <= '7')))
        throw ParseError(line_no, column, "expected a symbol 1..7 or '.', got '" + std::string(tok) + "'");
      if (++grid_cell > board.cell_count())
        throw ParseError(line_no, column, "more than " + std::to_string(board.cell_count()) + " cells");
      if (tok[0] != '.') puzzle->seeds[grid_cell] = tok[0] - '0';
    }
  }
  if (!puzzle) throw ParseError(last_line, 1, "missing 'family: <name>' header");
  if (mode == Mode::Grid && grid_cell != puzzle->board->cell_count())
    throw ParseError(last_line, 1, "grid has " + std::to_string(grid_cell) + " cells, expected " +
                                     std::to_string(puzzle->board->cell_count()));
  try {
    validate_puzzle(*puzzle);
  } catch (const MalformedPuzzle& e) {
    throw ParseError(last_line, 1, e.what());
  }
  return *puzzle;
}

FilledBoard parse_filled(std::string_view text) {
  Puzzle p = parse_puzzle(text);
  const int n = p.board->cell_count();
  if (static_cast<int>(p.seeds.size()) != n)
    throw ParseError(1, 1, "board has " + std::to_string(p.seeds.size()) + " of " +
                               std::to_string(n) + " cells filled");
  std::vector<Symbol> values;
  for (auto [cell, symbol] : p.seeds) values.push_back(symbol);
  try {
    FilledBoard out = make_filled(p.board, std::move(values));
    if (!check_filled(out)) throw ParseError(1, 1, "board violates a region constraint");
    return out;
  } catch (const MalformedPuzzle& e) {
    throw ParseError(1, 1, e.what());
  }
}

std::string describe_board(const BoardSpec& board) {
  json doc;
  doc["family"] = family_name(board.family());
  doc["cell_count"] = board.cell_count();
  doc["symbols"] = kSymbolCount;
  json cells = json::array();
  for (CellId c = 1; c <= board.cell_count(); ++c) {
    auto h = board.coord(c);
    cells.push_back({{"id", c}, {"q", h.q}, {"r", h.r}});
  }
  doc["cells"] = std::move(cells);
  json regions = json::array();
  for (const auto& reg : board.regions()) {
    json r{{"id", reg.id}, {"kind", region_kind_name(reg.kind)}};
    if (reg.kind == RegionKind::Circle) {
      r["center"] = reg.center;
    } else {
      r["direction"] = direction_name(reg.direction);
      if (reg.kind == RegionKind::RowWindow) r["offset"] = reg.offset;
    }
    r["cells"] = reg.cells;
    regions.push_back(std::move(r));
  }
  doc["regions"] = std::move(regions);
  json motions = json::array();
  for (auto m : board.motions()) motions.push_back(format_motion(m));
  doc["symmetries"] = std::move(motions);
  return doc.dump(1) + "\n";
}

BoardSpec parse_board_description(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(1, static_cast<int>(e.byte), e.what());
  }
  try {
    Family family = parse_family(doc.at("family").get<std::string>());
    std::vector<HexCoord> coords;
    int expected = 1;
    for (const auto& c : doc.at("cells")) {
      if (c.at("id").get<int>() != expected++) throw ParseError(1, 1, "cell ids must run 1..n");
      coords.push_back({c.at("q").get<int>(), c.at("r").get<int>()});
    }
    std::vector<Region> regions;
    for (const auto& r : doc.at("regions")) {
      Region reg;
      reg.id = r.at("id").get<int>();
      std::string kind = r.at("kind").get<std::string>();
      if (kind == region_kind_name(RegionKind::Circle)) {
        reg.kind = RegionKind::Circle;
        reg.center = r.at("center").get<int>();
      } else {
        reg.kind = kind == region_kind_name(RegionKind::Row) ? RegionKind::Row : RegionKind::RowWindow;
        if (reg.kind == RegionKind::RowWindow && kind != region_kind_name(RegionKind::RowWindow))
          throw ParseError(1, 1, "unknown region kind '" + kind + "'");
        reg.direction = parse_direction(r.at("direction").get<std::string>());
        if (reg.kind == RegionKind::RowWindow) reg.offset = r.at("offset").get<int>();
      }
      reg.cells = r.at("cells").get<std::vector<CellId>>();
      regions.push_back(std::move(reg));
    }
    return BoardSpec(family, std::move(coords), std::move(regions));
  } catch (const json::exception& e) {
    throw ParseError(1, 1, e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(1, 1, e.what());
  }
}

std::string format_census(const CensusReport& report) {
  std::ostringstream out;
  out << "family: " << family_name(report.family) << "\n";
  out << "cells: " << report.cell_count << "\n";
  out << "regions: " << report.region_count << "\n";
  out << "transforms: " << report.transform_count << "\n";
  out << "raw solutions: " << report.raw_solutions << "\n";
  for (const auto& cls : report.classes) {
    out << "\nclass " << cls.label << "\n";
    out << "  stabilizer: " << cls.stabilizer_size << "\n";
    out << "  orbit: " << cls.orbit_size << "\n";
    out << "  profile:";
    for (int p : cls.profile) out << " " << p;
    out << "\n";
    if (cls.pairing) out << "  pairing: " << cls.pairing->to_string() << "\n";
    if (cls.core_class) out << "  core: " << *cls.core_class << "\n";
    std::istringstream drawing(render_layout(
        *cls.canonical.board, [&](CellId c) { return std::to_string(cls.canonical.at(c)); }));
    for (std::string line; std::getline(drawing, line);) out << "    " << line << "\n";
  }
  out << "\nchecks:\n";
  for (const auto& chk : report.checks) {
    out << "  " << chk.name << " " << (chk.pass ? "pass" : "FAIL") << " (" << chk.checked
        << " checked)";
    if (!chk.witness.empty()) out << " witness: " << chk.witness;
    out << "\n";
  }
  out << "classes=" << report.classes.size() << " total=" << report.total_labeled_boards << "\n";
  return out.str();
}

}  // namespace septoku
