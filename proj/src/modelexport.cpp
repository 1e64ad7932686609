#include "septoku/modelexport.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <sys/wait.h>

#include "septoku/errors.hpp"
#include "septoku/textio.hpp"

namespace septoku {

namespace {

constexpr int kTermsPerLine = 8;

std::string var_name(Term t) {
  return "x_" + std::to_string(t.cell) + "_" + std::to_string(t.symbol);
}

std::string_view sense_text(Sense s) {
  switch (s) {
    case Sense::Equal:
      return "=";
    case Sense::LessEqual:
      return "<=";
    case Sense::GreaterEqual:
      return ">=";
  }
  return "?";
}

void write_sum(std::ostringstream& out, const std::vector<Term>& terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0) out << ((i % kTermsPerLine == 0) ? "\n   + " : " + ");
    out << var_name(terms[i]);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Token {
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize_lp(std::string_view text) {
  std::vector<Token> tokens;
  int line = 1;
  std::size_t line_start = 0;
  std::size_t i = 0;
  auto column = [&](std::size_t at) { return static_cast<int>(at - line_start) + 1; };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      line_start = ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '\\') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    std::size_t start = i;
    if (c == '<' || c == '>' || c == '=') {
      ++i;
      if (i < text.size() && (text[i] == '=' || text[i] == '<' || text[i] == '>')) ++i;
    } else if (c == '+' || c == '-' || c == ':') {
      ++i;
    } else {
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             std::string_view("<>=+-:\\").find(text[i]) == std::string_view::npos)
        ++i;
    }
    tokens.push_back({std::string(text.substr(start, i - start)), line, column(start)});
  }
  return tokens;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::optional<Term> parse_var(const std::string& name) {
  if (name.size() < 5 || name.rfind("x_", 0) != 0) return std::nullopt;
  auto mid = name.find('_', 2);
  if (mid == std::string::npos) return std::nullopt;
  try {
    std::size_t used = 0;
    int cell = std::stoi(name.substr(2, mid - 2), &used);
    if (used != mid - 2) return std::nullopt;
    std::string rest = name.substr(mid + 1);
    int symbol = std::stoi(rest, &used);
    if (used != rest.size()) return std::nullopt;
    return Term{cell, symbol};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// Recovers the puzzle structure of a parsed model.
struct RecoveredModel {
  int cell_count = 0;
  std::vector<std::vector<CellId>> regions;
  std::vector<Symbol> givens;
  std::vector<std::vector<Term>> cuts;  // at most |terms| - 1 of these may hold
  std::vector<int> cut_limits;
};

RecoveredModel recover(const IPModel& model) {
  RecoveredModel out;
  out.cell_count = model.cell_count;
  out.givens.assign(static_cast<std::size_t>(model.cell_count), 0);
  std::map<std::vector<CellId>, std::set<Symbol>> region_symbols;
  for (const auto& c : model.region_constraints) {
    std::vector<CellId> cells;
    for (auto t : c.terms) cells.push_back(t.cell);
    std::sort(cells.begin(), cells.end());
    region_symbols[cells].insert(c.terms.front().symbol);
  }
  for (const auto& [cells, symbols] : region_symbols) {
    if (static_cast<int>(symbols.size()) != model.symbol_count)
      throw InvalidArgument("region constraint does not cover every symbol");
    out.regions.push_back(cells);
  }
  for (const auto& c : model.seed_constraints) {
    for (auto t : c.terms) {
      auto& slot = out.givens[static_cast<std::size_t>(t.cell - 1)];
      if (slot != 0 && slot != t.symbol) {
        slot = -1;  // two seeds on one cell: infeasible
      } else if (slot == 0) {
        slot = t.symbol;
      }
    }
  }
  for (const auto& c : model.nogood_constraints) {
    out.cuts.push_back(c.terms);
    out.cut_limits.push_back(c.rhs);
  }
  return out;
}

}  // namespace

int IPModel::constraint_count() const {
  return static_cast<int>(cell_constraints.size() + region_constraints.size() +
                          seed_constraints.size() + nogood_constraints.size());
}

IPModel build_model(const Puzzle& puzzle, const std::vector<FilledBoard>& nogoods) {
  validate_puzzle(puzzle);
  const BoardSpec& board = *puzzle.board;
  IPModel model;
  model.family = board.family();
  model.cell_count = board.cell_count();
  for (CellId c = 1; c <= board.cell_count(); ++c) {
    LinearConstraint con{"fill_" + std::to_string(c), {}, Sense::Equal, 1};
    for (Symbol s = 1; s <= kSymbolCount; ++s) con.terms.push_back({c, s});
    model.cell_constraints.push_back(std::move(con));
  }
  for (const auto& reg : board.regions()) {
    for (Symbol s = 1; s <= kSymbolCount; ++s) {
      LinearConstraint con{"region_" + std::to_string(reg.id) + "_" + std::to_string(s), {},
                           Sense::LessEqual, 1};
      for (CellId c : reg.cells) con.terms.push_back({c, s});
      model.region_constraints.push_back(std::move(con));
    }
  }
  for (auto [cell, symbol] : puzzle.seeds)
    model.seed_constraints.push_back(
        {"seed_" + std::to_string(cell), {{cell, symbol}}, Sense::Equal, 1});
  int k = 0;
  for (const auto& ng : nogoods) {
    if (ng.family() != board.family() || static_cast<int>(ng.values.size()) != board.cell_count())
      throw FamilyMismatch("no-good board belongs to the " + std::string(family_name(ng.family())) +
                           " family, the puzzle to the " +
                           std::string(family_name(board.family())) + " family");
    LinearConstraint con{"nogood_" + std::to_string(++k), {}, Sense::LessEqual,
                         board.cell_count() - 1};
    for (CellId c = 1; c <= board.cell_count(); ++c) con.terms.push_back({c, ng.at(c)});
    model.nogood_constraints.push_back(std::move(con));
  }
  return model;
}

ModelFormat parse_model_format(std::string_view name) {
  if (name == "lp") return ModelFormat::Lp;
  if (name == "gams") return ModelFormat::Gams;
  throw InvalidArgument("unknown model format '" + std::string(name) + "' (expected lp or gams)");
}

std::string write_lp(const IPModel& model) {
  std::ostringstream out;
  out << "\\ Septoku feasibility model\n";
  out << "\\ family: " << family_name(model.family) << "\n";
  out << "\\ cells: " << model.cell_count << " symbols: " << model.symbol_count
      << " variables: " << model.variable_count() << "\n";
  out << "\\ regions: " << model.region_constraints.size() / kSymbolCount
      << " seeds: " << model.seed_constraints.size()
      << " nogoods: " << model.nogood_constraints.size() << "\n";
  out << "Minimize\n obj: ";
  std::vector<Term> all;
  for (CellId c = 1; c <= model.cell_count; ++c)
    for (Symbol s = 1; s <= model.symbol_count; ++s) all.push_back({c, s});
  write_sum(out, all);
  out << "\nSubject To\n";
  for (const auto* group : {&model.cell_constraints, &model.region_constraints,
                            &model.seed_constraints, &model.nogood_constraints}) {
    for (const auto& con : *group) {
      out << " " << con.name << ": ";
      write_sum(out, con.terms);
      out << " " << sense_text(con.sense) << " " << con.rhs << "\n";
    }
  }
  out << "Binary\n";
  for (std::size_t i = 0; i < all.size(); ++i) {
    out << " " << var_name(all[i]);
    if (i % kTermsPerLine == kTermsPerLine - 1 || i + 1 == all.size()) out << "\n";
  }
  out << "End\n";
  return out.str();
}

std::string write_gams(const Puzzle& puzzle, const std::vector<FilledBoard>& nogoods) {
  build_model(puzzle, nogoods);  // same validation as the LP path
  const BoardSpec& board = *puzzle.board;
  const int n = board.cell_count();
  std::ostringstream out;
  out << "$TITLE Septoku " << family_name(board.family()) << " puzzle\n";
  out << "* Generated model; every feasible point is a solution of the puzzle.\n\n";
  out << "$Onlisting\nSETS\n";
  out << "M cells   /1*" << n << "/\n";
  out << "N labels  /1*" << kSymbolCount << "/\n";
  out << "R regions /1*" << board.regions().size() << "/\n\n";

  out << "* Cell numbering (" << n << " cells), circle centres marked <>\n";
  std::set<CellId> centers;
  for (const auto& reg : board.regions())
    if (reg.kind == RegionKind::Circle) centers.insert(reg.center);
  std::istringstream diagram(render_layout(board, [&](CellId c) {
    return centers.count(c) ? "<" + std::to_string(c) + ">" : std::to_string(c);
  }));
  for (std::string line; std::getline(diagram, line);) out << "* " << line << "\n";
  out << "\n";

  auto write_pairs = [&](const std::vector<std::pair<int, int>>& pairs) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (i % kTermsPerLine == 0) out << (i == 0 ? "      /" : ",\n       ");
      else out << ", ";
      out << pairs[i].first << "." << pairs[i].second;
    }
    out << "/;\n";
  };

  std::vector<std::pair<int, int>> membership;
  for (std::size_t r = 0; r < board.regions().size(); ++r)
    for (CellId c : board.regions()[r].cells) membership.push_back({static_cast<int>(r + 1), c});
  out << "* Region membership as (region, cell)\n";
  out << "SET REGIONS (R,M)\n";
  write_pairs(membership);

  if (!puzzle.seeds.empty()) {
    std::vector<std::pair<int, int>> seeds(puzzle.seeds.begin(), puzzle.seeds.end());
    out << "\n* Seeds\nSET SEEDS (M,N)\n";
    write_pairs(seeds);
  }
  for (std::size_t k = 0; k < nogoods.size(); ++k) {
    std::vector<std::pair<int, int>> sol;
    for (CellId c = 1; c <= n; ++c) sol.push_back({c, nogoods[k].at(c)});
    out << "\nSET SOL" << k + 1 << " (M,N)\n";
    write_pairs(sol);
  }
  if (!nogoods.empty()) {
    out << "\nSCALARS\n";
    for (std::size_t k = 0; k < nogoods.size(); ++k) {
      out << "ALLOW" << k + 1 << " right-hand side of UNIQ" << k + 1 << " /" << n - 1 << "/"
          << (k + 1 == nogoods.size() ? ";" : "") << "\n";
    }
  }

  out << "\nVARIABLES\n";
  out << "X(M,N) cell-label indicator\n";
  out << "OBJECT objective value\n\n";
  out << "BINARY VARIABLES X;\n\n";
  out << "EQUATIONS\n";
  out << "OBJ          total of X\n";
  out << "ALLFILLED(M) cell M holds one label\n";
  out << "REGDIST(R,N) label N used at most once in region R";
  if (!puzzle.seeds.empty()) out << "\nPUZZLE       fixed cells";
  for (std::size_t k = 0; k < nogoods.size(); ++k)
    out << "\nUNIQ" << k + 1 << "        no-good cut " << k + 1;
  out << ";\n\n";
  out << "OBJ..\n     SUM((M,N),X(M,N)) =E= OBJECT;\n";
  out << "ALLFILLED(M)..\n     SUM(N,X(M,N)) =E= 1;\n";
  out << "REGDIST(R,N)..\n     SUM(M$REGIONS(R,M),X(M,N)) =L= 1;\n";
  if (!puzzle.seeds.empty()) out << "PUZZLE..\n     SUM(SEEDS,X(SEEDS)) =G= CARD(SEEDS);\n";
  for (std::size_t k = 0; k < nogoods.size(); ++k)
    out << "UNIQ" << k + 1 << "..\n     SUM(SOL" << k + 1 << ",X(SOL" << k + 1 << ")) =L= ALLOW"
        << k + 1 << ";\n";
  out << "\nMODEL SEPTOKU /all/;\n\n";
  out << "SOLVE SEPTOKU USING MIP MINIMIZING OBJECT;\n\n";
  out << "OPTION X:0:0:1;\nDISPLAY X.L;\n";
  return out.str();
}

std::string export_model(const Puzzle& puzzle, const std::vector<FilledBoard>& nogoods,
                         ModelFormat format) {
  if (format == ModelFormat::Gams) return write_gams(puzzle, nogoods);
  return write_lp(build_model(puzzle, nogoods));
}

IPModel parse_lp(std::string_view text) {
  auto tokens = tokenize_lp(text);
  IPModel model;
  {
    // Family is informational; taken from the header comment when present.
    auto pos = text.find("\\ family: ");
    if (pos != std::string_view::npos) {
      auto end = text.find('\n', pos);
      try {
        model.family = parse_family(text.substr(pos + 10, end - pos - 10));
      } catch (const InvalidArgument&) {
      }
    }
  }
  enum class Section { None, Objective, Constraints, Binary, Done } section = Section::None;
  std::size_t i = 0;
  auto fail = [&](const Token& t, const std::string& why) -> ParseError {
    return ParseError(t.line, t.column, why);
  };
  int max_cell = 0;
  std::set<int> fill_cells;

  auto classify = [&](LinearConstraint con, const Token& at) {
    if (con.terms.empty()) throw fail(at, "constraint without variables");
    std::set<CellId> cells;
    std::set<Symbol> symbols;
    for (auto t : con.terms) {
      cells.insert(t.cell);
      symbols.insert(t.symbol);
      max_cell = std::max(max_cell, t.cell);
    }
    const auto size = static_cast<int>(con.terms.size());
    if (con.sense == Sense::Equal && con.rhs == 1 && cells.size() == 1 &&
        static_cast<int>(symbols.size()) == size && size == kSymbolCount) {
      fill_cells.insert(*cells.begin());
      model.cell_constraints.push_back(std::move(con));
    } else if (con.sense == Sense::LessEqual && con.rhs == 1 && symbols.size() == 1 && size > 1) {
      model.region_constraints.push_back(std::move(con));
    } else if ((con.sense == Sense::Equal || con.sense == Sense::GreaterEqual) && con.rhs == size) {
      model.seed_constraints.push_back(std::move(con));
    } else if (con.sense == Sense::LessEqual && con.rhs == size - 1 &&
               static_cast<int>(cells.size()) == size) {
      model.nogood_constraints.push_back(std::move(con));
    } else {
      throw fail(at, "constraint '" + con.name + "' has an unsupported shape");
    }
  };

  while (i < tokens.size() && section != Section::Done) {
    const Token& t = tokens[i];
    std::string word = lower(t.text);
    if (word == "minimize" || word == "maximize" || word == "minimum" || word == "maximum") {
      section = Section::Objective;
      ++i;
      continue;
    }
    if (word == "subject" && i + 1 < tokens.size() && lower(tokens[i + 1].text) == "to") {
      section = Section::Constraints;
      i += 2;
      continue;
    }
    if (word == "st" || word == "s.t.") {
      section = Section::Constraints;
      ++i;
      continue;
    }
    if (word == "binary" || word == "binaries" || word == "bin") {
      section = Section::Binary;
      ++i;
      continue;
    }
    if (word == "end") {
      section = Section::Done;
      ++i;
      continue;
    }
    switch (section) {
      case Section::None:
        throw fail(t, "expected 'Minimize'");
      case Section::Objective:
      case Section::Binary:
        ++i;  // objective and variable declarations carry no feasibility information
        break;
      case Section::Constraints: {
        LinearConstraint con;
        const Token& start = t;
        if (i + 1 < tokens.size() && tokens[i + 1].text == ":") {
          con.name = t.text;
          i += 2;
        }
        bool expect_term = true;
        while (true) {
          if (i >= tokens.size()) throw fail(tokens.back(), "unterminated constraint");
          const Token& cur = tokens[i];
          if (cur.text == "+") {
            expect_term = true;
            ++i;
            continue;
          }
          if (cur.text == "<=" || cur.text == "=<" || cur.text == ">=" || cur.text == "=>" ||
              cur.text == "=" || cur.text == "<" || cur.text == ">") {
            if (cur.text == "=") con.sense = Sense::Equal;
            else if (cur.text.find('<') != std::string::npos) con.sense = Sense::LessEqual;
            else con.sense = Sense::GreaterEqual;
            ++i;
            if (i >= tokens.size()) throw fail(cur, "missing right-hand side");
            try {
              std::size_t used = 0;
              con.rhs = std::stoi(tokens[i].text, &used);
              if (used != tokens[i].text.size()) throw std::invalid_argument("rhs");
            } catch (const std::exception&) {
              throw fail(tokens[i], "expected an integer right-hand side");
            }
            ++i;
            break;
          }
          if (!expect_term) throw fail(cur, "expected '+' or a comparison");
          if (cur.text == "-") throw fail(cur, "negative coefficients are not supported");
          std::string name = cur.text;
          if (name == "1" && i + 1 < tokens.size()) name = tokens[++i].text;
          auto term = parse_var(name);
          if (!term) throw fail(tokens[i], "unknown variable '" + name + "'");
          if (term->symbol < 1 || term->symbol > kSymbolCount || term->cell < 1)
            throw fail(tokens[i], "variable '" + name + "' is out of range");
          con.terms.push_back(*term);
          expect_term = false;
          ++i;
        }
        classify(std::move(con), start);
        break;
      }
      case Section::Done:
        break;
    }
  }
  if (section != Section::Done) throw ParseError(tokens.empty() ? 1 : tokens.back().line, 1, "missing 'End'");
  model.cell_count = static_cast<int>(fill_cells.size());
  if (model.cell_count == 0 || *fill_cells.rbegin() != model.cell_count || max_cell > model.cell_count)
    throw ParseError(1, 1, "cells must be numbered 1..n with one fill constraint each");
  return model;
}

OracleAnswer solve_model(const IPModel& model) {
  RecoveredModel rec = recover(model);
  OracleAnswer answer;
  if (std::find(rec.givens.begin(), rec.givens.end(), -1) != rec.givens.end()) return answer;
  auto system = ConstraintSystem::from_regions(rec.cell_count, rec.regions);
  SolutionVisitor first_allowed = [&](std::span<const Symbol> values) {
    for (std::size_t k = 0; k < rec.cuts.size(); ++k) {
      int hits = 0;
      for (auto t : rec.cuts[k])
        if (values[static_cast<std::size_t>(t.cell - 1)] == t.symbol) ++hits;
      if (hits > rec.cut_limits[k]) return true;  // excluded, keep searching
    }
    answer.feasible = true;
    answer.assignment.assign(values.begin(), values.end());
    return false;
  };
  search_assignments(system, rec.givens, CellOrder::MinRemaining, first_allowed);
  return answer;
}

OracleAnswer NativeOracle::solve(const std::string& model_text) {
  return solve_model(parse_lp(model_text));
}

CommandOracle::CommandOracle(std::string command, std::filesystem::path work_dir)
    : command_(std::move(command)), work_dir_(std::move(work_dir)) {
  std::filesystem::create_directories(work_dir_);
}

OracleAnswer CommandOracle::solve(const std::string& model_text) {
  ++calls_;
  auto model_path = work_dir_ / ("model_" + std::to_string(calls_) + ".lp");
  auto solution_path = work_dir_ / ("solution_" + std::to_string(calls_) + ".txt");
  {
    std::ofstream out(model_path);
    out << model_text;
    if (!out) throw Error("cannot write " + model_path.string());
  }
  std::filesystem::remove(solution_path);
  std::string cmd = command_ + " '" + model_path.string() + "' '" + solution_path.string() + "'";
  int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) throw Error("solver command did not run: " + command_);
  int code = WEXITSTATUS(status);
  if (code == 1) return {};
  if (code != 0) throw Error("solver command failed with exit status " + std::to_string(code));
  IPModel model = parse_lp(model_text);
  return OracleAnswer{true, parse_assignment(read_file(solution_path), model.cell_count)};
}

std::string format_assignment(const std::vector<Symbol>& assignment) {
  std::ostringstream out;
  for (std::size_t i = 0; i < assignment.size(); ++i) out << i + 1 << " " << assignment[i] << "\n";
  return out.str();
}

std::vector<Symbol> parse_assignment(std::string_view text, int cell_count) {
  std::vector<Symbol> out(static_cast<std::size_t>(cell_count), 0);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    int cell = 0;
    int symbol = 0;
    if (!(fields >> cell)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError(line_no, 1, "expected 'cell symbol'");
    }
    if (!(fields >> symbol)) throw ParseError(line_no, 1, "missing symbol");
    if (cell < 1 || cell > cell_count) throw ParseError(line_no, 1, "cell out of range");
    if (symbol < 1 || symbol > kSymbolCount) throw ParseError(line_no, 1, "symbol out of range");
    if (out[static_cast<std::size_t>(cell - 1)] != 0)
      throw ParseError(line_no, 1, "cell " + std::to_string(cell) + " assigned twice");
    out[static_cast<std::size_t>(cell - 1)] = symbol;
  }
  for (int c = 1; c <= cell_count; ++c)
    if (out[static_cast<std::size_t>(c - 1)] == 0)
      throw ParseError(line_no + 1, 1, "cell " + std::to_string(c) + " missing from assignment");
  return out;
}

ExclusionOutcome enumerate_by_exclusion(const Puzzle& puzzle, SolverOracle& oracle,
                                        int max_iterations) {
  if (max_iterations < 1) throw InvalidArgument("iteration cap must be at least 1");
  ExclusionOutcome outcome;
  while (true) {
    if (outcome.oracle_calls >= max_iterations) {
      outcome.status = SolveStatus::Capped;
      return outcome;
    }
    std::string model = write_lp(build_model(puzzle, outcome.solutions));
    ++outcome.oracle_calls;
    OracleAnswer answer = oracle.solve(model);
    if (!answer.feasible) return outcome;
    outcome.solutions.push_back(make_filled(puzzle.board, std::move(answer.assignment)));
  }
}

}  // namespace septoku
