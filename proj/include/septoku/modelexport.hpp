#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "septoku/solver.hpp"

namespace septoku {

/// Binary variable X(cell, symbol): 1 when the cell carries the symbol.
struct Term {
  CellId cell = 0;
  Symbol symbol = 0;

  auto operator<=>(const Term&) const = default;
};

enum class Sense { Equal, LessEqual, GreaterEqual };

struct LinearConstraint {
  std::string name;
  std::vector<Term> terms;  // all coefficients are 1
  Sense sense = Sense::Equal;
  int rhs = 0;
};

/// Feasibility model of a puzzle: exactly one symbol per cell, at most one of each symbol per
/// region, fixed seeds, and one cut per excluded assignment.
struct IPModel {
  Family family = Family::Hexagon;
  int cell_count = 0;
  int symbol_count = kSymbolCount;
  std::vector<LinearConstraint> cell_constraints;
  std::vector<LinearConstraint> region_constraints;
  std::vector<LinearConstraint> seed_constraints;
  std::vector<LinearConstraint> nogood_constraints;

  int variable_count() const { return cell_count * symbol_count; }
  int constraint_count() const;
};

/// Throws FamilyMismatch when a no-good belongs to another family, MalformedPuzzle for bad seeds.
IPModel build_model(const Puzzle& puzzle, const std::vector<FilledBoard>& nogoods);

enum class ModelFormat { Lp, Gams };

ModelFormat parse_model_format(std::string_view name);

/// CPLEX LP text. Byte-stable for equal inputs.
std::string write_lp(const IPModel& model);
/// GAMS program with explicit REGIONS / SEEDS / SOLk sets and one UNIQk cut per no-good.
std::string write_gams(const Puzzle& puzzle, const std::vector<FilledBoard>& nogoods);

std::string export_model(const Puzzle& puzzle, const std::vector<FilledBoard>& nogoods,
                         ModelFormat format = ModelFormat::Lp);

/// Reads the LP subset written by write_lp: unit coefficients on x_<cell>_<symbol> variables.
/// Constraints are sorted into the four groups by shape, not by name. Throws ParseError.
IPModel parse_lp(std::string_view text);

struct OracleAnswer {
  bool feasible = false;
  std::vector<Symbol> assignment;  // assignment[c - 1], when feasible
};

/// Solves a model given as text and returns one feasible assignment or reports infeasibility.
class SolverOracle {
 public:
  virtual ~SolverOracle() = default;
  virtual OracleAnswer solve(const std::string& model_text) = 0;
  virtual std::string name() const = 0;
};

/// Solves the model with the built-in search after recovering cells, regions, seeds and cuts
/// from its constraints.
class NativeOracle : public SolverOracle {
 public:
  OracleAnswer solve(const std::string& model_text) override;
  std::string name() const override { return "native"; }
};

/// Runs `<command> <model file> <solution file>`. Exit status 0 means feasible with the
/// solution file holding "cell symbol" lines; 1 means infeasible; anything else is an error.
class CommandOracle : public SolverOracle {
 public:
  CommandOracle(std::string command, std::filesystem::path work_dir);
  OracleAnswer solve(const std::string& model_text) override;
  std::string name() const override { return command_; }

 private:
  std::string command_;
  std::filesystem::path work_dir_;
  int calls_ = 0;
};

OracleAnswer solve_model(const IPModel& model);

/// "cell symbol" per line, cells ascending.
std::string format_assignment(const std::vector<Symbol>& assignment);
/// Accepts lines "cell symbol" in any order; every cell 1..cell_count exactly once.
std::vector<Symbol> parse_assignment(std::string_view text, int cell_count);

struct ExclusionOutcome {
  std::vector<FilledBoard> solutions;
  int oracle_calls = 0;
  SolveStatus status = SolveStatus::Complete;
};

/// Solve, record, add a no-good cut, repeat until the oracle reports infeasible or
/// `max_iterations` oracle calls have been made.
/// Models are passed to the oracle in LP format.
ExclusionOutcome enumerate_by_exclusion(const Puzzle& puzzle, SolverOracle& oracle,
                                        int max_iterations);

}  // namespace septoku
