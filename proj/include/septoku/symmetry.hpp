#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "septoku/topology.hpp"

namespace septoku {

/// A total assignment of symbols to the cells of one board. Validity against the region
/// system is a separate question (see check_filled).
struct FilledBoard {
  BoardRef board;
  std::vector<Symbol> values;  // values[cell - 1]

  Symbol at(CellId cell) const { return values.at(static_cast<std::size_t>(cell - 1)); }
  Family family() const { return board->family(); }

  friend bool operator==(const FilledBoard& a, const FilledBoard& b) {
    return a.family() == b.family() && a.values == b.values;
  }
};

/// Checks size and symbol range. Throws InvalidArgument.
FilledBoard make_filled(BoardRef board, std::vector<Symbol> values);

/// Bijection on the symbols 1..7.
class SymbolPermutation {
 public:
  SymbolPermutation();
  /// images[i] is the image of symbol i + 1. Throws InvalidArgument unless bijective.
  explicit SymbolPermutation(const std::array<Symbol, kSymbolCount>& images);

  /// Parses cycle notation such as "(14)(25)(36)" or "(654321)". "()" and "" are the identity.
  static SymbolPermutation from_cycles(std::string_view text);
  /// All 5040 permutations in lexicographic order of their image tables.
  static const std::vector<SymbolPermutation>& all();

  Symbol operator()(Symbol s) const { return images_[static_cast<std::size_t>(s - 1)]; }
  const std::array<Symbol, kSymbolCount>& images() const { return images_; }

  /// This permutation followed by `next`.
  SymbolPermutation then(const SymbolPermutation& next) const;
  SymbolPermutation inverse() const;
  bool is_identity() const;

  /// Disjoint cycles, each starting at its smallest symbol; fixed points omitted; "()" for identity.
  std::string to_cycles() const;

  auto operator<=>(const SymbolPermutation&) const = default;

 private:
  std::array<Symbol, kSymbolCount> images_;
};

/// A motion of one board together with its cell permutation.
struct BoardSymmetry {
  SymmetryDescriptor descriptor;
  std::vector<CellId> cell_map;  // cell_map[c - 1] is where cell c moves to

  CellId operator()(CellId cell) const { return cell_map[static_cast<std::size_t>(cell - 1)]; }
};

/// Throws UnsupportedSymmetry when the motion does not preserve the board and its regions.
BoardSymmetry symmetry_cell_map(const BoardSpec& board, SymmetryDescriptor descriptor);
std::vector<BoardSymmetry> symmetry_group(const BoardSpec& board);

/// "(Id)", "(Rot)", "(Rot)^2", "(Rot)^3", "(Rot)^-2", "(Rot)^-1", with a "(Flx)" prefix for
/// reflections.
std::string format_motion(SymmetryDescriptor motion);

/// Relocate cells by `symmetry`, then rename symbols by `permutation`.
struct Transform {
  SymmetryDescriptor symmetry;
  SymbolPermutation permutation;

  auto operator<=>(const Transform&) const = default;
};

/// `first` followed by `second`.
Transform compose(const Transform& first, const Transform& second);
Transform inverse(const Transform& t);

/// Postfix notation, e.g. "(Rot)^-1 (165432)" or "(Flx)(Rot) (16)(25)(34)".
std::string format_transform(const Transform& t);
/// Reads a left-to-right product of "(Rot)", "(Rot)^k", "(Flx)", "(Id)" and symbol cycles, as in
/// "(Flx)(Rot)(16)(25)(34)" or "(Rot)^3(14)(25)(36)". Motion and cycle factors may interleave;
/// each factor acts after the ones to its left. Throws ParseError.
Transform parse_transform(std::string_view text);

/// Number of transforms for the board: |motions| * 7!.
long long transform_count(const BoardSpec& board);

/// result(symmetry(c)) = permutation(filled(c)).
/// Throws UnsupportedSymmetry if the motion is not a symmetry of the board.
FilledBoard apply_transform(const FilledBoard& filled, const Transform& t);

/// A transform taking `from` to `to`, if any. Throws FamilyMismatch.
std::optional<Transform> are_equivalent(const FilledBoard& from, const FilledBoard& to);

/// Lexicographically smallest value vector, in cell order, over every transform of the board.
FilledBoard canonical_form(const FilledBoard& filled);

/// Every transform fixing `filled`, in motion order.
std::vector<Transform> stabilizer(const FilledBoard& filled);

long long orbit_size(const FilledBoard& filled);

}  // namespace septoku
