#include "septoku/symmetry.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "septoku/errors.hpp"

namespace septoku {

namespace {

using Images = std::array<Symbol, kSymbolCount>;

Images identity_images() {
  Images out{};
  std::iota(out.begin(), out.end(), 1);
  return out;
}

const std::vector<CellId>& motion_map(const BoardSpec& board, SymmetryDescriptor motion) {
  const auto& motions = board.motions();
  for (std::size_t k = 0; k < motions.size(); ++k)
    if (motions[k] == motion) return board.motion_maps()[k];
  throw UnsupportedSymmetry(format_motion(motion) + " is not a symmetry of the " +
                            std::string(family_name(board.family())) + " board");
}

void require_same_family(const FilledBoard& a, const FilledBoard& b) {
  if (a.family() != b.family() || a.values.size() != b.values.size())
    throw FamilyMismatch("boards belong to different families (" +
                         std::string(family_name(a.family())) + ", " +
                         std::string(family_name(b.family())) + ")");
}

// Partial symbol map forced by requiring perm(from[c]) == to[map(c)] for every cell; 0 = unset.
std::optional<Images> forced_symbol_map(const std::vector<Symbol>& from,
                                        const std::vector<CellId>& map,
                                        const std::vector<Symbol>& to) {
  Images fwd{};
  Images back{};
  for (std::size_t i = 0; i < from.size(); ++i) {
    Symbol a = from[i];
    Symbol b = to[static_cast<std::size_t>(map[i] - 1)];
    auto& f = fwd[static_cast<std::size_t>(a - 1)];
    auto& g = back[static_cast<std::size_t>(b - 1)];
    if (f == 0 && g == 0) {
      f = b;
      g = a;
    } else if (f != b || g != a) {
      return std::nullopt;
    }
  }
  return fwd;
}

// Every bijection extending a partial map (symbols absent from the board are free).
std::vector<SymbolPermutation> completions(const Images& partial) {
  std::vector<Symbol> free_sources;
  std::vector<Symbol> free_targets;
  std::array<bool, kSymbolCount> used{};
  for (int s = 1; s <= kSymbolCount; ++s) {
    Symbol img = partial[static_cast<std::size_t>(s - 1)];
    if (img == 0) free_sources.push_back(s);
    else used[static_cast<std::size_t>(img - 1)] = true;
  }
  for (int s = 1; s <= kSymbolCount; ++s)
    if (!used[static_cast<std::size_t>(s - 1)]) free_targets.push_back(s);
  std::vector<SymbolPermutation> out;
  do {
    Images full = partial;
    for (std::size_t i = 0; i < free_sources.size(); ++i)
      full[static_cast<std::size_t>(free_sources[i] - 1)] = free_targets[i];
    out.emplace_back(full);
  } while (std::next_permutation(free_targets.begin(), free_targets.end()));
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (get() != c) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(1, static_cast<int>(pos_) + 1, message);
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// Reads the inside of a cycle, after '(' has been consumed, up to and including ')'.
Images parse_cycle_body(Cursor& cur) {
  std::vector<Symbol> cycle;
  while (cur.peek() != ')') {
    char c = cur.get();
    if (c < '1' || c > '0' + kSymbolCount) cur.fail("expected a symbol 1-7 in cycle");
    Symbol s = c - '0';
    if (std::find(cycle.begin(), cycle.end(), s) != cycle.end())
      cur.fail("symbol repeated inside a cycle");
    cycle.push_back(s);
  }
  cur.expect(')');
  Images images = identity_images();
  for (std::size_t i = 0; i < cycle.size(); ++i)
    images[static_cast<std::size_t>(cycle[i] - 1)] = cycle[(i + 1) % cycle.size()];
  return images;
}

int parse_exponent(Cursor& cur) {
  if (cur.peek() != '^') return 1;
  cur.get();
  bool negative = false;
  if (cur.peek() == '-') {
    negative = true;
    cur.get();
  }
  if (!std::isdigit(static_cast<unsigned char>(cur.peek()))) cur.fail("expected an exponent");
  int value = 0;
  while (std::isdigit(static_cast<unsigned char>(cur.peek()))) value = value * 10 + (cur.get() - '0');
  return negative ? -value : value;
}

SymmetryDescriptor power(SymmetryDescriptor base, int exponent) {
  SymmetryDescriptor step = exponent < 0 ? invert_motion(base) : base;
  SymmetryDescriptor acc{};
  for (int i = 0; i < std::abs(exponent) % 12; ++i) acc = compose_motions(acc, step);
  return acc;
}

}  // namespace

FilledBoard make_filled(BoardRef board, std::vector<Symbol> values) {
  if (!board) throw InvalidArgument("filled board without a board");
  if (static_cast<int>(values.size()) != board->cell_count())
    throw InvalidArgument("expected " + std::to_string(board->cell_count()) + " values, got " +
                          std::to_string(values.size()));
  for (Symbol s : values)
    if (s < 1 || s > kSymbolCount) throw InvalidArgument("symbol out of range: " + std::to_string(s));
  return FilledBoard{std::move(board), std::move(values)};
}

SymbolPermutation::SymbolPermutation() : images_(identity_images()) {}

SymbolPermutation::SymbolPermutation(const std::array<Symbol, kSymbolCount>& images)
    : images_(images) {
  std::array<bool, kSymbolCount> seen{};
  for (Symbol s : images_) {
    if (s < 1 || s > kSymbolCount || seen[static_cast<std::size_t>(s - 1)])
      throw InvalidArgument("not a permutation of 1..7");
    seen[static_cast<std::size_t>(s - 1)] = true;
  }
}

SymbolPermutation SymbolPermutation::from_cycles(std::string_view text) {
  Cursor cur(text);
  SymbolPermutation acc;
  while (!cur.done()) {
    cur.expect('(');
    acc = acc.then(SymbolPermutation(parse_cycle_body(cur)));
  }
  return acc;
}

const std::vector<SymbolPermutation>& SymbolPermutation::all() {
  static const std::vector<SymbolPermutation> perms = [] {
    std::vector<SymbolPermutation> out;
    Images images = identity_images();
    do {
      out.emplace_back(images);
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
  }();
  return perms;
}

SymbolPermutation SymbolPermutation::then(const SymbolPermutation& next) const {
  Images out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = next(images_[i]);
  return SymbolPermutation(out);
}

SymbolPermutation SymbolPermutation::inverse() const {
  Images out{};
  for (std::size_t i = 0; i < out.size(); ++i)
    out[static_cast<std::size_t>(images_[i] - 1)] = static_cast<Symbol>(i + 1);
  return SymbolPermutation(out);
}

bool SymbolPermutation::is_identity() const { return images_ == identity_images(); }

std::string SymbolPermutation::to_cycles() const {
  std::string out;
  std::array<bool, kSymbolCount> seen{};
  for (Symbol start = 1; start <= kSymbolCount; ++start) {
    if (seen[static_cast<std::size_t>(start - 1)] || (*this)(start) == start) continue;
    out += '(';
    for (Symbol s = start; !seen[static_cast<std::size_t>(s - 1)]; s = (*this)(s)) {
      seen[static_cast<std::size_t>(s - 1)] = true;
      out += static_cast<char>('0' + s);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

BoardSymmetry symmetry_cell_map(const BoardSpec& board, SymmetryDescriptor descriptor) {
  descriptor.rotation = ((descriptor.rotation % 6) + 6) % 6;
  return BoardSymmetry{descriptor, motion_map(board, descriptor)};
}

std::vector<BoardSymmetry> symmetry_group(const BoardSpec& board) {
  std::vector<BoardSymmetry> out;
  for (std::size_t k = 0; k < board.motions().size(); ++k)
    out.push_back(BoardSymmetry{board.motions()[k], board.motion_maps()[k]});
  return out;
}

std::string format_motion(SymmetryDescriptor motion) {
  static constexpr const char* kRotations[] = {"",         "(Rot)",    "(Rot)^2",
                                               "(Rot)^3",  "(Rot)^-2", "(Rot)^-1"};
  int k = ((motion.rotation % 6) + 6) % 6;
  std::string out = motion.reflected ? "(Flx)" : "";
  out += kRotations[k];
  return out.empty() ? "(Id)" : out;
}

Transform compose(const Transform& first, const Transform& second) {
  return Transform{compose_motions(first.symmetry, second.symmetry),
                   first.permutation.then(second.permutation)};
}

Transform inverse(const Transform& t) {
  return Transform{invert_motion(t.symmetry), t.permutation.inverse()};
}

std::string format_transform(const Transform& t) {
  return format_motion(t.symmetry) + " " + t.permutation.to_cycles();
}

Transform parse_transform(std::string_view text) {
  Cursor cur(text);
  Transform acc{};
  bool any = false;
  while (!cur.done()) {
    cur.expect('(');
    any = true;
    std::size_t start = cur.pos();
    std::string word;
    while (std::isalpha(static_cast<unsigned char>(cur.peek()))) word += cur.get();
    if (word.empty()) {
      acc = compose(acc, Transform{{}, SymbolPermutation(parse_cycle_body(cur))});
      continue;
    }
    cur.expect(')');
    SymmetryDescriptor base{};
    if (word == "Rot") base = {false, 1};
    else if (word == "Flx") base = {true, 0};
    else if (word != "Id") throw ParseError(1, static_cast<int>(start) + 1, "unknown factor '" + word + "'");
    acc = compose(acc, Transform{power(base, parse_exponent(cur)), {}});
  }
  if (!any) cur.fail("empty transform");
  return acc;
}

long long transform_count(const BoardSpec& board) {
  return static_cast<long long>(board.motions().size()) *
         static_cast<long long>(SymbolPermutation::all().size());
}

FilledBoard apply_transform(const FilledBoard& filled, const Transform& t) {
  const auto& map = motion_map(*filled.board, t.symmetry);
  std::vector<Symbol> out(filled.values.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[static_cast<std::size_t>(map[i] - 1)] = t.permutation(filled.values[i]);
  return FilledBoard{filled.board, std::move(out)};
}

std::optional<Transform> are_equivalent(const FilledBoard& from, const FilledBoard& to) {
  require_same_family(from, to);
  const BoardSpec& board = *from.board;
  for (std::size_t k = 0; k < board.motions().size(); ++k) {
    auto partial = forced_symbol_map(from.values, board.motion_maps()[k], to.values);
    if (partial) return Transform{board.motions()[k], completions(*partial).front()};
  }
  return std::nullopt;
}

FilledBoard canonical_form(const FilledBoard& filled) {
  const BoardSpec& board = *filled.board;
  const std::size_t n = filled.values.size();
  std::vector<Symbol> best;
  std::vector<Symbol> moved(n);
  for (const auto& map : board.motion_maps()) {
    for (std::size_t i = 0; i < n; ++i)
      moved[static_cast<std::size_t>(map[i] - 1)] = filled.values[i];
    // The smallest relabelling numbers symbols in order of first appearance.
    Images relabel{};
    Symbol next = 1;
    for (Symbol& v : moved) {
      auto& slot = relabel[static_cast<std::size_t>(v - 1)];
      if (slot == 0) slot = next++;
      v = slot;
    }
    if (best.empty() || moved < best) best = moved;
  }
  return FilledBoard{filled.board, std::move(best)};
}

std::vector<Transform> stabilizer(const FilledBoard& filled) {
  const BoardSpec& board = *filled.board;
  std::vector<Transform> out;
  for (std::size_t k = 0; k < board.motions().size(); ++k) {
    auto partial = forced_symbol_map(filled.values, board.motion_maps()[k], filled.values);
    if (!partial) continue;
    for (auto& perm : completions(*partial)) out.push_back(Transform{board.motions()[k], perm});
  }
  return out;
}

long long orbit_size(const FilledBoard& filled) {
  return transform_count(*filled.board) / static_cast<long long>(stabilizer(filled).size());
}

}  // namespace septoku
