#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locfree/config_chain.hpp"

namespace locfree {

enum class Sign : std::uint8_t { plus = 0, minus = 1 };

inline Sign opposite(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

struct Piece {
  int height;  // >= 1
  int column;  // in [0, m)
  Sign sign;

  friend bool operator==(const Piece&, const Piece&) = default;
};

struct DropEvent {
  enum class Kind : std::uint8_t { added, annihilated };
  Kind kind;
  Piece piece;  // the piece that was added, or the annihilated victim
};

// Roof levels, level 1 (the removable pieces) first. Levels hold
// (column, sign) pairs sorted by column; heights are implied by the levels.
struct RoofLevels {
  std::vector<std::vector<std::pair<int, Sign>>> levels;
};

// A heap of signed pieces on the cyclic lattice Z_m x Z+. Pieces have sticky
// corners: a dropped piece lands at max of the three neighboring column tops
// plus one, and a piece landing directly on top of an opposite-sign piece
// annihilates with it. Columns keep their stacks sorted by height; gaps are
// allowed when a piece is supported by a neighboring column.
class Heap {
 public:
  explicit Heap(int m);  // throws std::invalid_argument when m < 4

  // Builds a heap directly from pieces (validity is not enforced; call
  // validate()). step_count is set to the piece count, annihilations to 0.
  static Heap from_pieces(int m, const std::vector<Piece>& pieces);

  int columns() const { return m_; }
  int size() const { return size_; }
  std::int64_t step_count() const { return steps_; }
  std::int64_t annihilation_count() const { return annihilations_; }

  int top_height(int column) const;  // 0 when the column is empty
  std::optional<Piece> top(int column) const;
  bool has_piece(int column, int height) const;
  bool contains(const Piece& p) const;
  // Column stack bottom-to-top as (height, sign) pairs.
  std::vector<std::pair<int, Sign>> column_entries(int column) const;

  // Roof queries are O(1); membership flags are maintained incrementally.
  bool is_roof(int column) const;
  int roof_size() const { return roof_count_; }
  std::vector<Piece> roof() const;

  // True when a piece dropped here would land directly on the column's top
  // piece, i.e. the top strictly exceeds both adjacent tops.
  bool annihilation_eligible(int column) const { return is_roof(column); }

  // Signed drop: annihilates when the landing is on an opposite-sign top.
  DropEvent drop(int column, Sign sign);

  // Generalized drop: when the piece lands directly on the column top, the
  // caller-supplied coin decides annihilation; a stacked piece takes the sign
  // of the piece below it. Off-top landings always add with `sign`.
  DropEvent drop_coin(int column, Sign sign, bool annihilate_on_top);

  // Low-level mutators (used for event replay). The caller is responsible
  // for the same-column sign rule when stacking directly on the column top.
  Piece add_piece(int column, Sign sign);
  Piece annihilate_top(int column);  // requires annihilation_eligible

  RoofLevels level_decomposition() const;
  // First `count` levels only (cheaper than a full decomposition).
  RoofLevels top_levels(int count) const;
  static Heap reassemble(int m, const RoofLevels& levels);

  // Returns all violations of the heap conditions (support, same-column
  // signs, adjacent-column heights) plus the size identity; empty means ok.
  std::vector<std::string> validate() const;

  // Configuration of the pieces blocking the highest piece in column 0;
  // nullopt when column 0 is empty, the empty chain when that piece is in
  // the roof.
  std::optional<ConfigChain> blocking_chain() const;

  // Number of pieces blocking the top of `column`, counting stops early once
  // the count exceeds `cap`. Returns 0 for an empty column.
  int blocker_count(int column, int cap) const;
  // Number of pieces blocking `anchor` (all pieces that must be annihilated
  // before it can join the roof), capped likewise.
  int cone_size(const Piece& anchor, int cap) const;

  std::string to_text() const;
  static Heap from_text(const std::string& text);

  // Structural equality: same m and identical column stacks. The step and
  // annihilation counters are not compared.
  friend bool operator==(const Heap& a, const Heap& b) {
    return a.m_ == b.m_ && a.cols_ == b.cols_;
  }

 private:
  struct Entry {
    int height;
    Sign sign;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  int m_;
  int size_ = 0;
  std::int64_t steps_ = 0;
  std::int64_t annihilations_ = 0;
  std::vector<std::vector<Entry>> cols_;
  std::vector<std::uint8_t> roof_;
  int roof_count_ = 0;

  int prev(int c) const { return c == 0 ? m_ - 1 : c - 1; }
  int next(int c) const { return c + 1 == m_ ? 0 : c + 1; }
  void check_column(int column) const;
  bool roof_now(int column) const;
  void refresh_roof_around(int column);
  void collect_cone(const Piece& anchor, int cap, std::vector<Piece>* out) const;
};

// Minimal realization of a blocking configuration over a single piece in
// column 0: the root at height 1, every child one level above its parent.
// Throws std::invalid_argument when the chain cannot be realized within m
// columns. realize_config also returns the pieces in chain-node order (the
// last one is the chain's final piece).
Heap make_config(const ConfigChain& chain, int m);
std::pair<Heap, std::vector<Piece>> realize_config(const ConfigChain& chain, int m);

}  // namespace locfree
