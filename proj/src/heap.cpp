#include "locfree/heap.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace locfree {

Heap::Heap(int m) : m_(m) {
  if (m < 4) throw std::invalid_argument("heap needs at least 4 columns");
  cols_.resize(static_cast<std::size_t>(m));
  roof_.assign(static_cast<std::size_t>(m), 0);
}

Heap Heap::from_pieces(int m, const std::vector<Piece>& pieces) {
  Heap h(m);
  for (const Piece& p : pieces) {
    h.check_column(p.column);
    if (p.height < 1) throw std::invalid_argument("piece heights start at 1");
    auto& col = h.cols_[static_cast<std::size_t>(p.column)];
    col.push_back({p.height, p.sign});
  }
  for (auto& col : h.cols_) {
    std::sort(col.begin(), col.end(),
              [](const Entry& a, const Entry& b) { return a.height < b.height; });
    for (std::size_t i = 1; i < col.size(); ++i)
      if (col[i].height == col[i - 1].height)
        throw std::invalid_argument("two pieces share a cell");
  }
  h.size_ = static_cast<int>(pieces.size());
  h.steps_ = h.size_;
  for (int c = 0; c < m; ++c) {
    h.roof_[static_cast<std::size_t>(c)] = h.roof_now(c);
    h.roof_count_ += h.roof_[static_cast<std::size_t>(c)];
  }
  return h;
}

void Heap::check_column(int column) const {
  if (column < 0 || column >= m_) throw std::invalid_argument("column out of range");
}

int Heap::top_height(int column) const {
  const auto& col = cols_[static_cast<std::size_t>(column)];
  return col.empty() ? 0 : col.back().height;
}

std::optional<Piece> Heap::top(int column) const {
  check_column(column);
  const auto& col = cols_[static_cast<std::size_t>(column)];
  if (col.empty()) return std::nullopt;
  return Piece{col.back().height, column, col.back().sign};
}

bool Heap::has_piece(int column, int height) const {
  if (height < 1) return false;
  const auto& col = cols_[static_cast<std::size_t>(column)];
  auto it = std::lower_bound(col.begin(), col.end(), height,
                             [](const Entry& e, int h) { return e.height < h; });
  return it != col.end() && it->height == height;
}

bool Heap::contains(const Piece& p) const {
  if (p.column < 0 || p.column >= m_) return false;
  const auto& col = cols_[static_cast<std::size_t>(p.column)];
  auto it = std::lower_bound(col.begin(), col.end(), p.height,
                             [](const Entry& e, int h) { return e.height < h; });
  return it != col.end() && it->height == p.height && it->sign == p.sign;
}

std::vector<std::pair<int, Sign>> Heap::column_entries(int column) const {
  check_column(column);
  std::vector<std::pair<int, Sign>> out;
  for (const Entry& e : cols_[static_cast<std::size_t>(column)])
    out.emplace_back(e.height, e.sign);
  return out;
}

bool Heap::is_roof(int column) const {
  check_column(column);
  return roof_[static_cast<std::size_t>(column)] != 0;
}

std::vector<Piece> Heap::roof() const {
  std::vector<Piece> out;
  for (int c = 0; c < m_; ++c)
    if (roof_[static_cast<std::size_t>(c)]) {
      const Entry& e = cols_[static_cast<std::size_t>(c)].back();
      out.push_back({e.height, c, e.sign});
    }
  return out;
}

bool Heap::roof_now(int column) const {
  const int h = top_height(column);
  return h > 0 && h > top_height(prev(column)) && h > top_height(next(column));
}

void Heap::refresh_roof_around(int column) {
  for (int c : {prev(column), column, next(column)}) {
    const std::uint8_t r = roof_now(c) ? 1 : 0;
    roof_count_ += static_cast<int>(r) - static_cast<int>(roof_[static_cast<std::size_t>(c)]);
    roof_[static_cast<std::size_t>(c)] = r;
  }
}

Piece Heap::add_piece(int column, Sign sign) {
  check_column(column);
  const int h = std::max({top_height(prev(column)), top_height(column),
                          top_height(next(column))}) + 1;
  cols_[static_cast<std::size_t>(column)].push_back({h, sign});
  ++size_;
  ++steps_;
  refresh_roof_around(column);
  return {h, column, sign};
}

Piece Heap::annihilate_top(int column) {
  check_column(column);
  if (!roof_[static_cast<std::size_t>(column)])
    throw std::logic_error("annihilate_top: column top is not removable");
  auto& col = cols_[static_cast<std::size_t>(column)];
  const Entry e = col.back();
  col.pop_back();
  --size_;
  ++steps_;
  ++annihilations_;
  refresh_roof_around(column);
  return {e.height, column, e.sign};
}

DropEvent Heap::drop(int column, Sign sign) {
  check_column(column);
  if (roof_[static_cast<std::size_t>(column)] &&
      cols_[static_cast<std::size_t>(column)].back().sign != sign)
    return {DropEvent::Kind::annihilated, annihilate_top(column)};
  return {DropEvent::Kind::added, add_piece(column, sign)};
}

DropEvent Heap::drop_coin(int column, Sign sign, bool annihilate_on_top) {
  check_column(column);
  if (roof_[static_cast<std::size_t>(column)]) {
    if (annihilate_on_top) return {DropEvent::Kind::annihilated, annihilate_top(column)};
    return {DropEvent::Kind::added,
            add_piece(column, cols_[static_cast<std::size_t>(column)].back().sign)};
  }
  return {DropEvent::Kind::added, add_piece(column, sign)};
}

RoofLevels Heap::level_decomposition() const { return top_levels(-1); }

RoofLevels Heap::top_levels(int count) const {
  RoofLevels out;
  Heap scratch = *this;
  while (scratch.size_ > 0 && (count < 0 || static_cast<int>(out.levels.size()) < count)) {
    std::vector<std::pair<int, Sign>> level;
    for (int c = 0; c < m_; ++c)
      if (scratch.roof_[static_cast<std::size_t>(c)])
        level.emplace_back(c, scratch.cols_[static_cast<std::size_t>(c)].back().sign);
    if (level.empty())
      throw std::logic_error("nonempty heap with an empty roof; heap is invalid");
    for (const auto& [c, s] : level) scratch.annihilate_top(c);
    out.levels.push_back(std::move(level));
  }
  return out;
}

Heap Heap::reassemble(int m, const RoofLevels& levels) {
  Heap h(m);
  for (auto it = levels.levels.rbegin(); it != levels.levels.rend(); ++it)
    for (const auto& [column, sign] : *it) h.drop(column, sign);
  return h;
}

std::vector<std::string> Heap::validate() const {
  std::vector<std::string> out;
  auto note = [&](std::string msg) { out.push_back(std::move(msg)); };
  for (int c = 0; c < m_; ++c) {
    const auto& col = cols_[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i].height < 1)
        note("column " + std::to_string(c) + ": height below 1");
      if (i > 0 && col[i].height <= col[i - 1].height)
        note("column " + std::to_string(c) + ": stack not strictly increasing");
      // Condition 2: vertically adjacent pieces carry the same sign.
      if (i > 0 && col[i].height == col[i - 1].height + 1 && col[i].sign != col[i - 1].sign)
        note("column " + std::to_string(c) + ": opposite signs stacked at heights " +
             std::to_string(col[i - 1].height) + "," + std::to_string(col[i].height));
      // Condition 1: support one level below in the own or an adjacent column.
      if (col[i].height > 1) {
        const int below = col[i].height - 1;
        if (!has_piece(prev(c), below) && !has_piece(c, below) && !has_piece(next(c), below))
          note("unsupported piece at height " + std::to_string(col[i].height) +
               ", column " + std::to_string(c));
      }
      // Condition 3: no equal heights in adjacent columns.
      if (has_piece(next(c), col[i].height))
        note("equal heights " + std::to_string(col[i].height) + " in adjacent columns " +
             std::to_string(c) + "," + std::to_string(next(c)));
    }
  }
  if (static_cast<std::int64_t>(size_) != steps_ - 2 * annihilations_)
    note("size identity violated: size != steps - 2*annihilations");
  return out;
}

void Heap::collect_cone(const Piece& anchor, int cap, std::vector<Piece>* out) const {
  out->clear();
  std::vector<Piece> frontier{anchor};
  auto seen = [&](int column, int height) {
    if (column == anchor.column && height == anchor.height) return true;
    for (const Piece& p : *out)
      if (p.column == column && p.height == height) return true;
    return false;
  };
  while (!frontier.empty()) {
    const Piece y = frontier.back();
    frontier.pop_back();
    for (int c : {prev(y.column), y.column, next(y.column)}) {
      const auto& col = cols_[static_cast<std::size_t>(c)];
      auto it = std::upper_bound(col.begin(), col.end(), y.height,
                                 [](int h, const Entry& e) { return h < e.height; });
      for (; it != col.end(); ++it) {
        if (seen(c, it->height)) continue;
        out->push_back({it->height, c, it->sign});
        if (static_cast<int>(out->size()) > cap) return;
        frontier.push_back(out->back());
      }
    }
  }
}

int Heap::cone_size(const Piece& anchor, int cap) const {
  std::vector<Piece> cone;
  collect_cone(anchor, cap, &cone);
  return static_cast<int>(cone.size());
}

int Heap::blocker_count(int column, int cap) const {
  check_column(column);
  auto t = top(column);
  if (!t) return 0;
  return cone_size(*t, cap);
}

std::optional<ConfigChain> Heap::blocking_chain() const {
  if (cols_[0].empty()) return std::nullopt;
  const Piece x{cols_[0].back().height, 0, cols_[0].back().sign};
  std::vector<Piece> cone;
  collect_cone(x, size_ + 1, &cone);
  ConfigChain chain;
  if (cone.empty()) return chain;
  std::sort(cone.begin(), cone.end(), [](const Piece& a, const Piece& b) {
    if (a.height != b.height) return a.height < b.height;
    return a.column < b.column;
  });
  auto offset_between = [&](int from, int to) {
    const int d = ((to - from) % m_ + m_) % m_;
    if (d == 0) return 0;
    if (d == 1) return 1;
    if (d == m_ - 1) return -1;
    return 2;  // not adjacent
  };
  // node index of x is 0; cone[i] maps to nodes_[i + 1] in insertion order.
  std::vector<Piece> placed{x};
  for (const Piece& p : cone) {
    // Parent: the highest piece this one directly blocks. Ties (same height,
    // columns on both sides) prefer the tower, then the left neighbor.
    int best = -1;
    int best_off = 2;
    for (int i = 0; i < static_cast<int>(placed.size()); ++i) {
      const Piece& q = placed[static_cast<std::size_t>(i)];
      if (q.height >= p.height) continue;
      const int off = offset_between(q.column, p.column);
      if (off == 2) continue;
      auto rank = [](int o) { return o == 0 ? 0 : (o == 1 ? 1 : 2); };
      if (best < 0 || q.height > placed[static_cast<std::size_t>(best)].height ||
          (q.height == placed[static_cast<std::size_t>(best)].height &&
           rank(off) < rank(best_off))) {
        best = i;
        best_off = off;
      }
    }
    if (best < 0) throw std::logic_error("blocking cone piece without a parent");
    chain.add_child(best, best_off);
    placed.push_back(p);
  }
  return chain;
}

std::string Heap::to_text() const {
  std::ostringstream os;
  os << "m = " << m_ << "\n";
  os << "steps = " << steps_ << "\n";
  os << "annihilations = " << annihilations_ << "\n";
  for (int c = 0; c < m_; ++c) {
    os << "column " << c << " =";
    for (const Entry& e : cols_[static_cast<std::size_t>(c)])
      os << " " << e.height << sign_char(e.sign);
    os << "\n";
  }
  return os.str();
}

Heap Heap::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto fail = [](const std::string& why) -> void {
    throw std::invalid_argument("heap snapshot: " + why);
  };
  auto read_kv = [&](const std::string& key) -> std::string {
    if (!std::getline(is, line)) fail("missing '" + key + "'");
    const std::string prefix = key + " = ";
    if (line.rfind(prefix, 0) != 0) fail("expected '" + key + " = ...'");
    return line.substr(prefix.size());
  };
  const int m = std::stoi(read_kv("m"));
  const std::int64_t steps = std::stoll(read_kv("steps"));
  const std::int64_t annih = std::stoll(read_kv("annihilations"));
  Heap h(m);
  std::vector<Piece> pieces;
  for (int c = 0; c < m; ++c) {
    if (!std::getline(is, line)) fail("missing column " + std::to_string(c));
    const std::string prefix = "column " + std::to_string(c) + " =";
    if (line.rfind(prefix, 0) != 0) fail("expected '" + prefix + "'");
    std::istringstream cells(line.substr(prefix.size()));
    std::string cell;
    while (cells >> cell) {
      if (cell.size() < 2 || (cell.back() != '+' && cell.back() != '-'))
        fail("bad cell '" + cell + "'");
      const int height = std::stoi(cell.substr(0, cell.size() - 1));
      pieces.push_back({height, c, cell.back() == '+' ? Sign::plus : Sign::minus});
    }
  }
  h = from_pieces(m, pieces);
  h.steps_ = steps;
  h.annihilations_ = annih;
  return h;
}

Heap make_config(const ConfigChain& chain, int m) { return realize_config(chain, m).first; }

std::pair<Heap, std::vector<Piece>> realize_config(const ConfigChain& chain, int m) {
  if (m < 4) throw std::invalid_argument("heap needs at least 4 columns");
  const auto& nodes = chain.nodes();
  std::vector<Piece> pieces;
  pieces.reserve(nodes.size());
  pieces.push_back({1, 0, Sign::plus});
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const Piece& parent = pieces[static_cast<std::size_t>(nodes[i].parent)];
    const int column = ((parent.column + nodes[i].offset) % m + m) % m;
    if (column == 0)
      throw std::invalid_argument("chain not realizable: a blocker would sit in column 0");
    const Sign sign = nodes[i].offset == 0 ? parent.sign : Sign::plus;
    pieces.push_back({parent.height + 1, column, sign});
  }
  Heap h = Heap::from_pieces(m, pieces);
  if (!h.validate().empty())
    throw std::invalid_argument("chain not realizable in " + std::to_string(m) + " columns");
  auto realized = h.blocking_chain();
  if (!realized || !(*realized == chain))
    throw std::invalid_argument("chain realization does not reproduce the configuration");
  return {std::move(h), std::move(pieces)};
}

}  // namespace locfree
