#include "kht/grid.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <sstream>

#include "kht/errors.hpp"

namespace kht {

GridDiagram GridDiagram::parse(std::string_view text) {
  std::istringstream is{std::string(text)};
  GridDiagram g;
  if (!(is >> g.n) || g.n < 1) throw Error(ErrorKind::MalformedGrid, "missing size");
  g.xs.resize(g.n);
  g.os.resize(g.n);
  for (int& x : g.xs)
    if (!(is >> x)) throw Error(ErrorKind::MalformedGrid, "short xs line");
  for (int& o : g.os)
    if (!(is >> o)) throw Error(ErrorKind::MalformedGrid, "short os line");
  std::string rest;
  if (is >> rest) throw Error(ErrorKind::MalformedGrid, "trailing data '" + rest + "'");
  g.validate();
  return g;
}

std::string GridDiagram::to_text() const {
  std::ostringstream os_;
  os_ << n << '\n';
  for (int c = 0; c < n; ++c) os_ << (c ? " " : "") << xs[c];
  os_ << '\n';
  for (int c = 0; c < n; ++c) os_ << (c ? " " : "") << os[c];
  os_ << '\n';
  return os_.str();
}

void GridDiagram::validate() const {
  if (n < 2 || int(xs.size()) != n || int(os.size()) != n)
    throw Error(ErrorKind::MalformedGrid, "size mismatch");
  std::vector<char> sx(n, 0), so(n, 0);
  for (int c = 0; c < n; ++c) {
    if (xs[c] < 0 || xs[c] >= n || os[c] < 0 || os[c] >= n)
      throw Error(ErrorKind::MalformedGrid, "marker row out of range");
    if (xs[c] == os[c]) throw Error(ErrorKind::MalformedGrid, "X and O share a cell in column " + std::to_string(c));
    if (sx[xs[c]]++ || so[os[c]]++) throw Error(ErrorKind::MalformedGrid, "xs and os must be permutations");
  }
}

namespace {

struct Rows {
  std::vector<int> x_col, o_col;  // per row
};

Rows rows_of(const GridDiagram& g) {
  Rows r{std::vector<int>(g.n), std::vector<int>(g.n)};
  for (int c = 0; c < g.n; ++c) {
    r.x_col[g.xs[c]] = c;
    r.o_col[g.os[c]] = c;
  }
  return r;
}

// vertical of column c passes height y strictly (y a half-integer times 2)
bool active(const GridDiagram& g, int c, int y2) {
  const int x2 = 2 * g.xs[c], o2 = 2 * g.os[c];
  if (g.xs[c] < g.os[c]) return x2 < y2 && y2 < o2;
  return y2 > x2 || y2 < o2;
}

int sgn(int v) { return (v > 0) - (v < 0); }

}  // namespace

int component_count(const GridDiagram& g) {
  g.validate();
  const Rows r = rows_of(g);
  std::vector<char> seen(g.n, 0);
  int count = 0;
  for (int c0 = 0; c0 < g.n; ++c0) {
    if (seen[c0]) continue;
    ++count;
    for (int c = c0; !seen[c]; c = r.x_col[g.os[c]]) seen[c] = 1;
  }
  return count;
}

BraidWord braid_from_grid(const GridDiagram& g) {
  g.validate();
  const Rows rw = rows_of(g);
  int strands = 0;
  for (int c = 0; c < g.n; ++c) strands += g.xs[c] > g.os[c];
  std::vector<Letter> ls;
  for (int r = 0; r < g.n; ++r) {
    const int a = rw.o_col[r], b = rw.x_col[r];
    // rank of a among the verticals just below the row, and those passed under
    int p = 0, between = 0;
    for (int c = 0; c < g.n; ++c) {
      if (c == a || c == b || !active(g, c, 2 * r)) continue;
      if (c < a) ++p;
      if ((c > a && c < b) || (c > b && c < a)) ++between;
    }
    if (b > a)
      for (int t = 0; t < between; ++t) ls.push_back({p + 1 + t, -1});
    else
      for (int t = 0; t < between; ++t) ls.push_back({p - t, 1});
  }
  return BraidWord(std::max(strands, 1), std::move(ls));
}

ClassicalInvariants classical_invariants(const GridDiagram& g) {
  if (component_count(g) != 1) throw Error(ErrorKind::MultiComponent, "classical invariants need a knot");
  const Rows rw = rows_of(g);
  ClassicalInvariants ci;
  for (int c = 0; c < g.n; ++c) {
    const int vy = sgn(g.os[c] - g.xs[c]);
    for (int r = std::min(g.xs[c], g.os[c]) + 1; r < std::max(g.xs[c], g.os[c]); ++r) {
      const int lo = std::min(rw.o_col[r], rw.x_col[r]), hi = std::max(rw.o_col[r], rw.x_col[r]);
      if (lo < c && c < hi) ci.writhe += -vy * sgn(rw.x_col[r] - rw.o_col[r]);
    }
  }
  // corners that turn into cusps: horizontal leaving left with vertical
  // leaving up (right cusp), or right and down (left cusp)
  int cusps = 0;
  for (int c = 0; c < g.n; ++c)
    for (bool is_x : {true, false}) {
      const int r = is_x ? g.xs[c] : g.os[c];
      const int other_row = is_x ? g.os[c] : g.xs[c];
      const int other_col = is_x ? rw.o_col[r] : rw.x_col[r];
      const int h = sgn(other_col - c), v = sgn(other_row - r);
      const bool right = h < 0 && v > 0, left = h > 0 && v < 0;
      if (!right && !left) continue;
      ++cusps;
      if (right == is_x) ++ci.up_cusps;
      else ++ci.down_cusps;
    }
  ci.tb = ci.writhe - cusps / 2;
  ci.rot = (ci.down_cusps - ci.up_cusps) / 2;
  return ci;
}

namespace {

// Grows a grid one row at a time: each row moves the strand at one braid
// position to a fresh column at a chosen abscissa.
class Builder {
 public:
  explicit Builder(int strands) : strands_(strands) {
    // bottom rows: strand k leaves its closing column (placed later, far
    // right) for a start column at x = k
    for (int k = 0; k < strands; ++k) {
      cols_.push_back({mpq_class(k), -1, rows_});
      pos_.push_back(k);
      ++rows_;
    }
  }

  int rows() const { return rows_; }

  const mpq_class& x_at(int p) const { return cols_[pos_[p]].x; }
  mpq_class min_x() const {
    mpq_class m = cols_[0].x;
    for (const Col& c : cols_) m = std::min(m, c.x);
    return m;
  }
  mpq_class max_x() const {
    mpq_class m = cols_[0].x;
    for (const Col& c : cols_) m = std::max(m, c.x);
    return m;
  }
  // strictly between lo and hi, avoiding every existing abscissa
  mpq_class fresh(const mpq_class& lo, const mpq_class& hi) const {
    mpq_class x = (lo + hi) / 2;
    while (std::any_of(cols_.begin(), cols_.end(), [&](const Col& c) { return c.x == x; })) x = (lo + x) / 2;
    return x;
  }

  void jump(int p, const mpq_class& x) {
    cols_[pos_[p]].o_row = rows_;
    cols_.push_back({x, -1, rows_});
    const int id = int(cols_.size()) - 1;
    pos_.erase(pos_.begin() + p);
    auto it = std::lower_bound(pos_.begin(), pos_.end(), x, [&](int c, const mpq_class& v) { return cols_[c].x < v; });
    pos_.insert(it, id);
    ++rows_;
  }

  void letter(Letter l) {
    const int p = l.index - 1;
    if (l.sign < 0) {
      const mpq_class hi = p + 2 < strands_ ? x_at(p + 2) : max_x() + 1;
      jump(p, fresh(x_at(p + 1), hi));
    } else {
      const mpq_class lo = p >= 1 ? x_at(p - 1) : min_x() - 1;
      jump(p + 1, fresh(lo, x_at(p)));
    }
  }

  GridDiagram finish() {
    // top rows: highest position first into closing columns at the far right
    const mpq_class base = max_x() + 1;
    const std::vector<int> final_pos = pos_;
    for (int k = strands_ - 1; k >= 0; --k) {
      cols_[final_pos[k]].o_row = rows_;
      cols_.push_back({base + k, k, rows_});
      ++rows_;
    }
    std::vector<int> order(cols_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return cols_[a].x < cols_[b].x; });
    GridDiagram g;
    g.n = int(cols_.size());
    for (int c : order) {
      g.xs.push_back(cols_[c].x_row);
      g.os.push_back(cols_[c].o_row);
    }
    g.validate();
    return g;
  }

 private:
  struct Col {
    mpq_class x;
    int o_row = -1, x_row = -1;
  };
  int strands_;
  int rows_ = 0;
  std::vector<Col> cols_;
  std::vector<int> pos_;  // column per braid position, sorted by x
};

// Three rows swapping the top two positions: P gives s_m s_m, Q gives
// s_m^{-1}; both leave the same columns occupied.
void band(Builder& bld, int m, bool p_shape) {
  const mpq_class lo = m >= 2 ? bld.x_at(m - 2) : bld.min_x() - 1;
  const mpq_class c = bld.x_at(m - 1);
  const mpq_class n1 = bld.fresh(lo, c);
  const mpq_class n2 = bld.fresh(lo, n1);
  const mpq_class far = bld.max_x() + 1;
  if (p_shape) {
    bld.jump(m, n1);
    bld.jump(m, n2);
    bld.jump(m, far);
  } else {
    bld.jump(m - 1, far);
    bld.jump(m - 1, n1);
    bld.jump(m - 1, n2);
  }
}

constexpr std::array<std::pair<int, int>, 3> kShapeP{{{4, 2}, {3, 1}, {2, 5}}};
constexpr std::array<std::pair<int, int>, 3> kShapeQ{{{3, 5}, {4, 2}, {2, 1}}};

struct Band {
  std::array<int, 5> cols;
  bool p_shape;
};

std::optional<Band> read_band(const GridDiagram& g, const Rows& rw, int r) {
  if (r < 0 || r + 3 > g.n) return std::nullopt;
  std::vector<int> cs;
  for (int t = r; t < r + 3; ++t) {
    cs.push_back(rw.o_col[t]);
    cs.push_back(rw.x_col[t]);
  }
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  if (cs.size() != 5) return std::nullopt;
  Band b;
  std::copy(cs.begin(), cs.end(), b.cols.begin());
  auto role = [&](int c) { return int(std::find(cs.begin(), cs.end(), c) - cs.begin()) + 1; };
  std::array<std::pair<int, int>, 3> shape;
  for (int t = 0; t < 3; ++t) shape[t] = {role(rw.o_col[r + t]), role(rw.x_col[r + t])};
  if (shape == kShapeP) b.p_shape = true;
  else if (shape == kShapeQ) b.p_shape = false;
  else return std::nullopt;
  // the outer columns continue above the band, the middle two come from below
  auto outside = [&](int c, bool above) {
    const int other = g.xs[c] >= r && g.xs[c] < r + 3 ? g.os[c] : g.xs[c];
    return above ? other >= r + 3 : other < r;
  };
  if (!outside(cs[0], true) || !outside(cs[4], true) || !outside(cs[2], false) || !outside(cs[3], false))
    return std::nullopt;
  // nothing else crosses the band inside its column range
  for (int c = cs[0] + 1; c < cs[4]; ++c) {
    if (std::find(cs.begin(), cs.end(), c) != cs.end()) continue;
    for (int t = r; t < r + 3; ++t)
      if (active(g, c, 2 * t)) return std::nullopt;
  }
  return b;
}

void write_band(GridDiagram& g, int r, const Band& b) {
  const auto& shape = b.p_shape ? kShapeQ : kShapeP;
  for (int t = 0; t < 3; ++t) {
    g.os[b.cols[shape[t].first - 1]] = r + t;
    g.xs[b.cols[shape[t].second - 1]] = r + t;
  }
}

}  // namespace

GridDiagram grid_from_braid(const BraidWord& w) {
  Builder bld(w.strands());
  for (const Letter& l : w.letters()) bld.letter(l);
  return bld.finish();
}

GridDiagram sz_plus_rewrite(const GridDiagram& g, SZLocation loc) {
  g.validate();
  const Rows rw = rows_of(g);
  auto b1 = read_band(g, rw, loc.row1), b2 = read_band(g, rw, loc.row2);
  if (!b1 || !b2 || std::abs(loc.row1 - loc.row2) < 3 || b1->p_shape == b2->p_shape)
    throw Error(ErrorKind::PatternMismatch, "no improved SZ+ pattern at rows " + std::to_string(loc.row1) +
                                                " and " + std::to_string(loc.row2));
  GridDiagram out = g;
  write_band(out, loc.row1, *b1);
  write_band(out, loc.row2, *b2);
  out.validate();
  return out;
}

std::vector<SZLocation> sz_locations(const GridDiagram& g) {
  g.validate();
  const Rows rw = rows_of(g);
  std::vector<std::pair<int, bool>> bands;
  for (int r = 0; r + 3 <= g.n; ++r)
    if (auto b = read_band(g, rw, r)) bands.push_back({r, b->p_shape});
  std::vector<SZLocation> out;
  for (auto [r1, p1] : bands)
    for (auto [r2, p2] : bands)
      if (r1 + 3 <= r2 && p1 != p2) out.push_back({r1, r2});
  return out;
}

FlypeGrids flype_grids(const BraidWord& a, const BraidWord& b, int m) {
  for (const BraidWord* w : {&a, &b})
    for (const Letter& l : w->letters())
      if (l.index >= m) throw Error(ErrorKind::IndexOutOfRange, "A and B must use indices below m");
  FlypeGrids out;
  for (bool first : {true, false}) {
    Builder bld(m + 1);
    for (const Letter& l : a.letters()) bld.letter(l);
    const int r1 = bld.rows();
    band(bld, m, first);
    for (const Letter& l : b.letters()) bld.letter(l);
    const int r2 = bld.rows();
    band(bld, m, !first);
    (first ? out.source : out.target) = bld.finish();
    out.loc = {r1, r2};
  }
  return out;
}

namespace {

// w = A s^2 B s^{-1} with A, B below index m and exactly three s letters
std::optional<std::pair<BraidWord, BraidWord>> split_source(const BraidWord& w, int m) {
  const auto& ls = w.letters();
  const int n = int(ls.size());
  if (n < 3 || ls[n - 1] != Letter{m, -1}) return std::nullopt;
  std::vector<int> at;
  for (int i = 0; i < n; ++i)
    if (ls[i].index == m) at.push_back(i);
  if (at.size() != 3 || at[1] != at[0] + 1 || ls[at[0]].sign < 0 || ls[at[1]].sign < 0) return std::nullopt;
  BraidWord a(m + 1, {ls.begin(), ls.begin() + at[0]});
  BraidWord b(m + 1, {ls.begin() + at[1] + 1, ls.end() - 1});
  return std::pair{a, b};
}

BraidWord flype_target(const BraidWord& a, const BraidWord& b, int m) {
  std::vector<Letter> ls{{m, 1}};
  ls.insert(ls.end(), a.letters().begin(), a.letters().end());
  ls.push_back({m, -1});
  ls.insert(ls.end(), b.letters().begin(), b.letters().end());
  ls.push_back({m, 1});
  return BraidWord(m + 1, std::move(ls));
}

}  // namespace

SZReport verify_flype_sz(const GridDiagram& g1, const GridDiagram& g2) {
  SZReport r;
  r.word1 = braid_from_grid(g1);
  r.word2 = braid_from_grid(g2);
  if (component_count(g1) == 1 && component_count(g2) == 1) {
    r.inv1 = classical_invariants(g1);
    r.inv2 = classical_invariants(g2);
  }
  const int m = r.word1.strands() - 1;
  const int n = int(r.word1.size());
  if (m >= 1 && r.word2.strands() == m + 1 && int(r.word2.size()) == n) {
    for (int s1 = 0; s1 < n && !r.success; ++s1) {
      auto ab = split_source(cyclic_shift(r.word1, s1), m);
      if (!ab) continue;
      const BraidWord t = flype_target(ab->first, ab->second, m);
      for (int s2 = 0; s2 < n; ++s2)
        if (cyclic_shift(r.word2, s2) == t) {
          r.shape = {ab->first, ab->second, m, s1, s2};
          r.success = true;
          break;
        }
    }
  }
  if (!r.success)
    throw Error(ErrorKind::ShapeMismatch,
                "braids [" + r.word1.to_string() + "] and [" + r.word2.to_string() + "] are not a negative flype pair");
  return r;
}

}  // namespace kht
