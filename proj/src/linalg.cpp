#include "kht/linalg.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "kht/errors.hpp"

namespace kht {

void SparseMatrix::add(int r, int c, std::int64_t v) {
  if (v != 0) row_entries[r].push_back({c, v});
}

void SparseMatrix::finalize() {
  for (auto& row : row_entries) {
    std::sort(row.begin(), row.end());
    std::vector<std::pair<int, std::int64_t>> out;
    for (auto [c, v] : row) {
      if (!out.empty() && out.back().first == c)
        out.back().second += v;
      else
        out.push_back({c, v});
    }
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    row = std::move(out);
  }
}

namespace {

using Row = std::vector<std::pair<int, std::int64_t>>;

std::int64_t entry(const Row& row, int c) {
  auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(c, std::int64_t{INT64_MIN}));
  return it != row.end() && it->first == c ? it->second : 0;
}

// dst - f * src; false on overflow
bool axpy(const Row& dst, std::int64_t f, const Row& src, Row& out) {
  out.clear();
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(dst[i++]);
    } else {
      std::int64_t prod, val;
      if (__builtin_mul_overflow(f, src[j].second, &prod)) return false;
      if (i < dst.size() && dst[i].first == src[j].first) {
        if (__builtin_sub_overflow(dst[i].second, prod, &val)) return false;
        ++i;
      } else {
        if (__builtin_sub_overflow(std::int64_t{0}, prod, &val)) return false;
      }
      if (val != 0) out.push_back({src[j].first, val});
      ++j;
    }
  }
  return true;
}

template <class T>
void swap_rows(std::vector<std::vector<T>>& m, std::size_t a, std::size_t b) {
  if (a != b) std::swap(m[a], m[b]);
}

template <class T>
void swap_cols(std::vector<std::vector<T>>& m, std::size_t a, std::size_t b) {
  if (a != b)
    for (auto& row : m) std::swap(row[a], row[b]);
}

// Diagonalizes a (in place) by unimodular row/column operations over the
// integers, or invertible ones over the rationals. Returns the diagonal.
template <class T>
std::vector<T> diagonalize(std::vector<std::vector<T>>& a, std::size_t cols,
                           std::vector<std::vector<T>>* u, std::vector<std::vector<T>>* v) {
  const std::size_t rows = a.size();
  std::vector<T> diag;
  auto row_op = [&](std::size_t i, std::size_t t, const T& q) {
    for (std::size_t j = 0; j < cols; ++j)
      if (a[t][j] != 0) a[i][j] -= q * a[t][j];
    if (u)
      for (std::size_t j = 0; j < rows; ++j)
        if ((*u)[t][j] != 0) (*u)[i][j] -= q * (*u)[t][j];
  };
  auto col_op = [&](std::size_t j, std::size_t t, const T& q) {
    for (std::size_t i = 0; i < rows; ++i)
      if (a[i][t] != 0) a[i][j] -= q * a[i][t];
    if (v)
      for (std::size_t i = 0; i < cols; ++i)
        if ((*v)[i][t] != 0) (*v)[i][j] -= q * (*v)[i][t];
  };
  auto move_to = [&](std::size_t t, std::size_t r, std::size_t c) {
    swap_rows(a, t, r);
    if (u) swap_rows(*u, t, r);
    swap_cols(a, t, c);
    if (v) swap_cols(*v, t, c);
  };
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // smallest nonzero magnitude in the remaining block
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    move_to(t, pr, pc);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        T q = a[i][t] / a[t][t];  // truncating for integers
        row_op(i, t, q);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        T q = a[t][j] / a[t][t];
        col_op(j, t, q);
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
      // a remainder is smaller than the pivot: bring it in
      std::size_t br = t, bc = t;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (a[i][t] != 0 && abs(a[i][t]) < abs(a[br][bc])) br = i, bc = t;
      for (std::size_t j = t + 1; j < cols; ++j)
        if (a[t][j] != 0 && abs(a[t][j]) < abs(a[br][bc])) br = t, bc = j;
      move_to(t, br, bc);
    }
    diag.push_back(a[t][t]);
  }
  return diag;
}

}  // namespace

LinearSystem::LinearSystem(const SparseMatrix& a, Ring ring, bool want_solve)
    : ring_(ring), want_solve_(want_solve), rows_(a.rows), cols_(a.cols) {
  std::vector<Row> rows = a.row_entries;
  std::vector<std::vector<int>> col_rows(cols_);
  for (int r = 0; r < rows_; ++r)
    for (auto [c, x] : rows[r]) col_rows[c].push_back(r);
  std::vector<char> row_alive(rows_, 1), col_alive(cols_, 1);
  using Key = std::pair<std::size_t, int>;
  std::priority_queue<Key, std::vector<Key>, std::greater<Key>> pq;
  for (int c = 0; c < cols_; ++c)
    if (!col_rows[c].empty()) pq.push({col_rows[c].size(), c});
  std::vector<std::size_t> queued(cols_, 0);
  for (int c = 0; c < cols_; ++c) queued[c] = col_rows[c].size();
  Row scratch;
  bool overflowed = false;

  while (!pq.empty() && !overflowed) {
    auto [cnt, c] = pq.top();
    pq.pop();
    if (!col_alive[c] || cnt != queued[c]) continue;
    // compact to rows that still hold column c
    std::vector<int>& cr = col_rows[c];
    std::sort(cr.begin(), cr.end());
    cr.erase(std::unique(cr.begin(), cr.end()), cr.end());
    std::erase_if(cr, [&](int r) { return !row_alive[r] || entry(rows[r], c) == 0; });
    if (cr.size() != cnt) {
      queued[c] = cr.size();
      if (!cr.empty()) pq.push({cr.size(), c});
      continue;
    }
    int best = -1;
    for (int r : cr) {
      std::int64_t x = entry(rows[r], c);
      if ((x == 1 || x == -1) && (best < 0 || rows[r].size() < rows[best].size())) best = r;
    }
    if (best < 0) continue;  // no unit here; may come back after fill-in
    const std::int64_t unit = entry(rows[best], c);
    Pivot p{best, c, unit, rows[best], {}};
    for (int r : cr) {
      if (r == best) continue;
      const std::int64_t f = entry(rows[r], c) * unit;
      if (!axpy(rows[r], f, rows[best], scratch)) {
        overflowed = true;
        break;
      }
      for (auto [cc, x] : scratch)
        if (entry(rows[r], cc) == 0) col_rows[cc].push_back(r);
      rows[r].swap(scratch);
      p.ops.push_back({r, f});
    }
    if (overflowed) {
      // keep the ops already applied so right-hand sides replay consistently;
      // the pivot row itself stays in the dense residual
      pivots_.push_back({best, -1, 0, {}, std::move(p.ops)});
      break;
    }
    row_alive[best] = 0;
    col_alive[c] = 0;
    for (auto [cc, x] : p.snapshot) {
      if (!col_alive[cc]) continue;
      queued[cc] = col_rows[cc].size();
      pq.push({queued[cc], cc});
    }
    if (!want_solve_) {
      p.snapshot.clear();
      p.ops.clear();
    }
    pivots_.push_back(std::move(p));
    ++unit_pivots_;
  }

  // dense residual
  std::vector<int> col_index(cols_, -1);
  for (int r = 0; r < rows_; ++r) {
    if (!row_alive[r]) continue;
    if (rows[r].empty())
      zero_rows_.push_back(r);
    else
      res_rows_.push_back(r);
  }
  for (int r : res_rows_)
    for (auto [c, x] : rows[r])
      if (col_index[c] < 0) {
        col_index[c] = 0;
        res_cols_.push_back(c);
      }
  std::sort(res_cols_.begin(), res_cols_.end());
  for (std::size_t j = 0; j < res_cols_.size(); ++j) col_index[res_cols_[j]] = static_cast<int>(j);
  const std::size_t rr = res_rows_.size(), cc = res_cols_.size();
  auto identity = [](std::size_t n) {
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
  };
  if (ring_ == Ring::Integers) {
    std::vector<std::vector<mpz_class>> d(rr, std::vector<mpz_class>(cc));
    for (std::size_t i = 0; i < rr; ++i)
      for (auto [c, x] : rows[res_rows_[i]]) d[i][col_index[c]] = static_cast<long>(x);
    std::vector<std::vector<mpz_class>> u, v;
    if (want_solve_) {
      u.assign(rr, std::vector<mpz_class>(rr));
      v.assign(cc, std::vector<mpz_class>(cc));
      for (std::size_t i = 0; i < rr; ++i) u[i][i] = 1;
      for (std::size_t i = 0; i < cc; ++i) v[i][i] = 1;
    }
    auto dg = diagonalize(d, cc, want_solve_ ? &u : nullptr, want_solve_ ? &v : nullptr);
    for (auto& x : dg) diag_.push_back(mpq_class(x));
    if (want_solve_) {
      u_.assign(rr, std::vector<mpq_class>(rr));
      v_.assign(cc, std::vector<mpq_class>(cc));
      for (std::size_t i = 0; i < rr; ++i)
        for (std::size_t j = 0; j < rr; ++j) u_[i][j] = u[i][j];
      for (std::size_t i = 0; i < cc; ++i)
        for (std::size_t j = 0; j < cc; ++j) v_[i][j] = v[i][j];
    }
  } else {
    std::vector<std::vector<mpq_class>> d(rr, std::vector<mpq_class>(cc));
    for (std::size_t i = 0; i < rr; ++i)
      for (auto [c, x] : rows[res_rows_[i]]) d[i][col_index[c]] = static_cast<long>(x);
    if (want_solve_) {
      u_ = identity(rr);
      v_ = identity(cc);
    }
    diag_ = diagonalize(d, cc, want_solve_ ? &u_ : nullptr, want_solve_ ? &v_ : nullptr);
  }
}

std::vector<mpz_class> LinearSystem::invariant_factors() const {
  if (ring_ != Ring::Integers) throw std::logic_error("invariant factors need integer mode");
  std::vector<mpz_class> d;
  for (std::size_t i = 0; i < unit_pivots_; ++i) d.push_back(1);
  for (auto& x : diag_) d.push_back(abs(x.get_num()));
  // diagonal to Smith form: replace pairs by (gcd, lcm) until sorted by divisibility
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (d[j] % d[i] == 0) continue;
      mpz_class g = gcd(d[i], d[j]), l = lcm(d[i], d[j]);
      d[i] = g;
      d[j] = l;
    }
  std::sort(d.begin(), d.end());
  return d;
}

std::optional<std::vector<mpq_class>> LinearSystem::solve(std::vector<mpq_class> b) const {
  if (!want_solve_) throw std::logic_error("system was factored without transforms");
  if (static_cast<int>(b.size()) != rows_) throw std::logic_error("right-hand side has wrong length");
  if (ring_ == Ring::Integers)
    for (auto& x : b)
      if (x.get_den() != 1) throw std::logic_error("integer solve with fractional right-hand side");
  for (const Pivot& p : pivots_)
    for (auto [r, f] : p.ops) b[r] -= mpq_class(static_cast<long>(f)) * b[p.row];
  for (int r : zero_rows_)
    if (b[r] != 0) return std::nullopt;
  const std::size_t rr = res_rows_.size(), cc = res_cols_.size();
  std::vector<mpq_class> ub(rr);
  for (std::size_t i = 0; i < rr; ++i)
    for (std::size_t j = 0; j < rr; ++j)
      if (u_[i][j] != 0) ub[i] += u_[i][j] * b[res_rows_[j]];
  std::vector<mpq_class> y(cc);
  for (std::size_t t = 0; t < rr; ++t) {
    if (t < diag_.size()) {
      y[t] = ub[t] / diag_[t];
      if (ring_ == Ring::Integers && y[t].get_den() != 1) return std::nullopt;
    } else if (ub[t] != 0) {
      return std::nullopt;
    }
  }
  std::vector<mpq_class> x(cols_);
  for (std::size_t i = 0; i < cc; ++i) {
    mpq_class s = 0;
    for (std::size_t t = 0; t < diag_.size(); ++t)
      if (v_[i][t] != 0) s += v_[i][t] * y[t];
    x[res_cols_[i]] = s;
  }
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    if (it->col < 0) continue;
    mpq_class s = b[it->row];
    for (auto [c, a] : it->snapshot)
      if (c != it->col && x[c] != 0) s -= mpq_class(static_cast<long>(a)) * x[c];
    x[it->col] = s * static_cast<long>(it->unit);
  }
  return x;
}

}  // namespace kht
