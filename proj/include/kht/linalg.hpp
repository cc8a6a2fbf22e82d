#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace kht {

enum class Ring { Integers, Rationals };

struct SparseMatrix {
  int rows = 0, cols = 0;
  // per row, sorted by column, no zeros
  std::vector<std::vector<std::pair<int, std::int64_t>>> row_entries;

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c), row_entries(r) {}
  void add(int r, int c, std::int64_t v);  // accumulates; call finalize() before use
  void finalize();
};

// Solves and factors a fixed integer matrix. Unit pivots are eliminated
// sparsely (fewest-fill first); what is left is diagonalized densely with
// GMP integers (or rationals), keeping the transforms when solving is needed.
class LinearSystem {
 public:
  LinearSystem(const SparseMatrix& a, Ring ring, bool want_solve = true);

  std::size_t rank() const { return unit_pivots_ + diag_.size(); }
  // nonzero invariant factors, ascending, each dividing the next (integers only)
  std::vector<mpz_class> invariant_factors() const;
  // x with A x = b, or nothing if no solution exists over the ring
  std::optional<std::vector<mpq_class>> solve(std::vector<mpq_class> b) const;
  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  struct Pivot {
    int row, col;
    std::int64_t unit;
    std::vector<std::pair<int, std::int64_t>> snapshot;
    std::vector<std::pair<int, std::int64_t>> ops;  // b[r'] -= f * b[row]
  };
  Ring ring_;
  bool want_solve_;
  int rows_, cols_;
  std::size_t unit_pivots_ = 0;
  std::vector<Pivot> pivots_;
  std::vector<int> zero_rows_;  // live rows left empty
  std::vector<int> res_rows_, res_cols_;
  std::vector<mpq_class> diag_;
  std::vector<std::vector<mpq_class>> u_, v_;  // diag = U * R * V
};

}  // namespace kht
