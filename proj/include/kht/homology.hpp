#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "kht/complex.hpp"
#include "kht/linalg.hpp"

namespace kht {

// Sparse integer chain, keyed by generator.
using Chain = std::map<GenId, std::int64_t>;
// Sparse rational chain; witnesses over the integers have denominator 1.
using QChain = std::map<GenId, mpq_class>;

QChain to_rational(const Chain& c);
// throws std::logic_error on a fractional or out-of-range coefficient
Chain to_integral(const QChain& c);

void add_to(Chain& acc, GenId g, std::int64_t c);
void add_to(QChain& acc, GenId g, const mpq_class& c);

struct GroupShape {
  int rank = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1
  bool operator==(const GroupShape&) const = default;
};

// Generators bucketed by (gr_h, gr_q), built once per complex.
class GradingIndex {
 public:
  explicit GradingIndex(const FilteredComplex& c);
  std::vector<GenId> block(int degree, Window w) const;

 private:
  std::map<std::pair<int, int>, std::vector<GenId>> buckets_;
};

// The differential from degree i to i+1 inside the window, rows indexed by
// the degree i+1 block and columns by the degree i block.
SparseMatrix differential_block(const FilteredComplex& c, const std::vector<GenId>& from,
                                const std::vector<GenId>& to);

GroupShape homology(const FilteredComplex& c, int degree, Window w = {}, Ring ring = Ring::Integers);
GroupShape homology(const FilteredComplex& c, const GradingIndex& idx, int degree, Window w,
                    Ring ring);
std::map<int, GroupShape> homology_all(const FilteredComplex& c, Window w = {},
                                       Ring ring = Ring::Integers);

// Kh^{i,j} of the Khovanov spec complex, keyed (i, j); zero groups omitted.
std::map<std::pair<int, int>, GroupShape> khovanov_homology(const FilteredComplex& khovanov);

// delta(z) in the window: targets outside the window are dropped.
Chain boundary(const FilteredComplex& c, const Chain& z, Window w = {});
QChain boundary(const FilteredComplex& c, const QChain& z, Window w = {});

// Solves delta(phi) = z inside the subquotient view given by the window.
// `allowed` restricts which generators phi may use (empty = all in window).
struct SolveOptions {
  Ring ring = Ring::Integers;
  std::function<bool(GenId)> allowed;
};
std::optional<QChain> solve_boundary(const FilteredComplex& c, const QChain& z, Window w,
                                     const SolveOptions& opt = {});

struct ClassResult {
  bool zero = false;
  QChain witness;  // delta(witness) = z in the view when zero
};
// Throws NotACycle if z is not a cycle in the view.
ClassResult class_is_zero(const FilteredComplex& c, const QChain& z, Window w,
                          Ring ring = Ring::Integers);
ClassResult class_is_zero(const FilteredComplex& c, const Chain& z, Window w,
                          Ring ring = Ring::Integers);

// phi with delta(phi) = z and every term of phi at gr_q >= m. Throws NotACycle,
// FiltrationViolation if z has a term below m.
std::optional<QChain> boundary_within_filtration(const FilteredComplex& c, const QChain& z, int m,
                                                 const SolveOptions& opt = {});

// gr_h of a homogeneous chain; throws if mixed. Empty chains report nothing.
std::optional<int> chain_degree(const FilteredComplex& c, const QChain& z);
int min_gr_q(const FilteredComplex& c, const QChain& z);
int min_gr_q(const FilteredComplex& c, const Chain& z);

}  // namespace kht
