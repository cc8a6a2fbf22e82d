#include "kht/homology.hpp"

#include <stdexcept>
#include <unordered_map>

#include "kht/errors.hpp"

namespace kht {

QChain to_rational(const Chain& c) {
  QChain out;
  for (auto [g, x] : c) out[g] = mpq_class(static_cast<long>(x));
  return out;
}

Chain to_integral(const QChain& c) {
  Chain out;
  for (auto& [g, x] : c) {
    if (x.get_den() != 1 || !x.get_num().fits_slong_p())
      throw std::logic_error("chain coefficient is not a machine integer");
    if (x != 0) out[g] = x.get_num().get_si();
  }
  return out;
}

void add_to(Chain& acc, GenId g, std::int64_t c) {
  if (c == 0) return;
  auto [it, fresh] = acc.try_emplace(g, c);
  if (fresh) return;
  if (__builtin_add_overflow(it->second, c, &it->second))
    throw Error(ErrorKind::TooLarge, "chain coefficient overflow");
  if (it->second == 0) acc.erase(it);
}

void add_to(QChain& acc, GenId g, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = acc.try_emplace(g, c);
  if (fresh) return;
  it->second += c;
  if (it->second == 0) acc.erase(it);
}

GradingIndex::GradingIndex(const FilteredComplex& c) {
  for (GenId g = 0; g < c.size(); ++g) buckets_[{c.gr_h(g), c.gr_q(g)}].push_back(g);
}

std::vector<GenId> GradingIndex::block(int degree, Window w) const {
  std::vector<GenId> out;
  for (auto it = buckets_.lower_bound({degree, std::numeric_limits<int>::min()});
       it != buckets_.end() && it->first.first == degree; ++it)
    if (w.contains(it->first.second)) out.insert(out.end(), it->second.begin(), it->second.end());
  std::sort(out.begin(), out.end());
  return out;
}

SparseMatrix differential_block(const FilteredComplex& c, const std::vector<GenId>& from,
                                const std::vector<GenId>& to) {
  std::unordered_map<GenId, int> row_of;
  row_of.reserve(to.size());
  for (std::size_t i = 0; i < to.size(); ++i) row_of[to[i]] = static_cast<int>(i);
  SparseMatrix m(static_cast<int>(to.size()), static_cast<int>(from.size()));
  for (std::size_t j = 0; j < from.size(); ++j)
    for (const Entry& e : c.delta(from[j])) {
      auto it = row_of.find(e.target);
      if (it != row_of.end()) m.add(it->second, static_cast<int>(j), e.coeff);
    }
  m.finalize();
  return m;
}

GroupShape homology(const FilteredComplex& c, const GradingIndex& idx, int degree, Window w,
                    Ring ring) {
  const auto prev = idx.block(degree - 1, w);
  const auto here = idx.block(degree, w);
  const auto next = idx.block(degree + 1, w);
  GroupShape s;
  if (here.empty()) return s;
  LinearSystem out(differential_block(c, here, next), ring, false);
  LinearSystem in(differential_block(c, prev, here), ring, false);
  s.rank = static_cast<int>(here.size() - out.rank() - in.rank());
  if (ring == Ring::Integers)
    for (auto& f : in.invariant_factors())
      if (f > 1) {
        if (!f.fits_slong_p()) throw Error(ErrorKind::TooLarge, "torsion coefficient too large");
        s.torsion.push_back(f.get_si());
      }
  return s;
}

GroupShape homology(const FilteredComplex& c, int degree, Window w, Ring ring) {
  return homology(c, GradingIndex(c), degree, w, ring);
}

std::map<int, GroupShape> homology_all(const FilteredComplex& c, Window w, Ring ring) {
  GradingIndex idx(c);
  std::map<int, GroupShape> out;
  for (int i = c.min_gr_h(); i <= c.max_gr_h(); ++i) {
    GroupShape s = homology(c, idx, i, w, ring);
    if (s.rank > 0 || !s.torsion.empty()) out[i] = s;
  }
  return out;
}

std::map<std::pair<int, int>, GroupShape> khovanov_homology(const FilteredComplex& kh) {
  if (kh.kind() != FrobeniusKind::Khovanov)
    throw std::logic_error("khovanov_homology needs the Khovanov spec complex");
  GradingIndex idx(kh);
  std::map<std::pair<int, int>, GroupShape> out;
  for (int i = kh.min_gr_h(); i <= kh.max_gr_h(); ++i)
    for (int j = kh.min_gr_q(); j <= kh.max_gr_q(); ++j) {
      GroupShape s = homology(kh, idx, i, Window{j, j + 1}, Ring::Integers);
      if (s.rank > 0 || !s.torsion.empty()) out[{i, j}] = s;
    }
  return out;
}

Chain boundary(const FilteredComplex& c, const Chain& z, Window w) {
  Chain out;
  for (auto [g, x] : z)
    for (const Entry& e : c.delta(g))
      if (w.contains(c.gr_q(e.target))) {
        std::int64_t p;
        if (__builtin_mul_overflow(x, std::int64_t{e.coeff}, &p))
          throw Error(ErrorKind::TooLarge, "chain coefficient overflow");
        add_to(out, e.target, p);
      }
  return out;
}

QChain boundary(const FilteredComplex& c, const QChain& z, Window w) {
  QChain out;
  for (auto& [g, x] : z)
    for (const Entry& e : c.delta(g))
      if (w.contains(c.gr_q(e.target))) add_to(out, e.target, x * e.coeff);
  return out;
}

std::optional<int> chain_degree(const FilteredComplex& c, const QChain& z) {
  std::optional<int> d;
  for (auto& [g, x] : z) {
    if (d && *d != c.gr_h(g)) throw std::logic_error("chain is not homogeneous in gr_h");
    d = c.gr_h(g);
  }
  return d;
}

int min_gr_q(const FilteredComplex& c, const QChain& z) {
  int m = std::numeric_limits<int>::max();
  for (auto& [g, x] : z) m = std::min(m, c.gr_q(g));
  return m;
}

int min_gr_q(const FilteredComplex& c, const Chain& z) {
  int m = std::numeric_limits<int>::max();
  for (auto& [g, x] : z) m = std::min(m, c.gr_q(g));
  return m;
}

namespace {

// drop terms at or above the window top; reject terms below it
QChain restrict_to(const FilteredComplex& c, const QChain& z, Window w) {
  QChain out;
  for (auto& [g, x] : z) {
    const int q = c.gr_q(g);
    if (q < w.lo)
      throw Error(ErrorKind::FiltrationViolation,
                  "term at gr_q " + std::to_string(q) + " below level " + std::to_string(w.lo));
    if (q < w.hi && x != 0) out[g] = x;
  }
  return out;
}

}  // namespace

std::optional<QChain> solve_boundary(const FilteredComplex& c, const QChain& z0, Window w,
                                     const SolveOptions& opt) {
  QChain z = restrict_to(c, z0, w);
  if (z.empty()) return QChain{};
  const int d = *chain_degree(c, z);
  GradingIndex idx(c);
  std::vector<GenId> cols = idx.block(d - 1, w);
  if (opt.allowed) std::erase_if(cols, [&](GenId g) { return !opt.allowed(g); });
  const std::vector<GenId> rows = idx.block(d, w);
  std::unordered_map<GenId, int> row_of;
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = static_cast<int>(i);
  std::vector<mpq_class> b(rows.size());
  for (auto& [g, x] : z) b[row_of.at(g)] = x;
  if (opt.ring == Ring::Integers)
    for (auto& x : b)
      if (x.get_den() != 1) return std::nullopt;
  LinearSystem sys(differential_block(c, cols, rows), opt.ring, true);
  auto x = sys.solve(std::move(b));
  if (!x) return std::nullopt;
  QChain phi;
  for (std::size_t j = 0; j < cols.size(); ++j)
    if ((*x)[j] != 0) phi[cols[j]] = (*x)[j];
  return phi;
}

ClassResult class_is_zero(const FilteredComplex& c, const QChain& z0, Window w, Ring ring) {
  QChain z = restrict_to(c, z0, w);
  if (!boundary(c, z, w).empty()) throw Error(ErrorKind::NotACycle, "chain is not a cycle in the view");
  ClassResult r;
  auto phi = solve_boundary(c, z, w, SolveOptions{ring, {}});
  if (phi) {
    r.zero = true;
    r.witness = std::move(*phi);
  }
  return r;
}

ClassResult class_is_zero(const FilteredComplex& c, const Chain& z, Window w, Ring ring) {
  return class_is_zero(c, to_rational(z), w, ring);
}

std::optional<QChain> boundary_within_filtration(const FilteredComplex& c, const QChain& z, int m,
                                                 const SolveOptions& opt) {
  const Window w = filtration_level(m);
  QChain zr = restrict_to(c, z, w);
  if (!boundary(c, zr, w).empty()) throw Error(ErrorKind::NotACycle, "chain is not a cycle");
  return solve_boundary(c, zr, w, opt);
}

}  // namespace kht
