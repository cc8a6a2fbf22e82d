#include "kht/invariants.hpp"

#include <bit>
#include <stdexcept>

#include "kht/errors.hpp"

namespace kht {

std::vector<bool> psi_labels(const BraidWord& w, PsiSign sign, bool flip) {
  if (sign == PsiSign::Diff) throw std::logic_error("psi_labels needs + or -");
  ResolutionDiagram r = resolve(w, oriented_resolution(w));
  std::vector<bool> perp(r.circle_count());
  for (int c = 0; c < r.circle_count(); ++c) {
    // all closure circles turn counterclockwise, so the left-pushed point is
    // inside for psi+ and outside for psi-
    const int crossings = r.circles[c].depth + (sign == PsiSign::Plus ? 1 : 0);
    perp[c] = (crossings % 2 == 1) != flip;
  }
  return perp;
}

Chain psi_chain(const FilteredComplex& c, PsiSign sign, bool flip) {
  if (sign == PsiSign::Diff) {
    Chain out = psi_chain(c, PsiSign::Plus, flip);
    for (auto [g, x] : psi_chain(c, PsiSign::Minus, flip)) add_to(out, g, -x);
    return out;
  }
  const Vertex u = oriented_resolution(c.word());
  const std::vector<bool> perp = psi_labels(c.word(), sign, flip);
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < perp.size(); ++i)
    if (perp[i]) mask |= 1u << i;
  Chain out;
  // x_perp = x- - x+: every subset of the perp circles may carry x+
  for (std::uint32_t sub = mask;; sub = (sub - 1) & mask) {
    out[c.id(u, sub)] = (std::popcount(sub) % 2) ? -1 : 1;
    if (sub == 0) break;
  }
  return out;
}

PsiClass psi(const FilteredComplex& c, PsiSign sign, bool flip) {
  return psi_pq(c, sign == PsiSign::Diff ? 1 : 0, kInfinity, sign, flip);
}

PsiClass psi_pq(const FilteredComplex& c, int p, int q, PsiSign sign, bool flip) {
  const int floor = sign == PsiSign::Diff ? 1 : 0;
  if (!(p <= floor && floor < q))
    throw Error(ErrorKind::WindowInvalid, "window (" + std::to_string(p) + ", " + std::to_string(q) +
                                              ") must satisfy p <= " + std::to_string(floor) + " < q");
  const int sl = self_linking(c.word());
  PsiClass out;
  out.sign = sign;
  out.flipped = flip;
  out.p = p;
  out.q = q;
  out.home.lo = p == -kInfinity ? std::numeric_limits<int>::min() : sl + 2 * p;
  out.home.hi = q == kInfinity ? std::numeric_limits<int>::max() : sl + 2 * q;
  for (auto [g, x] : psi_chain(c, sign, flip))
    if (out.home.contains(c.gr_q(g))) out.chain[g] = x;
  return out;
}

PsiClass psi_diff(const FilteredComplex& c, bool flip) { return psi(c, PsiSign::Diff, flip); }

ClassResult psi_class_is_zero(const FilteredComplex& c, const PsiClass& psi, Ring ring) {
  return class_is_zero(c, psi.chain, psi.home, ring);
}

SInvariant s_invariant(const BraidWord& w, Ring ring, PsiSign sign) {
  if (component_count(w) != 1)
    throw Error(ErrorKind::MultiComponent, "the s-invariant needs a knot");
  FilteredComplex c = build_complex(w, FrobeniusKind::BarNatan);
  const int sl = self_linking(w);
  const int cap = (c.max_gr_q() - sl) / 2 + 1;
  for (int q = 1; q <= cap; ++q) {
    PsiClass p = psi_pq(c, -kInfinity, q, sign);
    if (!psi_class_is_zero(c, p, ring).zero) return {sl - 1 + 2 * q, q};
  }
  throw std::logic_error("psi never survives: contradicts the rank of Bar-Natan homology");
}

Obstruction triviality_obstruction(const BraidWord& w) {
  Obstruction o;
  const int sl = self_linking(w);
  FilteredComplex bn = build_complex(w, FrobeniusKind::BarNatan);
  o.group = homology(bn, -1, Window{std::numeric_limits<int>::min(), sl});
  o.trivial = o.group.rank == 0 && o.group.torsion.empty();
  FilteredComplex kh = build_complex(w, FrobeniusKind::Khovanov);
  GradingIndex idx(kh);
  o.khovanov_sufficient = true;
  for (int j = kh.min_gr_q(); j < sl; ++j) {
    GroupShape s = homology(kh, idx, -1, Window{j, j + 1}, Ring::Integers);
    if (s.rank > 0 || !s.torsion.empty()) o.khovanov_sufficient = false;
  }
  return o;
}

}  // namespace kht
