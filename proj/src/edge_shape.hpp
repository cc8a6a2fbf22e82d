#pragma once

#include <cstdint>
#include <vector>

#include "kht/braid.hpp"
#include "kht/complex.hpp"

namespace kht::detail {

// Everything needed to push labels along the edge v -> v + e_j.
struct EdgeShape {
  bool merge = false;
  int ca = 0, cb = 0;  // site circles at the source (equal on a split)
  int ta = 0, tb = 0;  // site circles at the target (equal on a merge)
  std::vector<int> cmap;
};

// src/dst give circle indices of a segment at the two ends; segs lists
// segments meeting every circle that should be carried along.
template <class SrcOf, class DstOf, class Segs>
EdgeShape edge_shape(const BraidWord& w, int j, int kv, SrcOf&& src, DstOf&& dst, const Segs& segs) {
  const int n = static_cast<int>(w.size());
  const int m = w.strands();
  const int p = w[j].index - 1, up = (j + 1) % n;
  const int s_bl = j * m + p, s_ar = up * m + p + 1;
  EdgeShape e;
  e.ca = src(s_bl);
  e.cb = src(s_ar);
  e.ta = dst(s_bl);
  e.tb = dst(s_ar);
  e.merge = e.ca != e.cb;
  e.cmap.assign(kv, -1);
  for (int s : segs) {
    int c = src(s);
    if (c != e.ca && c != e.cb) e.cmap[c] = dst(s);
  }
  return e;
}

template <class Emit>
void push_labels(const FrobeniusSpec& spec, const EdgeShape& e, std::uint32_t labels, Emit&& emit) {
  std::uint32_t base = 0;
  for (std::size_t c = 0; c < e.cmap.size(); ++c)
    if (e.cmap[c] >= 0 && ((labels >> c) & 1u)) base |= 1u << e.cmap[c];
  const int la = (labels >> e.ca) & 1u;
  if (e.merge) {
    const int lb = (labels >> e.cb) & 1u;
    for (auto [l, c] : spec.mult[la][lb]) emit(base | (std::uint32_t(l) << e.ta), c);
  } else {
    for (auto [l1, l2, c] : spec.comult[la])
      emit(base | (std::uint32_t(l1) << e.ta) | (std::uint32_t(l2) << e.tb), c);
  }
}

}  // namespace kht::detail
