#include "kht/resolution.hpp"

#include <algorithm>
#include <numeric>

#include "kht/errors.hpp"

namespace kht {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::array<int, 4> ResolutionDiagram::site(const BraidWord& w, int j) const {
  const int n = static_cast<int>(w.size());
  const int p = w[j].index - 1;
  const int up = (j + 1) % n;
  return {segment(j, p), segment(j, p + 1), segment(up, p), segment(up, p + 1)};
}

ResolutionDiagram resolve(const BraidWord& w, Vertex v) {
  const int n = static_cast<int>(w.size());
  const int m = w.strands();
  ResolutionDiagram r;
  r.vertex = v;
  r.gaps = std::max(n, 1);
  r.strands = m;
  const int segs = r.gaps * m;
  UnionFind uf(segs);
  for (int j = 0; j < n; ++j) {
    const int up = (j + 1) % n;
    const int p0 = w[j].index - 1, p1 = w[j].index;
    for (int p = 0; p < m; ++p)
      if (p != p0 && p != p1) uf.unite(r.segment(j, p), r.segment(up, p));
    if (smoothing_is_oriented(w[j], bit(v, j))) {
      uf.unite(r.segment(j, p0), r.segment(up, p0));
      uf.unite(r.segment(j, p1), r.segment(up, p1));
    } else {
      uf.unite(r.segment(j, p0), r.segment(j, p1));
      uf.unite(r.segment(up, p0), r.segment(up, p1));
    }
  }
  // roots are the smallest segment of each class
  std::vector<int> root(segs), roots;
  for (int s = 0; s < segs; ++s) {
    root[s] = uf.find(s);
    if (root[s] == s) roots.push_back(s);
  }
  const int k = static_cast<int>(roots.size());
  std::vector<int> tmp_id(segs, -1);
  for (int c = 0; c < k; ++c) tmp_id[roots[c]] = c;
  std::vector<int> depth(k, 0);
  std::vector<int> hits(k);
  for (int c = 0; c < k; ++c) {
    // leftward ray from the first segment of circle c
    const int g = roots[c] / m, p = roots[c] % m;
    std::fill(hits.begin(), hits.end(), 0);
    for (int q = 0; q < p; ++q) hits[tmp_id[root[r.segment(g, q)]]] ^= 1;
    for (int d = 0; d < k; ++d)
      if (d != c && hits[d]) ++depth[c];
  }
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return depth[a] != depth[b] ? depth[a] < depth[b] : roots[a] < roots[b];
  });
  std::vector<int> final_id(k);
  r.circles.resize(k);
  for (int i = 0; i < k; ++i) {
    final_id[order[i]] = i;
    r.circles[i] = {depth[order[i]], roots[order[i]]};
  }
  r.circle_of_segment.resize(segs);
  for (int s = 0; s < segs; ++s)
    r.circle_of_segment[s] = static_cast<std::uint8_t>(final_id[tmp_id[root[s]]]);
  return r;
}

ResolutionDiagram resolve(const BraidWord& w, const std::vector<int>& bits) {
  if (bits.size() != w.size())
    throw Error(ErrorKind::LengthMismatch, "vertex has " + std::to_string(bits.size()) +
                                               " bits for " + std::to_string(w.size()) + " letters");
  Vertex v = 0;
  for (std::size_t j = 0; j < bits.size(); ++j)
    if (bits[j]) v |= Vertex{1} << j;
  return resolve(w, v);
}

Vertex oriented_resolution(const BraidWord& w) {
  Vertex v = 0;
  for (std::size_t j = 0; j < w.size(); ++j)
    if (w[j].sign < 0) v |= Vertex{1} << j;
  return v;
}

}  // namespace kht
