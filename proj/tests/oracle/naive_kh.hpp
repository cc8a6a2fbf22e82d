#pragma once
// Brute-force Khovanov homology used only as a test oracle. It shares no code
// with the library: circles are found by walking the closed diagram, the
// edge signs count set bits after the crossing, and Smith normal form runs on
// dense boost::multiprecision integers.

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using big = boost::multiprecision::cpp_int;

struct Shape {
  int rank = 0;
  std::vector<long> torsion;
  bool operator==(const Shape&) const = default;
};

// word: signed 1-based indices
struct Diagram {
  int strands;
  std::vector<int> word;
};

// circles as sorted lists of points (level, pos), level in [0, n)
inline std::vector<std::vector<std::pair<int, int>>> circles(const Diagram& d, unsigned v) {
  const int n = static_cast<int>(d.word.size());
  const int m = d.strands;
  auto turnback = [&](int l, int p) {
    int i = std::abs(d.word[l]);
    if (p != i - 1 && p != i) return -1;
    bool one = (v >> l) & 1u;
    bool oriented = (d.word[l] > 0) ? !one : one;
    if (oriented) return -1;
    return p == i - 1 ? i : i - 1;
  };
  std::set<std::pair<int, int>> seen;
  std::vector<std::vector<std::pair<int, int>>> out;
  const int levels = std::max(n, 1);
  for (int l0 = 0; l0 < levels; ++l0)
    for (int p0 = 0; p0 < m; ++p0) {
      if (seen.count({l0, p0})) continue;
      std::vector<std::pair<int, int>> pts;
      int l = l0, p = p0;
      bool upward = true;
      while (true) {
        if (!seen.insert({l, p}).second) break;
        pts.push_back({l, p});
        if (n == 0) break;
        if (upward) {
          int t = turnback(l, p);
          if (t < 0) {
            l = (l + 1) % n;
          } else {
            p = t;
            upward = false;
          }
        } else {
          int below = (l + n - 1) % n;
          int t = turnback(below, p);
          if (t < 0) {
            l = below;
          } else {
            l = (below + 1) % n;
            p = t;
            upward = true;
          }
        }
      }
      std::sort(pts.begin(), pts.end());
      out.push_back(pts);
    }
  std::sort(out.begin(), out.end());
  return out;
}

struct Gen {
  unsigned v;
  std::vector<int> labels;  // aligned with circles(d, v); 1 = x+
  bool operator<(const Gen& o) const { return std::tie(v, labels) < std::tie(o.v, o.labels); }
};

inline int find_circle(const std::vector<std::vector<std::pair<int, int>>>& cs, std::pair<int, int> pt) {
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (std::binary_search(cs[i].begin(), cs[i].end(), pt)) return static_cast<int>(i);
  return -1;
}

// Khovanov homology: key (i, j) -> shape
inline std::map<std::pair<int, int>, Shape> khovanov(const Diagram& d) {
  const int n = static_cast<int>(d.word.size());
  int npos = 0, nneg = 0;
  for (int x : d.word) (x > 0 ? npos : nneg)++;
  std::vector<std::vector<std::vector<std::pair<int, int>>>> res;
  for (unsigned v = 0; v < (1u << n); ++v) res.push_back(circles(d, v));
  std::map<std::pair<int, int>, std::vector<Gen>> groups;
  auto grading = [&](const Gen& g) {
    int plus = 0;
    for (int l : g.labels) plus += l;
    int ones = __builtin_popcount(g.v);
    int k = static_cast<int>(g.labels.size());
    return std::make_pair(ones - nneg, npos - 2 * nneg + ones + plus - (k - plus));
  };
  for (unsigned v = 0; v < (1u << n); ++v) {
    int k = static_cast<int>(res[v].size());
    for (unsigned lab = 0; lab < (1u << k); ++lab) {
      Gen g{v, {}};
      for (int c = 0; c < k; ++c) g.labels.push_back((lab >> c) & 1u);
      groups[grading(g)].push_back(g);
    }
  }
  // differential image of one generator
  auto apply = [&](const Gen& g) {
    std::map<Gen, long> out;
    for (int j = 0; j < n; ++j) {
      if ((g.v >> j) & 1u) continue;
      unsigned t = g.v | (1u << j);
      int sign = (__builtin_popcount(g.v >> (j + 1)) & 1) ? -1 : 1;
      const auto &cs = res[g.v], &ct = res[t];
      int i = std::abs(d.word[j]);
      const int up = (j + 1) % n;
      std::pair<int, int> pts[4] = {{j, i - 1}, {j, i}, {up, i - 1}, {up, i}};
      std::set<int> src_set, dst_set;
      for (auto& pt : pts) {
        src_set.insert(find_circle(cs, pt));
        dst_set.insert(find_circle(ct, pt));
      }
      int sa = *src_set.begin(), sb = *src_set.rbegin();
      int ta = *dst_set.begin(), tb = *dst_set.rbegin();
      // other circles keep their point sets
      std::vector<int> base(ct.size(), -1);
      for (std::size_t c = 0; c < cs.size(); ++c) {
        if (static_cast<int>(c) == sa || static_cast<int>(c) == sb) continue;
        for (std::size_t e = 0; e < ct.size(); ++e)
          if (ct[e] == cs[c]) base[e] = g.labels[c];
      }
      auto emit = [&](std::vector<int> labs, long coeff) {
        out[Gen{t, labs}] += sign * coeff;
      };
      if (sa != sb) {  // merge
        int la = g.labels[sa], lb = g.labels[sb];
        if (la + lb == 0) continue;
        std::vector<int> labs = base;
        labs[ta] = (la && lb) ? 1 : 0;
        emit(labs, 1);
      } else {  // split
        int la = g.labels[sa];
        std::vector<int> labs = base;
        if (la == 0) {
          labs[ta] = 0;
          labs[tb] = 0;
          emit(labs, 1);
        } else {
          labs[ta] = 1;
          labs[tb] = 0;
          emit(labs, 1);
          labs[ta] = 0;
          labs[tb] = 1;
          emit(labs, 1);
        }
      }
    }
    return out;
  };
  // dense SNF diagonal
  auto snf = [](std::vector<std::vector<big>> a) {
    std::vector<big> diag;
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c0 = 0; c0 < cols && r < rows; ++c0) {
      while (true) {
        // smallest nonzero entry in the remaining block
        std::size_t pr = rows, pc = cols;
        for (std::size_t i = r; i < rows; ++i)
          for (std::size_t j = r; j < cols; ++j)
            if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
              pr = i;
              pc = j;
            }
        if (pr == rows) return diag;
        std::swap(a[r], a[pr]);
        for (auto& row : a) std::swap(row[r], row[pc]);
        bool clean = true;
        for (std::size_t i = r + 1; i < rows; ++i) {
          big q = a[i][r] / a[r][r];
          if (q != 0)
            for (std::size_t j = r; j < cols; ++j) a[i][j] -= q * a[r][j];
          if (a[i][r] != 0) clean = false;
        }
        for (std::size_t j = r + 1; j < cols; ++j) {
          big q = a[r][j] / a[r][r];
          if (q != 0)
            for (std::size_t i = r; i < rows; ++i) a[i][j] -= q * a[i][r];
          if (a[r][j] != 0) clean = false;
        }
        if (!clean) continue;
        bool divides = true;
        for (std::size_t i = r + 1; i < rows && divides; ++i)
          for (std::size_t j = r + 1; j < cols; ++j)
            if (a[i][j] % a[r][r] != 0) {
              for (std::size_t jj = r; jj < cols; ++jj) a[r][jj] += a[i][jj];
              divides = false;
              break;
            }
        if (!divides) continue;
        diag.push_back(abs(a[r][r]));
        ++r;
        break;
      }
    }
    return diag;
  };
  auto matrix = [&](int i, int j) {
    static const std::vector<Gen> none;
    auto si = groups.find({i, j}), di = groups.find({i + 1, j});
    const auto& src = si == groups.end() ? none : si->second;
    const auto& dst = di == groups.end() ? none : di->second;
    std::map<Gen, std::size_t> at;
    for (std::size_t k = 0; k < dst.size(); ++k) at[dst[k]] = k;
    std::vector<std::vector<big>> a(dst.size(), std::vector<big>(src.size()));
    for (std::size_t c = 0; c < src.size(); ++c)
      for (auto& [g, coeff] : apply(src[c])) a[at.at(g)][c] += coeff;
    return a;
  };
  std::map<std::pair<int, int>, Shape> out;
  for (auto& [key, gens] : groups) {
    auto [i, j] = key;
    auto out_diag = snf(matrix(i, j));
    auto in_diag = snf(matrix(i - 1, j));
    Shape s;
    s.rank = static_cast<int>(gens.size()) - static_cast<int>(out_diag.size()) -
             static_cast<int>(in_diag.size());
    for (auto& x : in_diag)
      if (x > 1) s.torsion.push_back(static_cast<long>(x));
    if (s.rank > 0 || !s.torsion.empty()) out[key] = s;
  }
  return out;
}

}  // namespace oracle
