#include "kht/complex.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <ranges>

#include "edge_shape.hpp"
#include "kht/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kht {

namespace {

FrobeniusSpec make_spec(FrobeniusKind k) {
  FrobeniusSpec s{k, "", {}, {}};
  s.mult[1][1] = {{1, 1}};
  s.mult[1][0] = {{0, 1}};
  s.mult[0][1] = {{0, 1}};
  s.comult[0] = {{0, 0, 1}};
  s.comult[1] = {{1, 0, 1}, {0, 1, 1}};
  switch (k) {
    case FrobeniusKind::Khovanov:
      s.name = "Khovanov";
      break;
    case FrobeniusKind::BarNatan:
      s.name = "BarNatan";
      s.mult[0][0] = {{0, 1}};
      s.comult[1].push_back({1, 1, -1});
      break;
    case FrobeniusKind::Lee:
      s.name = "Lee";
      s.mult[0][0] = {{1, 1}};
      s.comult[0].push_back({1, 1, 1});
      break;
  }
  return s;
}

}  // namespace

const FrobeniusSpec& FrobeniusSpec::get(FrobeniusKind k) {
  static const FrobeniusSpec kh = make_spec(FrobeniusKind::Khovanov);
  static const FrobeniusSpec bn = make_spec(FrobeniusKind::BarNatan);
  static const FrobeniusSpec lee = make_spec(FrobeniusKind::Lee);
  switch (k) {
    case FrobeniusKind::Khovanov: return kh;
    case FrobeniusKind::Lee: return lee;
    default: return bn;
  }
}

FrobeniusKind parse_frobenius(const std::string& name) {
  if (name == "Khovanov" || name == "kh" || name == "khovanov") return FrobeniusKind::Khovanov;
  if (name == "BarNatan" || name == "bn" || name == "barnatan") return FrobeniusKind::BarNatan;
  if (name == "Lee" || name == "lee") return FrobeniusKind::Lee;
  throw Error(ErrorKind::ParseError, "unknown Frobenius algebra '" + name + "'");
}

std::uint32_t reverse_bits(std::uint32_t x, int width) {
  std::uint32_t r = 0;
  for (int i = 0; i < width; ++i)
    if ((x >> i) & 1u) r |= 1u << (width - 1 - i);
  return r;
}

int FilteredComplex::gr_h(GenId g) const { return std::popcount(gen_vertex_[g]) - negatives_; }

int FilteredComplex::gr_q(Vertex v, std::uint32_t labels) const {
  return positives() - 2 * negatives_ + std::popcount(v) + 2 * std::popcount(labels) - circles_[v];
}

int FilteredComplex::gr_q(GenId g) const { return gr_q(gen_vertex_[g], gen_labels_[g]); }

GenId FilteredComplex::id(Vertex v, std::uint32_t labels) const {
  return vertex_offset_[v] + reverse_bits(labels, circles_[v]);
}

std::vector<std::array<std::int64_t, 3>> FilteredComplex::triples() const {
  std::vector<std::array<std::int64_t, 3>> out;
  out.reserve(entries_.size());
  for (GenId g = 0; g < size(); ++g)
    for (const Entry& e : delta(g)) out.push_back({g, e.target, e.coeff});
  return out;
}


FilteredComplex build_complex(const BraidWord& w, FrobeniusKind kind, const BuildLimits& lim) {
  const int n = static_cast<int>(w.size());
  if (n > lim.crossing_cap || n > 30)
    throw Error(ErrorKind::TooLarge, std::to_string(n) + " crossings exceed the cap of " +
                                         std::to_string(std::min(lim.crossing_cap, 30)));
  const FrobeniusSpec& spec = FrobeniusSpec::get(kind);
  FilteredComplex c;
  c.word_ = w;
  c.kind_ = kind;
  c.negatives_ = negative_count(w);
  const std::size_t nv = std::size_t{1} << n;
  const int segs = std::max(n, 1) * w.strands();
  c.segments_ = segs;
  c.circles_.resize(nv);
  c.seg_circle_.resize(nv * segs);

#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t vi = 0; vi < static_cast<std::int64_t>(nv); ++vi) {
    ResolutionDiagram r = resolve(w, static_cast<Vertex>(vi));
    c.circles_[vi] = static_cast<std::uint8_t>(r.circle_count());
    std::copy(r.circle_of_segment.begin(), r.circle_of_segment.end(),
              c.seg_circle_.begin() + vi * segs);
  }

  c.vertex_offset_.resize(nv);
  std::size_t total = 0;
  std::vector<Vertex> order(nv);
  for (std::size_t key = 0; key < nv; ++key) {
    Vertex v = reverse_bits(static_cast<std::uint32_t>(key), n);
    order[key] = v;
    c.vertex_offset_[v] = static_cast<GenId>(total);
    total += std::size_t{1} << c.circles_[v];
    if (total > lim.generator_cap)
      throw Error(ErrorKind::TooLarge, "generator count exceeds " + std::to_string(lim.generator_cap));
  }
  c.gen_vertex_.resize(total);
  c.gen_labels_.resize(total);
  std::vector<std::uint32_t> row_len(total);
  std::vector<std::vector<Entry>> per_vertex(nv);

#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t vi = 0; vi < static_cast<std::int64_t>(nv); ++vi) {
    const Vertex v = static_cast<Vertex>(vi);
    const int kv = c.circles_[v];
    const GenId off = c.vertex_offset_[v];
    const std::uint32_t ng = 1u << kv;
    for (std::uint32_t i = 0; i < ng; ++i) {
      c.gen_vertex_[off + i] = v;
      c.gen_labels_[off + i] = reverse_bits(i, kv);
    }
    std::vector<std::vector<Entry>> rows(ng);
    for (int j = 0; j < n; ++j) {
      if (bit(v, j)) continue;
      const Vertex t = v | (Vertex{1} << j);
      const int sign = (std::popcount(v & ((Vertex{1} << j) - 1)) & 1) ? -1 : 1;
      auto src = [&](int s) { return static_cast<int>(c.seg_circle_[std::size_t(v) * segs + s]); };
      auto dst = [&](int s) { return static_cast<int>(c.seg_circle_[std::size_t(t) * segs + s]); };
      detail::EdgeShape e = detail::edge_shape(w, j, kv, src, dst, std::views::iota(0, segs));
      const int kt = c.circles_[t];
      const GenId toff = c.vertex_offset_[t];
      for (std::uint32_t i = 0; i < ng; ++i) {
        detail::push_labels(spec, e, c.gen_labels_[off + i], [&](std::uint32_t lab, int coeff) {
          rows[i].push_back({toff + reverse_bits(lab, kt), coeff * sign});
        });
      }
    }
    std::vector<Entry>& flat = per_vertex[v];
    for (std::uint32_t i = 0; i < ng; ++i) {
      std::sort(rows[i].begin(), rows[i].end(),
                [](const Entry& a, const Entry& b) { return a.target < b.target; });
      row_len[off + i] = static_cast<std::uint32_t>(rows[i].size());
      flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
  }

  c.row_start_.resize(total + 1);
  c.row_start_[0] = 0;
  for (std::size_t g = 0; g < total; ++g) c.row_start_[g + 1] = c.row_start_[g] + row_len[g];
  c.entries_.resize(c.row_start_[total]);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t vi = 0; vi < static_cast<std::int64_t>(nv); ++vi) {
    const Vertex v = static_cast<Vertex>(vi);
    std::copy(per_vertex[v].begin(), per_vertex[v].end(),
              c.entries_.begin() + c.row_start_[c.vertex_offset_[v]]);
    std::vector<Entry>().swap(per_vertex[v]);
  }

  c.min_q_ = std::numeric_limits<int>::max();
  c.max_q_ = std::numeric_limits<int>::min();
  for (std::size_t vi = 0; vi < nv; ++vi) {
    const Vertex v = static_cast<Vertex>(vi);
    const int kv = c.circles_[v];
    c.min_q_ = std::min(c.min_q_, c.gr_q(v, 0));
    c.max_q_ = std::max(c.max_q_, c.gr_q(v, (1u << kv) - 1));
  }
  return c;
}

ReferenceComplex build_complex_reference(const BraidWord& w, FrobeniusKind kind) {
  const int n = static_cast<int>(w.size());
  const FrobeniusSpec& spec = FrobeniusSpec::get(kind);
  const int npos = positive_count(w), nneg = negative_count(w);
  std::vector<ResolutionDiagram> res;
  for (std::uint32_t v = 0; v < (1u << n); ++v) res.push_back(resolve(w, v));

  // lexicographic: vertex bits in letter order, then labels in circle order
  std::vector<std::pair<std::vector<int>, std::pair<Vertex, std::uint32_t>>> keyed;
  for (std::uint32_t v = 0; v < (1u << n); ++v) {
    const int k = res[v].circle_count();
    for (std::uint32_t lab = 0; lab < (1u << k); ++lab) {
      std::vector<int> key;
      for (int j = 0; j < n; ++j) key.push_back(bit(v, j));
      for (int ci = 0; ci < k; ++ci) key.push_back((lab >> ci) & 1u);
      keyed.push_back({key, {v, lab}});
    }
  }
  std::sort(keyed.begin(), keyed.end());
  ReferenceComplex out;
  std::map<std::pair<Vertex, std::uint32_t>, std::int64_t> index;
  for (auto& [key, g] : keyed) {
    index[g] = static_cast<std::int64_t>(out.gens.size());
    out.gens.push_back(g);
    const int k = res[g.first].circle_count();
    const int plus = std::popcount(g.second);
    out.gr_h.push_back(std::popcount(g.first) - nneg);
    out.gr_q.push_back(npos - 2 * nneg + std::popcount(g.first) + plus - (k - plus));
  }
  for (std::size_t a = 0; a < out.gens.size(); ++a) {
    auto [v, lab] = out.gens[a];
    std::map<std::int64_t, std::int64_t> row;
    for (int j = 0; j < n; ++j) {
      if (bit(v, j)) continue;
      const Vertex t = v | (1u << j);
      int sign = 1;
      for (int i = 0; i < j; ++i)
        if (bit(v, i)) sign = -sign;
      const ResolutionDiagram &rs = res[v], &rt = res[t];
      auto site = rs.site(w, j);
      const int ca = rs.circle_of_segment[site[0]], cb = rs.circle_of_segment[site[3]];
      const int ta = rt.circle_of_segment[site[0]], tb = rt.circle_of_segment[site[3]];
      std::uint32_t base = 0;
      for (int ci = 0; ci < rs.circle_count(); ++ci) {
        if (ci == ca || ci == cb) continue;
        int tc = rt.circle_of_segment[rs.circles[ci].first_segment];
        if ((lab >> ci) & 1u) base |= 1u << tc;
      }
      const int la = (lab >> ca) & 1u, lb = (lab >> cb) & 1u;
      if (ca != cb) {
        for (auto [l, c] : spec.mult[la][lb]) row[index.at({t, base | (std::uint32_t(l) << ta)})] += sign * c;
      } else {
        for (auto [l1, l2, c] : spec.comult[la])
          row[index.at({t, base | (std::uint32_t(l1) << ta) | (std::uint32_t(l2) << tb)})] += sign * c;
      }
    }
    for (auto [b, c] : row)
      if (c != 0) out.triples.push_back({static_cast<std::int64_t>(a), b, c});
  }
  return out;
}

}  // namespace kht
