#include "kht/moves.hpp"

#include <bit>
#include <memory>
#include <stdexcept>

#include "kht/errors.hpp"

namespace kht {

Embedding::Embedding(BraidWord small, BraidWord big, std::vector<int> crossing_map, Vertex fixed_bits,
                     std::vector<int> segment_map, std::vector<std::pair<int, int>> fixed_labels)
    : small_(std::move(small)),
      big_(std::move(big)),
      cmap_(std::move(crossing_map)),
      fixed_(fixed_bits),
      smap_(std::move(segment_map)),
      fixed_labels_(std::move(fixed_labels)) {}

const ResolutionDiagram& Embedding::res(bool big, Vertex v) const {
  auto& cache = big ? big_res_ : small_res_;
  auto it = cache.find(v);
  if (it == cache.end()) it = cache.emplace(v, resolve(big ? big_ : small_, v)).first;
  return it->second;
}

Vertex Embedding::big_vertex(Vertex v) const {
  Vertex out = fixed_;
  for (std::size_t i = 0; i < cmap_.size(); ++i)
    if (bit(v, static_cast<int>(i))) out |= Vertex(1) << cmap_[i];
  return out;
}

int Embedding::sign(Vertex v) const {
  std::vector<int> seq;
  for (std::size_t i = 0; i < cmap_.size(); ++i)
    if (bit(v, static_cast<int>(i))) seq.push_back(cmap_[i]);
  for (int j = 0; j < 32; ++j)
    if (bit(fixed_, j)) seq.push_back(j);
  int inv = 0;
  for (std::size_t a = 0; a < seq.size(); ++a)
    for (std::size_t b = a + 1; b < seq.size(); ++b)
      if (seq[a] > seq[b]) ++inv;
  return inv % 2 ? -1 : 1;
}

namespace {

// big circle reached from each small circle
std::vector<int> follow(const ResolutionDiagram& rs, const ResolutionDiagram& rb, const std::vector<int>& smap) {
  std::vector<int> out(rs.circle_count(), -1);
  for (std::size_t s = 0; s < smap.size(); ++s) {
    if (smap[s] < 0) continue;
    int& slot = out[rs.circle_of_segment[s]];
    if (slot < 0) slot = rb.circle_of_segment[smap[s]];
  }
  for (int c : out)
    if (c < 0) throw std::logic_error("circle with no usable segment");
  return out;
}

}  // namespace

std::pair<Gen, int> Embedding::to_big(Gen x) const {
  const Vertex v = big_vertex(x.v);
  const ResolutionDiagram& rs = res(false, x.v);
  const ResolutionDiagram& rb = res(true, v);
  std::vector<int> to = follow(rs, rb, smap_);
  Gen y{v, 0};
  for (std::size_t c = 0; c < to.size(); ++c)
    if ((x.labels >> c) & 1u) y.labels |= 1u << to[c];
  for (auto [s, l] : fixed_labels_)
    if (l) y.labels |= 1u << rb.circle_of_segment[s];
  return {y, sign(x.v)};
}

std::pair<Gen, int> Embedding::to_small(Gen y) const {
  Vertex image = 0, v = 0;
  for (std::size_t i = 0; i < cmap_.size(); ++i) {
    image |= Vertex(1) << cmap_[i];
    if (bit(y.v, cmap_[i])) v |= Vertex(1) << i;
  }
  if ((y.v & ~image) != fixed_) throw std::logic_error("generator outside the embedded family");
  const ResolutionDiagram& rs = res(false, v);
  const ResolutionDiagram& rb = res(true, y.v);
  std::vector<int> to = follow(rs, rb, smap_);
  Gen x{v, 0};
  for (std::size_t c = 0; c < to.size(); ++c)
    if ((y.labels >> to[c]) & 1u) x.labels |= 1u << c;
  for (auto [s, l] : fixed_labels_)
    if (int((y.labels >> rb.circle_of_segment[s]) & 1u) != l)
      throw std::logic_error("generator outside the embedded family");
  return {x, sign(v)};
}

GenChain Embedding::to_big(const GenChain& x) const {
  GenChain out;
  for (auto [g, c] : x) {
    auto [y, s] = to_big(g);
    add_to(out, y, s * c);
  }
  return out;
}

GenChain Embedding::to_small(const GenChain& x) const {
  GenChain out;
  for (auto [g, c] : x) {
    auto [y, s] = to_small(g);
    add_to(out, y, s * c);
  }
  return out;
}

namespace {

int oriented_bit(const Letter& l) { return l.sign > 0 ? 0 : 1; }

// small segment (g, p) -> big (g <= q ? g : g + len, p)
std::vector<int> insert_segments(const BraidWord& small, const BraidWord& big, int q, int len) {
  const int ms = small.strands(), mb = big.strands();
  const int gaps = std::max<int>(small.size(), 1);
  std::vector<int> out(gaps * ms);
  for (int g = 0; g < gaps; ++g)
    for (int p = 0; p < ms; ++p) out[g * ms + p] = (g <= q ? g : g + len) * mb + p;
  return out;
}

std::vector<int> insert_crossings(int n, int q, int len) {
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = i < q ? i : i + len;
  return out;
}

struct Local {
  std::shared_ptr<LocalReduction> red;
  std::shared_ptr<Embedding> emb;
};

// big = small with len letters inserted at q; site describes them.
Local make_local(const BraidWord& small, const BraidWord& big, LocalSite site, FrobeniusKind kind) {
  const int q = site.t0, len = site.len;
  Vertex fixed = site.e_bits << q;
  std::vector<std::pair<int, int>> labels = site.e_labels;
  Local l;
  l.red = std::make_shared<LocalReduction>(big, std::move(site), kind);
  l.emb = std::make_shared<Embedding>(small, big, insert_crossings(small.size(), q, len), fixed,
                                      insert_segments(small, big, q, len), std::move(labels));
  return l;
}

ChainMapRecord inserting(const BraidWord& small, const BraidWord& big, const Local& l) {
  ChainMapRecord r;
  r.source = small;
  r.target = big;
  r.f = [l](const GenChain& x) { return l.red->g(l.emb->to_big(x)); };
  r.g = [l](const GenChain& y) { return l.emb->to_small(l.red->f(y)); };
  r.h = [](const GenChain&) { return GenChain{}; };
  r.k = [l](const GenChain& y) { return l.red->h(y); };
  return r;
}

ChainMapRecord deleting(const BraidWord& big, const BraidWord& small, const Local& l) {
  ChainMapRecord r;
  r.source = big;
  r.target = small;
  r.f = [l](const GenChain& x) { return l.emb->to_small(l.red->f(x)); };
  r.g = [l](const GenChain& y) { return l.red->g(l.emb->to_big(y)); };
  r.h = [l](const GenChain& x) { return l.red->h(x); };
  r.k = [](const GenChain&) { return GenChain{}; };
  return r;
}

ChainMapRecord relabel(const BraidWord& src, const BraidWord& tgt, std::vector<int> cmap,
                       std::vector<int> smap) {
  auto e = std::make_shared<Embedding>(src, tgt, std::move(cmap), 0, std::move(smap));
  ChainMapRecord r;
  r.source = src;
  r.target = tgt;
  r.isomorphism = true;
  r.f = [e](const GenChain& x) { return e->to_big(x); };
  r.g = [e](const GenChain& y) { return e->to_small(y); };
  r.h = r.k = [](const GenChain&) { return GenChain{}; };
  return r;
}

LocalSite rii_site(const BraidWord& big, int q) {
  const int m = big.strands();
  const int i = big[q].index;
  LocalSite s;
  s.t0 = q;
  s.len = 2;
  s.support = {(q + 1) * m + i - 1, (q + 1) * m + i};
  s.e_bits = Vertex(oriented_bit(big[q])) | (Vertex(oriented_bit(big[q + 1])) << 1);
  return s;
}

LocalSite bridge_site(const BraidWord& big, int q) {
  const int m = big.strands();
  int lo = big[q].index;
  for (int j = q; j < q + 6; ++j) lo = std::min(lo, big[j].index);
  LocalSite s;
  s.t0 = q;
  s.len = 6;
  for (int g = q + 1; g < q + 6; ++g)
    for (int p = lo - 1; p <= lo + 1; ++p) s.support.push_back(g * m + p);
  for (int j = 0; j < 6; ++j) s.e_bits |= Vertex(oriented_bit(big[q + j])) << j;
  return s;
}

// the letter at q moves the last strand
LocalSite stab_site(const BraidWord& big, int q) {
  const int m = big.strands();
  const int gaps = std::max<int>(big.size(), 1);
  LocalSite s;
  s.t0 = q;
  s.len = 1;
  for (int g = 0; g < gaps; ++g) s.support.push_back(g * m + m - 1);
  const int b = oriented_bit(big[q]);
  s.e_bits = Vertex(b);
  // the split-off circle carries x- over a positive letter and x+ over a negative one
  s.e_labels = {{q * m + m - 1, b}};
  return s;
}

}  // namespace

BraidWord relation_bridge(const BraidWord& w, int p) {
  const BraidWord r = apply_move(w, ElementaryMove::relation(p));
  std::vector<Letter> ls;
  for (int j = p + 2; j >= p; --j) ls.push_back({w[j].index, -w[j].sign});
  for (int j = p; j < p + 3; ++j) ls.push_back(r[j]);
  return BraidWord(w.strands(), ls);
}

MoveFootprint footprint(const BraidWord& w, const ElementaryMove& mv) {
  const int n = static_cast<int>(w.size());
  MoveFootprint fp;
  fp.cross_map.resize(n);
  for (int i = 0; i < n; ++i) fp.cross_map[i] = i;
  switch (mv.kind) {
    case MoveKind::ConjugateShift:
      for (int i = 0; i < n; ++i) fp.cross_map[i] = ((i - mv.offset) % n + n) % n;
      break;
    case MoveKind::FarCommute:
      std::swap(fp.cross_map[mv.position], fp.cross_map[mv.position + 1]);
      break;
    case MoveKind::InsertRII:
      fp.cross_map = insert_crossings(n, mv.position, 2);
      fp.target_local = {mv.position, mv.position + 1};
      break;
    case MoveKind::DeleteRII:
      for (int i = 0; i < n; ++i)
        fp.cross_map[i] = i < mv.position ? i : i < mv.position + 2 ? -1 : i - 2;
      break;
    case MoveKind::BraidRelation:
      for (int j = mv.position; j < mv.position + 3; ++j) {
        fp.cross_map[j] = -1;
        fp.target_local.push_back(j);
      }
      break;
    case MoveKind::StabilizePos:
    case MoveKind::StabilizeNeg: {
      const int q = mv.position < 0 ? n : mv.position;
      fp.cross_map = insert_crossings(n, q, 1);
      fp.target_local = {q};
      break;
    }
    case MoveKind::DestabilizePos:
    case MoveKind::DestabilizeNeg: {
      const int q = mv.position < 0 ? n - 1 : mv.position;
      for (int i = 0; i < n; ++i) fp.cross_map[i] = i < q ? i : i == q ? -1 : i - 1;
      break;
    }
  }
  return fp;
}

ChainMapRecord move_map(const BraidWord& w, const ElementaryMove& mv, FrobeniusKind kind) {
  const BraidWord t = apply_move(w, mv);  // validates the move
  const int n = static_cast<int>(w.size());
  const int m = w.strands();
  ChainMapRecord r;
  switch (mv.kind) {
    case MoveKind::ConjugateShift: {
      if (n == 0 || mv.offset % n == 0) {
        r = identity_record(w);
        break;
      }
      std::vector<int> smap(n * m);
      for (int g = 0; g < n; ++g)
        for (int p = 0; p < m; ++p) smap[g * m + p] = (((g - mv.offset) % n + n) % n) * m + p;
      r = relabel(w, t, footprint(w, mv).cross_map, std::move(smap));
      break;
    }
    case MoveKind::FarCommute: {
      std::vector<int> smap(n * m);
      for (int s = 0; s < n * m; ++s) smap[s] = s / m == mv.position + 1 ? -1 : s;
      r = relabel(w, t, footprint(w, mv).cross_map, std::move(smap));
      break;
    }
    case MoveKind::InsertRII:
      r = inserting(w, t, make_local(w, t, rii_site(t, mv.position), kind));
      break;
    case MoveKind::DeleteRII:
      r = deleting(w, t, make_local(t, w, rii_site(w, mv.position), kind));
      break;
    case MoveKind::BraidRelation: {
      const int p = mv.position;
      const BraidWord bridge = relation_bridge(w, p);
      std::vector<Letter> ls = w.letters();
      ls.insert(ls.begin() + p + 3, bridge.letters().begin(), bridge.letters().end());
      BraidWord cur(m, ls);
      std::vector<ChainMapRecord> parts{inserting(w, cur, make_local(w, cur, bridge_site(cur, p + 3), kind))};
      for (int j = p + 2; j >= p; --j) {
        parts.push_back(move_map(cur, ElementaryMove::delete_rii(j), kind));
        cur = parts.back().target;
      }
      if (!(cur == t)) throw std::logic_error("braid relation bridge did not reach the target");
      r = compose(parts);
      r.moves.clear();
      break;
    }
    case MoveKind::StabilizePos:
    case MoveKind::StabilizeNeg: {
      const int q = mv.position < 0 ? n : mv.position;
      r = inserting(w, t, make_local(w, t, stab_site(t, q), kind));
      break;
    }
    case MoveKind::DestabilizePos:
    case MoveKind::DestabilizeNeg: {
      const int q = mv.position < 0 ? n - 1 : mv.position;
      r = deleting(w, t, make_local(t, w, stab_site(w, q), kind));
      break;
    }
  }
  r.moves = {move_to_text(mv)};
  return r;
}

ChainMapRecord script_map(const BraidWord& w, const MoveScript& s, FrobeniusKind kind) {
  if (s.moves.empty()) return identity_record(w);
  std::vector<ChainMapRecord> parts;
  BraidWord cur = w;
  for (const ElementaryMove& mv : s.moves) {
    parts.push_back(move_map(cur, mv, kind));
    cur = parts.back().target;
  }
  return compose(parts);
}

}  // namespace kht
