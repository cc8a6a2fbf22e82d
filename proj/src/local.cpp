#include "kht/local.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "edge_shape.hpp"
#include "kht/errors.hpp"

namespace kht {

struct LocalReduction::Type {
  std::vector<int> rel_count;             // per local vertex
  std::vector<std::uint32_t> local_mask;  // relevant circles that are local
  std::vector<std::vector<int>> canon;    // [local vertex][sigma index]
  std::vector<int> offset;
  std::vector<int> gen_vt;
  std::vector<std::uint32_t> gen_labels;
  std::vector<std::uint64_t> family;
  std::map<std::uint64_t, std::vector<int>> members;
  SparseComplex cx;
  EliminationLog log;
  mutable std::unordered_map<int, IChain> fc, gc, hc;
};

struct LocalReduction::Fiber {
  int type = 0;
  std::vector<ResolutionDiagram> res;
  std::vector<std::vector<int>> rel_actual;  // [local vertex][relevant circle]
  std::vector<std::vector<int>> canon_of;    // [local vertex][actual circle], -1 if far
};

LocalReduction::~LocalReduction() = default;

int LocalReduction::type_count() const { return static_cast<int>(types_.size()); }

namespace {

std::uint32_t compress(std::uint32_t labels, std::uint32_t mask) {
  std::uint32_t out = 0;
  int k = 0;
  for (int c = 0; mask >> c; ++c)
    if ((mask >> c) & 1u) out |= ((labels >> c) & 1u) << k++;
  return out;
}

std::uint64_t family_key(int vt, std::uint32_t local_labels) {
  return (std::uint64_t(vt) << 32) | local_labels;
}

}  // namespace

std::vector<int> LocalReduction::type_key(Vertex rest, Fiber* keep) const {
  const int nv = 1 << site_.len;
  std::vector<int> key;
  key.reserve(nv * (sigma_.size() + 2));
  if (keep) {
    keep->res.resize(nv);
    keep->rel_actual.resize(nv);
    keep->canon_of.resize(nv);
  }
  for (int vt = 0; vt < nv; ++vt) {
    ResolutionDiagram r = resolve(word_, rest | (Vertex(vt) << site_.t0));
    const int k = r.circle_count();
    std::vector<int> canon_of(k, -1), actual;
    std::vector<int> canon(sigma_.size());
    for (std::size_t i = 0; i < sigma_.size(); ++i) {
      const int c = r.circle_of_segment[sigma_[i]];
      if (canon_of[c] < 0) {
        canon_of[c] = static_cast<int>(actual.size());
        actual.push_back(c);
      }
      canon[i] = canon_of[c];
    }
    std::vector<char> local(k, 1);
    for (int s = 0; s < static_cast<int>(r.circle_of_segment.size()); ++s)
      if (!in_support_[s]) local[r.circle_of_segment[s]] = 0;
    std::uint32_t lmask = 0;
    for (std::size_t i = 0; i < actual.size(); ++i)
      if (local[actual[i]]) lmask |= 1u << i;
    key.push_back(static_cast<int>(actual.size()));
    key.push_back(static_cast<int>(lmask));
    key.insert(key.end(), canon.begin(), canon.end());
    if (keep) {
      keep->res[vt] = std::move(r);
      keep->rel_actual[vt] = std::move(actual);
      keep->canon_of[vt] = std::move(canon_of);
    }
  }
  return key;
}

LocalReduction::LocalReduction(BraidWord word, LocalSite site, FrobeniusKind kind)
    : word_(std::move(word)), site_(std::move(site)), kind_(kind) {
  const int n = static_cast<int>(word_.size());
  const int m = word_.strands();
  if (site_.len < 1 || site_.t0 < 0 || site_.t0 + site_.len > n)
    throw Error(ErrorKind::IndexOutOfRange, "local crossings outside the word");
  if (n > 30) throw Error(ErrorKind::TooLarge, "too many crossings for a local reduction");
  mask_ = ((Vertex(1) << site_.len) - 1) << site_.t0;
  const int segs = std::max(n, 1) * m;
  in_support_.assign(segs, 0);
  std::set<int> sig(site_.support.begin(), site_.support.end());
  for (int s : site_.support) in_support_[s] = 1;
  for (int j = site_.t0; j < site_.t0 + site_.len; ++j) {
    const int p = word_[j].index - 1, up = (j + 1) % n;
    for (int s : {j * m + p, j * m + p + 1, up * m + p, up * m + p + 1}) sig.insert(s);
  }
  sigma_.assign(sig.begin(), sig.end());

  // classify every fiber
  const int rest_bits = n - site_.len;
  const Vertex low = (Vertex(1) << site_.t0) - 1;
  std::map<std::vector<int>, int> seen;
  std::vector<std::vector<int>> keys;
  fiber_type_.resize(std::size_t(1) << rest_bits);
  for (std::size_t x = 0; x < fiber_type_.size(); ++x) {
    const Vertex rest = (Vertex(x) & low) | ((Vertex(x) >> site_.t0) << (site_.t0 + site_.len));
    std::vector<int> key = type_key(rest, nullptr);
    auto [it, fresh] = seen.try_emplace(key, static_cast<int>(keys.size()));
    if (fresh) keys.push_back(std::move(key));
    fiber_type_[x] = it->second;
  }

  std::vector<int> sigma_index(segs, -1);
  for (std::size_t i = 0; i < sigma_.size(); ++i) sigma_index[sigma_[i]] = static_cast<int>(i);
  const FrobeniusSpec& spec = FrobeniusSpec::get(kind_);
  const int nv = 1 << site_.len;
  for (const auto& key : keys) {
    auto t = std::make_unique<Type>();
    std::size_t pos = 0;
    for (int vt = 0; vt < nv; ++vt) {
      t->rel_count.push_back(key[pos]);
      t->local_mask.push_back(static_cast<std::uint32_t>(key[pos + 1]));
      t->canon.emplace_back(key.begin() + pos + 2, key.begin() + pos + 2 + sigma_.size());
      pos += 2 + sigma_.size();
    }
    for (int vt = 0; vt < nv; ++vt) {
      t->offset.push_back(t->cx.size());
      const int k = t->rel_count[vt];
      for (std::uint32_t lab = 0; lab < (1u << k); ++lab) {
        const int h = std::popcount(unsigned(vt));
        t->cx.add_generator(h, h + 2 * std::popcount(lab) - k);
        t->gen_vt.push_back(vt);
        t->gen_labels.push_back(lab);
        const std::uint64_t fam = family_key(vt, compress(lab, t->local_mask[vt]));
        t->family.push_back(fam);
        t->members[fam].push_back(t->cx.size() - 1);
      }
    }
    for (int vt = 0; vt < nv; ++vt) {
      for (int i = 0; i < site_.len; ++i) {
        if ((vt >> i) & 1) continue;
        const int tt = vt | (1 << i);
        const int sign = (std::popcount(unsigned(vt) & ((1u << i) - 1)) & 1) ? -1 : 1;
        auto src = [&](int s) { return t->canon[vt][sigma_index[s]]; };
        auto dst = [&](int s) { return t->canon[tt][sigma_index[s]]; };
        detail::EdgeShape e = detail::edge_shape(word_, site_.t0 + i, t->rel_count[vt], src, dst, sigma_);
        for (std::uint32_t lab = 0; lab < (1u << t->rel_count[vt]); ++lab) {
          detail::push_labels(spec, e, lab, [&](std::uint32_t to, int c) {
            t->cx.add_entry(t->offset[vt] + int(lab), t->offset[tt] + int(to), c * sign);
          });
        }
      }
    }
    types_.push_back(std::move(t));
  }

  // the surviving family
  {
    const Type& t0 = *types_[0];
    const int vt = static_cast<int>(site_.e_bits);
    std::uint32_t lab = 0;
    for (auto [s, l] : site_.e_labels) {
      if (sigma_index[s] < 0) throw std::logic_error("labelled segment outside the support");
      const int c = t0.canon[vt][sigma_index[s]];
      if (!((t0.local_mask[vt] >> c) & 1u)) throw std::logic_error("labelled circle is not local");
      if (l) lab |= 1u << std::popcount(t0.local_mask[vt] & ((1u << c) - 1));
    }
    if (std::popcount(t0.local_mask[vt]) != static_cast<int>(site_.e_labels.size()))
      throw std::logic_error("every local circle of the surviving vertex needs a label");
    e_family_ = family_key(vt, lab);
  }
  reduce();
}

void LocalReduction::reduce() {
  std::set<std::uint64_t> alive;
  for (const auto& t : types_)
    for (const auto& [fam, _] : t->members) alive.insert(fam);
  auto eligible = [&](std::uint64_t f1, std::uint64_t f2) {
    for (const auto& t : types_) {
      const auto& a = t->members[f1];
      const auto& b = t->members[f2];
      if (a.size() != b.size()) return false;
      std::set<int> used;
      for (int x : a) {
        int tgt = -1;
        std::int64_t coeff = 0;
        bool to_e = false;
        for (auto [y, c] : t->cx.row(x)) {
          if (t->family[y] == e_family_) to_e = true;
          if (t->family[y] != f2) continue;
          if (tgt >= 0) return false;
          tgt = y;
          coeff = c;
        }
        if (tgt < 0 || (coeff != 1 && coeff != -1) || t->cx.gr_q(x) != t->cx.gr_q(tgt)) return false;
        if (!used.insert(tgt).second) return false;
        if (to_e)
          for (auto [y, c] : t->cx.col(tgt))
            if (t->family[y] == e_family_) return false;
      }
    }
    return true;
  };
  auto find_pair = [&]() -> std::pair<std::uint64_t, std::uint64_t> {
    for (std::uint64_t f1 : alive) {
      if (f1 == e_family_) continue;
      const int vt = static_cast<int>(f1 >> 32);
      // neighbours in the cube first, then families linked by earlier corrections
      for (int i = 0; i < site_.len; ++i) {
        if ((vt >> i) & 1) continue;
        const std::uint64_t lo = std::uint64_t(vt | (1 << i)) << 32;
        for (auto it = alive.lower_bound(lo); it != alive.end() && (*it >> 32) == (lo >> 32); ++it)
          if (*it != e_family_ && eligible(f1, *it)) return {f1, *it};
      }
    }
    for (std::uint64_t f1 : alive) {
      if (f1 == e_family_) continue;
      const int h = std::popcount(unsigned(f1 >> 32));
      for (std::uint64_t f2 : alive)
        if (f2 != e_family_ && std::popcount(unsigned(f2 >> 32)) == h + 1 &&
            std::popcount(unsigned((f1 ^ f2) >> 32)) > 1 && eligible(f1, f2))
          return {f1, f2};
    }
    return {0, 0};
  };
  while (alive.size() > 1) {
    auto [f1, f2] = find_pair();
    if (f1 == f2) {
      std::string fams;
      for (std::uint64_t f : alive)
        if (f != e_family_) fams += " (" + std::to_string(f >> 32) + "," + std::to_string(f & 0xffffffffu) + ")";
      throw Error(ErrorKind::ReductionStuck, "no cancellable family pair among" + fams);
    }
    for (auto& t : types_) {
      for (int x : t->members[f1]) {
        int tgt = -1;
        for (auto [y, c] : t->cx.row(x))
          if (t->family[y] == f2) tgt = y;
        t->log.push(eliminate(t->cx, x, tgt));
      }
    }
    alive.erase(f1);
    alive.erase(f2);
    ++pairs_;
  }
  if (!alive.count(e_family_)) throw Error(ErrorKind::ReductionStuck, "surviving family is empty");
}

const LocalReduction::Fiber& LocalReduction::fiber(Vertex rest) const {
  auto it = fibers_.find(rest);
  if (it != fibers_.end()) return *it->second;
  auto fb = std::make_unique<Fiber>();
  type_key(rest, fb.get());
  const Vertex low = (Vertex(1) << site_.t0) - 1;
  const Vertex x = (rest & low) | ((rest >> (site_.t0 + site_.len)) << site_.t0);
  fb->type = fiber_type_[x];
  return *fibers_.emplace(rest, std::move(fb)).first->second;
}

int LocalReduction::local_gen(const Fiber& fb, Gen x) const {
  const int vt = static_cast<int>((x.v & mask_) >> site_.t0);
  std::uint32_t lab = 0;
  const auto& act = fb.rel_actual[vt];
  for (std::size_t r = 0; r < act.size(); ++r)
    if ((x.labels >> act[r]) & 1u) lab |= 1u << r;
  return types_[fb.type]->offset[vt] + static_cast<int>(lab);
}

std::vector<int> LocalReduction::far_segments(const Fiber& fb, Gen x) const {
  const int vt = static_cast<int>((x.v & mask_) >> site_.t0);
  const ResolutionDiagram& r = fb.res[vt];
  std::vector<int> out;
  for (int c = 0; c < r.circle_count(); ++c)
    if (fb.canon_of[vt][c] < 0 && ((x.labels >> c) & 1u)) out.push_back(r.circles[c].first_segment);
  return out;
}

Gen LocalReduction::global_gen(const Fiber& fb, Vertex rest, int y, const std::vector<int>& far) const {
  const Type& t = *types_[fb.type];
  const int vt = t.gen_vt[y];
  Gen g{rest | (Vertex(vt) << site_.t0), 0};
  const auto& act = fb.rel_actual[vt];
  for (std::size_t r = 0; r < act.size(); ++r)
    if ((t.gen_labels[y] >> r) & 1u) g.labels |= 1u << act[r];
  for (int s : far) g.labels |= 1u << fb.res[vt].circle_of_segment[s];
  return g;
}

template <class Op>
GenChain LocalReduction::transport(const GenChain& x, Op&& op, bool fiber_sign) const {
  GenChain out;
  for (auto [g, c] : x) {
    const Vertex rest = g.v & ~mask_;
    const Fiber& fb = fiber(rest);
    const Type& t = *types_[fb.type];
    const int y = local_gen(fb, g);
    const std::vector<int> far = far_segments(fb, g);
    std::int64_t sc = c;
    if (fiber_sign && (std::popcount(rest & ((Vertex(1) << site_.t0) - 1)) & 1)) sc = -sc;
    for (auto [z, d] : op(t, y)) add_scaled(out, GenChain{{global_gen(fb, rest, z, far), d}}, sc);
  }
  return out;
}

namespace {

template <class Cache, class Fn>
const IChain& cached(Cache& cache, int y, Fn&& fn) {
  auto it = cache.find(y);
  if (it == cache.end()) it = cache.emplace(y, fn()).first;
  return it->second;
}

}  // namespace

GenChain LocalReduction::f(const GenChain& x) const {
  return transport(x, [](const Type& t, int y) -> const IChain& {
    return cached(t.fc, y, [&] { return t.log.f(IChain{{y, 1}}); });
  }, false);
}

GenChain LocalReduction::g(const GenChain& x) const {
  return transport(x, [this](const Type& t, int y) -> const IChain& {
    if (t.family[y] != e_family_) throw std::logic_error("g applied outside the surviving family");
    return cached(t.gc, y, [&] { return t.log.g(IChain{{y, 1}}); });
  }, false);
}

GenChain LocalReduction::h(const GenChain& x) const {
  return transport(x, [](const Type& t, int y) -> const IChain& {
    return cached(t.hc, y, [&] { return t.log.h(IChain{{y, 1}}); });
  }, true);
}

bool LocalReduction::in_e(Gen x) const {
  const Fiber& fb = fiber(x.v & ~mask_);
  const Type& t = *types_[fb.type];
  return t.family[local_gen(fb, x)] == e_family_;
}

}  // namespace kht
