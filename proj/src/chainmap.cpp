#include "kht/chainmap.hpp"

#include <memory>
#include <stdexcept>

#include "kht/errors.hpp"

namespace kht {

void add_to(GenChain& acc, Gen g, std::int64_t c) {
  if (c == 0) return;
  auto [it, fresh] = acc.try_emplace(g, c);
  if (fresh) return;
  if (__builtin_add_overflow(it->second, c, &it->second))
    throw Error(ErrorKind::TooLarge, "chain coefficient overflow");
  if (it->second == 0) acc.erase(it);
}

void add_scaled(GenChain& acc, const GenChain& x, std::int64_t c) {
  for (auto [g, d] : x) {
    std::int64_t p;
    if (__builtin_mul_overflow(c, d, &p)) throw Error(ErrorKind::TooLarge, "chain coefficient overflow");
    add_to(acc, g, p);
  }
}

GenChain apply_linear(const GenChain& x, const std::function<GenChain(Gen)>& image) {
  GenChain out;
  for (auto [g, c] : x) add_scaled(out, image(g), c);
  return out;
}

GenChain to_gen_chain(const FilteredComplex& c, const Chain& x) {
  GenChain out;
  for (auto [g, d] : x) out[{c.vertex(g), c.labels(g)}] = d;
  return out;
}

Chain to_chain(const FilteredComplex& c, const GenChain& x) {
  Chain out;
  for (auto [g, d] : x) out[c.id(g.v, g.labels)] = d;
  return out;
}

GenChain boundary(const FilteredComplex& c, const GenChain& x) {
  return to_gen_chain(c, boundary(c, to_chain(c, x)));
}

ChainMapRecord identity_record(const BraidWord& w) {
  ChainMapRecord r;
  r.source = r.target = w;
  r.f = r.g = [](const GenChain& x) { return x; };
  r.h = r.k = [](const GenChain&) { return GenChain{}; };
  r.isomorphism = true;
  return r;
}

ChainMapRecord compose(const std::vector<ChainMapRecord>& parts) {
  if (parts.empty()) throw std::logic_error("compose needs at least one record");
  if (parts.size() == 1) return parts[0];
  auto ps = std::make_shared<std::vector<ChainMapRecord>>(parts);
  ChainMapRecord r;
  r.source = parts.front().source;
  r.target = parts.back().target;
  r.isomorphism = true;
  for (const auto& p : parts) {
    r.isomorphism = r.isomorphism && p.isomorphism;
    r.moves.insert(r.moves.end(), p.moves.begin(), p.moves.end());
  }
  r.f = [ps](const GenChain& x) {
    GenChain y = x;
    for (const auto& p : *ps) y = p.f(y);
    return y;
  };
  r.g = [ps](const GenChain& x) {
    GenChain y = x;
    for (auto it = ps->rbegin(); it != ps->rend(); ++it) y = it->g(y);
    return y;
  };
  // h = h_1 + g_1 h_2 f_1 + g_1 g_2 h_3 f_2 f_1 + ...
  r.h = [ps](const GenChain& x) {
    const std::size_t n = ps->size();
    std::vector<GenChain> xs{x};
    for (std::size_t i = 0; i + 1 < n; ++i) xs.push_back((*ps)[i].f(xs.back()));
    GenChain acc;
    for (std::size_t i = n; i-- > 0;) {
      if (!acc.empty()) acc = (*ps)[i].g(acc);
      if (!(*ps)[i].isomorphism) add_scaled(acc, (*ps)[i].h(xs[i]), 1);
    }
    return acc;
  };
  // k = k_n + f_n k_{n-1} g_n + f_n f_{n-1} k_{n-2} g_{n-1} g_n + ...
  r.k = [ps](const GenChain& y) {
    const std::size_t n = ps->size();
    std::vector<GenChain> ys(n);
    ys[n - 1] = y;
    for (std::size_t i = n - 1; i > 0; --i) ys[i - 1] = (*ps)[i].g(ys[i]);
    GenChain acc;
    for (std::size_t i = 0; i < n; ++i) {
      if (!acc.empty()) acc = (*ps)[i].f(acc);
      if (!(*ps)[i].isomorphism) add_scaled(acc, (*ps)[i].k(ys[i]), 1);
    }
    return acc;
  };
  return r;
}

namespace {

GenChain minus(const GenChain& a, const GenChain& b) {
  GenChain out = a;
  add_scaled(out, b, -1);
  return out;
}

std::string gen_text(Gen g) {
  return "(v=" + std::to_string(g.v) + ", labels=" + std::to_string(g.labels) + ")";
}

}  // namespace

RecordCheck check_record(const ChainMapRecord& r, FrobeniusKind kind) {
  const FilteredComplex cs = build_complex(r.source, kind);
  const FilteredComplex ct = build_complex(r.target, kind);
  RecordCheck out;
  auto fail = [&](bool& flag, const std::string& what, Gen g) {
    if (out.failure.empty()) out.failure = what + " at " + gen_text(g);
    flag = false;
  };
  auto grading_ok = [](const FilteredComplex& from, const FilteredComplex& to, Gen g,
                       const GenChain& img, int shift) {
    const int h = from.gr_h(from.id(g.v, g.labels));
    const int q = from.gr_q(g.v, g.labels);
    for (auto [t, c] : img) {
      const GenId id = to.id(t.v, t.labels);
      if (to.gr_h(id) != h + shift || to.gr_q(id) < q) return false;
    }
    return true;
  };
  // source side: f chain map, h, id - gf
  for (GenId i = 0; i < cs.size(); ++i) {
    const Gen x{cs.vertex(i), cs.labels(i)};
    const GenChain one{{x, 1}};
    const GenChain fx = r.f(one);
    if (boundary(ct, fx) != r.f(boundary(cs, one))) fail(out.chain_maps, "f d != d f", x);
    if (!grading_ok(cs, ct, x, fx, 0)) fail(out.filtered, "f is not filtered", x);
    const GenChain hx = r.isomorphism ? GenChain{} : r.h(one);
    if (!grading_ok(cs, cs, x, hx, -1)) fail(out.filtered, "h is not filtered", x);
    GenChain rhs = boundary(cs, hx);
    if (!r.isomorphism) add_scaled(rhs, r.h(boundary(cs, one)), 1);
    if (minus(one, r.g(fx)) != rhs) fail(out.source_homotopy, "id - gf != dh + hd", x);
  }
  for (GenId i = 0; i < ct.size(); ++i) {
    const Gen y{ct.vertex(i), ct.labels(i)};
    const GenChain one{{y, 1}};
    const GenChain gy = r.g(one);
    if (boundary(cs, gy) != r.g(boundary(ct, one))) fail(out.chain_maps, "g d != d g", y);
    if (!grading_ok(ct, cs, y, gy, 0)) fail(out.filtered, "g is not filtered", y);
    const GenChain ky = r.isomorphism ? GenChain{} : r.k(one);
    if (!grading_ok(ct, ct, y, ky, -1)) fail(out.filtered, "k is not filtered", y);
    GenChain rhs = boundary(ct, ky);
    if (!r.isomorphism) add_scaled(rhs, r.k(boundary(ct, one)), 1);
    if (minus(one, r.f(gy)) != rhs) fail(out.target_homotopy, "id - fg != dk + kd", y);
  }
  return out;
}

}  // namespace kht
