#include "kht/elimination.hpp"

#include "kht/errors.hpp"

namespace kht {

void add_to(IChain& acc, int g, std::int64_t c) {
  if (c == 0) return;
  auto [it, fresh] = acc.try_emplace(g, c);
  if (fresh) return;
  if (__builtin_add_overflow(it->second, c, &it->second))
    throw Error(ErrorKind::TooLarge, "chain coefficient overflow");
  if (it->second == 0) acc.erase(it);
}

namespace {

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::TooLarge, "coefficient overflow");
  return r;
}

}  // namespace

int SparseComplex::add_generator(int gr_h, int gr_q) {
  gr_h_.push_back(gr_h);
  gr_q_.push_back(gr_q);
  alive_.push_back(1);
  out_.emplace_back();
  in_.emplace_back();
  return size() - 1;
}

void SparseComplex::add_entry(int a, int b, std::int64_t c) {
  if (c == 0) return;
  std::int64_t& x = out_[a][b];
  x += c;
  if (x == 0) {
    out_[a].erase(b);
    in_[b].erase(a);
  } else {
    in_[b][a] = x;
  }
}

std::int64_t SparseComplex::entry(int a, int b) const {
  auto it = out_[a].find(b);
  return it == out_[a].end() ? 0 : it->second;
}

std::vector<int> SparseComplex::alive_generators() const {
  std::vector<int> out;
  for (int g = 0; g < size(); ++g)
    if (alive_[g]) out.push_back(g);
  return out;
}

IChain SparseComplex::boundary(const IChain& x) const {
  IChain out;
  for (auto [g, c] : x)
    for (auto [t, d] : out_[g]) add_to(out, t, mul(c, d));
  return out;
}

bool SparseComplex::squares_to_zero() const {
  for (int g = 0; g < size(); ++g)
    if (alive_[g] && !boundary(boundary(IChain{{g, 1}})).empty()) return false;
  return true;
}

bool SparseComplex::is_filtered() const {
  for (int g = 0; g < size(); ++g)
    for (auto [t, d] : out_[g])
      if (gr_h_[t] != gr_h_[g] + 1 || gr_q_[t] < gr_q_[g]) return false;
  return true;
}

EliminationStep eliminate(SparseComplex& c, int alpha, int beta) {
  if (!c.alive(alpha) || !c.alive(beta))
    throw Error(ErrorKind::NotCancellable, "generator already eliminated");
  const std::int64_t u = c.entry(alpha, beta);
  if (u != 1 && u != -1)
    throw Error(ErrorKind::NotCancellable, "<delta alpha, beta> = " + std::to_string(u) + " is not a unit");
  if (c.gr_q(alpha) != c.gr_q(beta))
    throw Error(ErrorKind::NotCancellable, "alpha and beta lie in different filtration levels");
  EliminationStep s;
  s.alpha = alpha;
  s.beta = beta;
  s.unit = u;
  for (auto [t, d] : c.out_[alpha])
    if (t != beta) s.row.push_back({t, d});
  for (auto [y, d] : c.in_[beta])
    if (y != alpha) s.col.push_back({y, d});
  // delta' y = delta y - <delta y, beta> u^{-1} delta alpha
  for (auto [y, d] : s.col) {
    const std::int64_t f = mul(d, u);
    c.add_entry(y, beta, -d);
    for (auto [t, e] : s.row) c.add_entry(y, t, -mul(f, e));
  }
  for (int g : {alpha, beta}) {
    for (auto [t, d] : std::map<int, std::int64_t>(c.out_[g])) c.add_entry(g, t, -d);
    for (auto [y, d] : std::map<int, std::int64_t>(c.in_[g])) c.add_entry(y, g, -d);
    c.alive_[g] = 0;
  }
  return s;
}

CancelResult cancel_pair(SparseComplex& c, int alpha, int beta) {
  const std::int64_t u = c.entry(alpha, beta);
  if (u != 1 && u != -1)
    throw Error(ErrorKind::NotCancellable,
                "<delta alpha, beta> = " + std::to_string(u) + "; the induced map is not an equivalence");
  if (c.gr_q(alpha) != c.gr_q(beta))
    throw Error(ErrorKind::NotCancellable, "alpha and beta lie in different filtration levels");
  // subcomplex: delta alpha = u beta and delta beta = 0
  const bool sub = c.row(alpha).size() == 1 && c.row(beta).empty();
  // quotient: nothing else maps into alpha or beta
  bool quot = c.col(alpha).empty();
  for (auto [y, d] : c.col(beta))
    if (y != alpha) quot = false;
  if (!sub && !quot)
    throw Error(ErrorKind::NotCancellable, "span{alpha, beta} is neither a subcomplex nor a quotient complex");
  CancelResult r{eliminate(c, alpha, beta), sub ? PairShape::Subcomplex : PairShape::Quotient};
  return r;
}

IChain EliminationStep::f(IChain x) const {
  auto it = x.find(beta);
  if (it != x.end()) {
    const std::int64_t k = mul(it->second, unit);
    x.erase(it);
    for (auto [t, d] : row) add_to(x, t, -mul(k, d));
  }
  x.erase(alpha);
  return x;
}

IChain EliminationStep::g(IChain y) const {
  std::int64_t s = 0;
  for (auto [z, d] : col) {
    auto it = y.find(z);
    if (it != y.end()) s += mul(it->second, d);
  }
  add_to(y, alpha, -mul(s, unit));
  return y;
}

IChain EliminationStep::h(const IChain& x) const {
  auto it = x.find(beta);
  if (it == x.end()) return {};
  return IChain{{alpha, mul(it->second, unit)}};
}

IChain EliminationLog::f(IChain x) const {
  for (const auto& s : steps_) x = s.f(std::move(x));
  return x;
}

IChain EliminationLog::g(IChain y) const {
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) y = it->g(std::move(y));
  return y;
}

IChain EliminationLog::h(IChain x) const {
  // h = h_1 + g_1 h_2 f_1 + g_1 g_2 h_3 f_2 f_1 + ...
  std::vector<std::int64_t> at_beta(steps_.size());
  for (std::size_t t = 0; t < steps_.size(); ++t) {
    auto it = x.find(steps_[t].beta);
    at_beta[t] = it == x.end() ? 0 : it->second;
    x = steps_[t].f(std::move(x));
  }
  IChain acc;
  for (std::size_t t = steps_.size(); t-- > 0;) {
    acc = steps_[t].g(std::move(acc));
    add_to(acc, steps_[t].alpha, mul(at_beta[t], steps_[t].unit));
  }
  return acc;
}

}  // namespace kht
