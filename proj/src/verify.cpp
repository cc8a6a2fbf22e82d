#include "kht/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <unordered_map>

#include "kht/errors.hpp"
#include "kht/moves.hpp"

namespace kht {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<WitnessTerm> terms(const FilteredComplex& c, const QChain& x) {
  std::vector<WitnessTerm> out;
  for (auto& [g, q] : x) out.push_back({c.vertex(g), c.labels(g), q});
  return out;
}

std::vector<std::string> move_texts(const MoveScript& s) {
  std::vector<std::string> out;
  for (const ElementaryMove& mv : s.moves) out.push_back(move_to_text(mv));
  return out;
}

struct Match {
  bool ok = false;
  int sign = 0;
  QChain witness;
  std::string why;
};

// image = s * target + d(phi) with phi in F_level, for s = +1 then -1
Match match_up_to_sign(const FilteredComplex& c, const GenChain& image, const Chain& target, int level,
                       const std::function<bool(GenId)>& allowed = {}) {
  Match m;
  for (int s : {1, -1}) {
    GenChain z = image;
    add_scaled(z, to_gen_chain(c, target), -s);
    const Chain zc = to_chain(c, z);
    if (!zc.empty() && min_gr_q(c, zc) < level) {
      m.why = "difference has a term below level " + std::to_string(level);
      continue;
    }
    try {
      auto phi = boundary_within_filtration(c, to_rational(zc), level, SolveOptions{Ring::Integers, allowed});
      if (phi) {
        m.ok = true;
        m.sign = s;
        m.witness = std::move(*phi);
        return m;
      }
      m.why = "no witness at level " + std::to_string(level);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotACycle) throw;
      m.why = e.what();
    }
  }
  return m;
}

Chain combine(const FilteredComplex& c, int a, int b) {
  Chain out;
  for (auto [g, x] : psi_chain(c, PsiSign::Plus)) add_to(out, g, a * x);
  for (auto [g, x] : psi_chain(c, PsiSign::Minus)) add_to(out, g, b * x);
  return out;
}

Report markov_like(const BraidWord& w, const MoveScript& s, PsiSign sign, int offset, const char* theorem) {
  for (const ElementaryMove& mv : s.moves)
    if (!is_transverse(mv.kind))
      throw Error(ErrorKind::PatternMismatch, std::string("script contains ") + move_name(mv.kind));
  Report r;
  r.theorem = theorem;
  r.source = w;
  r.target = replay(w, s);
  r.trace = move_texts(s);
  auto t0 = Clock::now();
  const FilteredComplex c = build_complex(w, FrobeniusKind::BarNatan);
  const FilteredComplex c2 = build_complex(r.target, FrobeniusKind::BarNatan);
  r.timings["build"] = since(t0);
  t0 = Clock::now();
  const ChainMapRecord rec = script_map(w, s);
  const GenChain image = rec.f(to_gen_chain(c, psi_chain(c, sign)));
  r.timings["map"] = since(t0);
  t0 = Clock::now();
  r.level = self_linking(w) + offset;
  Match m = match_up_to_sign(c2, image, psi_chain(c2, sign), r.level);
  r.timings["solve"] = since(t0);
  r.success = m.ok;
  r.sign = m.sign;
  r.witness = terms(c2, m.witness);
  if (!m.ok) r.notes.push_back(m.why);
  return r;
}

Check make_check(const std::string& name, const FilteredComplex& c, const Match& m, int level) {
  Check k;
  k.name = name;
  k.ok = m.ok;
  k.sign = m.sign;
  k.level = level;
  k.witness = terms(c, m.witness);
  return k;
}

// Crossing positions of the letters of A and B, followed through a script.
std::vector<int> follow(const BraidWord& w, const MoveScript& s, std::vector<int> pos) {
  std::vector<BraidWord> trace = replay_trace(w, s);
  for (std::size_t i = 0; i < s.moves.size(); ++i) {
    MoveFootprint fp = footprint(trace[i], s.moves[i]);
    for (int& p : pos) {
      p = fp.cross_map[p];
      if (p < 0) throw std::logic_error("flype script touches a crossing of A or B");
    }
  }
  return pos;
}

struct Sites {
  std::vector<int> outer;  // crossings of A and B
  std::vector<int> local;  // the s^{+-1} crossings
  Vertex u = 0;            // oriented bits on outer, placed at the outer positions
};

Sites split_sites(const BraidWord& w, std::vector<int> outer) {
  Sites s;
  s.outer = std::move(outer);
  std::vector<char> is_outer(w.size(), 0);
  for (int p : s.outer) {
    is_outer[p] = 1;
    if (w[p].sign < 0) s.u |= Vertex(1) << p;
  }
  for (int j = 0; j < int(w.size()); ++j)
    if (!is_outer[j]) s.local.push_back(j);
  return s;
}

// outer bits equal u and the local bits have `ones` set bits
bool over(const Sites& s, Vertex v, int ones) {
  for (int p : s.outer)
    if (bit(v, p) != bit(s.u, p)) return false;
  int n = 0;
  for (int p : s.local) n += bit(v, p);
  return n == ones;
}

template <class C>
bool all_over(const FilteredComplex& c, const C& x, const Sites& s, int ones) {
  for (auto& [g, q] : x)
    if (!over(s, c.vertex(g), ones)) return false;
  return true;
}

Report flype_like(const BraidWord& a, const BraidWord& b, int k, int m, bool diff) {
  Report r;
  r.theorem = diff ? "diff-flype invariance" : "flype invariance";
  r.exploratory = diff && k < 0;
  auto [w, w2] = flype_pair(a, b, k, -1, m);
  r.source = w;
  r.target = w2;
  const MoveScript s = flype_script(a, b, k, m);
  r.trace = move_texts(s);
  const int na = int(a.size()), nb = int(b.size()), ak = std::abs(k);
  std::vector<int> outer;
  for (int i = 0; i < na; ++i) outer.push_back(i);
  for (int i = 0; i < nb; ++i) outer.push_back(na + ak + i);
  const Sites src = split_sites(w, outer);
  const Sites dst = split_sites(w2, follow(w, s, outer));
  // psi sits at the oriented resolution; f(psi) and phi one or zero steps off
  const int loc = int(dst.local.size());
  const int psi_ones = k >= 0 ? 1 : loc;
  const int phi_ones = k >= 0 ? 0 : loc - 1;
  const PsiSign sign = diff ? PsiSign::Diff : PsiSign::Plus;

  auto t0 = Clock::now();
  const FilteredComplex c = build_complex(w, FrobeniusKind::BarNatan);
  const FilteredComplex c2 = build_complex(w2, FrobeniusKind::BarNatan);
  r.timings["build"] = since(t0);
  const Chain psi = psi_chain(c, sign), psi2 = psi_chain(c2, sign);
  auto support = [&](const std::string& what, bool ok) {
    if (!ok) throw Error(ErrorKind::SupportViolation, what + " (" + r.source.to_string() + ")");
    Check ch;
    ch.name = what;
    ch.ok = true;
    r.checks.push_back(ch);
  };
  support("psi lies over the oriented vertex", all_over(c, psi, src, psi_ones));
  support("psi' lies over the oriented vertex", all_over(c2, psi2, dst, psi_ones));

  t0 = Clock::now();
  const ChainMapRecord rec = script_map(w, s);
  const GenChain image = rec.f(to_gen_chain(c, psi));
  r.timings["map"] = since(t0);
  {
    bool ok = true;
    for (auto& [g, x] : image) ok = ok && over(dst, g.v, psi_ones);
    support("f(psi) lies over the expected vertices", ok);
  }

  const int sl = self_linking(w);
  r.level = sl + (diff ? 2 : 0);
  auto local_gen = [&](GenId g) { return over(dst, c2.vertex(g), phi_ones); };
  {
    bool ok = true;
    for (GenId g = 0; g < c2.size(); ++g)
      if (local_gen(g) && c2.gr_q(g) < sl) ok = false;
    support("generators over the witness vertices lie in F_sl", ok);
  }
  t0 = Clock::now();
  Match mt = match_up_to_sign(c2, image, psi2, r.level, local_gen);
  if (!mt.ok) {
    Match any = match_up_to_sign(c2, image, psi2, r.level);
    if (any.ok)
      throw Error(ErrorKind::SupportViolation, "a witness exists only off the expected vertices (" +
                                                   r.source.to_string() + ")");
  }
  r.timings["solve"] = since(t0);
  r.success = mt.ok;
  r.sign = mt.sign;
  r.witness = terms(c2, mt.witness);
  if (!mt.ok) r.notes.push_back(mt.why);
  if (r.exploratory) r.notes.push_back("k < 0: outside the theorem's hypotheses");
  return r;
}

bool negative_destabilizable(BraidWord w, int k) {
  for (int i = 0; i < k; ++i) {
    if (w.empty() || w[w.size() - 1].sign > 0) return false;
    try {
      w = destabilize(w);
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

}  // namespace

Report verify_markov(const BraidWord& w, const MoveScript& s) {
  return markov_like(w, s, PsiSign::Plus, 0, "Markov invariance");
}

Report verify_diff_markov(const BraidWord& w, const MoveScript& s) {
  return markov_like(w, s, PsiSign::Diff, 2, "diff Markov invariance");
}

Report verify_neg_stab(const BraidWord& w) {
  Report r;
  r.theorem = "negative stabilization";
  r.source = w;
  const ElementaryMove mv = ElementaryMove::stab(-1);
  r.target = apply_move(w, mv);
  r.trace = {move_to_text(mv)};
  auto t0 = Clock::now();
  const FilteredComplex c = build_complex(w, FrobeniusKind::BarNatan);
  const FilteredComplex c2 = build_complex(r.target, FrobeniusKind::BarNatan);
  r.timings["build"] = since(t0);
  t0 = Clock::now();
  const ChainMapRecord rec = move_map(w, mv);
  r.level = self_linking(r.target);

  const Match fm = match_up_to_sign(c2, rec.f(to_gen_chain(c, psi_chain(c, PsiSign::Plus))),
                                    psi_chain(c2, PsiSign::Plus), r.level);
  r.checks.push_back(make_check("f(psi) = +-psi' + d theta'", c2, fm, r.level));
  const Match gm = match_up_to_sign(c, rec.g(to_gen_chain(c2, psi_chain(c2, PsiSign::Plus))),
                                    psi_chain(c, PsiSign::Plus), r.level);
  r.checks.push_back(make_check("g(psi') = +-psi + d theta", c, gm, r.level));

  for (auto [a, b] : {std::pair{1, 0}, {0, 1}, {1, 1}}) {
    const std::string ab = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    const Match f = match_up_to_sign(c2, rec.f(to_gen_chain(c, combine(c, a, b))), combine(c2, a, -b), r.level);
    r.checks.push_back(make_check("f " + ab + " -> (a, -b)", c2, f, r.level));
    const Match g = match_up_to_sign(c, rec.g(to_gen_chain(c2, combine(c2, a, b))), combine(c, a, -b), r.level);
    r.checks.push_back(make_check("g " + ab + " -> (a, -b)", c, g, r.level));
  }
  r.timings["verify"] = since(t0);
  r.success = std::all_of(r.checks.begin(), r.checks.end(), [](const Check& k) { return k.ok; });
  r.sign = fm.sign;
  r.witness = terms(c2, fm.witness);
  return r;
}

Report verify_flype(const BraidWord& a, const BraidWord& b, int k, int m) {
  return flype_like(a, b, k, m, false);
}

Report verify_diff_flype(const BraidWord& a, const BraidWord& b, int k, int m) {
  return flype_like(a, b, k, m, true);
}

Report verify_destab_vanishing(const BraidWord& w, int k) {
  Report r;
  r.theorem = "destabilization vanishing";
  r.source = r.target = w;
  if (!negative_destabilizable(w, k))
    r.notes.push_back("word is not an explicit " + std::to_string(k) + "-fold negative stabilization");
  auto t0 = Clock::now();
  const FilteredComplex c = build_complex(w, FrobeniusKind::BarNatan);
  const PsiClass p = psi_pq(c, 0, k);
  const ClassResult z = psi_class_is_zero(c, p);
  r.timings["solve"] = since(t0);
  r.level = p.home.lo;
  r.success = z.zero;
  r.witness = terms(c, z.witness);
  return r;
}

Report verify_stab_once_rational(const BraidWord& w, const MoveScript& s) {
  const auto& mv = s.moves;
  if (mv.size() < 2 || mv.front().kind != MoveKind::StabilizeNeg || mv.back().kind != MoveKind::DestabilizeNeg)
    throw Error(ErrorKind::PatternMismatch, "script must start with a negative stabilization and end with a negative destabilization");
  for (std::size_t i = 1; i + 1 < mv.size(); ++i)
    if (!is_transverse(mv[i].kind)) throw Error(ErrorKind::PatternMismatch, "middle moves must be transverse");
  Report r;
  r.theorem = "stabilized-once equivalence over Q";
  r.source = w;
  r.target = replay(w, s);
  r.trace = move_texts(s);
  const int sl = self_linking(w);
  r.level = sl;
  auto t0 = Clock::now();
  const FilteredComplex c = build_complex(w, FrobeniusKind::Khovanov);
  const FilteredComplex c2 = build_complex(r.target, FrobeniusKind::Khovanov);
  r.timings["build"] = since(t0);
  t0 = Clock::now();
  const ChainMapRecord rec = script_map(w, s, FrobeniusKind::Khovanov);
  const Chain image = to_chain(c2, rec.f(to_gen_chain(c, psi_pq(c, 0, 1).chain)));
  const Chain target = psi_pq(c2, 0, 1).chain;
  r.timings["map"] = since(t0);

  // d(phi) + alpha psi' = f(psi) with phi in bidegree (-1, sl)
  t0 = Clock::now();
  const Window win{sl, sl + 1};
  GradingIndex idx(c2);
  const std::vector<GenId> cols = idx.block(-1, win), rows = idx.block(0, win);
  SparseMatrix d = differential_block(c2, cols, rows);
  SparseMatrix aug(d.rows, d.cols + 1);
  std::unordered_map<GenId, int> row_of;
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = int(i);
  for (int i = 0; i < d.rows; ++i)
    for (auto [j, x] : d.row_entries[i]) aug.add(i, j, x);
  for (auto [g, x] : target) aug.add(row_of.at(g), d.cols, x);
  aug.finalize();
  std::vector<mpq_class> rhs(rows.size());
  for (auto [g, x] : image) rhs[row_of.at(g)] = x;
  auto sol = LinearSystem(aug, Ring::Rationals).solve(rhs);
  QChain phi;
  if (sol && (*sol)[d.cols] != 0) {
    r.alpha = (*sol)[d.cols];
    for (std::size_t j = 0; j < cols.size(); ++j)
      if ((*sol)[j] != 0) phi[cols[j]] = (*sol)[j];
  } else if (sol) {
    // psi' is itself a boundary; any alpha works once f(psi) - psi' is one
    QChain z = to_rational(image);
    for (auto [g, x] : target) add_to(z, g, mpq_class(-x));
    if (auto p = solve_boundary(c2, z, win, SolveOptions{Ring::Rationals, {}})) {
      r.alpha = 1;
      phi = std::move(*p);
    }
  }
  r.timings["solve"] = since(t0);
  r.success = r.alpha.has_value();
  if (!r.success) r.notes.push_back("f(psi_{0,1}) is not a nonzero multiple of psi_{0,1}' in homology");
  r.witness = terms(c2, phi);
  return r;
}

BraidWord random_braid(std::mt19937_64& rng, int strands, int max_letters, int min_letters) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<Letter> ls;
  if (strands > 1) {
    const int n = pick(min_letters, max_letters);
    for (int i = 0; i < n; ++i) ls.push_back({pick(1, strands - 1), pick(0, 1) ? 1 : -1});
  }
  return BraidWord(strands, std::move(ls));
}

namespace {

bool applies(const BraidWord& w, const ElementaryMove& mv) {
  try {
    apply_move(w, mv);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// Applicable moves grouped by kind, with words capped at max_letters.
std::vector<std::vector<ElementaryMove>> candidates(const BraidWord& w, int max_letters, bool stabs,
                                                    int locked_index) {
  const int n = int(w.size()), m = w.strands();
  std::vector<std::vector<ElementaryMove>> out(7);
  for (int o = 1; o < n; ++o) out[0].push_back(ElementaryMove::shift(o));
  if (n + 2 <= max_letters)
    for (int q = 0; q <= n; ++q)
      for (int i = 1; i < m; ++i)
        if (i != locked_index)
          for (int e : {1, -1}) out[1].push_back(ElementaryMove::insert_rii(q, i, e));
  for (int p = 0; p + 1 < n; ++p) {
    if (applies(w, ElementaryMove::delete_rii(p))) out[2].push_back(ElementaryMove::delete_rii(p));
    if (applies(w, ElementaryMove::commute(p))) out[4].push_back(ElementaryMove::commute(p));
  }
  for (int p = 0; p + 2 < n; ++p)
    if (applies(w, ElementaryMove::relation(p))) out[3].push_back(ElementaryMove::relation(p));
  if (stabs) {
    if (n + 1 <= max_letters)
      for (int q = 0; q <= n; ++q) out[5].push_back(ElementaryMove::stab(1, q));
    for (int p = 0; p < n; ++p)
      if (applies(w, ElementaryMove::destab(1, p))) out[6].push_back(ElementaryMove::destab(1, p));
  }
  std::erase_if(out, [](const auto& v) { return v.empty(); });
  return out;
}

ElementaryMove choose(const std::vector<std::vector<ElementaryMove>>& cands, std::mt19937_64& rng) {
  const auto& group = cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng)];
  return group[std::uniform_int_distribution<std::size_t>(0, group.size() - 1)(rng)];
}

// exactly one letter of the given index, and it is negative
bool single_negative(const BraidWord& w, int index) {
  int n = 0;
  for (const Letter& l : w.letters())
    if (l.index == index) n += l.sign < 0 ? 1 : 2;
  return n == 1;
}

}  // namespace

MoveScript random_transverse_script(const BraidWord& w, int length, int max_letters, std::mt19937_64& rng) {
  MoveScript s;
  BraidWord cur = w;
  const int steps = std::uniform_int_distribution<int>(1, std::max(1, length))(rng);
  for (int i = 0; i < steps; ++i) {
    auto cands = candidates(cur, max_letters, true, 0);
    if (cands.empty()) break;
    const ElementaryMove mv = choose(cands, rng);
    cur = apply_move(cur, mv);
    s.moves.push_back(mv);
  }
  return s;
}

MoveScript random_stab_once_script(const BraidWord& w, int middle, int max_letters, std::mt19937_64& rng) {
  MoveScript s;
  const int n = int(w.size());
  s.moves.push_back(ElementaryMove::stab(-1, std::uniform_int_distribution<int>(0, n)(rng)));
  BraidWord cur = apply_move(w, s.moves.back());
  const int top = cur.strands() - 1;
  for (int i = 0; i < middle; ++i) {
    auto cands = candidates(cur, max_letters, false, top);
    // the stabilizing letter must stay unique so it can be removed again
    for (auto& g : cands)
      std::erase_if(g, [&](const ElementaryMove& mv) { return !single_negative(apply_move(cur, mv), top); });
    std::erase_if(cands, [](const auto& v) { return v.empty(); });
    if (cands.empty()) break;
    const ElementaryMove mv = choose(cands, rng);
    cur = apply_move(cur, mv);
    s.moves.push_back(mv);
  }
  for (int p = 0; p < int(cur.size()); ++p)
    if (cur[p].index == top) {
      s.moves.push_back(ElementaryMove::destab(-1, p));
      break;
    }
  return s;
}

}  // namespace kht
