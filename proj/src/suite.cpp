#include "kht/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "kht/complex.hpp"
#include "kht/errors.hpp"
#include "kht/grid.hpp"
#include "kht/homology.hpp"
#include "kht/invariants.hpp"
#include "kht/moves.hpp"
#include "kht/resolution.hpp"
#include "kht/verify.hpp"

namespace kht {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

IChain minus(IChain a, const IChain& b) {
  for (auto [g, x] : b) add_to(a, g, -x);
  return a;
}

IChain plus(IChain a, const IChain& b) {
  for (auto [g, x] : b) add_to(a, g, x);
  return a;
}

// Runs body once per case, turning exceptions into failures.
SuiteResult run(const std::string& name, int count, const std::function<std::string(int)>& body) {
  SuiteResult r;
  r.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < count; ++i) {
    std::string fail;
    try {
      fail = body(i);
    } catch (const std::exception& e) {
      fail = std::string("exception: ") + e.what();
    }
    ++r.cases;
    if (!fail.empty()) r.failures.push_back("case " + std::to_string(i) + ": " + fail);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

BraidWord random_word(std::mt19937_64& rng, int strands, int len) {
  std::vector<Letter> ls;
  for (int i = 0; i < len; ++i) ls.push_back({pick(rng, 1, strands - 1), rng() % 2 ? 1 : -1});
  return BraidWord(strands, std::move(ls));
}

// m + 1 strands, letters below index m
BraidWord below(std::mt19937_64& rng, int m, int len) {
  if (m == 1) return BraidWord(2, {});
  return BraidWord(m + 1, random_word(rng, m, len).letters());
}

std::string failed_report(const Report& r) {
  std::string s = r.theorem + " on [" + r.source.to_string() + "]";
  for (const Check& c : r.checks)
    if (!c.ok) s += "; " + c.name;
  for (const std::string& n : r.notes) s += "; " + n;
  return s;
}

}  // namespace

BraidWord random_suite_braid(std::mt19937_64& rng, int max_strands, int max_letters) {
  const int m = pick(rng, 1, max_strands);
  return m == 1 ? BraidWord(1, {}) : random_word(rng, m, pick(rng, 0, max_letters));
}

SparseComplex random_filtered_complex(std::mt19937_64& rng, int pieces) {
  struct G {
    int h, q;
  };
  std::vector<G> gens;
  std::vector<std::pair<std::pair<int, int>, int>> edges;
  for (int i = 0; i < pieces; ++i) {
    const int h = pick(rng, 0, 2), q = 2 * pick(rng, -2, 2);
    gens.push_back({h, q});
    if (pick(rng, 0, 3) == 0) continue;
    gens.push_back({h + 1, q + 2 * pick(rng, 0, 1)});
    const int u = std::vector<int>{1, -1, 2, 1}[pick(rng, 0, 3)];
    edges.push_back({{int(gens.size()) - 2, int(gens.size()) - 1}, u});
  }
  const int n = static_cast<int>(gens.size());
  std::vector<std::vector<long>> d(n, std::vector<long>(n, 0));  // d[a][b] = <delta a, b>
  for (auto [e, u] : edges) d[e.first][e.second] = u;
  for (int t = 0; t < 3 * n; ++t) {
    const int i = pick(rng, 0, n - 1), j = pick(rng, 0, n - 1);
    if (i == j || gens[i].h != gens[j].h || gens[j].q < gens[i].q) continue;
    const long c = pick(rng, -2, 2);
    // e_i' = e_i + c e_j
    for (int b = 0; b < n; ++b) d[i][b] += c * d[j][b];
    for (int a = 0; a < n; ++a) d[a][j] -= c * d[a][i];
  }
  SparseComplex out;
  for (const G& g : gens) out.add_generator(g.h, g.q);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out.add_entry(a, b, d[a][b]);
  return out;
}

std::string check_elimination(const SparseComplex& before, const SparseComplex& after, const EliminationLog& log) {
  auto filtered = [](const SparseComplex& from, const SparseComplex& to, int x, const IChain& img, int shift) {
    for (auto [t, c] : img)
      if (!to.alive(t) || to.gr_h(t) != from.gr_h(x) + shift || to.gr_q(t) < from.gr_q(x)) return false;
    return true;
  };
  for (int x : before.alive_generators()) {
    const IChain one{{x, 1}};
    const IChain fx = log.f(one), hx = log.h(one);
    if (after.boundary(fx) != log.f(before.boundary(one))) return "f is not a chain map";
    if (!filtered(before, after, x, fx, 0)) return "f is not filtered";
    if (!filtered(before, before, x, hx, -1)) return "h is not filtered";
    if (minus(one, log.g(fx)) != plus(before.boundary(hx), log.h(before.boundary(one))))
      return "id - gf != dh + hd";
  }
  for (int y : after.alive_generators()) {
    const IChain one{{y, 1}};
    const IChain gy = log.g(one);
    if (before.boundary(gy) != log.g(after.boundary(one))) return "g is not a chain map";
    if (!filtered(after, before, y, gy, 0)) return "g is not filtered";
    if (log.f(gy) != one) return "fg != id";
  }
  return {};
}

std::string check_locality(const BraidWord& w, const ElementaryMove& mv) {
  const ChainMapRecord r = move_map(w, mv);
  const MoveFootprint fp = footprint(w, mv);
  const FilteredComplex c = build_complex(w, FrobeniusKind::BarNatan);
  for (GenId i = 0; i < c.size(); ++i) {
    const GenChain img = r.f(GenChain{{{c.vertex(i), c.labels(i)}, 1}});
    for (const auto& [t, x] : img)
      for (std::size_t j = 0; j < fp.cross_map.size(); ++j)
        if (fp.cross_map[j] >= 0 && bit(t.v, fp.cross_map[j]) != bit(c.vertex(i), int(j)))
          return "[" + w.to_string() + "] " + move_to_text(mv) + ": image leaves the sub-cube at crossing " +
                 std::to_string(j);
  }
  return {};
}

SuiteResult suite_gradings(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  return run("gradings", count, [&](int) -> std::string {
    const BraidWord w = random_suite_braid(rng, 4, 9);
    const FilteredComplex c = build_complex(w, FrobeniusKind::BarNatan);
    for (PsiSign sign : {PsiSign::Plus, PsiSign::Minus}) {
      const Chain z = psi_chain(c, sign);
      for (const auto& [g, x] : z)
        if (c.gr_h(g) != 0) return "[" + w.to_string() + "] psi has a term off gr_h 0";
      if (min_gr_q(c, z) != self_linking(w)) return "[" + w.to_string() + "] min gr_q(psi) != sl";
    }
    return {};
  });
}

SuiteResult suite_turner(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  return run("turner-rank", count, [&](int) -> std::string {
    const BraidWord w = random_suite_braid(rng, 4, 9);
    const FilteredComplex c = build_complex(w, FrobeniusKind::BarNatan);
    const int expect = 1 << component_count(w);
    int total = 0;
    for (const auto& [i, s] : homology_all(c, {}, Ring::Rationals)) total += s.rank;
    if (total != expect)
      return "[" + w.to_string() + "] rank " + std::to_string(total) + " != " + std::to_string(expect);
    if (component_count(w) == 1)
      for (const auto& [i, s] : homology_all(c, {}, Ring::Integers))
        if (!s.torsion.empty()) return "[" + w.to_string() + "] torsion in degree " + std::to_string(i);
    return {};
  });
}

SuiteResult suite_s_bound(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  return run("s-bound", count, [&](int) -> std::string {
    BraidWord w = random_suite_braid(rng, 4, 9);
    while (component_count(w) != 1) w = random_suite_braid(rng, 4, 9);
    const SInvariant s = s_invariant(w);
    if (s.s < self_linking(w) + 1)
      return "[" + w.to_string() + "] s = " + std::to_string(s.s) + " < sl + 1";
    return {};
  });
}

SuiteResult suite_markov(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  return run("markov", count, [&](int) -> std::string {
    const BraidWord w = random_braid(rng, pick(rng, 2, 3), 5, 1);
    const MoveScript s = random_transverse_script(w, pick(rng, 1, 6), 8, rng);
    const Report a = verify_markov(w, s);
    if (!a.success) return failed_report(a) + " | " + script_to_text(s);
    const Report b = verify_diff_markov(w, s);
    if (!b.success) return failed_report(b) + " | " + script_to_text(s);
    return {};
  });
}

SuiteResult suite_flype(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  return run("flype", count, [&](int) -> std::string {
    const int m = pick(rng, 1, 3);
    const int total = m == 1 ? 0 : pick(rng, 0, 5);
    const int na = pick(rng, 0, total);
    const BraidWord a = below(rng, m, na);
    const BraidWord b = below(rng, m, total - na);
    const int k = pick(rng, -2, 3);
    const std::string where = "A=[" + a.to_string() + "] B=[" + b.to_string() + "] k=" + std::to_string(k) +
                              " m=" + std::to_string(m);
    const Report r = verify_flype(a, b, k, m);
    if (!r.success) return where + " " + failed_report(r);
    if (k >= 0) {
      const Report d = verify_diff_flype(a, b, k, m);
      if (!d.success) return where + " " + failed_report(d);
    }
    return {};
  });
}

SuiteResult suite_negstab(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  return run("neg-stab", count, [&](int) -> std::string {
    const BraidWord w = random_suite_braid(rng, 3, 5);
    const Report r = verify_neg_stab(w);
    return r.success ? std::string{} : failed_report(r);
  });
}

SuiteResult suite_locality(std::uint64_t seed, int per_kind) {
  std::mt19937_64 rng(seed);
  // (word, move) embeddings of each kind
  const std::vector<std::function<std::pair<BraidWord, ElementaryMove>()>> kinds = {
      [&] {
        BraidWord w = random_word(rng, 4, pick(rng, 2, 6));
        return std::pair{w, ElementaryMove::shift(pick(rng, 1, int(w.size()) - 1))};
      },
      [&] {
        for (;;) {
          BraidWord w = random_word(rng, 4, pick(rng, 2, 6));
          std::vector<int> js;
          for (int j = 0; j + 1 < int(w.size()); ++j)
            if (std::abs(w[j].index - w[j + 1].index) >= 2) js.push_back(j);
          if (!js.empty()) return std::pair{w, ElementaryMove::commute(js[pick(rng, 0, int(js.size()) - 1)])};
        }
      },
      [&] {
        BraidWord w = random_word(rng, 3, pick(rng, 0, 4));
        return std::pair{w, ElementaryMove::insert_rii(pick(rng, 0, int(w.size())), pick(rng, 1, 2),
                                                       rng() % 2 ? 1 : -1)};
      },
      [&] {
        BraidWord w = random_word(rng, 3, pick(rng, 0, 4));
        const int q = pick(rng, 0, int(w.size()));
        w = apply_move(w, ElementaryMove::insert_rii(q, pick(rng, 1, 2), rng() % 2 ? 1 : -1));
        return std::pair{w, ElementaryMove::delete_rii(q)};
      },
      [&] {
        for (;;) {
          const int i = pick(rng, 1, 2), j = i == 1 ? 2 : 1;
          std::vector<Letter> ls = random_word(rng, 4, pick(rng, 0, 3)).letters();
          const int p = pick(rng, 0, int(ls.size()));
          const int s1 = rng() % 2 ? 1 : -1, s2 = rng() % 2 ? 1 : -1, s3 = rng() % 2 ? 1 : -1;
          ls.insert(ls.begin() + p, {Letter{i, s1}, Letter{j, s2}, Letter{i, s3}});
          BraidWord w(4, ls);
          try {
            apply_move(w, ElementaryMove::relation(p));
          } catch (const Error&) {
            continue;
          }
          return std::pair{w, ElementaryMove::relation(p)};
        }
      },
      [&] {
        BraidWord w = random_word(rng, 3, pick(rng, 0, 4));
        return std::pair{w, ElementaryMove::stab(1, pick(rng, 0, int(w.size())))};
      },
      [&] {
        BraidWord w = random_word(rng, 3, pick(rng, 0, 4));
        return std::pair{w, ElementaryMove::stab(-1, pick(rng, 0, int(w.size())))};
      },
      [&] {
        BraidWord w = random_word(rng, 3, pick(rng, 0, 4));
        const int q = pick(rng, 0, int(w.size()));
        return std::pair{apply_move(w, ElementaryMove::stab(1, q)), ElementaryMove::destab(1, q)};
      },
      [&] {
        BraidWord w = random_word(rng, 3, pick(rng, 0, 4));
        const int q = pick(rng, 0, int(w.size()));
        return std::pair{apply_move(w, ElementaryMove::stab(-1, q)), ElementaryMove::destab(-1, q)};
      },
  };
  return run("locality", per_kind * int(kinds.size()), [&](int i) -> std::string {
    auto [w, mv] = kinds[i % kinds.size()]();
    return check_locality(w, mv);
  });
}

SuiteResult suite_grid(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  auto tb_rot = [](const GridDiagram& g, const BraidWord& w) -> std::string {
    if (component_count(g) != 1) return {};
    const ClassicalInvariants ci = classical_invariants(g);
    if (ci.tb - ci.rot != self_linking(w)) return "tb - rot != sl for grid " + g.to_text();
    return {};
  };
  SuiteResult r = run("grid", count, [&](int) -> std::string {
    const int m = pick(rng, 1, 3);
    const int total = m == 1 ? 0 : pick(rng, 0, 4);
    const int na = pick(rng, 0, total);
    const BraidWord a = below(rng, m, na);
    const BraidWord b = below(rng, m, total - na);
    const FlypeGrids fg = flype_grids(a, b, m);
    if (sz_plus_rewrite(fg.source, fg.loc) != fg.target) return "SZ+ rewrite does not give the target grid";
    const SZReport sz = verify_flype_sz(fg.source, fg.target);
    if (!sz.success || sz.shape.a != a || sz.shape.b != b) return "flype shape not recovered";
    for (const auto* g : {&fg.source, &fg.target})
      if (auto f = tb_rot(*g, braid_from_grid(*g)); !f.empty()) return f;
    return {};
  });
  // tb - rot = sl on random grids as well
  SuiteResult extra = run("grid", 100, [&](int) -> std::string {
    GridDiagram g;
    g.n = pick(rng, 2, 8);
    for (;;) {
      g.xs.resize(g.n);
      g.os.resize(g.n);
      for (int c = 0; c < g.n; ++c) g.xs[c] = g.os[c] = c;
      std::shuffle(g.xs.begin(), g.xs.end(), rng);
      std::shuffle(g.os.begin(), g.os.end(), rng);
      bool ok = true;
      for (int c = 0; c < g.n; ++c) ok = ok && g.xs[c] != g.os[c];
      if (ok) break;
    }
    const BraidWord w = braid_from_grid(g);
    if (component_count(g) != component_count(w)) return "component counts differ for grid " + g.to_text();
    if (braid_from_grid(grid_from_braid(w)) != w) return "grid_from_braid does not invert [" + w.to_string() + "]";
    return tb_rot(g, w);
  });
  r.cases += extra.cases;
  r.failures.insert(r.failures.end(), extra.failures.begin(), extra.failures.end());
  r.seconds += extra.seconds;
  return r;
}

SuiteResult suite_cancellation(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  SuiteResult r = run("cancellation", count, [&](int) -> std::string {
    for (int attempt = 0; attempt < 100; ++attempt) {
      SparseComplex c = random_filtered_complex(rng, 6);
      const SparseComplex before = c;
      EliminationLog log;
      for (int a = 0; a < c.size(); ++a)
        for (auto [b, x] : before.row(a)) {
          if (!c.alive(a) || !c.alive(b) || (c.entry(a, b) != 1 && c.entry(a, b) != -1)) continue;
          if (c.gr_q(a) != c.gr_q(b)) continue;
          try {
            SparseComplex trial = c;
            CancelResult cr = cancel_pair(trial, a, b);
            c = std::move(trial);
            log.push(std::move(cr.step));
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotCancellable) throw;
          }
        }
      if (log.size() == 0) continue;
      if (!c.squares_to_zero()) return "reduced differential does not square to zero";
      if (!c.is_filtered()) return "reduced differential is not filtered";
      return check_elimination(before, c, log);
    }
    return "no cancellable pair in 100 attempts";
  });
  // Z -2-> Z must be refused
  SparseComplex two;
  const int a = two.add_generator(0, 0), b = two.add_generator(1, 0);
  two.add_entry(a, b, 2);
  ++r.cases;
  try {
    cancel_pair(two, a, b);
    r.failures.push_back("cancel_pair accepted multiplication by 2");
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotCancellable) r.failures.push_back(std::string("wrong error: ") + e.what());
  }
  return r;
}

std::vector<SuiteResult> run_suites(std::uint64_t seed) {
  return {suite_gradings(seed),  suite_turner(seed), suite_s_bound(seed), suite_markov(seed),
          suite_flype(seed),     suite_negstab(seed), suite_locality(seed), suite_grid(seed),
          suite_cancellation(seed)};
}

}  // namespace kht
