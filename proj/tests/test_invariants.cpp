#include <random>

#include "doctest.h"
#include "kht/errors.hpp"
#include "kht/invariants.hpp"

using namespace kht;

namespace {

BraidWord random_braid(std::mt19937& rng, int max_strands, int max_len) {
  int m = std::uniform_int_distribution<int>(1, max_strands)(rng);
  int n = m == 1 ? 0 : std::uniform_int_distribution<int>(0, max_len)(rng);
  std::vector<Letter> ls;
  for (int i = 0; i < n; ++i)
    ls.push_back({std::uniform_int_distribution<int>(1, m - 1)(rng), rng() % 2 ? 1 : -1});
  return BraidWord(m, ls);
}

BraidWord random_knot(std::mt19937& rng, int max_strands, int max_len) {
  while (true) {
    BraidWord w = random_braid(rng, max_strands, max_len);
    if (component_count(w) == 1) return w;
  }
}

// is there (phi, t) with delta(phi) = a - t b ?
bool dependent_mod_boundaries(const FilteredComplex& c, const Chain& a, const Chain& b) {
  GradingIndex idx(c);
  auto cols = idx.block(-1, Window{});
  auto rows = idx.block(0, Window{});
  SparseMatrix m = differential_block(c, cols, rows);
  std::map<GenId, int> row_of;
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = static_cast<int>(i);
  SparseMatrix aug(m.rows, m.cols + 1);
  for (int r = 0; r < m.rows; ++r)
    for (auto [cc, x] : m.row_entries[r]) aug.add(r, cc, x);
  for (auto [g, x] : b) aug.add(row_of.at(g), m.cols, x);
  aug.finalize();
  std::vector<mpq_class> rhs(rows.size());
  for (auto [g, x] : a) rhs[row_of.at(g)] = static_cast<long>(x);
  return LinearSystem(aug, Ring::Rationals).solve(rhs).has_value();
}

}  // namespace

TEST_CASE("psi of the unknot") {
  FilteredComplex u = build_complex(BraidWord(1, {}), FrobeniusKind::BarNatan);
  Chain p = psi_chain(u, PsiSign::Plus);
  CHECK(p == Chain{{u.id(0, 0), 1}, {u.id(0, 1), -1}});
  Chain m = psi_chain(u, PsiSign::Minus);
  CHECK(m == Chain{{u.id(0, 0), 1}});
  CHECK(psi_chain(u, PsiSign::Plus, true) == m);
  CHECK(psi_labels(BraidWord(3, {}), PsiSign::Plus) == std::vector<bool>{true, false, true});
  CHECK(psi_labels(BraidWord(3, {}), PsiSign::Minus) == std::vector<bool>{false, true, false});
}

TEST_CASE("psi is a cycle in gr_h 0 with lowest gr_q = sl") {
  std::mt19937 rng(61);
  for (int t = 0; t < 100; ++t) {
    BraidWord w = random_braid(rng, 4, 9);
    FilteredComplex c = build_complex(w, FrobeniusKind::BarNatan);
    const int sl = self_linking(w);
    for (PsiSign s : {PsiSign::Plus, PsiSign::Minus}) {
      for (bool flip : {false, true}) {
        Chain p = psi_chain(c, s, flip);
        CHECK(boundary(c, p).empty());
        for (auto [g, x] : p) CHECK(c.gr_h(g) == 0);
        CHECK(min_gr_q(c, p) == sl);
      }
    }
    Chain d = psi_diff(c).chain;
    CHECK(boundary(c, d).empty());
    if (!d.empty()) CHECK(min_gr_q(c, d) >= sl + 2);
    CHECK(psi_pq(c, 0, 1, PsiSign::Plus).chain == psi_pq(c, 0, 1, PsiSign::Minus).chain);
  }
}

TEST_CASE("window validation") {
  FilteredComplex c = build_complex(BraidWord::parse("1,1,1"), FrobeniusKind::BarNatan);
  CHECK_THROWS_AS(psi_pq(c, 1, 2), Error);
  CHECK_THROWS_AS(psi_pq(c, 0, 0), Error);
  CHECK_NOTHROW(psi_pq(c, -1, 1));
  CHECK_NOTHROW(psi_pq(c, 1, 2, PsiSign::Diff));
}

TEST_CASE("Plamenevskaya class") {
  auto nonzero = [](const char* text) {
    FilteredComplex c = build_complex(BraidWord::parse(text), FrobeniusKind::BarNatan);
    return !psi_class_is_zero(c, psi_pq(c, 0, 1)).zero;
  };
  FilteredComplex u = build_complex(BraidWord(1, {}), FrobeniusKind::BarNatan);
  CHECK_FALSE(psi_class_is_zero(u, psi_pq(u, 0, 1)).zero);
  CHECK(nonzero("1,1,1"));
  CHECK_FALSE(nonzero("1,1,1,-2"));
  FilteredComplex st = build_complex(BraidWord::parse("1,1,1,-2"), FrobeniusKind::BarNatan);
  ClassResult r = psi_class_is_zero(st, psi_pq(st, 0, 1));
  REQUIRE(r.zero);
  Window w{self_linking(st.word()), self_linking(st.word()) + 2};
  CHECK(boundary(st, r.witness, w) == to_rational(psi_pq(st, 0, 1).chain));
}

TEST_CASE("s-invariant golden values") {
  CHECK(s_invariant(BraidWord(1, {})).s == 0);
  CHECK(s_invariant(BraidWord::parse("1,1,1")).s == 2);
  CHECK(s_invariant(BraidWord::parse("-1,-1,-1")).s == -2);
  CHECK(s_invariant(BraidWord::parse("1,-2,1,-2")).s == 0);
  CHECK(s_invariant(BraidWord::parse("1,1,1,1,1")).s == 4);
  CHECK(s_invariant(BraidWord::parse("1,1,1"), Ring::Integers).s == 2);
  CHECK_THROWS_AS(s_invariant(BraidWord::parse("1,1")), Error);
}

TEST_CASE("s-invariant properties on random knots") {
  std::mt19937 rng(67);
  for (int t = 0; t < 40; ++t) {
    BraidWord w = random_knot(rng, 4, 8);
    const int s = s_invariant(w).s;
    CHECK(s >= self_linking(w) + 1);
    CHECK(s % 2 == 0);
    CHECK(s_invariant(w, Ring::Rationals, PsiSign::Minus).s == s);
    CHECK(s_invariant(transverse_mirror(w)).s == s);
    if (w.size() < 8) CHECK(s_invariant(stabilize(w, 1)).s == s);
  }
}

TEST_CASE("psi+ and psi- are independent in homology for knots") {
  std::mt19937 rng(71);
  for (int t = 0; t < 25; ++t) {
    BraidWord w = random_knot(rng, 3, 7);
    FilteredComplex c = build_complex(w, FrobeniusKind::BarNatan);
    Chain p = psi_chain(c, PsiSign::Plus), m = psi_chain(c, PsiSign::Minus);
    CHECK_FALSE(class_is_zero(c, p, Window{}, Ring::Rationals).zero);
    CHECK_FALSE(dependent_mod_boundaries(c, m, p));
  }
}

TEST_CASE("triviality obstruction") {
  CHECK(triviality_obstruction(BraidWord(1, {})).trivial);
  Obstruction t = triviality_obstruction(BraidWord::parse("1,1,1"));
  CHECK(t.trivial);
  CHECK(t.khovanov_sufficient);
  // sufficiency: the Khovanov condition implies the filtered one
  std::mt19937 rng(73);
  for (int i = 0; i < 30; ++i) {
    Obstruction o = triviality_obstruction(random_braid(rng, 4, 7));
    if (o.khovanov_sufficient) CHECK(o.trivial);
  }
}
