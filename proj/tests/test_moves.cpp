#include <random>

#include "doctest.h"
#include "kht/errors.hpp"
#include "kht/moves.hpp"
#include "random_complex.hpp"

using namespace kht;

namespace {

BraidWord random_braid(std::mt19937& rng, int strands, int len) {
  std::vector<Letter> ls;
  for (int i = 0; i < len; ++i)
    ls.push_back({std::uniform_int_distribution<int>(1, strands - 1)(rng), rng() % 2 ? 1 : -1});
  return BraidWord(strands, ls);
}

void check_move(const BraidWord& w, const ElementaryMove& mv, FrobeniusKind kind) {
  ChainMapRecord r = move_map(w, mv, kind);
  RecordCheck c = check_record(r, kind);
  INFO(w.to_string(), " ", move_to_text(mv), " ", c.failure);
  CHECK(c.ok());
}

// every image of a generator keeps the coordinates of the untouched crossings
void check_local(const BraidWord& w, const ElementaryMove& mv) {
  ChainMapRecord r = move_map(w, mv);
  MoveFootprint fp = footprint(w, mv);
  FilteredComplex c = build_complex(w, FrobeniusKind::BarNatan);
  for (GenId i = 0; i < c.size(); ++i) {
    GenChain img = r.f(GenChain{{{c.vertex(i), c.labels(i)}, 1}});
    for (auto [t, x] : img)
      for (std::size_t j = 0; j < fp.cross_map.size(); ++j)
        if (fp.cross_map[j] >= 0 && bit(t.v, fp.cross_map[j]) != bit(c.vertex(i), int(j))) {
          INFO(w.to_string(), " ", move_to_text(mv));
          FAIL("image leaves the sub-cube");
        }
  }
}

}  // namespace

TEST_CASE("cancel_pair rejects multiplication by 2") {
  SparseComplex c;
  int a = c.add_generator(0, 0), b = c.add_generator(1, 0);
  c.add_entry(a, b, 2);
  CHECK_THROWS_AS(cancel_pair(c, a, b), Error);
  try {
    cancel_pair(c, a, b);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCancellable);
  }
  SparseComplex d;
  a = d.add_generator(0, 0);
  b = d.add_generator(1, 2);
  d.add_entry(a, b, 1);
  CHECK_THROWS_AS(cancel_pair(d, a, b), Error);
}

TEST_CASE("cancel_pair quotient example") {
  // alpha -> beta + 2 gamma with nothing else mapping in: f(beta) = -2 gamma
  SparseComplex c;
  int a = c.add_generator(0, 0), b = c.add_generator(1, 0), g = c.add_generator(1, 0);
  c.add_entry(a, b, 1);
  c.add_entry(a, g, 2);
  CancelResult r = cancel_pair(c, a, b);
  CHECK(r.shape == PairShape::Quotient);
  CHECK(r.step.f(IChain{{b, 1}}) == IChain{{g, -2}});
  CHECK(r.step.g(IChain{{g, 1}}) == IChain{{g, 1}});
  CHECK(r.step.h(IChain{{b, 1}}) == IChain{{a, 1}});
}

TEST_CASE("cancellation identities on random filtered complexes") {
  std::mt19937_64 rng(97);
  int done = 0;
  for (int t = 0; t < 300; ++t) {
    SparseComplex c = random_filtered_complex(rng, 8);
    SparseComplex before = c;
    EliminationLog log;
    for (auto [a, b] : testing::unit_pairs(c)) {
      if (!c.alive(a) || !c.alive(b) || (c.entry(a, b) != 1 && c.entry(a, b) != -1)) continue;
      if (c.gr_q(a) != c.gr_q(b)) continue;
      log.push(eliminate(c, a, b));
    }
    if (log.size() == 0) continue;
    ++done;
    REQUIRE(c.squares_to_zero());
    CHECK(c.is_filtered());
    CHECK(check_elimination(before, c, log).empty());
  }
  CHECK(done > 100);
}

TEST_CASE("isomorphism moves") {
  std::mt19937 rng(101);
  for (int t = 0; t < 20; ++t) {
    BraidWord w = random_braid(rng, 4, 5);
    check_move(w, ElementaryMove::shift(1 + rng() % 4), FrobeniusKind::BarNatan);
    for (int j = 0; j + 1 < 5; ++j)
      if (std::abs(w[j].index - w[j + 1].index) >= 2)
        check_move(w, ElementaryMove::commute(j), FrobeniusKind::BarNatan);
  }
}

TEST_CASE("Reidemeister II maps") {
  std::mt19937 rng(103);
  for (int t = 0; t < 20; ++t) {
    BraidWord w = random_braid(rng, 3, 4);
    const int q = rng() % 5;
    ElementaryMove mv = ElementaryMove::insert_rii(q, 1 + rng() % 2, rng() % 2 ? 1 : -1);
    for (FrobeniusKind k : {FrobeniusKind::BarNatan, FrobeniusKind::Khovanov}) {
      check_move(w, mv, k);
      check_move(apply_move(w, mv), ElementaryMove::delete_rii(q), k);
    }
    check_local(w, mv);
    check_local(apply_move(w, mv), ElementaryMove::delete_rii(q));
  }
}

TEST_CASE("stabilization maps") {
  std::mt19937 rng(107);
  for (int t = 0; t < 20; ++t) {
    BraidWord w = random_braid(rng, 3, 4);
    const int q = rng() % 5;
    for (int sign : {1, -1}) {
      ElementaryMove mv = ElementaryMove::stab(sign, q);
      check_move(w, mv, FrobeniusKind::BarNatan);
      check_move(apply_move(w, mv), ElementaryMove::destab(sign, q), FrobeniusKind::BarNatan);
      check_local(w, mv);
    }
  }
  check_move(BraidWord(1, {}), ElementaryMove::stab(1), FrobeniusKind::BarNatan);
  check_move(BraidWord(1, {}), ElementaryMove::stab(-1), FrobeniusKind::Lee);
}

TEST_CASE("braid relation maps") {
  const std::vector<BraidWord> cases = {
      BraidWord::parse("1,2,1", 3),   BraidWord::parse("-1,-2,-1", 3), BraidWord::parse("1,2,-1", 3),
      BraidWord::parse("-1,2,2,1", 3), BraidWord::parse("2,1,2,-1", 3),
  };
  for (const BraidWord& w : cases) {
    for (int p = 0; p + 2 < int(w.size()); ++p) {
      ElementaryMove mv = ElementaryMove::relation(p);
      try {
        apply_move(w, mv);
      } catch (const Error&) {
        continue;
      }
      check_move(w, mv, FrobeniusKind::BarNatan);
      check_local(w, mv);
    }
  }
}

TEST_CASE("braid relation maps in random context") {
  std::mt19937 rng(109);
  int done = 0;
  while (done < 12) {
    BraidWord w = random_braid(rng, 4, 6);
    std::vector<int> ps;
    for (int p = 0; p + 2 < 6; ++p) {
      try {
        apply_move(w, ElementaryMove::relation(p));
        ps.push_back(p);
      } catch (const Error&) {
      }
    }
    if (ps.empty()) continue;
    ++done;
    const ElementaryMove mv = ElementaryMove::relation(ps[rng() % ps.size()]);
    check_move(w, mv, done % 3 ? FrobeniusKind::BarNatan : FrobeniusKind::Khovanov);
    check_local(w, mv);
  }
}
