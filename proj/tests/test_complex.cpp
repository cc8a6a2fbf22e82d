#include <map>
#include <random>

#include "doctest.h"
#include "kht/complex.hpp"
#include "kht/errors.hpp"
#include "kht/resolution.hpp"
#include "oracle/naive_kh.hpp"

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

oracle::Diagram to_oracle(const BraidWord& w) {
  oracle::Diagram d{w.strands(), {}};
  for (const Letter& l : w.letters()) d.word.push_back(l.sign * l.index);
  return d;
}

// delta^2 over the sparse rows
bool squares_to_zero(const FilteredComplex& c) {
  for (GenId g = 0; g < c.size(); ++g) {
    std::map<GenId, long> acc;
    for (const Entry& e : c.delta(g))
      for (const Entry& f : c.delta(e.target)) acc[f.target] += long{e.coeff} * f.coeff;
    for (auto& [t, v] : acc)
      if (v != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("resolution circles") {
  BraidWord t = BraidWord::parse("1,1,1");
  CHECK(resolve(t, oriented_resolution(t)).circle_count() == 2);
  CHECK(resolve(t, Vertex{7}).circle_count() == 3);
  CHECK(resolve(t, Vertex{1}).circle_count() == 1);
  BraidWord u(3, {});
  ResolutionDiagram r = resolve(u, Vertex{0});
  CHECK(r.circle_count() == 3);
  // nested closures: leftmost strand outermost
  CHECK(r.circles[0].depth == 0);
  CHECK(r.circles[1].depth == 1);
  CHECK(r.circles[2].depth == 2);
  CHECK_THROWS_AS(resolve(t, std::vector<int>{0, 1}), Error);

  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    BraidWord w = random_braid(rng, 4, 7);
    ResolutionDiagram o = resolve(w, oriented_resolution(w));
    CHECK(o.circle_count() == w.strands());
    for (int c = 0; c < o.circle_count(); ++c) CHECK(o.circles[c].depth == c);
  }
}

TEST_CASE("circle counts agree with the oracle tracer") {
  std::mt19937 rng(17);
  for (int i = 0; i < 60; ++i) {
    BraidWord w = random_braid(rng, 4, 6);
    oracle::Diagram d = to_oracle(w);
    for (Vertex v = 0; v < (Vertex{1} << w.size()); ++v) {
      if (w.size() == 0) break;
      CHECK(resolve(w, v).circle_count() == static_cast<int>(oracle::circles(d, v).size()));
    }
  }
}

TEST_CASE("parallel build matches the serial reference") {
  std::mt19937 rng(23);
  for (auto kind : {FrobeniusKind::Khovanov, FrobeniusKind::BarNatan, FrobeniusKind::Lee}) {
    for (int i = 0; i < 40; ++i) {
      BraidWord w = random_braid(rng, 4, 7);
      FilteredComplex c = build_complex(w, kind);
      ReferenceComplex r = build_complex_reference(w, kind);
      REQUIRE(c.size() == r.gens.size());
      for (GenId g = 0; g < c.size(); ++g) {
        CHECK(c.vertex(g) == r.gens[g].first);
        CHECK(c.labels(g) == r.gens[g].second);
        CHECK(c.gr_h(g) == r.gr_h[g]);
        CHECK(c.gr_q(g) == r.gr_q[g]);
        CHECK(c.id(c.vertex(g), c.labels(g)) == g);
      }
      CHECK(c.triples() == r.triples);
    }
  }
}

TEST_CASE("differential squares to zero and respects the filtration") {
  std::mt19937 rng(29);
  for (auto kind : {FrobeniusKind::Khovanov, FrobeniusKind::BarNatan, FrobeniusKind::Lee}) {
    for (int i = 0; i < 40; ++i) {
      BraidWord w = random_braid(rng, 4, 8);
      FilteredComplex c = build_complex(w, kind);
      CHECK(squares_to_zero(c));
      for (GenId g = 0; g < c.size(); ++g) {
        for (const Entry& e : c.delta(g)) {
          CHECK(c.gr_h(e.target) == c.gr_h(g) + 1);
          if (kind == FrobeniusKind::Khovanov)
            CHECK(c.gr_q(e.target) == c.gr_q(g));
          else
            CHECK(c.gr_q(e.target) >= c.gr_q(g));
          // Bar-Natan terms raise gr_q by 2, Lee terms by 4
          CHECK((c.gr_q(e.target) - c.gr_q(g)) % (kind == FrobeniusKind::Lee ? 4 : 2) == 0);
        }
      }
    }
  }
}

TEST_CASE("generator counts and grading ranges") {
  FilteredComplex c = build_complex(BraidWord::parse("1,1,1"), FrobeniusKind::BarNatan);
  // circles per vertex: 2,1,1,1,2,2,2,3 -> 4+2+2+2+4+4+4+8
  CHECK(c.size() == 30);
  CHECK(c.min_gr_h() == 0);
  CHECK(c.max_gr_h() == 3);
  CHECK(c.min_gr_q() == 1);
  CHECK(c.max_gr_q() == 9);
  FilteredComplex u = build_complex(BraidWord(1, {}), FrobeniusKind::Khovanov);
  CHECK(u.size() == 2);
  CHECK(u.gr_q(0) == -1);
  CHECK(u.gr_q(1) == 1);
  BuildLimits tight;
  tight.crossing_cap = 2;
  CHECK_THROWS_AS(build_complex(BraidWord::parse("1,1,1"), FrobeniusKind::Khovanov, tight), Error);
}

TEST_CASE("oracle golden values for the right trefoil") {
  auto kh = oracle::khovanov({2, {1, 1, 1}});
  CHECK(kh.size() == 5);
  CHECK(kh.at({0, 1}).rank == 1);
  CHECK(kh.at({0, 3}).rank == 1);
  CHECK(kh.at({2, 5}).rank == 1);
  CHECK(kh.at({3, 9}).rank == 1);
  CHECK(kh.at({3, 7}).rank == 0);
  CHECK(kh.at({3, 7}).torsion == std::vector<long>{2});
}
