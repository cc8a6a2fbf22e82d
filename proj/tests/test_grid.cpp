#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "kht/errors.hpp"
#include "kht/grid.hpp"
#include "kht/verify.hpp"

using namespace kht;

namespace {

BraidWord W(const char* s, int m = 0) { return BraidWord::parse(s, m); }

GridDiagram random_grid(std::mt19937_64& rng, int n) {
  GridDiagram g;
  g.n = n;
  g.xs.resize(n);
  g.os.resize(n);
  std::iota(g.xs.begin(), g.xs.end(), 0);
  std::iota(g.os.begin(), g.os.end(), 0);
  for (;;) {
    std::shuffle(g.xs.begin(), g.xs.end(), rng);
    std::shuffle(g.os.begin(), g.os.end(), rng);
    bool ok = true;
    for (int c = 0; c < n; ++c) ok = ok && g.xs[c] != g.os[c];
    if (ok) return g;
  }
}

int error_kind(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return int(e.kind());
  }
  return -1;
}

}  // namespace

TEST_CASE("grid parsing") {
  const GridDiagram g = GridDiagram::parse("2\n1 0\n0 1\n");
  CHECK(g.n == 2);
  CHECK(GridDiagram::parse(g.to_text()) == g);
  CHECK(error_kind([] { GridDiagram::parse("2\n0 1\n0 1\n"); }) == int(ErrorKind::MalformedGrid));
  CHECK(error_kind([] { GridDiagram::parse("3\n0 0 1\n1 2 0\n"); }) == int(ErrorKind::MalformedGrid));
  CHECK(error_kind([] { GridDiagram::parse("2\n1 0\n"); }) == int(ErrorKind::MalformedGrid));
  CHECK(error_kind([] { GridDiagram::parse("2\n1 0\n0 1 5\n"); }) == int(ErrorKind::MalformedGrid));
}

TEST_CASE("unknot on a 2x2 grid") {
  const GridDiagram g = GridDiagram::parse("2\n1 0\n0 1\n");
  const ClassicalInvariants ci = classical_invariants(g);
  CHECK(ci.tb == -1);
  CHECK(ci.rot == 0);
  const BraidWord w = braid_from_grid(g);
  CHECK(w.strands() == 1);
  CHECK(w.empty());
  CHECK(self_linking(w) == -1);
}

TEST_CASE("tb - rot matches the self-linking of the extracted braid") {
  std::mt19937_64 rng(3);
  int knots = 0;
  for (int t = 0; t < 400; ++t) {
    const GridDiagram g = random_grid(rng, 2 + int(rng() % 7));
    const BraidWord w = braid_from_grid(g);
    INFO(g.to_text());
    CHECK(component_count(g) == component_count(w));
    if (component_count(g) != 1) {
      CHECK(error_kind([&] { classical_invariants(g); }) == int(ErrorKind::MultiComponent));
      continue;
    }
    ++knots;
    const ClassicalInvariants ci = classical_invariants(g);
    CHECK(ci.tb - ci.rot == self_linking(w));
    CHECK((ci.up_cusps + ci.down_cusps) % 2 == 0);
  }
  CHECK(knots > 50);
}

TEST_CASE("grid_from_braid inverts braid_from_grid") {
  std::mt19937_64 rng(5);
  for (const BraidWord& w : {BraidWord(1, {}), W("1,1,1"), W("1,-2,1,-2"), W("-1,-1,2,-3", 5)})
    CHECK(braid_from_grid(grid_from_braid(w)) == w);
  for (int t = 0; t < 60; ++t) {
    const BraidWord w = random_braid(rng, 1 + int(rng() % 4), 9);
    INFO(w.to_string());
    CHECK(braid_from_grid(grid_from_braid(w)) == w);
  }
}

TEST_CASE("flype grids are related by one SZ+ rewrite") {
  struct Case {
    const char *a, *b;
    int m;
  };
  for (Case c : {Case{"", "", 1}, Case{"1", "1", 2}, Case{"1", "-1", 2}, Case{"1,-2", "2", 3}, Case{"-1,1", "", 2},
                 Case{"2,-1", "1,2", 3}}) {
    const BraidWord a = W(c.a, c.m + 1), b = W(c.b, c.m + 1);
    INFO(c.a, " / ", c.b, " m=", c.m);
    const FlypeGrids fg = flype_grids(a, b, c.m);
    CHECK(sz_plus_rewrite(fg.source, fg.loc) == fg.target);
    CHECK(sz_plus_rewrite(fg.target, fg.loc) == fg.source);
    const auto locs = sz_locations(fg.source);
    CHECK(std::find(locs.begin(), locs.end(), fg.loc) != locs.end());

    const SZReport r = verify_flype_sz(fg.source, fg.target);
    CHECK(r.success);
    CHECK(r.shape.m == c.m);
    CHECK(r.shape.a == a);
    CHECK(r.shape.b == b);
    if (component_count(fg.source) == 1) {
      CHECK(r.inv1.tb == r.inv2.tb);
      CHECK(r.inv1.rot == r.inv2.rot);
      CHECK(r.inv1.tb - r.inv1.rot == self_linking(r.word1));
    }
  }
}

TEST_CASE("frozen reference pair") {
  // flype_grids(1, (1, 1), 2), rewritten at rows 4 and 9
  const GridDiagram g1 = GridDiagram::parse(
      "15\n"
      "8 11 10 7 3 5 4 0 1 2 6 9 14 13 12\n"
      "14 13 11 9 8 7 6 5 3 4 10 12 0 1 2\n");
  const GridDiagram g2 = GridDiagram::parse(
      "15\n"
      "8 10 9 7 3 6 5 0 1 2 4 11 14 13 12\n"
      "14 13 11 10 8 7 6 4 3 5 9 12 0 1 2\n");
  CHECK(sz_plus_rewrite(g1, {4, 9}) == g2);
  const SZReport r = verify_flype_sz(g1, g2);
  CHECK(r.success);
  CHECK(r.word1 == W("1,2,2,1,1,-2"));
  CHECK(r.word2 == W("1,-2,1,1,2,2"));
  CHECK(r.shape.shift2 == 5);
  CHECK(r.inv1.tb == r.inv2.tb);
  CHECK(r.inv1.rot == r.inv2.rot);
  CHECK(r.inv1.tb - r.inv1.rot == self_linking(r.word1));
}

TEST_CASE("SZ+ and flype mismatches") {
  const FlypeGrids fg = flype_grids(W("1", 3), W("-1", 3), 2);
  CHECK(error_kind([&] { verify_flype_sz(fg.source, fg.source); }) == int(ErrorKind::ShapeMismatch));
  CHECK(error_kind([&] { sz_plus_rewrite(fg.source, {0, 3}); }) == int(ErrorKind::PatternMismatch));
  CHECK(error_kind([&] { sz_plus_rewrite(fg.source, {fg.loc.row1, fg.loc.row1}); }) ==
        int(ErrorKind::PatternMismatch));
  const GridDiagram u = GridDiagram::parse("2\n1 0\n0 1\n");
  CHECK(sz_locations(u).empty());
  CHECK(error_kind([&] { verify_flype_sz(u, u); }) == int(ErrorKind::ShapeMismatch));
}
