#include <random>

#include "doctest.h"
#include "kht/braid.hpp"
#include "kht/errors.hpp"

using namespace kht;

namespace {

// Artin's action of B_m on the free group F_m, generators +-(1..m).
using FreeWord = std::vector<int>;

FreeWord reduce(const FreeWord& w) {
  FreeWord out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

FreeWord inverse(const FreeWord& w) {
  FreeWord out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

std::vector<FreeWord> artin_images(const BraidWord& b) {
  const int m = b.strands();
  std::vector<FreeWord> img(m);
  for (int i = 0; i < m; ++i) img[i] = {i + 1};
  // apply letters left to right as automorphisms composed on the right
  for (const Letter& l : b.letters()) {
    const int i = l.index - 1;
    std::vector<FreeWord> next = img;
    if (l.sign > 0) {
      FreeWord t = img[i];
      t.insert(t.end(), img[i + 1].begin(), img[i + 1].end());
      FreeWord ti = inverse(img[i]);
      t.insert(t.end(), ti.begin(), ti.end());
      next[i] = reduce(t);
      next[i + 1] = img[i];
    } else {
      next[i] = img[i + 1];
      FreeWord t = inverse(img[i + 1]);
      t.insert(t.end(), img[i].begin(), img[i].end());
      t.insert(t.end(), img[i + 1].begin(), img[i + 1].end());
      next[i + 1] = reduce(t);
    }
    img = next;
  }
  return img;
}

BraidWord random_braid(std::mt19937& rng, int max_strands, int max_len) {
  int m = std::uniform_int_distribution<int>(2, max_strands)(rng);
  int n = std::uniform_int_distribution<int>(0, max_len)(rng);
  std::vector<Letter> ls;
  for (int i = 0; i < n; ++i)
    ls.push_back({std::uniform_int_distribution<int>(1, m - 1)(rng), rng() % 2 ? 1 : -1});
  return BraidWord(m, ls);
}

}  // namespace

TEST_CASE("writhe and self-linking") {
  CHECK(writhe(BraidWord::parse("1,1,1")) == 3);
  CHECK(writhe(BraidWord(1, {})) == 0);
  CHECK(writhe(BraidWord::parse("1,-2")) == 0);
  CHECK(self_linking(BraidWord::parse("1,1,1")) == 1);
  CHECK(self_linking(BraidWord(1, {})) == -1);
  CHECK(self_linking(BraidWord::parse("1,2,1")) == 0);
}

TEST_CASE("parsing and validation") {
  BraidWord w = BraidWord::parse(" 1, -2 ,1 ");
  CHECK(w.strands() == 3);
  CHECK(w.to_string() == "1,-2,1");
  CHECK(BraidWord::parse("1", 4).strands() == 4);
  CHECK(BraidWord::parse("").size() == 0);
  CHECK_THROWS_AS(BraidWord::parse("1,0"), Error);
  CHECK_THROWS_AS(BraidWord::parse("1,x"), Error);
  CHECK_THROWS_AS(BraidWord::parse("3", 3), Error);
}

TEST_CASE("component data") {
  ComponentData hopf = component_data(BraidWord::parse("1,1"));
  REQUIRE(hopf.components.size() == 2);
  CHECK(hopf.sl == std::vector<int>{-1, -1});
  CHECK(hopf.lk.at({0, 1}) == 1);
  ComponentData split = component_data(BraidWord(2, {}));
  CHECK(split.sl == std::vector<int>{-1, -1});
  CHECK(split.lk.at({0, 1}) == 0);
  ComponentData tref = component_data(BraidWord::parse("1,1,1"));
  CHECK(tref.components.size() == 1);
  CHECK(tref.sl == std::vector<int>{1});

  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    BraidWord w = random_braid(rng, 4, 8);
    ComponentData cd = component_data(w);
    int total = 0;
    for (int s : cd.sl) total += s;
    for (auto& [k, v] : cd.lk) total += 2 * v;
    CHECK(total == self_linking(w));
    CHECK(static_cast<int>(cd.components.size()) == component_count(w));
  }
}

TEST_CASE("Markov moves") {
  BraidWord t = BraidWord::parse("1,1,1");
  BraidWord s = stabilize(t, 1);
  CHECK(s.to_string() == "1,1,1,2");
  CHECK(s.strands() == 3);
  CHECK(self_linking(s) == 1);
  BraidWord n = stabilize(t, -1);
  CHECK(n.to_string() == "1,1,1,-2");
  CHECK(self_linking(n) == -1);
  CHECK(destabilize(s) == t);
  CHECK_THROWS_AS(destabilize(BraidWord::parse("2,1,2")), Error);
  CHECK_THROWS_AS(destabilize(BraidWord::parse("2,1")), Error);
  try {
    destabilize(BraidWord::parse("1,2,2"));
    FAIL("expected InvalidDestabilization");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidDestabilization);
  }
  CHECK(self_linking(conjugate(t, {1, -1})) == self_linking(t));
  CHECK(cyclic_shift(BraidWord::parse("1,2,-1"), 1).to_string() == "2,-1,1");
  CHECK(cyclic_shift(BraidWord::parse("1,2,-1"), -1).to_string() == "-1,1,2");
}

TEST_CASE("transverse mirror") {
  CHECK(transverse_mirror(BraidWord::parse("1,2")).to_string() == "2,1");
  CHECK(transverse_mirror(BraidWord::parse("1,1,1")).to_string() == "1,1,1");
  CHECK(transverse_mirror(BraidWord(2, {})).size() == 0);
}

TEST_CASE("flype pair") {
  auto [k1, k2] = flype_pair(BraidWord::parse("1"), BraidWord::parse("1"), 2, -1, 2);
  CHECK(k1.to_string() == "1,2,2,1,-2");
  CHECK(k2.to_string() == "1,-2,1,2,2");
  auto [e1, e2] = flype_pair(BraidWord(2, {}), BraidWord(2, {}), 1, -1, 2);
  CHECK(e1.to_string() == "2,-2");
  CHECK(e2.to_string() == "-2,2");
  CHECK_THROWS_AS(flype_pair(BraidWord::parse("2"), BraidWord(2, {}), 1, -1, 2), Error);
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    BraidWord a = random_braid(rng, 3, 3), b = random_braid(rng, 3, 3);
    int m = std::max(a.strands(), b.strands());
    a = BraidWord(m, a.letters());
    b = BraidWord(m, b.letters());
    int k = static_cast<int>(rng() % 7) - 3;
    auto [x, y] = flype_pair(a, b, k, -1, m);
    CHECK(self_linking(x) == self_linking(y));
    CHECK(x.strands() == y.strands());
    CHECK(component_count(x) == component_count(y));
  }
}

TEST_CASE("braid relation and commutation preserve the braid") {
  std::mt19937 rng(11);
  int tested = 0;
  for (int t = 0; t < 400; ++t) {
    BraidWord w = random_braid(rng, 5, 7);
    for (int p = 0; p + 1 < static_cast<int>(w.size()); ++p) {
      for (auto mv : {ElementaryMove::relation(p), ElementaryMove::commute(p)}) {
        BraidWord out;
        try {
          out = apply_move(w, mv);
        } catch (const Error&) {
          continue;
        }
        CHECK(artin_images(out) == artin_images(w));
        CHECK(apply_move(out, inverse_move(w, mv)) == w);
        ++tested;
      }
    }
  }
  CHECK(tested > 50);
  // the mixed-sign relations used by the flype script
  BraidWord a = BraidWord::parse("-1,-2,1"), b = apply_move(a, ElementaryMove::relation(0));
  CHECK(b.to_string() == "2,-1,-2");
  CHECK(artin_images(a) == artin_images(b));
  CHECK_THROWS_AS(apply_move(BraidWord::parse("1,-2,1"), ElementaryMove::relation(0)), Error);
}

TEST_CASE("flype script replays to the flyped word") {
  auto check = [](const BraidWord& a, const BraidWord& b, int k, int m) {
    auto [src, dst] = flype_pair(a, b, k, -1, m);
    MoveScript s = flype_script(a, b, k, m);
    std::vector<BraidWord> trace = replay_trace(src, s);
    CHECK(trace.back() == dst);
    CHECK(artin_images(trace.back()).size() == artin_images(src).size());
    // strand count m+1 outside the stabilized stretch, m+2 inside it
    bool inside = false;
    for (std::size_t i = 0; i < s.moves.size(); ++i) {
      if (s.moves[i].kind == MoveKind::StabilizeNeg) inside = true;
      if (s.moves[i].kind == MoveKind::DestabilizeNeg) inside = false;
      CHECK(trace[i + 1].strands() == (inside ? m + 2 : m + 1));
    }
    CHECK(s.stage_count() == 8);
    BraidWord back = replay(dst, inverse_script(src, s));
    CHECK(back == src);
  };
  BraidWord s1 = BraidWord::parse("1", 2);
  check(s1, s1, 3, 2);
  MoveScript s = flype_script(s1, s1, 3, 2);
  int stabs = 0, destabs = 0;
  for (auto& mv : s.moves) {
    stabs += mv.kind == MoveKind::StabilizeNeg;
    destabs += mv.kind == MoveKind::DestabilizeNeg;
  }
  CHECK(stabs == 1);
  CHECK(destabs == 1);
  for (int k = -3; k <= 3; ++k) {
    check(BraidWord(2, {}), BraidWord(2, {}), k, 2);
    check(BraidWord::parse("1,-2,1", 3), BraidWord::parse("2", 3), k, 3);
    check(BraidWord::parse("-1", 2), BraidWord(2, {}), k, 2);
  }
}

TEST_CASE("script text round trip") {
  std::string text =
      "# comment\nshift 2\ninsert-rii 0 1 -1\ndelete-rii 0\nbraid-relation 1\nfar-commute 0\n"
      "stabilize+\nstabilize- 3\ndestabilize+ 2\ndestabilize-\n";
  MoveScript s = parse_script(text);
  REQUIRE(s.moves.size() == 9);
  CHECK(parse_script(script_to_text(s)).moves.size() == 9);
  CHECK(script_to_text(parse_script(script_to_text(s))) == script_to_text(s));
  CHECK_THROWS_AS(parse_move("twist 3"), Error);
  CHECK_THROWS_AS(parse_move("shift"), Error);
}
