#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "kht/errors.hpp"
#include "kht/grid.hpp"
#include "kht/homology.hpp"
#include "kht/invariants.hpp"
#include "kht/suite.hpp"
#include "kht/verify.hpp"
#include "oracle/naive_kh.hpp"

using namespace kht;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool ok = true;
  std::vector<std::string> details;
};

void absorb(Outcome& o, const SuiteResult& r) {
  if (!r.passed()) o.ok = false;
  o.details.push_back(r.name + ": " + std::to_string(r.cases) + " cases, " + std::to_string(r.failures.size()) +
                      " failures");
  for (const std::string& f : r.failures) o.details.push_back("  " + f);
}

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond) {
    o.ok = false;
    o.details.push_back("failed: " + what);
  }
}

void time_limit(Outcome& o, double seconds, double limit) {
  require(o, seconds < limit, "runtime " + std::to_string(seconds) + " s over " + std::to_string(limit) + " s");
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool matches_oracle(const BraidWord& w) {
  oracle::Diagram d{w.strands(), {}};
  for (const Letter& l : w.letters()) d.word.push_back(l.sign * l.index);
  const auto theirs = oracle::khovanov(d);
  const auto ours = khovanov_homology(build_complex(w, FrobeniusKind::Khovanov));
  if (ours.size() != theirs.size()) return false;
  for (const auto& [key, s] : theirs) {
    auto it = ours.find(key);
    if (it == ours.end() || it->second.rank != s.rank) return false;
    if (it->second.torsion != std::vector<std::int64_t>(s.torsion.begin(), s.torsion.end())) return false;
  }
  return true;
}

bool has_two_torsion(const BraidWord& w) {
  for (const auto& [key, g] : khovanov_homology(build_complex(w, FrobeniusKind::Khovanov)))
    if (g.torsion == std::vector<std::int64_t>{2}) return true;
  return false;
}

Outcome gradings() {
  Outcome o;
  const SuiteResult r = suite_gradings(kSeed, 100);
  absorb(o, r);
  time_limit(o, r.seconds, 10);
  return o;
}

Outcome turner() {
  Outcome o;
  absorb(o, suite_turner(kSeed, 100));
  return o;
}

Outcome golden() {
  Outcome o;
  const std::vector<std::pair<std::string, BraidWord>> knots = {
      {"unknot (one crossing)", BraidWord::parse("1")},
      {"unknot (two strands, two crossings)", BraidWord::parse("1,2")},
      {"right trefoil", BraidWord::parse("1,1,1")},
      {"left trefoil", BraidWord::parse("-1,-1,-1")},
      {"figure-eight", BraidWord::parse("1,-2,1,-2")},
  };
  for (const auto& [name, w] : knots) require(o, matches_oracle(w), name + " differs from the oracle");
  require(o, has_two_torsion(BraidWord::parse("1,1,1")), "right trefoil lacks Z/2");
  require(o, has_two_torsion(BraidWord::parse("-1,-1,-1")), "left trefoil lacks Z/2");
  // crossingless unknot: Z in (0, -1) and (0, 1)
  const auto u = khovanov_homology(build_complex(BraidWord(1, {}), FrobeniusKind::Khovanov));
  require(o,
          u.size() == 2 && u.count({0, -1}) && u.count({0, 1}) && u.at({0, -1}) == GroupShape{1, {}} &&
              u.at({0, 1}) == GroupShape{1, {}},
          "crossingless unknot");
  return o;
}

Outcome s_values() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  require(o, s_invariant(BraidWord(1, {})).s == 0, "s(unknot) = 0");
  require(o, s_invariant(BraidWord::parse("1,1,1")).s == 2, "s(right trefoil) = 2");
  require(o, s_invariant(BraidWord::parse("-1,-1,-1")).s == -2, "s(left trefoil) = -2");
  require(o, s_invariant(BraidWord::parse("1,-2,1,-2")).s == 0, "s(figure-eight) = 0");
  const SuiteResult r = suite_s_bound(kSeed, 100);
  absorb(o, r);
  time_limit(o, since(t0), 60);
  return o;
}

Outcome markov() {
  Outcome o;
  absorb(o, suite_markov(kSeed, 100));
  return o;
}

Outcome flype() {
  Outcome o;
  const SuiteResult r = suite_flype(kSeed, 20);
  absorb(o, r);
  time_limit(o, r.seconds, 300);
  return o;
}

Outcome negative_stabilization() {
  Outcome o;
  absorb(o, suite_negstab(kSeed, 100));
  require(o, verify_destab_vanishing(BraidWord::parse("1,1,1,-2"), 1).success, "[psi_{0,1}] = 0 on 1,1,1,-2");
  require(o, verify_destab_vanishing(BraidWord::parse("1,1,1,-2,-3"), 2).success,
          "[psi_{0,2}] = 0 on 1,1,1,-2,-3");
  std::mt19937_64 rng(kSeed);
  for (int i = 0; i < 10; ++i) {
    BraidWord w = random_suite_braid(rng, 3, 4);
    const int k = 1 + i % 2;
    for (int j = 0; j < k; ++j) w = stabilize(w, -1);
    require(o, verify_destab_vanishing(w, k).success, "[psi_{0,k}] = 0 on " + w.to_string());
  }
  require(o, !verify_destab_vanishing(BraidWord::parse("1,1,1"), 1).success, "[psi_{0,1}(1,1,1)] != 0");
  return o;
}

Outcome locality() {
  Outcome o;
  absorb(o, suite_locality(kSeed, 50));
  return o;
}

Outcome grid() {
  Outcome o;
  // flype_grids(1, (1, 1), 2); also stored as tests/data/flype_{source,target}.grid
  const GridDiagram g1 = GridDiagram::parse(
      "15\n8 11 10 7 3 5 4 0 1 2 6 9 14 13 12\n14 13 11 9 8 7 6 5 3 4 10 12 0 1 2\n");
  const GridDiagram g2 = GridDiagram::parse(
      "15\n8 10 9 7 3 6 5 0 1 2 4 11 14 13 12\n14 13 11 10 8 7 6 4 3 5 9 12 0 1 2\n");
  try {
    const SZReport r = verify_flype_sz(g1, g2);
    require(o, r.success, "reference pair");
    require(o, sz_plus_rewrite(g1, {4, 9}) == g2, "reference pair is one SZ+ move apart");
    for (const GridDiagram* g : {&g1, &g2}) {
      const ClassicalInvariants ci = classical_invariants(*g);
      require(o, ci.tb - ci.rot == self_linking(braid_from_grid(*g)), "tb - rot = sl on the reference pair");
    }
  } catch (const Error& e) {
    require(o, false, std::string("reference pair: ") + e.what());
  }
  absorb(o, suite_grid(kSeed, 5));
  return o;
}

Outcome cancellation() {
  Outcome o;
  absorb(o, suite_cancellation(kSeed, 500));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"gradings of psi", gradings},
      {"Bar-Natan rank 2^|K|", turner},
      {"Khovanov golden values", golden},
      {"s-invariant", s_values},
      {"Markov invariance", markov},
      {"flype invariance", flype},
      {"negative stabilization", negative_stabilization},
      {"locality", locality},
      {"grids and SZ+", grid},
      {"cancellation lemma", cancellation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.details.push_back(std::string("exception: ") + e.what());
    }
    std::printf("%s %zu %s (%.1f s)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), since(t0));
    for (const std::string& d : o.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
