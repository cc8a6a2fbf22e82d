#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kht/braid.hpp"
#include "kht/elimination.hpp"

namespace kht {

struct SuiteResult {
  std::string name;
  int cases = 0;
  std::vector<std::string> failures;  // one line per failing case
  double seconds = 0;
  bool passed() const { return cases > 0 && failures.empty(); }
};

// Up to max_strands strands (1 strand means the empty word), up to max_letters.
BraidWord random_suite_braid(std::mt19937_64& rng, int max_strands, int max_letters);

// Sum of ZZ and ZZ -u-> ZZ pieces, u in {1, -1, 2}, in a random filtered basis.
SparseComplex random_filtered_complex(std::mt19937_64& rng, int pieces);
// f, g chain maps, filtered, id - gf = dh + hd and fg = id. Empty when all hold.
std::string check_elimination(const SparseComplex& before, const SparseComplex& after,
                              const EliminationLog& log);

// The Bar-Natan map of mv keeps the resolution bit of every crossing outside
// the move. Empty when it does.
std::string check_locality(const BraidWord& w, const ElementaryMove& mv);

SuiteResult suite_gradings(std::uint64_t seed, int count = 100);
SuiteResult suite_turner(std::uint64_t seed, int count = 100);
SuiteResult suite_s_bound(std::uint64_t seed, int count = 100);
SuiteResult suite_markov(std::uint64_t seed, int count = 100);
SuiteResult suite_flype(std::uint64_t seed, int count = 20);
SuiteResult suite_negstab(std::uint64_t seed, int count = 20);
SuiteResult suite_locality(std::uint64_t seed, int per_kind = 50);
SuiteResult suite_grid(std::uint64_t seed, int count = 5);
SuiteResult suite_cancellation(std::uint64_t seed, int count = 500);

std::vector<SuiteResult> run_suites(std::uint64_t seed);

}  // namespace kht
