#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kht/braid.hpp"
#include "kht/chainmap.hpp"
#include "kht/invariants.hpp"

namespace kht {

struct WitnessTerm {
  Vertex vertex = 0;
  std::uint32_t labels = 0;
  mpq_class coeff;
};

// One identity checked inside a verification.
struct Check {
  std::string name;
  bool ok = false;
  int sign = 0;  // matching global sign, 0 when none
  int level = 0;
  std::vector<WitnessTerm> witness;
};

struct Report {
  std::string theorem;
  BraidWord source, target;
  bool success = false;
  bool exploratory = false;  // a failure here is data, not a bug
  int sign = 0;
  int level = 0;
  std::vector<WitnessTerm> witness;
  std::optional<mpq_class> alpha;
  std::vector<Check> checks;
  std::vector<std::string> trace;  // moves, in order
  std::vector<std::string> notes;
  std::map<std::string, double> timings;  // seconds
};

// f(psi(w)) = +-psi(w') + d(phi), phi in F_sl. Only transverse moves allowed.
Report verify_markov(const BraidWord& w, const MoveScript& s);
// Same for psi^diff, phi in F_{sl+2}.
Report verify_diff_markov(const BraidWord& w, const MoveScript& s);

// Negative stabilization at the end of w: both maps carry psi to +-psi up to a
// boundary in F_{sl(w')}, and a psi+ + b psi- goes to a psi+' - b psi-'.
Report verify_neg_stab(const BraidWord& w);

// Flype of A s^k B s^{-1} into A s^{-1} B s^k, s = sigma_m. Raises
// SupportViolation when psi, f(psi) or phi leave the expected vertices.
Report verify_flype(const BraidWord& a, const BraidWord& b, int k, int m);
// psi^diff at level sl+2; k < 0 runs in exploratory mode.
Report verify_diff_flype(const BraidWord& a, const BraidWord& b, int k, int m);

// [psi_{0,k}(w)] = 0; success means the class vanished.
Report verify_destab_vanishing(const BraidWord& w, int k);

// Over Q in the Khovanov complex: f(psi_{0,1}) = alpha psi_{0,1}' + d(phi)
// with alpha != 0 and phi in bidegree (-1, sl).
Report verify_stab_once_rational(const BraidWord& w, const MoveScript& s);

// A script of at most `length` transverse moves keeping every word at or below
// max_letters.
MoveScript random_transverse_script(const BraidWord& w, int length, int max_letters,
                                    std::mt19937_64& rng);

// Negative stabilization, transverse moves, negative destabilization.
MoveScript random_stab_once_script(const BraidWord& w, int middle, int max_letters,
                                   std::mt19937_64& rng);

BraidWord random_braid(std::mt19937_64& rng, int strands, int max_letters, int min_letters = 0);

}  // namespace kht
