#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kht/elimination.hpp"
#include "kht/suite.hpp"

namespace kht::testing {

inline std::vector<std::pair<int, int>> unit_pairs(const SparseComplex& c) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < c.size(); ++a)
    for (auto [b, x] : c.row(a))
      if (x == 1 || x == -1) out.push_back({a, b});
  return out;
}

}  // namespace kht::testing
