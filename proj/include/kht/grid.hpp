#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kht/braid.hpp"

namespace kht {

// Column c carries an X in row xs[c] and an O in row os[c]; row 0 is at the
// bottom. Verticals run X -> O, horizontals O -> X, verticals pass over.
struct GridDiagram {
  int n = 0;
  std::vector<int> xs, os;

  // "n" then the xs line then the os line, 0-indexed. Throws MalformedGrid.
  static GridDiagram parse(std::string_view text);
  std::string to_text() const;
  void validate() const;
  bool operator==(const GridDiagram&) const = default;
};

int component_count(const GridDiagram& g);

// Downward verticals are split into two upward rays; the result is read
// bottom to top.
BraidWord braid_from_grid(const GridDiagram& g);

// A grid whose braid_from_grid is exactly w.
GridDiagram grid_from_braid(const BraidWord& w);

struct ClassicalInvariants {
  int tb = 0;
  int rot = 0;
  int writhe = 0;
  int up_cusps = 0, down_cusps = 0;
};
// Front obtained by turning the grid 45 degrees counterclockwise. Throws
// MultiComponent.
ClassicalInvariants classical_invariants(const GridDiagram& g);

// The improved SZ+ move acts on two bands of three rows. Each band touches
// five columns a1 < ... < a5 and has one of two shapes, listed per row as
// (column of O, column of X):
//   P: (a4, a2) (a3, a1) (a2, a5)
//   Q: (a3, a5) (a4, a2) (a2, a1)
// The move swaps P and Q in both bands; one band must be P and the other Q.
struct SZLocation {
  int row1 = 0, row2 = 0;
  bool operator==(const SZLocation&) const = default;
};
GridDiagram sz_plus_rewrite(const GridDiagram& g, SZLocation loc);
std::vector<SZLocation> sz_locations(const GridDiagram& g);

// Grids for A s^2 B s^{-1} and A s^{-1} B s^2 (s = sigma_m) related by one
// sz_plus_rewrite at the returned location.
struct FlypeGrids {
  GridDiagram source, target;
  SZLocation loc;
};
FlypeGrids flype_grids(const BraidWord& a, const BraidWord& b, int m);

struct FlypeShape {
  BraidWord a, b;
  int m = 0;
  int shift1 = 0, shift2 = 0;  // cyclic shifts applied to each extracted word
};
struct SZReport {
  BraidWord word1, word2;
  FlypeShape shape;
  ClassicalInvariants inv1, inv2;
  bool success = false;
};
// Matches the extracted words against A s^2 B s^{-1} and s A s^{-1} B s up to
// cyclic shift. Throws ShapeMismatch naming both words.
SZReport verify_flype_sz(const GridDiagram& g1, const GridDiagram& g2);

}  // namespace kht
