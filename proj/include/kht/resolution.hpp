#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "kht/braid.hpp"

namespace kht {

// Vertices of the cube are bitmasks: crossing j (letter j) is bit j.
using Vertex = std::uint32_t;

inline bool bit(Vertex v, int j) { return (v >> j) & 1u; }

struct CircleInfo {
  int depth = 0;          // number of circles enclosing this one
  int first_segment = 0;  // smallest segment id on the circle
};

// Circle decomposition of one complete resolution of a braid closure.
// The closure is drawn to the right of the braid, so the leftmost strand is
// outermost. Segment (g, p) is the vertical arc at position p in gap g, the
// gap directly below letter g (there is one gap when the word is empty).
struct ResolutionDiagram {
  Vertex vertex = 0;
  int gaps = 1;
  int strands = 1;
  std::vector<std::uint8_t> circle_of_segment;
  std::vector<CircleInfo> circles;  // sorted by (depth, first_segment)

  int segment(int gap, int pos) const { return gap * strands + pos; }
  int circle_at(int gap, int pos) const { return circle_of_segment[segment(gap, pos)]; }
  int circle_count() const { return static_cast<int>(circles.size()); }
  // The four arc ends at crossing j: below-left, below-right, above-left, above-right.
  std::array<int, 4> site(const BraidWord& w, int j) const;
};

// True when crossing j is resolved by the parallel (oriented) smoothing at v.
inline bool smoothing_is_oriented(const Letter& l, int b) { return (l.sign > 0) == (b == 0); }

ResolutionDiagram resolve(const BraidWord& w, Vertex v);
// Bit-vector form; throws LengthMismatch.
ResolutionDiagram resolve(const BraidWord& w, const std::vector<int>& bits);

// 0 at positive letters, 1 at negative ones.
Vertex oriented_resolution(const BraidWord& w);

}  // namespace kht
