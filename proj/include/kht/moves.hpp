#pragma once

#include <vector>

#include "kht/chainmap.hpp"
#include "kht/local.hpp"

namespace kht {

// Identifies C(small) with a family of generators of C(big): crossings of the
// small word go to crossing_map[i], the remaining crossings of the big word are
// held at fixed_bits, and each circle of the small word is followed through
// segment_map (-1 = segment not usable). Signs come from reordering the
// exterior product of the set crossings, with fixed crossings placed last.
class Embedding {
 public:
  Embedding(BraidWord small, BraidWord big, std::vector<int> crossing_map, Vertex fixed_bits,
            std::vector<int> segment_map, std::vector<std::pair<int, int>> fixed_labels = {});

  std::pair<Gen, int> to_big(Gen x) const;
  std::pair<Gen, int> to_small(Gen x) const;
  GenChain to_big(const GenChain& x) const;
  GenChain to_small(const GenChain& x) const;

  const BraidWord& small() const { return small_; }
  const BraidWord& big() const { return big_; }

 private:
  const ResolutionDiagram& res(bool big, Vertex v) const;
  Vertex big_vertex(Vertex v) const;
  int sign(Vertex small_v) const;

  BraidWord small_, big_;
  std::vector<int> cmap_;
  Vertex fixed_ = 0;
  std::vector<int> smap_;
  std::vector<std::pair<int, int>> fixed_labels_;  // (big segment, label)
  mutable std::map<Vertex, ResolutionDiagram> small_res_, big_res_;
};

// Which crossings a move touches: the others correspond through cross_map
// (source crossing -> target crossing, -1 on local crossings).
struct MoveFootprint {
  std::vector<int> cross_map;
  std::vector<int> target_local;
};
MoveFootprint footprint(const BraidWord& w, const ElementaryMove& mv);

// The filtered homotopy equivalence attached to one elementary move.
ChainMapRecord move_map(const BraidWord& w, const ElementaryMove& mv,
                        FrobeniusKind kind = FrobeniusKind::BarNatan);
ChainMapRecord script_map(const BraidWord& w, const MoveScript& s,
                          FrobeniusKind kind = FrobeniusKind::BarNatan);

// The word used to realize a braid relation at position p: the inverse of the
// triple followed by its image.
BraidWord relation_bridge(const BraidWord& w, int p);

}  // namespace kht
