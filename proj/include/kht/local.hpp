#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "kht/chainmap.hpp"
#include "kht/elimination.hpp"

namespace kht {

// The local crossings of a move inside a larger word, and the family of
// generators that survives the reduction.
struct LocalSite {
  int t0 = 0, len = 0;       // local crossings t0 .. t0+len-1 (no wrap)
  std::vector<int> support;  // segments that local circles live in
  Vertex e_bits = 0;         // bit i <-> crossing t0+i
  std::vector<std::pair<int, int>> e_labels;  // (support segment, label) on local circles at e
};

// Reduces C(word) onto the family E by cancelling whole families of
// generators, where a family is a local vertex plus labels on the local
// circles. The same cancellation order is used over every fiber (fixed
// values of the other crossings), so all maps stay inside a fiber and are
// evaluated lazily there. The reduced complex is the subcomplex spanned by E
// with its original differential.
class LocalReduction {
 public:
  LocalReduction(BraidWord word, LocalSite site, FrobeniusKind kind);
  ~LocalReduction();

  const BraidWord& word() const { return word_; }
  const LocalSite& site() const { return site_; }

  GenChain f(const GenChain& x) const;  // C -> E
  GenChain g(const GenChain& y) const;  // E -> C
  GenChain h(const GenChain& x) const;  // C -> C
  bool in_e(Gen x) const;

  int type_count() const;
  std::size_t family_pairs() const { return pairs_; }

 private:
  struct Type;
  struct Fiber;
  const Fiber& fiber(Vertex rest) const;
  std::vector<int> type_key(Vertex rest, Fiber* keep) const;
  int local_gen(const Fiber& fb, Gen x) const;
  Gen global_gen(const Fiber& fb, Vertex rest, int y, const std::vector<int>& far_segments) const;
  std::vector<int> far_segments(const Fiber& fb, Gen x) const;
  template <class Op>
  GenChain transport(const GenChain& x, Op&& op, bool fiber_sign) const;
  void reduce();

  BraidWord word_;
  LocalSite site_;
  FrobeniusKind kind_;
  Vertex mask_ = 0;                      // local bits in place
  std::vector<int> sigma_;               // sites and support, sorted
  std::vector<char> in_support_;         // per segment
  std::vector<std::unique_ptr<Type>> types_;
  std::vector<int> fiber_type_;          // by compressed rest index
  std::uint64_t e_family_ = 0;
  std::size_t pairs_ = 0;
  mutable std::map<Vertex, std::unique_ptr<Fiber>> fibers_;
};

}  // namespace kht
