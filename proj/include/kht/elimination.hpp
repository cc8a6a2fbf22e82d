#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace kht {

// Integer chain on a SparseComplex.
using IChain = std::map<int, std::int64_t>;

void add_to(IChain& acc, int g, std::int64_t c);

class SparseComplex;
struct EliminationStep;
EliminationStep eliminate(SparseComplex& c, int alpha, int beta);

// A small mutable filtered complex with explicit rows and columns, used for
// cancellations. Generators are never renumbered; eliminated ones go dead.
class SparseComplex {
 public:
  int add_generator(int gr_h, int gr_q);
  void add_entry(int a, int b, std::int64_t c);  // <delta a, b> += c

  int size() const { return static_cast<int>(gr_h_.size()); }
  bool alive(int g) const { return alive_[g]; }
  int gr_h(int g) const { return gr_h_[g]; }
  int gr_q(int g) const { return gr_q_[g]; }
  std::int64_t entry(int a, int b) const;
  const std::map<int, std::int64_t>& row(int a) const { return out_[a]; }
  const std::map<int, std::int64_t>& col(int b) const { return in_[b]; }
  std::vector<int> alive_generators() const;

  IChain boundary(const IChain& x) const;
  bool squares_to_zero() const;
  // every entry raises gr_h by one and never lowers gr_q
  bool is_filtered() const;

 private:
  friend EliminationStep eliminate(SparseComplex&, int, int);
  std::vector<int> gr_h_, gr_q_;
  std::vector<char> alive_;
  std::vector<std::map<int, std::int64_t>> out_, in_;
};

// One cancellation of alpha -> beta with <delta alpha, beta> = unit.
struct EliminationStep {
  int alpha = -1, beta = -1;
  std::int64_t unit = 0;
  std::vector<std::pair<int, std::int64_t>> row;  // delta(alpha) without beta
  std::vector<std::pair<int, std::int64_t>> col;  // <delta y, beta> for y != alpha

  IChain f(IChain x) const;  // projection to the reduced complex
  IChain g(IChain y) const;  // inclusion of the reduced complex
  IChain h(const IChain& x) const;
};

// General cancellation: requires <delta alpha, beta> = +-1 and equal gr_q.
// Throws NotCancellable otherwise. Updates c in place.
EliminationStep eliminate(SparseComplex& c, int alpha, int beta);

enum class PairShape { Subcomplex, Quotient };

// The strict form: additionally span{alpha, beta} must be a subcomplex or a
// quotient complex. The maps are those of the general cancellation, which
// reduce to the projection/inclusion pair in either case.
struct CancelResult {
  EliminationStep step;
  PairShape shape;
};
CancelResult cancel_pair(SparseComplex& c, int alpha, int beta);

// A sequence of cancellations; f, g and h compose in the usual way.
class EliminationLog {
 public:
  void push(EliminationStep s) { steps_.push_back(std::move(s)); }
  const std::vector<EliminationStep>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }

  IChain f(IChain x) const;
  IChain g(IChain y) const;
  IChain h(IChain x) const;

 private:
  std::vector<EliminationStep> steps_;
};

}  // namespace kht
