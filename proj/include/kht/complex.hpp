#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kht/braid.hpp"
#include "kht/resolution.hpp"

namespace kht {

enum class FrobeniusKind { Khovanov, BarNatan, Lee };

// Labels: 1 = x+, 0 = x-.
struct FrobeniusSpec {
  FrobeniusKind kind;
  const char* name;
  std::array<std::array<std::vector<std::pair<int, int>>, 2>, 2> mult;  // (label, coeff)
  std::array<std::vector<std::array<int, 3>>, 2> comult;                // (label, label, coeff)

  static const FrobeniusSpec& get(FrobeniusKind k);
};

FrobeniusKind parse_frobenius(const std::string& name);

using GenId = std::uint32_t;
constexpr GenId kNoGen = std::numeric_limits<GenId>::max();

struct Entry {
  GenId target;
  std::int32_t coeff;
};

struct BuildLimits {
  int crossing_cap = 16;
  std::size_t generator_cap = std::size_t{1} << 24;
};

// The cube-of-resolutions complex of a braid closure. Generators are ordered
// lexicographically by (vertex bits in letter order, labels with x- < x+ in
// circle order).
class FilteredComplex {
 public:
  const BraidWord& word() const { return word_; }
  FrobeniusKind kind() const { return kind_; }
  std::size_t size() const { return gen_vertex_.size(); }
  int crossings() const { return static_cast<int>(word_.size()); }

  Vertex vertex(GenId g) const { return gen_vertex_[g]; }
  // bit c set <=> circle c carries x+
  std::uint32_t labels(GenId g) const { return gen_labels_[g]; }
  int circle_count(Vertex v) const { return circles_[v]; }
  int gr_h(GenId g) const;
  int gr_q(GenId g) const;
  int gr_q(Vertex v, std::uint32_t labels) const;
  GenId id(Vertex v, std::uint32_t labels) const;

  std::span<const Entry> delta(GenId g) const {
    return {entries_.data() + row_start_[g], entries_.data() + row_start_[g + 1]};
  }
  std::size_t entry_count() const { return entries_.size(); }

  int circle_of_segment(Vertex v, int segment) const {
    return seg_circle_[static_cast<std::size_t>(v) * segments_ + segment];
  }
  int segments() const { return segments_; }
  // segment (gap, pos) -> id, matching ResolutionDiagram
  int segment(int gap, int pos) const { return gap * word_.strands() + pos; }

  int min_gr_q() const { return min_q_; }
  int max_gr_q() const { return max_q_; }
  int min_gr_h() const { return -negatives_; }
  int max_gr_h() const { return crossings() - negatives_; }
  int positives() const { return crossings() - negatives_; }
  int negatives() const { return negatives_; }

  // entries (a, b, c) with <delta a, b> = c
  std::vector<std::array<std::int64_t, 3>> triples() const;

 private:
  friend FilteredComplex build_complex(const BraidWord&, FrobeniusKind, const BuildLimits&);

  BraidWord word_;
  FrobeniusKind kind_ = FrobeniusKind::BarNatan;
  int negatives_ = 0;
  int segments_ = 1;
  int min_q_ = 0, max_q_ = 0;
  std::vector<std::uint8_t> circles_;       // per vertex
  std::vector<std::uint8_t> seg_circle_;    // per vertex * segment
  std::vector<GenId> vertex_offset_;        // per vertex
  std::vector<Vertex> gen_vertex_;
  std::vector<std::uint32_t> gen_labels_;
  std::vector<std::uint64_t> row_start_;
  std::vector<Entry> entries_;
};

// Parallel over cube vertices when OpenMP is available.
FilteredComplex build_complex(const BraidWord& w, FrobeniusKind kind, const BuildLimits& lim = {});

// Straightforward serial construction, kept for cross-checking build_complex.
// Returns generators in the same order as (vertex, labels) pairs and the
// differential as sorted triples.
struct ReferenceComplex {
  std::vector<std::pair<Vertex, std::uint32_t>> gens;
  std::vector<int> gr_h, gr_q;
  std::vector<std::array<std::int64_t, 3>> triples;
};
ReferenceComplex build_complex_reference(const BraidWord& w, FrobeniusKind kind);

// Generator index range of one filtration window [lo, hi) in gr_q, as a mask.
struct Window {
  int lo = std::numeric_limits<int>::min();
  int hi = std::numeric_limits<int>::max();
  bool contains(int q) const { return q >= lo && q < hi; }
};

// F_m as a window.
inline Window filtration_level(int m) { return Window{m, std::numeric_limits<int>::max()}; }

std::uint32_t reverse_bits(std::uint32_t x, int width);

}  // namespace kht
