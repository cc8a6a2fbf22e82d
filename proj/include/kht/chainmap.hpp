#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kht/complex.hpp"
#include "kht/homology.hpp"

namespace kht {

// A generator named by its vertex and labels, independent of any built complex.
struct Gen {
  Vertex v = 0;
  std::uint32_t labels = 0;
  auto operator<=>(const Gen&) const = default;
};

using GenChain = std::map<Gen, std::int64_t>;
using ChainOp = std::function<GenChain(const GenChain&)>;

void add_to(GenChain& acc, Gen g, std::int64_t c);
void add_scaled(GenChain& acc, const GenChain& x, std::int64_t c);
// Extends a map on generators linearly.
GenChain apply_linear(const GenChain& x, const std::function<GenChain(Gen)>& image);

GenChain to_gen_chain(const FilteredComplex& c, const Chain& x);
Chain to_chain(const FilteredComplex& c, const GenChain& x);
GenChain boundary(const FilteredComplex& c, const GenChain& x);

// Filtered chain homotopy equivalence data between C(source) and C(target):
// f: source -> target, g: target -> source, h on the source with
// id - gf = dh + hd, k on the target with id - fg = dk + kd.
struct ChainMapRecord {
  BraidWord source, target;
  ChainOp f, g, h, k;
  bool isomorphism = false;  // h = k = 0
  std::vector<std::string> moves;
};

ChainMapRecord identity_record(const BraidWord& w);
// parts[0] acts first.
ChainMapRecord compose(const std::vector<ChainMapRecord>& parts);

struct RecordCheck {
  bool chain_maps = true;
  bool filtered = true;
  bool source_homotopy = true;  // id - gf = dh + hd
  bool target_homotopy = true;  // id - fg = dk + kd
  std::string failure;
  bool ok() const { return chain_maps && filtered && source_homotopy && target_homotopy; }
};

// Checks every identity generator by generator on the built complexes.
RecordCheck check_record(const ChainMapRecord& r, FrobeniusKind kind);

}  // namespace kht
