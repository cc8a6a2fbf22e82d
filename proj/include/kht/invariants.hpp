#pragma once

#include "kht/complex.hpp"
#include "kht/homology.hpp"

namespace kht {

enum class PsiSign { Plus, Minus, Diff };

constexpr int kInfinity = std::numeric_limits<int>::max();

struct PsiClass {
  Chain chain;
  Window home;
  PsiSign sign = PsiSign::Plus;
  bool flipped = false;
  int p = 0, q = 0;  // home is [sl + 2p, sl + 2q); +-kInfinity leaves a side open
};

// Labeling of each oriented-resolution circle: true = x_perp (= x- - x+),
// false = x-. Circles are in the complex's order (outermost first).
std::vector<bool> psi_labels(const BraidWord& w, PsiSign sign, bool flip = false);

// psi+ or psi- expanded in the {x+, x-} basis; PsiSign::Diff gives psi+ - psi-.
Chain psi_chain(const FilteredComplex& c, PsiSign sign, bool flip = false);

PsiClass psi(const FilteredComplex& c, PsiSign sign, bool flip = false);
// image in F_{sl+2p} / F_{sl+2q}; requires p <= 0 < q (for Diff, p <= 1 < q)
PsiClass psi_pq(const FilteredComplex& c, int p, int q, PsiSign sign = PsiSign::Plus,
                bool flip = false);
PsiClass psi_diff(const FilteredComplex& c, bool flip = false);

// [psi_{p,q}] as a homology class in its home view.
ClassResult psi_class_is_zero(const FilteredComplex& c, const PsiClass& psi,
                              Ring ring = Ring::Integers);

struct SInvariant {
  int s = 0;
  int q = 0;  // least q with [psi_{-inf,q}] != 0
};
// Rasmussen's s from the filtration level where psi first survives. Rationals
// by default. Throws MultiComponent.
SInvariant s_invariant(const BraidWord& w, Ring ring = Ring::Rationals,
                       PsiSign sign = PsiSign::Plus);

struct Obstruction {
  bool trivial = false;                 // H^{-1}(C / F_sl) = 0
  GroupShape group;                     // that group
  bool khovanov_sufficient = false;     // Kh^{-1,j} = 0 for all j < sl
};
Obstruction triviality_obstruction(const BraidWord& w);

}  // namespace kht
