#pragma once

#include <json.hpp>
#include <map>
#include <string>

#include "kht/complex.hpp"
#include "kht/grid.hpp"
#include "kht/homology.hpp"
#include "kht/invariants.hpp"
#include "kht/suite.hpp"
#include "kht/verify.hpp"

// Vertices and labels are integer bit masks throughout: bit j of a vertex is
// the smoothing of crossing j, bit c of labels means x+ on circle c. Rational
// coefficients are strings ("3", "-1/2").
namespace kht {

using Json = nlohmann::json;

Json braid_json(const BraidWord& w);
BraidWord braid_from_json(const Json& j);

// {schema, braid, frobenius, generators: [{id, vertex, labels, gr_h, gr_q}],
//  differential: [[from, to, coeff], ...]}
Json complex_json(const FilteredComplex& c);
ReferenceComplex complex_from_json(const Json& j);

Json group_json(const GroupShape& g);
GroupShape group_from_json(const Json& j);

Json khovanov_json(const BraidWord& w, const std::map<std::pair<int, int>, GroupShape>& groups);
Json homology_json(const BraidWord& w, const std::map<int, GroupShape>& groups, Ring ring);

// {window: [p, q], sign, flipped, terms: [{vertex, labels, coeff}], zero}; an
// open side of the window is null.
Json psi_json(const FilteredComplex& c, const PsiClass& psi, bool zero);

Json report_json(const Report& r, bool timings = false);
Report report_from_json(const Json& j);

Json grid_json(const GridDiagram& g);
Json invariants_json(const ClassicalInvariants& ci);
Json sz_json(const SZReport& r);

Json suite_json(std::uint64_t seed, const std::vector<SuiteResult>& results, bool timings = false);

}  // namespace kht
