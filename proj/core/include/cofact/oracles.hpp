#pragma once

#include <cstdint>
#include <vector>

#include "cofact/cat_scheme.hpp"
#include "cofact/diagram.hpp"
#include "cofact/functor.hpp"
#include "cofact/multicat.hpp"
#include "cofact/set_scheme.hpp"

namespace cofact {

// Reference computations by a second, independent route. The main
// constructions are cross-checked against these in the test and acceptance
// suites; none of them share code with the implementation they check.

// Pointwise left Kan extension computed object by object as the colimit of
// x over the comma category (f / b), with transitions induced on colimit
// classes by postcomposition. Classes are numbered by least representative,
// matching the propagation-based implementation, so agreement is exact
// table equality.
SetDiagram kan_colimit_oracle(const FunctorData& f, const SetDiagram& x);

// Cardinality of the hom of words by the coproduct-over-shapes formula:
// sum over maps phi of products of multimorphism counts at each fibre.
long fo_count_formula(const FinMulticategory& o, const std::vector<int>& v,
                      const std::vector<int>& w);

// Per-colour component counts of the operation graph of p (morphisms by
// target colour, edges the stored transpositions). This is what the
// pushforward along the inclusion of units must produce as carriers.
std::vector<int> operation_graph_component_counts(const FinMulticategory& p);

// The projection formula on finite sets, checked directly on subsets.
bool powerset_frobenius_direct(const SetMapping& f, const SubsetObj& x,
                               const SubsetObj& y);

// Number of global points of a diagram by direct odometer over compatible
// families, independent of the natural-transformation machinery.
long points_count_oracle(const SetDiagram& y);

// All functors h with q . h = p (maps over the common codomain), found by
// filtered exhaustive enumeration.
std::vector<FunctorData> functors_over(const FunctorData& p, const FunctorData& q,
                                       std::int64_t budget);

// All sections of p (functors s with p . s = id).
std::vector<FunctorData> sections_of(const FunctorData& p, std::int64_t budget);

}  // namespace cofact
