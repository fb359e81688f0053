#pragma once

#include <string>
#include <vector>

#include "cofact/category.hpp"
#include "cofact/functor.hpp"

namespace cofact {

// GraphViz source for one category: objects become nodes, non-identity
// morphisms become labelled edges. Deterministic output for fixed input.
std::string category_dot(const CatRef& c,
                         const std::vector<std::string>& object_names = {});

// Two-cluster rendering of a map p regarded as a covering: the total
// category is drawn highlighted above the base, with dotted projection
// edges from each total object to its image.
std::string covering_dot(const FunctorData& p,
                         const std::vector<std::string>& base_names = {});

}  // namespace cofact
