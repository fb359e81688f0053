#pragma once

#include <string>
#include <vector>

#include "cofact/category.hpp"
#include "cofact/diagram.hpp"
#include "cofact/functor.hpp"
#include "cofact/group.hpp"
#include "cofact/multicat.hpp"
#include "cofact/set_scheme.hpp"

namespace cofact {

enum class InstanceKind {
  Category,
  Functor,
  Diagram,
  BasedCategory,
  GroupAction,
  Multicategory,
  Algebra,
  Multifunctor,
  Mapping,
  Subset,
};

const char* kind_name(InstanceKind k);

// One parsed instance document. Only the fields belonging to `kind` are
// meaningful; the name vectors are optional labels (objects of a category,
// elements of a mapping's endpoints) carried through serialisation intact.
struct Instance {
  InstanceKind kind = InstanceKind::Category;
  CatRef category;             // Category, BasedCategory
  int base = 0;                // BasedCategory
  FunctorData functor;         // Functor
  SetDiagram diagram;          // Diagram
  GSet action;                 // GroupAction
  MulticatRef multicat;        // Multicategory
  MultiAlgebra algebra;        // Algebra
  MultiFunctor multifunctor;   // Multifunctor
  SetMapping mapping;          // Mapping
  SubsetObj subset;            // Subset
  std::vector<std::string> object_names;  // category objects / mapping domain
  std::vector<std::string> cod_names;     // mapping codomain / subset ambient
};

// Parse a version-1 document. Both shape errors and law violations surface
// as std::invalid_argument naming the offending field or axiom.
Instance parse_instance(const std::string& text);
// Reads the file and parses it; errors are prefixed with the path.
Instance load_instance(const std::string& path);

// Canonical bytes: fixed key order, two-space indentation, trailing newline.
// parse_instance(serialise_instance(i)) reproduces i exactly.
std::string serialise_instance(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

// Resolve an object argument against the instance: an object name when the
// instance carries names, otherwise a decimal index. Bounds-checked; throws
// std::invalid_argument when unresolved.
int resolve_object(const Instance& inst, const std::string& spec);

}  // namespace cofact
