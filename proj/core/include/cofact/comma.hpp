#pragma once

#include <vector>

#include "cofact/category.hpp"
#include "cofact/functor.hpp"

namespace cofact {

// The comma category (f / g) for functors f: A -> C and g: B -> C. Objects
// are triples (a, b, phi: f a -> g b), ordered lexicographically; morphisms
// are pairs (u: a -> a', v: b -> b') with g v . phi = phi' . f u.
struct CommaCategory {
  CatRef cat;
  struct Obj {
    int a, b, phi;
  };
  std::vector<Obj> objects;
  std::vector<std::pair<int, int>> morphism_pairs;  // (u, v) per comma morphism
  FunctorData proj_dom;  // (f / g) -> A
  FunctorData proj_cod;  // (f / g) -> B
};

CommaCategory comma(const FunctorData& f, const FunctorData& g);

}  // namespace cofact
