#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cofact/category.hpp"

namespace cofact {

// A functor between finite categories, as explicit object/morphism maps.
// Domain and codomain are held by shared reference; equality compares tables.
struct FunctorData {
  CatRef dom;
  CatRef cod;
  std::vector<int> obj_map;
  std::vector<int> mor_map;

  int on_obj(int a) const { return obj_map[a]; }
  int on_mor(int m) const { return mor_map[m]; }
};

std::vector<std::string> validate_functor(const FunctorData& f);
bool functor_ok(const FunctorData& f);

FunctorData identity_functor(const CatRef& c);
// g after f; throws if cod(f) and dom(g) differ as tables.
FunctorData compose_functors(const FunctorData& g, const FunctorData& f);
bool functor_equal(const FunctorData& a, const FunctorData& b);

// Inverse functor when f is an isomorphism of categories (bijective on
// objects and morphisms); empty otherwise.
std::optional<FunctorData> invert_functor(const FunctorData& f);

// Sends every object to b, every morphism to id_b.
FunctorData constant_functor(const CatRef& a, const CatRef& b, int obj);
// The functor picking an object: terminal category -> b.
FunctorData pick_object(const CatRef& b, int obj);
// Same tables read between the opposite categories.
FunctorData opposite_functor(const FunctorData& f);

enum class EnumStatus { Complete, Overflow, Stopped };

// Emits every functor A -> B exactly once, in lexicographic order of
// (object map, morphism map). The budget bounds search nodes — candidate
// object images, candidate morphism images and emissions — so degenerate
// searches stop with Overflow instead of walking a huge fruitless tree; the
// visitor may stop the walk early (Stopped).
EnumStatus for_each_functor(const CatRef& a, const CatRef& b, std::int64_t budget,
                            const std::function<bool(const FunctorData&)>& visit);

struct FunctorEnumeration {
  std::vector<FunctorData> items;
  bool overflow = false;
};

FunctorEnumeration enumerate_functors(const CatRef& a, const CatRef& b, std::int64_t budget);

}  // namespace cofact
