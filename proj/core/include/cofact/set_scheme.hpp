#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cofact/functor.hpp"  // EnumStatus

namespace cofact {

struct FinSetObj {
  int size = 0;
};
inline bool operator==(const FinSetObj& a, const FinSetObj& b) { return a.size == b.size; }

struct SetMapping {
  int dom_size = 0;
  int cod_size = 0;
  std::vector<int> map;
};

std::vector<std::string> validate_mapping(const SetMapping& f);
bool mapping_ok(const SetMapping& f);
SetMapping identity_mapping(int n);
SetMapping compose_mappings(const SetMapping& g, const SetMapping& f);
bool mapping_equal(const SetMapping& a, const SetMapping& b);
std::optional<SetMapping> invert_mapping(const SetMapping& f);
EnumStatus for_each_mapping(int dom_size, int cod_size, std::int64_t budget,
                            const std::function<bool(const SetMapping&)>& visit);

// A subset of {0..base_size-1}, elements sorted ascending.
struct SubsetObj {
  int base_size = 0;
  std::vector<int> elems;
};
bool subset_equal(const SubsetObj& a, const SubsetObj& b);
bool subset_leq(const SubsetObj& a, const SubsetObj& b);  // a ⊆ b over the same base
SubsetObj whole_set(int n);
SubsetObj empty_subset(int n);
SubsetObj subset_intersection(const SubsetObj& a, const SubsetObj& b);
SubsetObj direct_image(const SetMapping& f, const SubsetObj& x);
SubsetObj preimage(const SetMapping& f, const SubsetObj& y);

// The at-most-one morphism dom -> cod in the poset of subsets; it exists
// (is valid) exactly when dom ⊆ cod. Invalid pairs are carried so failed
// canonical comparisons can be reported rather than crash.
struct SubsetMor {
  SubsetObj dom;
  SubsetObj cod;
  bool valid() const { return subset_leq(dom, cod); }
};

struct SetElements {
  FinSetObj total;
  SetMapping projection;
};

struct SubsetProduct {
  SubsetObj obj;
  SubsetMor pr1, pr2;
};

struct ImageFactorisation {
  SetMapping surjection;  // onto the image, in sorted order
  SetMapping inclusion;   // image -> codomain
};
ImageFactorisation image_factorise(const SetMapping& f);

// The comprehension scheme on finite sets whose fibre over A is the poset of
// subsets of A, with direct image left adjoint to preimage. Coverings come
// out as injections and connected maps as surjections.
struct PowersetScheme {
  using Object = FinSetObj;
  using Map = SetMapping;
  using Obj = SubsetObj;
  using Mor = SubsetMor;

  Object dom(const Map& f) const { return {f.dom_size}; }
  Object cod(const Map& f) const { return {f.cod_size}; }
  bool object_equal(const Object& a, const Object& b) const { return a == b; }
  Map compose(const Map& g, const Map& f) const { return compose_mappings(g, f); }
  Map identity(const Object& a) const { return identity_mapping(a.size); }
  bool map_equal(const Map& a, const Map& b) const { return mapping_equal(a, b); }
  std::optional<Map> invert(const Map& f) const { return invert_mapping(f); }
  EnumStatus for_each_map(const Object& a, const Object& b, std::int64_t budget,
                          const std::function<bool(const Map&)>& visit) const {
    return for_each_mapping(a.size, b.size, budget, visit);
  }

  Obj terminal(const Object& a) const { return whole_set(a.size); }
  bool obj_equal(const Obj& x, const Obj& y) const { return subset_equal(x, y); }
  Obj push(const Map& f, const Obj& x) const { return direct_image(f, x); }
  Obj pull(const Map& f, const Obj& y) const { return preimage(f, y); }
  Mor push_mor(const Map& f, const Mor& m) const { return {push(f, m.dom), push(f, m.cod)}; }
  Mor pull_mor(const Map& f, const Mor& m) const { return {pull(f, m.dom), pull(f, m.cod)}; }
  Mor adjunction_unit(const Map& f, const Obj& x) const { return {x, pull(f, push(f, x))}; }
  Mor adjunction_counit(const Map& f, const Obj& y) const { return {push(f, pull(f, y)), y}; }

  SetElements elements(const Obj& x) const;
  Map lift(const Map& h, const Obj& x, const Mor& point) const;
  Mor point_of_lift(const Map& h, const Obj& x, const Map& lifting) const;

  std::vector<Mor> hom(const Obj& x, const Obj& y) const;
  Mor compose_mor(const Mor& g, const Mor& f) const { return {f.dom, g.cod}; }
  Mor id_mor(const Obj& x) const { return {x, x}; }
  bool mor_equal(const Mor& a, const Mor& b) const {
    return subset_equal(a.dom, b.dom) && subset_equal(a.cod, b.cod);
  }
  std::optional<Mor> mor_invert(const Mor& m) const;
  SubsetProduct product(const Obj& x, const Obj& y) const;
  Mor pairing(const Mor& u, const Mor& v) const {
    return {u.dom, subset_intersection(u.cod, v.cod)};
  }
};

// Deliberately damaged variant used to exercise the detectors: pushforward
// pads the image with the least element of the codomain. Pull, units and the
// poset structure are untouched, so everything stays runnable, but covering
// composition, left-cancellation, the projection formula, base change and
// stability of connected maps all fail on small instances.
struct PaddedPowersetScheme : PowersetScheme {
  Obj push(const Map& f, const Obj& x) const;
  Mor push_mor(const Map& f, const Mor& m) const { return {push(f, m.dom), push(f, m.cod)}; }
  Mor adjunction_unit(const Map& f, const Obj& x) const { return {x, pull(f, push(f, x))}; }
  Mor adjunction_counit(const Map& f, const Obj& y) const { return {push(f, pull(f, y)), y}; }
};

}  // namespace cofact
