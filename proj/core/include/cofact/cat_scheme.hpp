#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "cofact/category.hpp"
#include "cofact/comma.hpp"
#include "cofact/diagram.hpp"
#include "cofact/functor.hpp"

namespace cofact {

// Category of elements of a Set-valued diagram, with its projection to the
// base. For covariant diagrams the projection is a discrete opfibration
// (morphism labels pair a base morphism with the element at its source);
// for contravariant ones it is a discrete fibration (element at the target).
struct ElementsCategory {
  CatRef cat;
  FunctorData projection;
  std::vector<std::pair<int, int>> object_labels;    // (base object, element)
  std::vector<std::pair<int, int>> morphism_labels;  // (base morphism, element)

  int object_index(int base_obj, int element) const;
  int morphism_index(int base_mor, int element) const;

  std::map<std::pair<int, int>, int> object_lookup;
  std::map<std::pair<int, int>, int> morphism_lookup;
};

ElementsCategory elements_cov(const SetDiagram& x);
ElementsCategory elements_con(const SetDiagram& x);

// Total diagram of a diagram on the category of elements: at each base
// object the coproduct of the fibres of y, with the evident structure
// morphism down to x. Witnesses the equivalence between diagrams on the
// elements category and diagrams over x.
struct SigmaElements {
  SetDiagram total;      // on the base of x
  DiagramMor structure;  // total -> x
};

SigmaElements sigma_elements(const SetDiagram& x, const ElementsCategory& e,
                             const SetDiagram& y);

// Pointwise left Kan extension of x along f, computed as a quotient of the
// triples (a, phi: f a -> b, e) by the zigzag closure of the naturality
// relation. Classes are labelled by least triple in lexicographic order.
struct KanData {
  FunctorData f;
  SetDiagram source;
  SetDiagram pushed;
  struct Raw {
    int a, phi, e;
  };
  std::vector<std::vector<Raw>> raw;      // per codomain object, lex order
  std::vector<std::vector<int>> cls;      // class of each raw triple
  int class_of(int b, int a, int phi, int e) const;
};

KanData left_kan(const FunctorData& f, const SetDiagram& x);
DiagramMor kan_unit(const KanData& k);                              // x -> f* f_! x
DiagramMor kan_counit(const FunctorData& f, const SetDiagram& y);   // f_! f* y -> y
DiagramMor kan_push_mor(const FunctorData& f, const DiagramMor& m); // f_! on morphisms
DiagramMor restrict_mor(const FunctorData& f, const DiagramMor& m); // f* on morphisms

bool is_discrete_opfibration(const FunctorData& f);
bool is_discrete_fibration(const FunctorData& f);
// Every comma (f / b) is nonempty and zigzag-connected.
bool is_initial_functor(const FunctorData& f);
// Every comma (b / f) is nonempty and zigzag-connected.
bool is_final_functor(const FunctorData& f);

struct CatElements {
  CatRef total;
  FunctorData projection;
};

// The comprehension scheme on finite categories whose fibre over A is
// covariant Set-valued diagrams on A. Coverings come out as discrete
// opfibrations and connected maps as initial functors.
struct CopresheafScheme {
  using Object = CatRef;
  using Map = FunctorData;
  using Obj = SetDiagram;
  using Mor = DiagramMor;

  Object dom(const Map& f) const { return f.dom; }
  Object cod(const Map& f) const { return f.cod; }
  bool object_equal(const Object& a, const Object& b) const { return same_category(a, b); }
  Map compose(const Map& g, const Map& f) const { return compose_functors(g, f); }
  Map identity(const Object& a) const { return identity_functor(a); }
  bool map_equal(const Map& a, const Map& b) const { return functor_equal(a, b); }
  std::optional<Map> invert(const Map& f) const { return invert_functor(f); }
  EnumStatus for_each_map(const Object& a, const Object& b, std::int64_t budget,
                          const std::function<bool(const Map&)>& visit) const {
    return for_each_functor(a, b, budget, visit);
  }

  Obj terminal(const Object& a) const { return terminal_diagram(a); }
  bool obj_equal(const Obj& x, const Obj& y) const { return diagram_equal(x, y); }
  Obj push(const Map& f, const Obj& x) const { return left_kan(f, x).pushed; }
  Obj pull(const Map& f, const Obj& y) const { return restrict_diagram(f, y); }
  Mor push_mor(const Map& f, const Mor& m) const { return kan_push_mor(f, m); }
  Mor pull_mor(const Map& f, const Mor& m) const { return restrict_mor(f, m); }
  Mor adjunction_unit(const Map& f, const Obj& x) const { return kan_unit(left_kan(f, x)); }
  Mor adjunction_counit(const Map& f, const Obj& y) const { return kan_counit(f, y); }

  CatElements elements(const Obj& x) const;
  // The lift A -> el(x) over h: A -> base(x) classified by a global point of h*x.
  Map lift(const Map& h, const Obj& x, const Mor& point) const;
  // Inverse direction: recover the classifying point from a lift.
  Mor point_of_lift(const Map& h, const Obj& x, const Map& lifting) const;

  std::vector<Mor> hom(const Obj& x, const Obj& y) const { return hom_diagrams(x, y); }
  Mor compose_mor(const Mor& g, const Mor& f) const { return compose_mors(g, f); }
  Mor id_mor(const Obj& x) const { return identity_mor(x); }
  bool mor_equal(const Mor& a, const Mor& b) const { return diagram_mor_equal(a, b); }
  std::optional<Mor> mor_invert(const Mor& m) const { return invert_mor(m); }
  DiagramProduct product(const Obj& x, const Obj& y) const { return product_diagram(x, y); }
  Mor pairing(const Mor& u, const Mor& v) const { return pair_mor(u, v); }
};

// The dual scheme: fibres are contravariant diagrams, pushforward is computed
// by double dualisation through the covariant machinery over the opposite
// base. Coverings are discrete fibrations, connected maps final functors.
struct PresheafScheme {
  using Object = CatRef;
  using Map = FunctorData;
  using Obj = SetDiagram;
  using Mor = DiagramMor;

  Object dom(const Map& f) const { return f.dom; }
  Object cod(const Map& f) const { return f.cod; }
  bool object_equal(const Object& a, const Object& b) const { return same_category(a, b); }
  Map compose(const Map& g, const Map& f) const { return compose_functors(g, f); }
  Map identity(const Object& a) const { return identity_functor(a); }
  bool map_equal(const Map& a, const Map& b) const { return functor_equal(a, b); }
  std::optional<Map> invert(const Map& f) const { return invert_functor(f); }
  EnumStatus for_each_map(const Object& a, const Object& b, std::int64_t budget,
                          const std::function<bool(const Map&)>& visit) const {
    return for_each_functor(a, b, budget, visit);
  }

  Obj terminal(const Object& a) const;
  bool obj_equal(const Obj& x, const Obj& y) const { return diagram_equal(x, y); }
  Obj push(const Map& f, const Obj& x) const;
  Obj pull(const Map& f, const Obj& y) const { return restrict_diagram(f, y); }
  Mor push_mor(const Map& f, const Mor& m) const;
  Mor pull_mor(const Map& f, const Mor& m) const { return restrict_mor(f, m); }
  Mor adjunction_unit(const Map& f, const Obj& x) const;
  Mor adjunction_counit(const Map& f, const Obj& y) const;

  CatElements elements(const Obj& x) const;
  Map lift(const Map& h, const Obj& x, const Mor& point) const;
  Mor point_of_lift(const Map& h, const Obj& x, const Map& lifting) const;

  std::vector<Mor> hom(const Obj& x, const Obj& y) const { return hom_diagrams(x, y); }
  Mor compose_mor(const Mor& g, const Mor& f) const { return compose_mors(g, f); }
  Mor id_mor(const Obj& x) const { return identity_mor(x); }
  bool mor_equal(const Mor& a, const Mor& b) const { return diagram_mor_equal(a, b); }
  std::optional<Mor> mor_invert(const Mor& m) const { return invert_mor(m); }
  DiagramProduct product(const Obj& x, const Obj& y) const { return product_diagram(x, y); }
  Mor pairing(const Mor& u, const Mor& v) const { return pair_mor(u, v); }
};

}  // namespace cofact
