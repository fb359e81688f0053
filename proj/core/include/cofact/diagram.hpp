#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cofact/category.hpp"
#include "cofact/functor.hpp"

namespace cofact {

enum class Variance { Covariant, Contravariant };

// A finite Set-valued diagram on a base category. Carrier elements at each
// object are 0..carrier[o]-1. For covariant diagrams action[m] maps the
// carrier at src(m) to the carrier at tgt(m); contravariant ones go the
// other way.
struct SetDiagram {
  CatRef base;
  Variance variance = Variance::Covariant;
  std::vector<int> carrier;                  // per object
  std::vector<std::vector<int>> action;      // per morphism

  int action_src(int m) const {
    return variance == Variance::Covariant ? base->src[m] : base->tgt[m];
  }
  int action_tgt(int m) const {
    return variance == Variance::Covariant ? base->tgt[m] : base->src[m];
  }
};

std::vector<std::string> validate_diagram(const SetDiagram& x);
bool diagram_ok(const SetDiagram& x);
bool diagram_equal(const SetDiagram& x, const SetDiagram& y);

SetDiagram terminal_diagram(const CatRef& base);         // all singletons
SetDiagram initial_diagram(const CatRef& base);          // all empty
SetDiagram constant_diagram(const CatRef& base, int n);  // n elements, identity actions
SetDiagram representable_diagram(const CatRef& base, int a);  // covariant hom(a, -)

// Same tables read over the opposite base with flipped variance. Involutive.
SetDiagram dualise(const SetDiagram& x);

// Precomposition with f: carrier a = Y(f a), action m = Y(f m). Works for
// either variance of Y (f is covariant).
SetDiagram restrict_diagram(const FunctorData& f, const SetDiagram& y);

// A morphism of diagrams over a fixed base (a natural transformation when
// `natural` holds; validity of the tables alone is `shape_ok`).
struct DiagramMor {
  SetDiagram dom;
  SetDiagram cod;
  std::vector<std::vector<int>> at;  // at[object][element]
};

bool diagram_mor_shape_ok(const DiagramMor& m);
bool diagram_mor_natural(const DiagramMor& m);
bool diagram_mor_equal(const DiagramMor& a, const DiagramMor& b);
DiagramMor identity_mor(const SetDiagram& x);
DiagramMor compose_mors(const DiagramMor& g, const DiagramMor& f);
// Componentwise-bijective morphisms invert; empty otherwise.
std::optional<DiagramMor> invert_mor(const DiagramMor& m);

// All natural transformations x -> y over the same base, lexicographic in
// the component tables. Bases must agree as tables, variances match.
std::vector<DiagramMor> hom_diagrams(const SetDiagram& x, const SetDiagram& y);

// First natural isomorphism in the hom order, if any.
std::optional<DiagramMor> diagram_iso(const SetDiagram& x, const SetDiagram& y);

struct DiagramProduct {
  SetDiagram obj;
  DiagramMor pr1, pr2;
};
DiagramProduct product_diagram(const SetDiagram& x, const SetDiagram& y);
// Mediating map into the product given u: z -> x and v: z -> y.
DiagramMor pair_mor(const DiagramMor& u, const DiagramMor& v);

struct DiagramCoproduct {
  SetDiagram obj;
  DiagramMor in1, in2;
};
DiagramCoproduct coproduct_diagram(const SetDiagram& x, const SetDiagram& y);

}  // namespace cofact
