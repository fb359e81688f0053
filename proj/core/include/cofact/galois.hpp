#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cofact/cat_scheme.hpp"
#include "cofact/category.hpp"
#include "cofact/diagram.hpp"
#include "cofact/functor.hpp"
#include "cofact/group.hpp"

namespace cofact {

// Connected components realised as a discrete category with the quotient map.
struct Pi0Object {
  CatRef discrete;
  FunctorData quotient;
};

Pi0Object pi0_object(const CatRef& a);

// The quotient to components is invertible / has invertible codomain-to-point.
bool is_discrete_object(const CatRef& a);
bool is_connected_object(const CatRef& a);
// Restriction along the component quotient preserves binary coproducts of
// diagrams (checked strictly on a deterministic sample of diagram pairs).
bool is_locally_connected(const CatRef& a);

// A covering bundled with the diagram classifying it; `map` is always a
// discrete opfibration and the fibre over b is carrier(b) of `classifying`.
struct CoveringOver {
  FunctorData map;
  SetDiagram classifying;
};

// Certify an arbitrary functor; throws std::invalid_argument when it is not
// a discrete opfibration. The classifying diagram transports fibre objects
// (listed in ascending order) along unique lifts.
CoveringOver make_covering(const FunctorData& p);
// Package the elements projection of a diagram.
CoveringOver covering_of_diagram(const SetDiagram& x);

// The coslice alpha \ A with its projection, cut out as the elements of the
// diagram corepresented by alpha. Objects are labelled by the morphisms out
// of alpha; the basepoint is the object labelled by the identity.
struct UniversalCover {
  ElementsCategory elements;
  SetDiagram classifying;
  int base_object = 0;
  int basepoint = 0;
  std::vector<int> object_morphisms;  // total object -> morphism alpha -> b
};

UniversalCover universal_cover(const CatRef& a, int alpha);

// Automorphisms of the universal cover over the base. Element i is the
// functor precomposing labels with loops[i]; elements are ordered by the
// image of the basepoint, and mul[i][j] indexes elements[i] ∘ elements[j].
struct DeckGroup {
  FinGroup group;
  std::vector<FunctorData> elements;
  std::vector<int> loops;  // endomorphism of the base object per element
};

DeckGroup deck_transformations(const UniversalCover& u);

enum class Pi1Variant { Opfibred, Fibred };

// Fundamental group at a basepoint; the Fibred variant computes the dual
// group through the opposite category.
DeckGroup pi1_at(const CatRef& a, int alpha, Pi1Variant variant = Pi1Variant::Opfibred);

// The unique lift of the universal cover through a covering p sending the
// basepoint to based_total_object; nullopt when the forced assignment fails
// to produce such a lift (e.g. the chosen point sits over the wrong object).
std::optional<FunctorData> based_cover_lift(const UniversalCover& u,
                                            const FunctorData& p,
                                            int based_total_object);

// Fibre of a covering over the basepoint as a left deck-group set: element i
// transports along the unique lift of the inverse of loops[i]. Requires a
// groupoid base; throws std::invalid_argument otherwise.
GSet monodromy_fibre(const CoveringOver& p, int alpha, const DeckGroup& deck);

// Component-surjective part followed by a component-split inclusion; the
// middle category is the union of base components actually hit.
struct EpiMonoFactorisation {
  CoveringOver epi;
  CoveringOver mono;
};

EpiMonoFactorisation epi_mono_factorise(const CoveringOver& p);

// The action map Aut(xi) • E -> E ×_A E is invertible. Aut is taken as the
// invertible endomorphisms of the classifying diagram and E as its elements.
bool is_principal(const CoveringOver& xi);

// Quotient of (X-element, universal-cover object) pairs by the diagonal deck
// action, returned as a covering of the base. Requires a groupoid base.
CoveringOver borel(const GSet& x, const UniversalCover& u, const DeckGroup& deck);

// One representative diagram per isomorphism class of coverings whose fibres
// have at most max_fibre elements.
std::vector<SetDiagram> enumerate_covering_classes(const CatRef& a, int max_fibre);

// Double enumeration witnessing that coverings with bounded fibres match
// deck-group actions: equal class counts, borel hitting every covering class
// exactly once, monodromy ∘ borel ≅ id, and hom-set cardinalities agreeing.
struct GaloisReport {
  int gset_classes = 0;
  int covering_classes = 0;
  bool counts_equal = false;
  bool essentially_surjective = false;
  bool round_trips = false;
  bool fully_faithful = false;
  std::vector<std::string> failures;

  bool passed() const {
    return counts_equal && essentially_surjective && round_trips &&
           fully_faithful && failures.empty();
  }
};

GaloisReport galois_check(const CatRef& a, int alpha, int max_fibre);

}  // namespace cofact
