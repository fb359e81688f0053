#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cofact/category.hpp"
#include "cofact/diagram.hpp"
#include "cofact/functor.hpp"

namespace cofact {

// Composite exists only beyond the declared support of the multicategory.
inline constexpr int kTruncatedComposite = -2;

struct MultiProfile {
  std::vector<int> sources;  // colour per input slot
  int target = 0;

  bool operator==(const MultiProfile&) const = default;
};

// A finitely supported symmetric multicategory. Multimorphisms are listed
// explicitly; composition is a sparse substitution table where a missing or
// kTruncatedComposite entry means the composite falls outside the support.
// Symmetric actions are stored per adjacent transposition of the sources.
struct FinMulticategory {
  int colours = 0;
  std::vector<MultiProfile> profile;  // per multimorphism
  std::vector<int> unit;              // per colour: id of the unit (c; c)
  // (f, slot i, g) -> f with g substituted into slot i.
  std::map<std::tuple<int, int, int>, int> comp;
  // sym[f][j]: f with source slots j and j+1 exchanged (arity-1 entries).
  std::vector<std::vector<int>> sym;

  int morphisms() const { return static_cast<int>(profile.size()); }
  int arity(int f) const { return static_cast<int>(profile[f].sources.size()); }
};

using MulticatRef = std::shared_ptr<const FinMulticategory>;

// Wraps the data after filling in the forced unit-composition entries.
MulticatRef make_multicat(FinMulticategory m);

std::vector<std::string> validate_multicat(const FinMulticategory& o);
bool multicat_ok(const FinMulticategory& o);
bool multicat_equal(const FinMulticategory& a, const FinMulticategory& b);

bool composable_multi(const FinMulticategory& o, int f, int i, int g);
// nullopt when the composite is truncated away; throws std::invalid_argument
// when the profiles do not even match.
std::optional<int> compose_multi(const FinMulticategory& o, int f, int i, int g);
// The source word of f ∘_i g.
std::vector<int> spliced_sources(const FinMulticategory& o, int f, int i, int g);
// f rearranged so that result slot p reads f's source order[p]; realised as a
// chain of the stored adjacent transpositions.
int apply_perm(const FinMulticategory& o, int f, const std::vector<int>& order);

// Mixed-radix helpers for tuples drawn from sets of the given sizes; the
// first coordinate is the most significant digit.
int tuple_count(const std::vector<int>& sizes);
int index_of_tuple(const std::vector<int>& sizes, const std::vector<int>& tuple);
std::vector<int> tuple_of_index(const std::vector<int>& sizes, int index);

// An algebra: a finite set per colour, a table per multimorphism sending each
// source tuple (indexed mixed-radix) to an element of the target carrier.
struct MultiAlgebra {
  MulticatRef base;
  std::vector<int> carrier;
  std::vector<std::vector<int>> structure;
};

std::vector<std::string> validate_algebra(const MultiAlgebra& a);
bool algebra_ok(const MultiAlgebra& a);
bool algebra_equal(const MultiAlgebra& a, const MultiAlgebra& b);
MultiAlgebra terminal_algebra(const MulticatRef& o);

// Carrier maps commuting with every structure table.
struct AlgebraMor {
  std::vector<std::vector<int>> at;  // per colour
};

bool algebra_mor_ok(const MultiAlgebra& a, const MultiAlgebra& b, const AlgebraMor& m);
std::vector<AlgebraMor> enumerate_algebra_mors(const MultiAlgebra& a, const MultiAlgebra& b);
// All algebras with carriers of at most max_size elements, in table order.
std::vector<MultiAlgebra> enumerate_algebras(const MulticatRef& o, int max_size);

struct MultiFunctor {
  MulticatRef dom;
  MulticatRef cod;
  std::vector<int> colour_map;
  std::vector<int> mor_map;
};

std::vector<std::string> validate_multifunctor(const MultiFunctor& f);
bool multifunctor_ok(const MultiFunctor& f);
bool multifunctor_equal(const MultiFunctor& a, const MultiFunctor& b);
MultiFunctor identity_multifunctor(const MulticatRef& o);
MultiFunctor compose_multifunctors(const MultiFunctor& g, const MultiFunctor& f);

// Multicategory of elements of an algebra: colours are (colour, element)
// pairs, a multimorphism is a base multimorphism together with a source
// tuple, and the target element is the structure value on that tuple.
struct ElementsMulticat {
  MulticatRef cat;
  MultiFunctor projection;
  std::vector<std::pair<int, int>> colour_labels;    // (base colour, element)
  std::vector<std::pair<int, int>> morphism_labels;  // (base mor, tuple index)

  int colour_index(int base_colour, int element) const;
  int morphism_index(int base_mor, int tuple_index) const;

  std::map<std::pair<int, int>, int> colour_lookup;
  std::map<std::pair<int, int>, int> morphism_lookup;
};

ElementsMulticat elements_multicat(const MultiAlgebra& a);

// Every base multimorphism has exactly one lift through p for each choice of
// source colours over its source word.
bool is_multicovering(const MultiFunctor& p);

// Pushforward of the terminal algebra: the carrier at a target colour c is
// the set of zigzag components of pairs (source word w over the domain,
// multimorphism F(w) -> c of the codomain), glued along substitutions and
// transpositions. `truncated` reports that some gluing edge or structure
// composite left the declared support, making the result approximate.
struct PushforwardResult {
  MultiAlgebra algebra;
  bool truncated = false;
};

PushforwardResult multifunctor_pushforward_terminal(const MultiFunctor& f);

bool all_singleton(const MultiAlgebra& a);

// Factorisation through the elements of the pushforward of the terminal
// algebra: connected_part then covering_part recompose to the input.
struct MultiFactorisation {
  MultiFunctor connected_part;
  MultiFunctor covering_part;
  MultiAlgebra classifying;
  bool truncated = false;
};

MultiFactorisation factorise_multi(const MultiFunctor& f);

// A morphism of tensor words: a reindexing map phi together with one
// multimorphism per target letter, drawn from the sources lying over it.
struct FOMorphism {
  std::vector<int> phi;         // source position -> target position
  std::vector<int> components;  // per target position

  bool operator==(const FOMorphism&) const = default;
};

std::vector<FOMorphism> fo_hom(const FinMulticategory& o, const std::vector<int>& v,
                               const std::vector<int>& w);
FOMorphism fo_identity(const FinMulticategory& o, const std::vector<int>& word);
// Substitution composite; nullopt when a required composite is truncated.
std::optional<FOMorphism> fo_compose(const FinMulticategory& o,
                                     const std::vector<int>& v,
                                     const std::vector<int>& w,
                                     const std::vector<int>& u,
                                     const FOMorphism& second,
                                     const FOMorphism& first);

// Unary-only translations. category_of_multicat and functor_of_multifunctor
// throw std::invalid_argument when an input has a slot count other than one
// or a truncated unary composite.
MulticatRef multicat_of_category(const CatRef& c);
CatRef category_of_multicat(const FinMulticategory& o);
MultiFunctor multifunctor_of_functor(const FunctorData& f);
FunctorData functor_of_multifunctor(const MultiFunctor& f);
MultiAlgebra algebra_of_diagram(const SetDiagram& x);
SetDiagram diagram_of_algebra(const MultiAlgebra& a, const CatRef& base);

}  // namespace cofact
