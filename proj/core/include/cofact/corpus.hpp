#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cofact/category.hpp"
#include "cofact/diagram.hpp"
#include "cofact/functor.hpp"
#include "cofact/multicat.hpp"
#include "cofact/set_scheme.hpp"

namespace cofact {

// Deterministic corpora of small instances shared by the property suites and
// the command-line corpus runner. Generation is pure given the options: the
// named seed families are fixed, the enumerated families come from a
// canonical-table search with hard caps, and anything thinned above a cap is
// sampled with a seeded generator.
struct CorpusOptions {
  int max_objects = 3;
  int max_morphisms = 8;
  int category_limit = 40;     // enumerated categories kept beyond the seeds
  int functor_pair_limit = 24; // functors kept per (domain, codomain) pair
  int pair_limit = 48;         // category pairs visited for functors
  int diagram_limit = 8;       // diagrams kept per base category
  int mapping_max_size = 4;    // set mappings between sizes 0..this
  std::uint32_t seed = 2026;
  std::int64_t budget = 2000000;  // enumeration budget per search
};

// Fixed single categories every corpus contains: the point, small shapes
// (arrow, composable pair, parallel pair, span, cospan, discretes, the
// two-object codiscrete groupoid, the walking idempotent) and the one-object
// groupoids of the groups of order at most six.
std::vector<CatRef> named_categories();

// Connected groupoids with at most the given number of morphisms, up to
// isomorphism (used with bound 6 by the classification checks).
std::vector<CatRef> connected_groupoids_upto(int max_morphisms);

// Isomorphism search on raw tables: object and morphism relabellings
// commuting with src/tgt, identities and composition.
std::optional<FunctorData> category_iso(const CatRef& a, const CatRef& b);

// Canonical-table enumeration of categories with at most the given numbers
// of objects and morphisms, deduplicated up to isomorphism; deterministic
// order, at most `limit` results beyond none (per-shape quotas keep the
// search shallow).
std::vector<CatRef> enumerate_small_categories(int max_objects, int max_morphisms,
                                               int limit);

// Seeds plus enumerated categories (iso-deduplicated against the seeds).
std::vector<CatRef> corpus_categories(const CorpusOptions& opt);

// Functors between seeded sample pairs of the given categories; always
// includes every identity. Deterministic for fixed options.
std::vector<FunctorData> corpus_functors(const std::vector<CatRef>& cats,
                                         const CorpusOptions& opt);

// Covariant diagrams on the base: the terminal, every representable, a few
// coproducts of representables, and seeded random lawful tables.
std::vector<SetDiagram> corpus_diagrams(const CatRef& base, const CorpusOptions& opt);

// Every mapping between sets of size 0..max_size.
std::vector<SetMapping> corpus_mappings(int max_size);

// Small multicategories: unit-only ones, the one-binary instance (its
// self-composites truncated), an associative total variant, a commutative
// monoid presentation up to arity three, and a two-colour mixed instance.
std::vector<MulticatRef> corpus_multicats();

// Multifunctors between the corpus multicategories (identities, unit
// inclusions, collapses, and unary ones induced by corpus functors).
std::vector<MultiFunctor> corpus_multifunctors(const CorpusOptions& opt);

// (category, basepoint) pairs covering every corpus category once per
// seeded choice of object; every named groupoid appears with object 0.
std::vector<std::pair<CatRef, int>> corpus_based_categories(const CorpusOptions& opt);

}  // namespace cofact
