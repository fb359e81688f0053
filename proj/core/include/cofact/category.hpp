#pragma once

#include <memory>
#include <string>
#include <vector>

namespace cofact {

inline constexpr int kNone = -1;

// A finite category given by explicit tables. Objects are 0..objects-1,
// morphisms 0..morphisms()-1; comp[g][f] = g∘f and is kNone exactly when
// tgt(f) != src(g). Empty categories are legal values.
struct FinCategory {
  int objects = 0;
  std::vector<int> src;
  std::vector<int> tgt;
  std::vector<int> identity;            // per object
  std::vector<std::vector<int>> comp;   // comp[g][f]

  int morphisms() const { return static_cast<int>(src.size()); }
  bool composable(int g, int f) const { return tgt[f] == src[g]; }
  int compose(int g, int f) const;      // asserts composable
  bool is_identity(int m) const;
};

using CatRef = std::shared_ptr<const FinCategory>;

CatRef make_cat(FinCategory c);

// Exact table equality (object count, endpoint tables, identities, composition).
bool same_category(const FinCategory& a, const FinCategory& b);
bool same_category(const CatRef& a, const CatRef& b);

enum class CategoryAxiom {
  Shape,                  // table sizes/ranges broken
  CompositionTotality,    // composable pair missing, or non-composable pair filled
  CompositionEndpoints,   // g∘f has wrong source/target
  IdentityLaw,
  Associativity,
};

struct CategoryViolation {
  CategoryAxiom axiom;
  std::string detail;
};

// Lists every violated axiom with a human-readable locus; empty means valid.
// Associativity is checked by enumerating all composable triples.
std::vector<CategoryViolation> validate_category(const FinCategory& c);
bool category_ok(const FinCategory& c);
const char* axiom_name(CategoryAxiom a);

// Same object/morphism ids, src/tgt swapped, composition transposed. Involutive.
FinCategory opposite(const FinCategory& c);
CatRef opposite_cat(const CatRef& c);

struct Pi0 {
  std::vector<int> block_of;               // object -> block
  std::vector<std::vector<int>> blocks;    // each sorted; ordered by least member
  std::vector<int> representative;         // least object id per block
};

// Connected components of the underlying undirected graph (zigzag closure).
Pi0 pi0_category(const FinCategory& c);

bool is_groupoid(const FinCategory& c);
// Two-sided inverse per morphism, kNone where there is none.
std::vector<int> morphism_inverse_table(const FinCategory& c);

// Builders used by tests, corpora and the Galois module.
FinCategory terminal_category();
FinCategory discrete_category(int n);
FinCategory walking_arrow();                    // 0 -> 1
FinCategory walking_composable_pair();          // 0 -> 1 -> 2 with composite
FinCategory parallel_pair();                    // 0 ⇉ 1
FinCategory codiscrete_groupoid(int n);         // exactly one morphism in each hom-set
FinCategory monoid_category(const std::vector<std::vector<int>>& mul, int unit);
FinCategory disjoint_union(const FinCategory& a, const FinCategory& b);

// Full subcategory on the given (sorted, duplicate-free) object list.
FinCategory full_subcategory(const FinCategory& c, const std::vector<int>& objs,
                             std::vector<int>* mor_embedding = nullptr,
                             std::vector<int>* obj_embedding = nullptr);

}  // namespace cofact
