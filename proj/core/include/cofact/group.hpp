#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cofact/category.hpp"

namespace cofact {

// A finite group as a multiplication table. Element 0..order-1, mul[a][b] = a·b.
struct FinGroup {
  int order = 0;
  std::vector<std::vector<int>> mul;
  int unit = 0;
  std::vector<int> inverse;
};

std::vector<std::string> validate_group(const FinGroup& g);
bool group_ok(const FinGroup& g);
// Fills the inverse table; throws if the axioms fail.
FinGroup make_group(std::vector<std::vector<int>> mul, int unit);

FinGroup trivial_group();
FinGroup cyclic_group(int n);
FinGroup klein_four();
FinGroup sym3();
FinGroup group_product(const FinGroup& a, const FinGroup& b);

// First isomorphism witness (element relabelling) in lexicographic order.
std::optional<std::vector<int>> group_iso(const FinGroup& a, const FinGroup& b);

// One-object category whose morphisms are the group elements, ids preserved.
FinCategory delooping(const FinGroup& g);

// A left action of `group` on {0..size-1}: act[g] is the permutation of g.
struct GSet {
  FinGroup group;
  int size = 0;
  std::vector<std::vector<int>> act;
};

std::vector<std::string> validate_gset(const GSet& x);
bool gset_ok(const GSet& x);
GSet trivial_gset(const FinGroup& g, int size);
GSet regular_gset(const FinGroup& g);

// Orbits as sorted blocks, ordered by least member.
std::vector<std::vector<int>> gset_orbits(const GSet& x);
// First equivariant bijection in lexicographic order, if any; the sorted
// orbit-size multiset is used as a fast pre-filter.
std::optional<std::vector<int>> gset_iso(const GSet& x, const GSet& y);
// All equivariant maps x -> y, lexicographic.
std::vector<std::vector<int>> equivariant_maps(const GSet& x, const GSet& y);

// All actions of g on sets of size ≤ max_size, one representative per
// isomorphism class, in deterministic order (size, then table order).
std::vector<GSet> enumerate_gsets(const FinGroup& g, int max_size);

// The invertible endomorphisms of an object, multiplied in diagrammatic
// order: mul[i][j] realises "first morphisms[i], then morphisms[j]".
struct VertexGroup {
  FinGroup group;
  std::vector<int> morphisms;  // morphism ids, ascending
};

VertexGroup vertex_group_at(const FinCategory& c, int obj);

}  // namespace cofact
