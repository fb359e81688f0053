#include "cofact/category.hpp"

#include <cassert>
#include <stdexcept>

#include "cofact/union_find.hpp"

namespace cofact {

int FinCategory::compose(int g, int f) const {
  assert(g >= 0 && g < morphisms() && f >= 0 && f < morphisms());
  assert(composable(g, f));
  const int r = comp[g][f];
  assert(r != kNone);
  return r;
}

bool FinCategory::is_identity(int m) const {
  const int s = src[m];
  return identity[s] == m;
}

CatRef make_cat(FinCategory c) { return std::make_shared<const FinCategory>(std::move(c)); }

bool same_category(const FinCategory& a, const FinCategory& b) {
  return a.objects == b.objects && a.src == b.src && a.tgt == b.tgt &&
         a.identity == b.identity && a.comp == b.comp;
}

bool same_category(const CatRef& a, const CatRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return same_category(*a, *b);
}

const char* axiom_name(CategoryAxiom a) {
  switch (a) {
    case CategoryAxiom::Shape: return "shape";
    case CategoryAxiom::CompositionTotality: return "composition-totality";
    case CategoryAxiom::CompositionEndpoints: return "composition-endpoints";
    case CategoryAxiom::IdentityLaw: return "identity-law";
    case CategoryAxiom::Associativity: return "associativity";
  }
  return "?";
}

std::vector<CategoryViolation> validate_category(const FinCategory& c) {
  std::vector<CategoryViolation> out;
  const int n = c.objects;
  const int m = c.morphisms();
  auto bad = [&](CategoryAxiom a, std::string d) { out.push_back({a, std::move(d)}); };

  if (n < 0 || static_cast<int>(c.tgt.size()) != m ||
      static_cast<int>(c.identity.size()) != n ||
      static_cast<int>(c.comp.size()) != m) {
    bad(CategoryAxiom::Shape, "table sizes disagree");
    return out;  // nothing else is meaningful
  }
  for (const auto& row : c.comp)
    if (static_cast<int>(row.size()) != m) {
      bad(CategoryAxiom::Shape, "composition table is not square");
      return out;
    }
  for (int i = 0; i < m; ++i)
    if (c.src[i] < 0 || c.src[i] >= n || c.tgt[i] < 0 || c.tgt[i] >= n) {
      bad(CategoryAxiom::Shape, "morphism " + std::to_string(i) + " has out-of-range endpoints");
      return out;
    }
  for (int a = 0; a < n; ++a) {
    const int e = c.identity[a];
    if (e < 0 || e >= m || c.src[e] != a || c.tgt[e] != a) {
      bad(CategoryAxiom::Shape, "identity of object " + std::to_string(a) + " is not an endomorphism");
      return out;
    }
  }

  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) {
      const int r = c.comp[g][f];
      if (c.composable(g, f)) {
        if (r == kNone) {
          bad(CategoryAxiom::CompositionTotality,
              "composable pair (" + std::to_string(g) + "," + std::to_string(f) + ") undefined");
        } else if (r < 0 || r >= m) {
          bad(CategoryAxiom::Shape, "composite out of range");
        } else if (c.src[r] != c.src[f] || c.tgt[r] != c.tgt[g]) {
          bad(CategoryAxiom::CompositionEndpoints,
              "composite of (" + std::to_string(g) + "," + std::to_string(f) + ") has wrong endpoints");
        }
      } else if (r != kNone) {
        bad(CategoryAxiom::CompositionTotality,
            "non-composable pair (" + std::to_string(g) + "," + std::to_string(f) + ") is filled");
      }
    }
  if (!out.empty()) return out;

  for (int f = 0; f < m; ++f) {
    if (c.comp[c.identity[c.tgt[f]]][f] != f)
      bad(CategoryAxiom::IdentityLaw, "id∘" + std::to_string(f) + " != " + std::to_string(f));
    if (c.comp[f][c.identity[c.src[f]]] != f)
      bad(CategoryAxiom::IdentityLaw, std::to_string(f) + "∘id != " + std::to_string(f));
  }

  for (int h = 0; h < m; ++h)
    for (int g = 0; g < m; ++g) {
      if (!c.composable(h, g)) continue;
      const int hg = c.comp[h][g];
      for (int f = 0; f < m; ++f) {
        if (!c.composable(g, f)) continue;
        if (c.comp[h][c.comp[g][f]] != c.comp[hg][f])
          bad(CategoryAxiom::Associativity,
              "(" + std::to_string(h) + "∘" + std::to_string(g) + ")∘" + std::to_string(f) +
                  " differs from " + std::to_string(h) + "∘(" + std::to_string(g) + "∘" +
                  std::to_string(f) + ")");
      }
    }
  return out;
}

bool category_ok(const FinCategory& c) { return validate_category(c).empty(); }

FinCategory opposite(const FinCategory& c) {
  FinCategory o;
  o.objects = c.objects;
  o.src = c.tgt;
  o.tgt = c.src;
  o.identity = c.identity;
  const int m = c.morphisms();
  o.comp.assign(m, std::vector<int>(m, kNone));
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f)
      if (c.comp[g][f] != kNone) o.comp[f][g] = c.comp[g][f];
  return o;
}

CatRef opposite_cat(const CatRef& c) { return make_cat(opposite(*c)); }

Pi0 pi0_category(const FinCategory& c) {
  UnionFind uf(c.objects);
  for (int m = 0; m < c.morphisms(); ++m) uf.unite(c.src[m], c.tgt[m]);
  Pi0 out;
  out.blocks = uf.blocks(&out.block_of);
  out.representative.reserve(out.blocks.size());
  for (const auto& b : out.blocks) out.representative.push_back(b.front());
  return out;
}

std::vector<int> morphism_inverse_table(const FinCategory& c) {
  const int m = c.morphisms();
  std::vector<int> inv(m, kNone);
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      if (!c.composable(g, f) || !c.composable(f, g)) continue;
      if (c.comp[g][f] == c.identity[c.src[f]] && c.comp[f][g] == c.identity[c.src[g]]) {
        inv[f] = g;
        break;
      }
    }
  return inv;
}

bool is_groupoid(const FinCategory& c) {
  const auto inv = morphism_inverse_table(c);
  for (int f = 0; f < c.morphisms(); ++f)
    if (inv[f] == kNone) return false;
  return true;
}

FinCategory terminal_category() { return discrete_category(1); }

FinCategory discrete_category(int n) {
  FinCategory c;
  c.objects = n;
  c.src.resize(n);
  c.tgt.resize(n);
  c.identity.resize(n);
  for (int i = 0; i < n; ++i) {
    c.src[i] = c.tgt[i] = i;
    c.identity[i] = i;
  }
  c.comp.assign(n, std::vector<int>(n, kNone));
  for (int i = 0; i < n; ++i) c.comp[i][i] = i;
  return c;
}

namespace {

// Fill the composition table of a category whose non-identity structure is
// given by a partial closure function; used by the small builders.
void seal_identities(FinCategory& c) {
  const int m = c.morphisms();
  for (int f = 0; f < m; ++f) {
    c.comp[c.identity[c.tgt[f]]][f] = f;
    c.comp[f][c.identity[c.src[f]]] = f;
  }
}

}  // namespace

FinCategory walking_arrow() {
  FinCategory c;
  c.objects = 2;
  c.src = {0, 1, 0};
  c.tgt = {0, 1, 1};
  c.identity = {0, 1};
  c.comp.assign(3, std::vector<int>(3, kNone));
  seal_identities(c);
  return c;
}

FinCategory walking_composable_pair() {
  FinCategory c;
  c.objects = 3;
  // 0,1,2 identities; 3: 0->1, 4: 1->2, 5: 0->2
  c.src = {0, 1, 2, 0, 1, 0};
  c.tgt = {0, 1, 2, 1, 2, 2};
  c.identity = {0, 1, 2};
  c.comp.assign(6, std::vector<int>(6, kNone));
  seal_identities(c);
  c.comp[4][3] = 5;
  return c;
}

FinCategory parallel_pair() {
  FinCategory c;
  c.objects = 2;
  c.src = {0, 1, 0, 0};
  c.tgt = {0, 1, 1, 1};
  c.identity = {0, 1};
  c.comp.assign(4, std::vector<int>(4, kNone));
  seal_identities(c);
  return c;
}

FinCategory codiscrete_groupoid(int n) {
  FinCategory c;
  c.objects = n;
  c.src.resize(n * n);
  c.tgt.resize(n * n);
  c.identity.resize(n);
  auto id_of = [n](int a, int b) { return a * n + b; };  // morphism a -> b
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      c.src[id_of(a, b)] = a;
      c.tgt[id_of(a, b)] = b;
    }
  for (int a = 0; a < n; ++a) c.identity[a] = id_of(a, a);
  c.comp.assign(n * n, std::vector<int>(n * n, kNone));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) c.comp[id_of(b, d)][id_of(a, b)] = id_of(a, d);
  return c;
}

FinCategory monoid_category(const std::vector<std::vector<int>>& mul, int unit) {
  const int m = static_cast<int>(mul.size());
  FinCategory c;
  c.objects = 1;
  c.src.assign(m, 0);
  c.tgt.assign(m, 0);
  c.identity = {unit};
  c.comp = mul;
  if (!category_ok(c)) throw std::invalid_argument("monoid_category: table is not a monoid");
  return c;
}

FinCategory disjoint_union(const FinCategory& a, const FinCategory& b) {
  FinCategory c;
  c.objects = a.objects + b.objects;
  const int ma = a.morphisms(), mb = b.morphisms();
  c.src.resize(ma + mb);
  c.tgt.resize(ma + mb);
  c.identity.resize(c.objects);
  for (int i = 0; i < ma; ++i) {
    c.src[i] = a.src[i];
    c.tgt[i] = a.tgt[i];
  }
  for (int i = 0; i < mb; ++i) {
    c.src[ma + i] = b.src[i] + a.objects;
    c.tgt[ma + i] = b.tgt[i] + a.objects;
  }
  for (int o = 0; o < a.objects; ++o) c.identity[o] = a.identity[o];
  for (int o = 0; o < b.objects; ++o) c.identity[a.objects + o] = b.identity[o] + ma;
  c.comp.assign(ma + mb, std::vector<int>(ma + mb, kNone));
  for (int g = 0; g < ma; ++g)
    for (int f = 0; f < ma; ++f) c.comp[g][f] = a.comp[g][f];
  for (int g = 0; g < mb; ++g)
    for (int f = 0; f < mb; ++f)
      if (b.comp[g][f] != kNone) c.comp[ma + g][ma + f] = b.comp[g][f] + ma;
  return c;
}

FinCategory full_subcategory(const FinCategory& c, const std::vector<int>& objs,
                             std::vector<int>* mor_embedding, std::vector<int>* obj_embedding) {
  std::vector<int> obj_index(c.objects, kNone);
  for (int i = 0; i < static_cast<int>(objs.size()); ++i) obj_index[objs[i]] = i;

  std::vector<int> keep;  // morphism ids of c, in id order
  std::vector<int> mor_index(c.morphisms(), kNone);
  for (int m = 0; m < c.morphisms(); ++m)
    if (obj_index[c.src[m]] != kNone && obj_index[c.tgt[m]] != kNone) {
      mor_index[m] = static_cast<int>(keep.size());
      keep.push_back(m);
    }

  FinCategory s;
  s.objects = static_cast<int>(objs.size());
  s.src.resize(keep.size());
  s.tgt.resize(keep.size());
  s.identity.resize(s.objects);
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) {
    s.src[i] = obj_index[c.src[keep[i]]];
    s.tgt[i] = obj_index[c.tgt[keep[i]]];
  }
  for (int i = 0; i < s.objects; ++i) s.identity[i] = mor_index[c.identity[objs[i]]];
  s.comp.assign(keep.size(), std::vector<int>(keep.size(), kNone));
  for (int g = 0; g < static_cast<int>(keep.size()); ++g)
    for (int f = 0; f < static_cast<int>(keep.size()); ++f)
      if (s.composable(g, f)) s.comp[g][f] = mor_index[c.comp[keep[g]][keep[f]]];
  if (mor_embedding) *mor_embedding = keep;
  if (obj_embedding) *obj_embedding = objs;
  return s;
}

}  // namespace cofact
