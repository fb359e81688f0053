#include "cofact/functor.hpp"

#include <algorithm>
#include <stdexcept>

namespace cofact {

std::vector<std::string> validate_functor(const FunctorData& f) {
  std::vector<std::string> out;
  if (!f.dom || !f.cod) return {"missing domain or codomain"};
  const FinCategory& a = *f.dom;
  const FinCategory& b = *f.cod;
  if (static_cast<int>(f.obj_map.size()) != a.objects ||
      static_cast<int>(f.mor_map.size()) != a.morphisms())
    return {"map sizes disagree with the domain"};
  for (int o = 0; o < a.objects; ++o)
    if (f.obj_map[o] < 0 || f.obj_map[o] >= b.objects) return {"object image out of range"};
  for (int m = 0; m < a.morphisms(); ++m) {
    const int fm = f.mor_map[m];
    if (fm < 0 || fm >= b.morphisms()) return {"morphism image out of range"};
    if (b.src[fm] != f.obj_map[a.src[m]] || b.tgt[fm] != f.obj_map[a.tgt[m]])
      out.push_back("morphism " + std::to_string(m) + " has mismatched endpoints");
  }
  if (!out.empty()) return out;
  for (int o = 0; o < a.objects; ++o)
    if (f.mor_map[a.identity[o]] != b.identity[f.obj_map[o]])
      out.push_back("identity of object " + std::to_string(o) + " not preserved");
  for (int g = 0; g < a.morphisms(); ++g)
    for (int m = 0; m < a.morphisms(); ++m)
      if (a.composable(g, m) &&
          f.mor_map[a.comp[g][m]] != b.comp[f.mor_map[g]][f.mor_map[m]])
        out.push_back("composition (" + std::to_string(g) + "," + std::to_string(m) +
                      ") not preserved");
  return out;
}

bool functor_ok(const FunctorData& f) { return validate_functor(f).empty(); }

FunctorData identity_functor(const CatRef& c) {
  FunctorData f;
  f.dom = f.cod = c;
  f.obj_map.resize(c->objects);
  f.mor_map.resize(c->morphisms());
  for (int o = 0; o < c->objects; ++o) f.obj_map[o] = o;
  for (int m = 0; m < c->morphisms(); ++m) f.mor_map[m] = m;
  return f;
}

FunctorData compose_functors(const FunctorData& g, const FunctorData& f) {
  if (!same_category(f.cod, g.dom))
    throw std::invalid_argument("compose_functors: middle categories disagree");
  FunctorData h;
  h.dom = f.dom;
  h.cod = g.cod;
  h.obj_map.resize(f.obj_map.size());
  h.mor_map.resize(f.mor_map.size());
  for (size_t o = 0; o < f.obj_map.size(); ++o) h.obj_map[o] = g.obj_map[f.obj_map[o]];
  for (size_t m = 0; m < f.mor_map.size(); ++m) h.mor_map[m] = g.mor_map[f.mor_map[m]];
  return h;
}

bool functor_equal(const FunctorData& a, const FunctorData& b) {
  return a.obj_map == b.obj_map && a.mor_map == b.mor_map &&
         same_category(a.dom, b.dom) && same_category(a.cod, b.cod);
}

std::optional<FunctorData> invert_functor(const FunctorData& f) {
  const FinCategory& a = *f.dom;
  const FinCategory& b = *f.cod;
  if (a.objects != b.objects || a.morphisms() != b.morphisms()) return std::nullopt;
  FunctorData inv;
  inv.dom = f.cod;
  inv.cod = f.dom;
  inv.obj_map.assign(b.objects, kNone);
  inv.mor_map.assign(b.morphisms(), kNone);
  for (int o = 0; o < a.objects; ++o) {
    if (inv.obj_map[f.obj_map[o]] != kNone) return std::nullopt;
    inv.obj_map[f.obj_map[o]] = o;
  }
  for (int m = 0; m < a.morphisms(); ++m) {
    if (inv.mor_map[f.mor_map[m]] != kNone) return std::nullopt;
    inv.mor_map[f.mor_map[m]] = m;
  }
  // A bijective functor's inverse is automatically a functor.
  return inv;
}

FunctorData constant_functor(const CatRef& a, const CatRef& b, int obj) {
  FunctorData f;
  f.dom = a;
  f.cod = b;
  f.obj_map.assign(a->objects, obj);
  f.mor_map.assign(a->morphisms(), b->identity[obj]);
  return f;
}

FunctorData pick_object(const CatRef& b, int obj) {
  static const CatRef point = make_cat(terminal_category());
  return constant_functor(point, b, obj);
}

FunctorData opposite_functor(const FunctorData& f) {
  FunctorData g = f;
  g.dom = opposite_cat(f.dom);
  g.cod = opposite_cat(f.cod);
  return g;
}

namespace {

struct FunctorSearch {
  const FinCategory& a;
  const FinCategory& b;
  CatRef aref, bref;
  std::int64_t budget;
  std::int64_t nodes = 0;
  const std::function<bool(const FunctorData&)>& visit;
  EnumStatus status = EnumStatus::Complete;

  std::vector<int> obj_map;
  std::vector<int> mor_map;
  std::vector<int> work;       // non-identity morphisms of a, in id order
  // hom_of[x][y]: morphisms of b from x to y, in id order
  std::vector<std::vector<std::vector<int>>> hom_of;
  // factor pairs by composite: pairs_into[r] lists (g, f) with g.f = r
  std::vector<std::vector<std::pair<int, int>>> pairs_into;

  FunctorSearch(const CatRef& ar, const CatRef& br, std::int64_t bud,
                const std::function<bool(const FunctorData&)>& v)
      : a(*ar), b(*br), aref(ar), bref(br), budget(bud), visit(v) {
    for (int m = 0; m < a.morphisms(); ++m)
      if (!a.is_identity(m)) work.push_back(m);
    hom_of.assign(b.objects, std::vector<std::vector<int>>(b.objects));
    for (int m = 0; m < b.morphisms(); ++m) hom_of[b.src[m]][b.tgt[m]].push_back(m);
    pairs_into.resize(a.morphisms());
    for (int g = 0; g < a.morphisms(); ++g)
      for (int f = 0; f < a.morphisms(); ++f)
        if (a.composable(g, f)) pairs_into[a.comp[g][f]].emplace_back(g, f);
  }

  bool consistent_with(int m) const {
    // Check every composition equation whose three morphisms are all
    // assigned and involve m: m as either factor, and m as the composite.
    for (int g = 0; g < a.morphisms(); ++g) {
      if (mor_map[g] == kNone) continue;
      if (a.composable(g, m)) {
        const int r = a.comp[g][m];
        if (mor_map[r] != kNone && mor_map[r] != b.comp[mor_map[g]][mor_map[m]]) return false;
      }
      if (a.composable(m, g)) {
        const int r = a.comp[m][g];
        if (mor_map[r] != kNone && mor_map[r] != b.comp[mor_map[m]][mor_map[g]]) return false;
      }
    }
    for (const auto& [g, f] : pairs_into[m]) {
      if (mor_map[g] == kNone || mor_map[f] == kNone) continue;
      if (b.comp[mor_map[g]][mor_map[f]] != mor_map[m]) return false;
    }
    return true;
  }

  // One unit of search work; false aborts the whole search.
  bool charge() {
    if (nodes >= budget) {
      status = EnumStatus::Overflow;
      return false;
    }
    ++nodes;
    return true;
  }

  // Returns false to abort the whole search.
  bool emit() {
    if (!charge()) return false;
    FunctorData f;
    f.dom = aref;
    f.cod = bref;
    f.obj_map = obj_map;
    f.mor_map = mor_map;
    if (!visit(f)) {
      status = EnumStatus::Stopped;
      return false;
    }
    return true;
  }

  bool assign_morphisms(size_t k) {
    if (k == work.size()) return emit();
    const int m = work[k];
    for (int cand : hom_of[obj_map[a.src[m]]][obj_map[a.tgt[m]]]) {
      if (!charge()) return false;
      mor_map[m] = cand;
      if (consistent_with(m)) {
        if (!assign_morphisms(k + 1)) return false;
      }
      mor_map[m] = kNone;
    }
    return true;
  }

  bool assign_objects(int o) {
    if (o == a.objects) {
      for (int x = 0; x < a.objects; ++x) mor_map[a.identity[x]] = b.identity[obj_map[x]];
      const bool go_on = assign_morphisms(0);
      for (int x = 0; x < a.objects; ++x) mor_map[a.identity[x]] = kNone;
      return go_on;
    }
    for (int img = 0; img < b.objects; ++img) {
      if (!charge()) return false;
      obj_map[o] = img;
      if (!assign_objects(o + 1)) return false;
      obj_map[o] = kNone;
    }
    return true;
  }

  void run() {
    obj_map.assign(a.objects, kNone);
    mor_map.assign(a.morphisms(), kNone);
    assign_objects(0);
  }
};

}  // namespace

EnumStatus for_each_functor(const CatRef& a, const CatRef& b, std::int64_t budget,
                            const std::function<bool(const FunctorData&)>& visit) {
  FunctorSearch search(a, b, budget, visit);
  search.run();
  return search.status;
}

FunctorEnumeration enumerate_functors(const CatRef& a, const CatRef& b, std::int64_t budget) {
  FunctorEnumeration out;
  const EnumStatus st = for_each_functor(a, b, budget, [&](const FunctorData& f) {
    out.items.push_back(f);
    return true;
  });
  out.overflow = (st == EnumStatus::Overflow);
  return out;
}

}  // namespace cofact
