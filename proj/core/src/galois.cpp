#include "cofact/galois.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>

#include "cofact/union_find.hpp"

namespace cofact {

namespace {

// Unique-lift lookup for a discrete opfibration: (total object, base
// morphism out of its image) -> the total morphism lying over it.
std::map<std::pair<int, int>, int> lift_table(const FunctorData& p) {
  std::map<std::pair<int, int>, int> t;
  const auto& e = *p.dom;
  for (int m = 0; m < e.morphisms(); ++m) t[{e.src[m], p.mor_map[m]}] = m;
  return t;
}

SetDiagram diagram_over_discrete(const CatRef& d, const std::vector<int>& sizes) {
  SetDiagram x;
  x.base = d;
  x.variance = Variance::Covariant;
  x.carrier = sizes;
  x.action.resize(d->morphisms());
  for (int o = 0; o < d->objects; ++o) {
    std::vector<int> id(sizes[o]);
    for (int i = 0; i < sizes[o]; ++i) id[i] = i;
    x.action[d->identity[o]] = id;
  }
  return x;
}

}  // namespace

Pi0Object pi0_object(const CatRef& a) {
  const Pi0 p = pi0_category(*a);
  Pi0Object out;
  out.discrete = make_cat(discrete_category(static_cast<int>(p.blocks.size())));
  FunctorData q;
  q.dom = a;
  q.cod = out.discrete;
  q.obj_map = p.block_of;
  q.mor_map.resize(a->morphisms());
  for (int m = 0; m < a->morphisms(); ++m)
    q.mor_map[m] = out.discrete->identity[p.block_of[a->src[m]]];
  out.quotient = std::move(q);
  return out;
}

bool is_discrete_object(const CatRef& a) {
  return invert_functor(pi0_object(a).quotient).has_value();
}

bool is_connected_object(const CatRef& a) {
  return pi0_category(*a).blocks.size() == 1;
}

bool is_locally_connected(const CatRef& a) {
  const Pi0Object q = pi0_object(a);
  const int k = q.discrete->objects;
  // A deterministic sample of component-indexed families with entries ≤ 2.
  std::vector<SetDiagram> sample;
  std::vector<int> sizes(k, 0);
  while (static_cast<int>(sample.size()) < 9) {
    sample.push_back(diagram_over_discrete(q.discrete, sizes));
    int i = 0;
    while (i < k && sizes[i] == 2) sizes[i++] = 0;
    if (i == k) break;
    ++sizes[i];
  }
  for (const auto& x : sample) {
    for (const auto& y : sample) {
      const DiagramCoproduct below = coproduct_diagram(x, y);
      const DiagramCoproduct above =
          coproduct_diagram(restrict_diagram(q.quotient, x),
                            restrict_diagram(q.quotient, y));
      if (!diagram_equal(restrict_diagram(q.quotient, below.obj), above.obj))
        return false;
      if (!diagram_mor_equal(restrict_mor(q.quotient, below.in1), above.in1))
        return false;
      if (!diagram_mor_equal(restrict_mor(q.quotient, below.in2), above.in2))
        return false;
    }
  }
  return true;
}

CoveringOver make_covering(const FunctorData& p) {
  if (!is_discrete_opfibration(p))
    throw std::invalid_argument("make_covering: functor is not a covering");
  const auto& e = *p.dom;
  const auto& b = *p.cod;
  std::vector<std::vector<int>> fibre(b.objects);
  std::vector<int> pos(e.objects, -1);
  for (int t = 0; t < e.objects; ++t) {
    pos[t] = static_cast<int>(fibre[p.obj_map[t]].size());
    fibre[p.obj_map[t]].push_back(t);
  }
  const auto lifts = lift_table(p);
  SetDiagram x;
  x.base = p.cod;
  x.variance = Variance::Covariant;
  x.carrier.resize(b.objects);
  for (int o = 0; o < b.objects; ++o)
    x.carrier[o] = static_cast<int>(fibre[o].size());
  x.action.resize(b.morphisms());
  for (int m = 0; m < b.morphisms(); ++m) {
    const int s = b.src[m];
    std::vector<int> row(x.carrier[s]);
    for (int i = 0; i < x.carrier[s]; ++i)
      row[i] = pos[e.tgt[lifts.at({fibre[s][i], m})]];
    x.action[m] = std::move(row);
  }
  return {p, std::move(x)};
}

CoveringOver covering_of_diagram(const SetDiagram& x) {
  return {elements_cov(x).projection, x};
}

UniversalCover universal_cover(const CatRef& a, int alpha) {
  if (alpha < 0 || alpha >= a->objects)
    throw std::invalid_argument("universal_cover: basepoint out of range");
  const FunctorData pick = pick_object(a, alpha);
  const KanData kan = left_kan(pick, terminal_diagram(pick.dom));
  UniversalCover u;
  u.classifying = kan.pushed;
  u.elements = elements_cov(u.classifying);
  u.base_object = alpha;
  u.basepoint =
      u.elements.object_index(alpha, kan.class_of(alpha, 0, a->identity[alpha], 0));
  u.object_morphisms.assign(u.elements.object_labels.size(), kNone);
  for (int g = 0; g < a->morphisms(); ++g) {
    if (a->src[g] != alpha) continue;
    const int obj = u.elements.object_index(a->tgt[g], kan.class_of(a->tgt[g], 0, g, 0));
    if (u.object_morphisms[obj] == kNone) u.object_morphisms[obj] = g;
  }
  return u;
}

DeckGroup deck_transformations(const UniversalCover& u) {
  const FunctorData& proj = u.elements.projection;
  const FinCategory& total = *proj.dom;
  const auto lifts = lift_table(proj);

  std::vector<std::vector<int>> fibre(proj.cod->objects);
  for (int t = 0; t < total.objects; ++t) fibre[proj.obj_map[t]].push_back(t);

  // Endofunctors over the base are determined by a fibre-preserving object
  // assignment: morphism images are forced by unique lifting, and the forced
  // assignment is automatically functorial once targets agree.
  std::vector<FunctorData> autos;
  std::vector<int> obj(total.objects, kNone);
  std::function<void(int)> assign = [&](int o) {
    if (o == total.objects) {
      FunctorData f;
      f.dom = proj.dom;
      f.cod = proj.dom;
      f.obj_map = obj;
      f.mor_map.resize(total.morphisms());
      for (int m = 0; m < total.morphisms(); ++m)
        f.mor_map[m] = lifts.at({obj[total.src[m]], proj.mor_map[m]});
      if (invert_functor(f).has_value()) autos.push_back(std::move(f));
      return;
    }
    for (int cand : fibre[proj.obj_map[o]]) {
      obj[o] = cand;
      bool ok = true;
      for (int m = 0; m < total.morphisms() && ok; ++m) {
        const int s = total.src[m];
        const int t = total.tgt[m];
        if ((s == o && t <= o) || (t == o && s <= o))
          ok = total.tgt[lifts.at({obj[s], proj.mor_map[m]})] == obj[t];
      }
      if (ok) assign(o + 1);
      obj[o] = kNone;
    }
  };
  assign(0);

  std::sort(autos.begin(), autos.end(), [&](const FunctorData& f, const FunctorData& g) {
    return f.obj_map[u.basepoint] < g.obj_map[u.basepoint];
  });

  DeckGroup deck;
  deck.elements = std::move(autos);
  const int n = static_cast<int>(deck.elements.size());
  deck.loops.resize(n);
  for (int i = 0; i < n; ++i)
    deck.loops[i] = u.object_morphisms[deck.elements[i].obj_map[u.basepoint]];
  std::vector<std::vector<int>> mul(n, std::vector<int>(n, kNone));
  int unit = kNone;
  for (int i = 0; i < n; ++i) {
    if (functor_equal(deck.elements[i], identity_functor(proj.dom))) unit = i;
    for (int j = 0; j < n; ++j) {
      const FunctorData c = compose_functors(deck.elements[i], deck.elements[j]);
      for (int k = 0; k < n; ++k) {
        if (functor_equal(c, deck.elements[k])) {
          mul[i][j] = k;
          break;
        }
      }
      if (mul[i][j] == kNone)
        throw std::logic_error("deck_transformations: composite escaped the group");
    }
  }
  deck.group = make_group(std::move(mul), unit);
  return deck;
}

DeckGroup pi1_at(const CatRef& a, int alpha, Pi1Variant variant) {
  const CatRef base = variant == Pi1Variant::Opfibred ? a : opposite_cat(a);
  return deck_transformations(universal_cover(base, alpha));
}

std::optional<FunctorData> based_cover_lift(const UniversalCover& u,
                                            const FunctorData& p,
                                            int based_total_object) {
  if (!is_discrete_opfibration(p))
    throw std::invalid_argument("based_cover_lift: target map is not a covering");
  if (!same_category(p.cod, u.elements.projection.cod))
    throw std::invalid_argument("based_cover_lift: base categories differ");
  if (based_total_object < 0 || based_total_object >= p.dom->objects)
    return std::nullopt;
  if (p.obj_map[based_total_object] != u.base_object) return std::nullopt;

  const FunctorData& proj = u.elements.projection;
  const FinCategory& total = *proj.dom;
  const auto lifts = lift_table(p);

  std::vector<int> obj(total.objects, kNone);
  obj[u.basepoint] = based_total_object;
  // Every object of the cover is forward-reachable from the basepoint, so
  // repeated propagation along morphisms assigns all of them.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int m = 0; m < total.morphisms(); ++m) {
      const int s = total.src[m];
      const int t = total.tgt[m];
      if (obj[s] == kNone || obj[t] != kNone) continue;
      obj[t] = p.dom->tgt[lifts.at({obj[s], proj.mor_map[m]})];
      changed = true;
    }
  }
  for (int o = 0; o < total.objects; ++o)
    if (obj[o] == kNone) return std::nullopt;

  FunctorData f;
  f.dom = proj.dom;
  f.cod = p.dom;
  f.obj_map = obj;
  f.mor_map.resize(total.morphisms());
  for (int m = 0; m < total.morphisms(); ++m) {
    f.mor_map[m] = lifts.at({obj[total.src[m]], proj.mor_map[m]});
    if (p.dom->tgt[f.mor_map[m]] != obj[total.tgt[m]]) return std::nullopt;
  }
  return f;
}

GSet monodromy_fibre(const CoveringOver& p, int alpha, const DeckGroup& deck) {
  if (!is_groupoid(*p.map.cod))
    throw std::invalid_argument("monodromy_fibre: base must be a groupoid");
  const auto inverse = morphism_inverse_table(*p.map.cod);
  const auto lifts = lift_table(p.map);

  std::vector<int> fibre;
  std::vector<int> pos(p.map.dom->objects, -1);
  for (int t = 0; t < p.map.dom->objects; ++t) {
    if (p.map.obj_map[t] != alpha) continue;
    pos[t] = static_cast<int>(fibre.size());
    fibre.push_back(t);
  }

  GSet x;
  x.group = deck.group;
  x.size = static_cast<int>(fibre.size());
  x.act.assign(deck.group.order, std::vector<int>(x.size));
  // Element i transports along the inverse of its loop; inverting here is
  // what makes transport compose into a left action.
  for (int i = 0; i < deck.group.order; ++i) {
    const int h = inverse[deck.loops[i]];
    for (int j = 0; j < x.size; ++j)
      x.act[i][j] = pos[p.map.dom->tgt[lifts.at({fibre[j], h})]];
  }
  return x;
}

EpiMonoFactorisation epi_mono_factorise(const CoveringOver& p) {
  const CatRef b = p.map.cod;
  const Pi0 comp = pi0_category(*b);
  std::vector<char> hit(comp.blocks.size(), 0);
  for (int t = 0; t < p.map.dom->objects; ++t)
    hit[comp.block_of[p.map.obj_map[t]]] = 1;

  std::vector<int> objs;
  for (int o = 0; o < b->objects; ++o)
    if (hit[comp.block_of[o]]) objs.push_back(o);

  std::vector<int> mor_embedding, obj_embedding;
  const CatRef middle =
      make_cat(full_subcategory(*b, objs, &mor_embedding, &obj_embedding));

  FunctorData incl;
  incl.dom = middle;
  incl.cod = b;
  incl.obj_map = obj_embedding;
  incl.mor_map = mor_embedding;

  std::vector<int> obj_index(b->objects, kNone);
  for (int i = 0; i < static_cast<int>(objs.size()); ++i) obj_index[objs[i]] = i;
  std::vector<int> mor_index(b->morphisms(), kNone);
  for (int i = 0; i < static_cast<int>(mor_embedding.size()); ++i)
    mor_index[mor_embedding[i]] = i;

  FunctorData corestrict;
  corestrict.dom = p.map.dom;
  corestrict.cod = middle;
  corestrict.obj_map.resize(p.map.dom->objects);
  for (int t = 0; t < p.map.dom->objects; ++t)
    corestrict.obj_map[t] = obj_index[p.map.obj_map[t]];
  corestrict.mor_map.resize(p.map.dom->morphisms());
  for (int m = 0; m < p.map.dom->morphisms(); ++m)
    corestrict.mor_map[m] = mor_index[p.map.mor_map[m]];

  return {make_covering(corestrict), make_covering(incl)};
}

bool is_principal(const CoveringOver& xi) {
  const SetDiagram& x = xi.classifying;
  std::vector<DiagramMor> aut;
  for (const auto& m : hom_diagrams(x, x))
    if (invert_mor(m).has_value()) aut.push_back(m);

  const ElementsCategory total = elements_cov(x);
  const ElementsCategory square =
      elements_cov(restrict_diagram(total.projection, x));

  const int copies = static_cast<int>(aut.size());
  const int no = total.cat->objects;
  const int nm = total.cat->morphisms();
  FinCategory fold = *total.cat;
  for (int k = 1; k < copies; ++k) fold = disjoint_union(fold, *total.cat);
  const CatRef dom = make_cat(std::move(fold));

  // Copy k sends an element e to the pair (e, aut[k](e)).
  FunctorData action;
  action.dom = dom;
  action.cod = square.cat;
  action.obj_map.resize(dom->objects);
  action.mor_map.resize(dom->morphisms());
  for (int k = 0; k < copies; ++k) {
    for (int t = 0; t < no; ++t) {
      const auto [b, e] = total.object_labels[t];
      action.obj_map[k * no + t] = square.object_index(t, aut[k].at[b][e]);
    }
    for (int m = 0; m < nm; ++m) {
      const auto [b, e] = total.object_labels[total.cat->src[m]];
      action.mor_map[k * nm + m] = square.morphism_index(m, aut[k].at[b][e]);
    }
  }
  if (!validate_functor(action).empty())
    throw std::logic_error("is_principal: action map is not a functor");
  return invert_functor(action).has_value();
}

CoveringOver borel(const GSet& x, const UniversalCover& u, const DeckGroup& deck) {
  const CatRef a = u.elements.projection.cod;
  if (!is_groupoid(*a))
    throw std::invalid_argument("borel: base must be a groupoid");
  if (x.group.order != deck.group.order || x.group.mul != deck.group.mul ||
      x.group.unit != deck.group.unit)
    throw std::invalid_argument("borel: action group differs from the deck group");

  const FunctorData& proj = u.elements.projection;
  std::vector<std::vector<int>> fibre(a->objects);
  std::vector<int> pos(proj.dom->objects, -1);
  for (int t = 0; t < proj.dom->objects; ++t) {
    pos[t] = static_cast<int>(fibre[proj.obj_map[t]].size());
    fibre[proj.obj_map[t]].push_back(t);
  }
  const auto lifts = lift_table(proj);

  // Orbits of (x-element, cover object) pairs under the diagonal action.
  std::vector<std::vector<int>> orbit_of(a->objects);  // pair code -> orbit
  std::vector<int> carrier(a->objects);
  const auto code = [&](int b, int xe, int v) {
    return xe * static_cast<int>(fibre[b].size()) + v;
  };
  for (int b = 0; b < a->objects; ++b) {
    const int fb = static_cast<int>(fibre[b].size());
    UnionFind uf(x.size * fb);
    for (int i = 0; i < deck.group.order; ++i) {
      for (int xe = 0; xe < x.size; ++xe) {
        for (int v = 0; v < fb; ++v) {
          const int moved = pos[deck.elements[i].obj_map[fibre[b][v]]];
          uf.unite(code(b, xe, v), code(b, x.act[i][xe], moved));
        }
      }
    }
    const auto blocks = uf.blocks();
    carrier[b] = static_cast<int>(blocks.size());
    orbit_of[b].assign(x.size * fb, -1);
    for (int c = 0; c < carrier[b]; ++c)
      for (int member : blocks[c]) orbit_of[b][member] = c;
  }

  SetDiagram d;
  d.base = a;
  d.variance = Variance::Covariant;
  d.carrier = carrier;
  d.action.resize(a->morphisms());
  for (int m = 0; m < a->morphisms(); ++m) {
    const int s = a->src[m];
    const int t = a->tgt[m];
    std::vector<int> row(carrier[s], -1);
    for (int xe = 0; xe < x.size; ++xe) {
      for (int v = 0; v < static_cast<int>(fibre[s].size()); ++v) {
        const int moved = pos[proj.dom->tgt[lifts.at({fibre[s][v], m})]];
        row[orbit_of[s][code(s, xe, v)]] = orbit_of[t][code(t, xe, moved)];
      }
    }
    d.action[m] = std::move(row);
  }
  if (!validate_diagram(d).empty())
    throw std::logic_error("borel: quotient action is not well-defined");
  return covering_of_diagram(d);
}

namespace {

// The category of sets of size ≤ n and all functions, with decoding tables.
struct FinSetCategory {
  CatRef cat;
  std::vector<int> size_of_object;
  std::vector<std::vector<int>> table_of_morphism;
};

FinSetCategory finset_category(int n) {
  FinSetCategory out;
  out.size_of_object.resize(n + 1);
  for (int s = 0; s <= n; ++s) out.size_of_object[s] = s;

  FinCategory c;
  c.objects = n + 1;
  std::map<std::tuple<int, int, std::vector<int>>, int> index;
  for (int s = 0; s <= n; ++s) {
    for (int t = 0; t <= n; ++t) {
      if (s > 0 && t == 0) continue;
      std::vector<int> f(s, 0);
      while (true) {
        index[{s, t, f}] = static_cast<int>(out.table_of_morphism.size());
        out.table_of_morphism.push_back(f);
        c.src.push_back(s);
        c.tgt.push_back(t);
        int i = 0;
        while (i < s && f[i] == t - 1) f[i++] = 0;
        if (i == s) break;
        ++f[i];
      }
    }
  }
  const int m = static_cast<int>(c.src.size());
  c.identity.resize(c.objects);
  for (int s = 0; s <= n; ++s) {
    std::vector<int> id(s);
    for (int i = 0; i < s; ++i) id[i] = i;
    c.identity[s] = index.at({s, s, id});
  }
  c.comp.assign(m, std::vector<int>(m, kNone));
  for (int g = 0; g < m; ++g) {
    for (int f = 0; f < m; ++f) {
      if (c.tgt[f] != c.src[g]) continue;
      std::vector<int> comp(c.src[f]);
      for (int i = 0; i < c.src[f]; ++i)
        comp[i] = out.table_of_morphism[g][out.table_of_morphism[f][i]];
      c.comp[g][f] = index.at({c.src[f], c.tgt[g], comp});
    }
  }
  out.cat = make_cat(std::move(c));
  return out;
}

}  // namespace

std::vector<SetDiagram> enumerate_covering_classes(const CatRef& a, int max_fibre) {
  const FinSetCategory fs = finset_category(max_fibre);
  std::vector<SetDiagram> classes;
  const EnumStatus st =
      for_each_functor(a, fs.cat, 1'000'000'000, [&](const FunctorData& f) {
        SetDiagram d;
        d.base = a;
        d.variance = Variance::Covariant;
        d.carrier.resize(a->objects);
        for (int o = 0; o < a->objects; ++o)
          d.carrier[o] = fs.size_of_object[f.obj_map[o]];
        d.action.resize(a->morphisms());
        for (int m = 0; m < a->morphisms(); ++m)
          d.action[m] = fs.table_of_morphism[f.mor_map[m]];
        for (const auto& seen : classes)
          if (diagram_iso(seen, d).has_value()) return true;
        classes.push_back(std::move(d));
        return true;
      });
  if (st != EnumStatus::Complete)
    throw std::runtime_error("enumerate_covering_classes: enumeration overflowed");
  return classes;
}

GaloisReport galois_check(const CatRef& a, int alpha, int max_fibre) {
  if (!is_groupoid(*a))
    throw std::invalid_argument("galois_check: base must be a groupoid");
  const UniversalCover u = universal_cover(a, alpha);
  const DeckGroup deck = deck_transformations(u);
  const std::vector<GSet> gsets = enumerate_gsets(deck.group, max_fibre);
  const std::vector<SetDiagram> covers = enumerate_covering_classes(a, max_fibre);

  GaloisReport r;
  r.gset_classes = static_cast<int>(gsets.size());
  r.covering_classes = static_cast<int>(covers.size());
  r.counts_equal = r.gset_classes == r.covering_classes;
  if (!r.counts_equal)
    r.failures.push_back("class counts differ: " + std::to_string(r.gset_classes) +
                         " actions vs " + std::to_string(r.covering_classes) +
                         " coverings");

  // Essential surjectivity: borel must hit every covering class exactly once.
  std::vector<char> used(covers.size(), 0);
  r.essentially_surjective = true;
  r.round_trips = true;
  for (int i = 0; i < r.gset_classes; ++i) {
    const CoveringOver b = borel(gsets[i], u, deck);
    int match = -1;
    for (int j = 0; j < r.covering_classes; ++j) {
      if (diagram_iso(b.classifying, covers[j]).has_value()) {
        match = j;
        break;
      }
    }
    if (match < 0) {
      r.essentially_surjective = false;
      r.failures.push_back("borel image of action class " + std::to_string(i) +
                           " matches no covering class");
    } else if (used[match]) {
      r.essentially_surjective = false;
      r.failures.push_back("covering class " + std::to_string(match) +
                           " is hit twice");
    } else {
      used[match] = 1;
    }
    if (!gset_iso(monodromy_fibre(b, alpha, deck), gsets[i]).has_value()) {
      r.round_trips = false;
      r.failures.push_back("monodromy of borel of action class " +
                           std::to_string(i) + " is not the class itself");
    }
  }
  for (int j = 0; j < r.covering_classes; ++j) {
    if (!used[j]) {
      r.essentially_surjective = false;
      r.failures.push_back("covering class " + std::to_string(j) +
                           " is not hit by any action class");
    }
  }

  // Round trip in the other direction and hom-set cardinalities.
  std::vector<GSet> fibres;
  fibres.reserve(covers.size());
  for (int j = 0; j < r.covering_classes; ++j) {
    const CoveringOver c = covering_of_diagram(covers[j]);
    fibres.push_back(monodromy_fibre(c, alpha, deck));
    if (!diagram_iso(borel(fibres.back(), u, deck).classifying, covers[j]).has_value()) {
      r.round_trips = false;
      r.failures.push_back("borel of monodromy of covering class " +
                           std::to_string(j) + " is not the class itself");
    }
  }
  r.fully_faithful = true;
  for (int i = 0; i < r.covering_classes; ++i) {
    for (int j = 0; j < r.covering_classes; ++j) {
      const auto maps = hom_diagrams(covers[i], covers[j]).size();
      const auto eq = equivariant_maps(fibres[i], fibres[j]).size();
      if (maps != eq) {
        r.fully_faithful = false;
        r.failures.push_back("hom sets disagree between covering classes " +
                             std::to_string(i) + " and " + std::to_string(j) +
                             ": " + std::to_string(maps) + " vs " +
                             std::to_string(eq));
      }
    }
  }
  return r;
}

}  // namespace cofact
