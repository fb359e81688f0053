#include "cofact/cat_scheme.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cofact {

int ElementsCategory::object_index(int base_obj, int element) const {
  return object_lookup.at({base_obj, element});
}

int ElementsCategory::morphism_index(int base_mor, int element) const {
  return morphism_lookup.at({base_mor, element});
}

ElementsCategory elements_cov(const SetDiagram& x) {
  if (x.variance != Variance::Covariant) {
    throw std::invalid_argument("elements_cov: diagram must be covariant");
  }
  const FinCategory& b = *x.base;
  ElementsCategory out;
  FinCategory cat;
  for (int o = 0; o < b.objects; ++o) {
    for (int e = 0; e < x.carrier[o]; ++e) {
      out.object_lookup[{o, e}] = static_cast<int>(out.object_labels.size());
      out.object_labels.emplace_back(o, e);
    }
  }
  cat.objects = static_cast<int>(out.object_labels.size());
  for (int m = 0; m < b.morphisms(); ++m) {
    for (int e = 0; e < x.carrier[b.src[m]]; ++e) {
      out.morphism_lookup[{m, e}] = static_cast<int>(out.morphism_labels.size());
      out.morphism_labels.emplace_back(m, e);
      cat.src.push_back(out.object_lookup.at({b.src[m], e}));
      cat.tgt.push_back(out.object_lookup.at({b.tgt[m], x.action[m][e]}));
    }
  }
  cat.identity.resize(cat.objects);
  for (int o = 0; o < cat.objects; ++o) {
    const auto& [bo, e] = out.object_labels[o];
    cat.identity[o] = out.morphism_lookup.at({b.identity[bo], e});
  }
  const int n = cat.morphisms();
  cat.comp.assign(n, std::vector<int>(n, kNone));
  for (int h = 0; h < n; ++h) {
    for (int k = 0; k < n; ++k) {
      if (cat.tgt[k] != cat.src[h]) continue;
      const int m2 = out.morphism_labels[h].first;
      const auto& [m1, e1] = out.morphism_labels[k];
      cat.comp[h][k] = out.morphism_lookup.at({b.comp[m2][m1], e1});
    }
  }
  out.cat = make_cat(std::move(cat));
  out.projection.dom = out.cat;
  out.projection.cod = x.base;
  for (const auto& [bo, e] : out.object_labels) out.projection.obj_map.push_back(bo);
  for (const auto& [bm, e] : out.morphism_labels) out.projection.mor_map.push_back(bm);
  return out;
}

SigmaElements sigma_elements(const SetDiagram& x, const ElementsCategory& e,
                             const SetDiagram& y) {
  if (x.variance != Variance::Covariant || y.variance != Variance::Covariant) {
    throw std::invalid_argument("sigma_elements: diagrams must be covariant");
  }
  if (!same_category(y.base, e.cat)) {
    throw std::invalid_argument("sigma_elements: y does not live on the elements category");
  }
  const FinCategory& b = *x.base;
  SigmaElements out;
  out.total.base = x.base;
  out.total.variance = Variance::Covariant;
  // Element (v in y at (o, x_e)) is numbered after all fibres of earlier
  // elements of x(o); offsets make the coproduct order canonical.
  std::vector<std::vector<int>> offset(b.objects);
  out.total.carrier.assign(b.objects, 0);
  for (int o = 0; o < b.objects; ++o) {
    offset[o].resize(x.carrier[o]);
    for (int el = 0; el < x.carrier[o]; ++el) {
      offset[o][el] = out.total.carrier[o];
      out.total.carrier[o] += y.carrier[e.object_index(o, el)];
    }
  }
  out.total.action.resize(b.morphisms());
  for (int m = 0; m < b.morphisms(); ++m) {
    out.total.action[m].resize(out.total.carrier[b.src[m]]);
    for (int el = 0; el < x.carrier[b.src[m]]; ++el) {
      const int em = e.morphism_index(m, el);
      const int target_el = x.action[m][el];
      for (int v = 0; v < y.carrier[e.object_index(b.src[m], el)]; ++v) {
        out.total.action[m][offset[b.src[m]][el] + v] =
            offset[b.tgt[m]][target_el] + y.action[em][v];
      }
    }
  }
  out.structure.dom = out.total;
  out.structure.cod = x;
  out.structure.at.resize(b.objects);
  for (int o = 0; o < b.objects; ++o) {
    out.structure.at[o].resize(out.total.carrier[o]);
    for (int el = 0; el < x.carrier[o]; ++el) {
      for (int v = 0; v < y.carrier[e.object_index(o, el)]; ++v) {
        out.structure.at[o][offset[o][el] + v] = el;
      }
    }
  }
  return out;
}

ElementsCategory elements_con(const SetDiagram& x) {
  if (x.variance != Variance::Contravariant) {
    throw std::invalid_argument("elements_con: diagram must be contravariant");
  }
  ElementsCategory e = elements_cov(dualise(x));
  ElementsCategory out;
  out.cat = opposite_cat(e.cat);
  out.projection.dom = out.cat;
  out.projection.cod = x.base;
  out.projection.obj_map = e.projection.obj_map;
  out.projection.mor_map = e.projection.mor_map;
  out.object_labels = std::move(e.object_labels);
  out.morphism_labels = std::move(e.morphism_labels);
  out.object_lookup = std::move(e.object_lookup);
  out.morphism_lookup = std::move(e.morphism_lookup);
  return out;
}

int KanData::class_of(int b, int a, int phi, int e) const {
  const auto& r = raw[b];
  for (int i = 0; i < static_cast<int>(r.size()); ++i) {
    if (r[i].a == a && r[i].phi == phi && r[i].e == e) return cls[b][i];
  }
  return kNone;
}

KanData left_kan(const FunctorData& f, const SetDiagram& x) {
  if (!same_category(f.dom, x.base)) {
    throw std::invalid_argument("left_kan: functor domain is not the diagram base");
  }
  if (x.variance != Variance::Covariant) {
    throw std::invalid_argument("left_kan: diagram must be covariant");
  }
  const FinCategory& A = *f.dom;
  const FinCategory& B = *f.cod;
  KanData k;
  k.f = f;
  k.source = x;
  k.raw.resize(B.objects);
  k.cls.resize(B.objects);
  k.pushed.base = f.cod;
  k.pushed.variance = Variance::Covariant;
  k.pushed.carrier.resize(B.objects);
  k.pushed.action.resize(B.morphisms());

  for (int b = 0; b < B.objects; ++b) {
    auto& raw = k.raw[b];
    std::map<std::tuple<int, int, int>, int> index;
    for (int a = 0; a < A.objects; ++a) {
      for (int phi = 0; phi < B.morphisms(); ++phi) {
        if (B.src[phi] != f.on_obj(a) || B.tgt[phi] != b) continue;
        for (int e = 0; e < x.carrier[a]; ++e) {
          index[{a, phi, e}] = static_cast<int>(raw.size());
          raw.push_back({a, phi, e});
        }
      }
    }
    // Zigzag quotient by repeated least-label propagation along the
    // naturality relation (a, phi'∘fu, e) ~ (a', phi', x(u)(e)).
    std::vector<int> label(raw.size());
    std::iota(label.begin(), label.end(), 0);
    std::vector<std::pair<int, int>> rel;
    for (int u = 0; u < A.morphisms(); ++u) {
      const int a = A.src[u], a2 = A.tgt[u];
      for (int phi2 = 0; phi2 < B.morphisms(); ++phi2) {
        if (B.src[phi2] != f.on_obj(a2) || B.tgt[phi2] != b) continue;
        const int phi = B.comp[phi2][f.on_mor(u)];
        for (int e = 0; e < x.carrier[a]; ++e) {
          rel.emplace_back(index.at({a, phi, e}), index.at({a2, phi2, x.action[u][e]}));
        }
      }
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [i, j] : rel) {
        const int m = std::min(label[i], label[j]);
        if (label[i] != m) {
          label[i] = m;
          changed = true;
        }
        if (label[j] != m) {
          label[j] = m;
          changed = true;
        }
      }
    }
    std::map<int, int> class_id;  // least raw index -> class, in increasing order
    for (int i = 0; i < static_cast<int>(raw.size()); ++i) class_id.emplace(label[i], 0);
    int next = 0;
    for (auto& [root, id] : class_id) id = next++;
    k.cls[b].resize(raw.size());
    for (int i = 0; i < static_cast<int>(raw.size()); ++i) k.cls[b][i] = class_id.at(label[i]);
    k.pushed.carrier[b] = next;
  }

  for (int g = 0; g < B.morphisms(); ++g) {
    const int s = B.src[g], t = B.tgt[g];
    k.pushed.action[g].assign(k.pushed.carrier[s], kNone);
    for (int i = 0; i < static_cast<int>(k.raw[s].size()); ++i) {
      const int c = k.cls[s][i];
      if (k.pushed.action[g][c] != kNone) continue;
      const auto& r = k.raw[s][i];
      k.pushed.action[g][c] = k.class_of(t, r.a, B.comp[g][r.phi], r.e);
    }
  }
  return k;
}

DiagramMor kan_unit(const KanData& k) {
  const FinCategory& B = *k.f.cod;
  DiagramMor u;
  u.dom = k.source;
  u.cod = restrict_diagram(k.f, k.pushed);
  u.at.resize(u.dom.carrier.size());
  for (size_t a = 0; a < u.dom.carrier.size(); ++a) {
    const int fa = k.f.on_obj(static_cast<int>(a));
    u.at[a].resize(u.dom.carrier[a]);
    for (int e = 0; e < u.dom.carrier[a]; ++e) {
      u.at[a][e] = k.class_of(fa, static_cast<int>(a), B.identity[fa], e);
    }
  }
  return u;
}

DiagramMor kan_counit(const FunctorData& f, const SetDiagram& y) {
  const KanData k = left_kan(f, restrict_diagram(f, y));
  DiagramMor c;
  c.dom = k.pushed;
  c.cod = y;
  c.at.resize(y.carrier.size());
  for (size_t b = 0; b < y.carrier.size(); ++b) {
    c.at[b].assign(k.pushed.carrier[b], kNone);
    for (int i = 0; i < static_cast<int>(k.raw[b].size()); ++i) {
      const int cl = k.cls[b][i];
      if (c.at[b][cl] != kNone) continue;
      const auto& r = k.raw[b][i];
      c.at[b][cl] = y.action[r.phi][r.e];
    }
  }
  return c;
}

DiagramMor kan_push_mor(const FunctorData& f, const DiagramMor& m) {
  const KanData k1 = left_kan(f, m.dom);
  const KanData k2 = left_kan(f, m.cod);
  DiagramMor out;
  out.dom = k1.pushed;
  out.cod = k2.pushed;
  out.at.resize(k1.pushed.carrier.size());
  for (size_t b = 0; b < k1.pushed.carrier.size(); ++b) {
    out.at[b].assign(k1.pushed.carrier[b], kNone);
    for (int i = 0; i < static_cast<int>(k1.raw[b].size()); ++i) {
      const int cl = k1.cls[b][i];
      if (out.at[b][cl] != kNone) continue;
      const auto& r = k1.raw[b][i];
      out.at[b][cl] = k2.class_of(static_cast<int>(b), r.a, r.phi, m.at[r.a][r.e]);
    }
  }
  return out;
}

DiagramMor restrict_mor(const FunctorData& f, const DiagramMor& m) {
  DiagramMor out;
  out.dom = restrict_diagram(f, m.dom);
  out.cod = restrict_diagram(f, m.cod);
  out.at.resize(f.dom->objects);
  for (int a = 0; a < f.dom->objects; ++a) out.at[a] = m.at[f.on_obj(a)];
  return out;
}

bool is_discrete_opfibration(const FunctorData& f) {
  const FinCategory& E = *f.dom;
  const FinCategory& B = *f.cod;
  for (int e = 0; e < E.objects; ++e) {
    for (int m = 0; m < B.morphisms(); ++m) {
      if (B.src[m] != f.on_obj(e)) continue;
      int count = 0;
      for (int n = 0; n < E.morphisms(); ++n) {
        if (E.src[n] == e && f.on_mor(n) == m) ++count;
      }
      if (count != 1) return false;
    }
  }
  return true;
}

bool is_discrete_fibration(const FunctorData& f) {
  const FinCategory& E = *f.dom;
  const FinCategory& B = *f.cod;
  for (int e = 0; e < E.objects; ++e) {
    for (int m = 0; m < B.morphisms(); ++m) {
      if (B.tgt[m] != f.on_obj(e)) continue;
      int count = 0;
      for (int n = 0; n < E.morphisms(); ++n) {
        if (E.tgt[n] == e && f.on_mor(n) == m) ++count;
      }
      if (count != 1) return false;
    }
  }
  return true;
}

bool is_initial_functor(const FunctorData& f) {
  for (int b = 0; b < f.cod->objects; ++b) {
    const CommaCategory cm = comma(f, pick_object(f.cod, b));
    if (cm.cat->objects == 0) return false;
    if (pi0_category(*cm.cat).blocks.size() != 1) return false;
  }
  return true;
}

bool is_final_functor(const FunctorData& f) {
  for (int b = 0; b < f.cod->objects; ++b) {
    const CommaCategory cm = comma(pick_object(f.cod, b), f);
    if (cm.cat->objects == 0) return false;
    if (pi0_category(*cm.cat).blocks.size() != 1) return false;
  }
  return true;
}

CatElements CopresheafScheme::elements(const Obj& x) const {
  ElementsCategory e = elements_cov(x);
  return {e.cat, std::move(e.projection)};
}

FunctorData CopresheafScheme::lift(const Map& h, const Obj& x, const Mor& point) const {
  const ElementsCategory el = elements_cov(x);
  FunctorData out;
  out.dom = h.dom;
  out.cod = el.cat;
  for (int a = 0; a < h.dom->objects; ++a) {
    out.obj_map.push_back(el.object_index(h.on_obj(a), point.at[a][0]));
  }
  for (int m = 0; m < h.dom->morphisms(); ++m) {
    out.mor_map.push_back(el.morphism_index(h.on_mor(m), point.at[h.dom->src[m]][0]));
  }
  return out;
}

DiagramMor CopresheafScheme::point_of_lift(const Map& h, const Obj& x, const Map& lifting) const {
  const ElementsCategory el = elements_cov(x);
  DiagramMor out;
  out.dom = terminal_diagram(h.dom);
  out.cod = restrict_diagram(h, x);
  out.at.resize(h.dom->objects);
  for (int a = 0; a < h.dom->objects; ++a) {
    out.at[a] = {el.object_labels[lifting.obj_map[a]].second};
  }
  return out;
}

namespace {

// Re-tag a contravariant diagram as the covariant diagram with the same
// tables over the given opposite base (and back). Action endpoints agree.
SetDiagram with_base(const SetDiagram& x, const CatRef& base, Variance v) {
  SetDiagram out = x;
  out.base = base;
  out.variance = v;
  return out;
}

}  // namespace

SetDiagram PresheafScheme::terminal(const Object& a) const {
  SetDiagram t = terminal_diagram(a);
  t.variance = Variance::Contravariant;
  return t;
}

SetDiagram PresheafScheme::push(const Map& f, const Obj& x) const {
  const FunctorData fop = opposite_functor(f);
  const KanData k = left_kan(fop, with_base(x, fop.dom, Variance::Covariant));
  return with_base(k.pushed, f.cod, Variance::Contravariant);
}

DiagramMor PresheafScheme::push_mor(const Map& f, const Mor& m) const {
  const FunctorData fop = opposite_functor(f);
  DiagramMor op;
  op.dom = with_base(m.dom, fop.dom, Variance::Covariant);
  op.cod = with_base(m.cod, fop.dom, Variance::Covariant);
  op.at = m.at;
  DiagramMor k = kan_push_mor(fop, op);
  DiagramMor out;
  out.dom = with_base(k.dom, f.cod, Variance::Contravariant);
  out.cod = with_base(k.cod, f.cod, Variance::Contravariant);
  out.at = std::move(k.at);
  return out;
}

DiagramMor PresheafScheme::adjunction_unit(const Map& f, const Obj& x) const {
  const FunctorData fop = opposite_functor(f);
  const DiagramMor u = kan_unit(left_kan(fop, with_base(x, fop.dom, Variance::Covariant)));
  DiagramMor out;
  out.dom = x;
  out.cod = restrict_diagram(f, push(f, x));
  out.at = u.at;
  return out;
}

DiagramMor PresheafScheme::adjunction_counit(const Map& f, const Obj& y) const {
  const FunctorData fop = opposite_functor(f);
  const DiagramMor c = kan_counit(fop, with_base(y, fop.cod, Variance::Covariant));
  DiagramMor out;
  out.dom = push(f, pull(f, y));
  out.cod = y;
  out.at = c.at;
  return out;
}

CatElements PresheafScheme::elements(const Obj& x) const {
  ElementsCategory e = elements_con(x);
  return {e.cat, std::move(e.projection)};
}

FunctorData PresheafScheme::lift(const Map& h, const Obj& x, const Mor& point) const {
  const ElementsCategory el = elements_con(x);
  FunctorData out;
  out.dom = h.dom;
  out.cod = el.cat;
  for (int a = 0; a < h.dom->objects; ++a) {
    out.obj_map.push_back(el.object_index(h.on_obj(a), point.at[a][0]));
  }
  // Fibration morphism labels carry the element at the target object.
  for (int m = 0; m < h.dom->morphisms(); ++m) {
    out.mor_map.push_back(el.morphism_index(h.on_mor(m), point.at[h.dom->tgt[m]][0]));
  }
  return out;
}

DiagramMor PresheafScheme::point_of_lift(const Map& h, const Obj& x, const Map& lifting) const {
  const ElementsCategory el = elements_con(x);
  DiagramMor out;
  out.dom = terminal(h.dom);
  out.cod = restrict_diagram(h, x);
  out.at.resize(h.dom->objects);
  for (int a = 0; a < h.dom->objects; ++a) {
    out.at[a] = {el.object_labels[lifting.obj_map[a]].second};
  }
  return out;
}

}  // namespace cofact
