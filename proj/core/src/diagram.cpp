#include "cofact/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cofact {

namespace {

void require_same_base(const SetDiagram& x, const SetDiagram& y, const char* who) {
  if (!same_category(x.base, y.base) || x.variance != y.variance) {
    throw std::invalid_argument(std::string(who) + ": diagrams live over different bases");
  }
}

}  // namespace

std::vector<std::string> validate_diagram(const SetDiagram& x) {
  std::vector<std::string> out;
  if (!x.base) {
    out.push_back("missing base category");
    return out;
  }
  const FinCategory& c = *x.base;
  if (static_cast<int>(x.carrier.size()) != c.objects) {
    out.push_back("carrier table has wrong length");
    return out;
  }
  for (int o = 0; o < c.objects; ++o) {
    if (x.carrier[o] < 0) out.push_back("negative carrier at object " + std::to_string(o));
  }
  if (static_cast<int>(x.action.size()) != c.morphisms()) {
    out.push_back("action table has wrong length");
    return out;
  }
  for (int m = 0; m < c.morphisms(); ++m) {
    const int s = x.action_src(m), t = x.action_tgt(m);
    if (static_cast<int>(x.action[m].size()) != x.carrier[s]) {
      out.push_back("action of morphism " + std::to_string(m) + " has wrong domain size");
      continue;
    }
    for (int e = 0; e < x.carrier[s]; ++e) {
      if (x.action[m][e] < 0 || x.action[m][e] >= x.carrier[t]) {
        out.push_back("action of morphism " + std::to_string(m) + " escapes its codomain");
        break;
      }
    }
  }
  if (!out.empty()) return out;
  for (int o = 0; o < c.objects; ++o) {
    const int id = c.identity[o];
    for (int e = 0; e < x.carrier[o]; ++e) {
      if (x.action[id][e] != e) {
        out.push_back("identity at object " + std::to_string(o) + " does not act as identity");
        break;
      }
    }
  }
  for (int g = 0; g < c.morphisms(); ++g) {
    for (int f = 0; f < c.morphisms(); ++f) {
      if (!c.composable(g, f)) continue;
      const int gf = c.compose(g, f);
      if (x.variance == Variance::Covariant) {
        for (int e = 0; e < x.carrier[c.src[f]]; ++e) {
          if (x.action[gf][e] != x.action[g][x.action[f][e]]) {
            out.push_back("functoriality fails on composite of morphisms " + std::to_string(g) +
                          " and " + std::to_string(f));
            break;
          }
        }
      } else {
        for (int e = 0; e < x.carrier[c.tgt[g]]; ++e) {
          if (x.action[gf][e] != x.action[f][x.action[g][e]]) {
            out.push_back("functoriality fails on composite of morphisms " + std::to_string(g) +
                          " and " + std::to_string(f));
            break;
          }
        }
      }
    }
  }
  return out;
}

bool diagram_ok(const SetDiagram& x) { return validate_diagram(x).empty(); }

bool diagram_equal(const SetDiagram& x, const SetDiagram& y) {
  return same_category(x.base, y.base) && x.variance == y.variance && x.carrier == y.carrier &&
         x.action == y.action;
}

SetDiagram terminal_diagram(const CatRef& base) { return constant_diagram(base, 1); }
SetDiagram initial_diagram(const CatRef& base) { return constant_diagram(base, 0); }

SetDiagram constant_diagram(const CatRef& base, int n) {
  SetDiagram x;
  x.base = base;
  x.carrier.assign(base->objects, n);
  std::vector<int> id(n);
  for (int e = 0; e < n; ++e) id[e] = e;
  x.action.assign(base->morphisms(), id);
  return x;
}

SetDiagram representable_diagram(const CatRef& base, int a) {
  const FinCategory& c = *base;
  // Elements at b are the morphisms a -> b in ascending id order; the action
  // along m postcomposes.
  std::vector<std::vector<int>> fibre(c.objects);
  std::vector<int> position(c.morphisms(), -1);
  for (int m = 0; m < c.morphisms(); ++m) {
    if (c.src[m] != a) continue;
    position[m] = static_cast<int>(fibre[c.tgt[m]].size());
    fibre[c.tgt[m]].push_back(m);
  }
  SetDiagram x;
  x.base = base;
  x.carrier.resize(c.objects);
  for (int b = 0; b < c.objects; ++b) x.carrier[b] = static_cast<int>(fibre[b].size());
  x.action.resize(c.morphisms());
  for (int m = 0; m < c.morphisms(); ++m) {
    x.action[m].resize(x.carrier[c.src[m]]);
    for (int e = 0; e < x.carrier[c.src[m]]; ++e) {
      x.action[m][e] = position[c.comp[m][fibre[c.src[m]][e]]];
    }
  }
  return x;
}

SetDiagram dualise(const SetDiagram& x) {
  SetDiagram d = x;
  d.base = opposite_cat(x.base);
  d.variance = x.variance == Variance::Covariant ? Variance::Contravariant : Variance::Covariant;
  return d;  // action endpoints are unchanged: src/tgt swap cancels the variance flip
}

SetDiagram restrict_diagram(const FunctorData& f, const SetDiagram& y) {
  if (!same_category(f.cod, y.base)) {
    throw std::invalid_argument("restrict_diagram: functor codomain is not the diagram base");
  }
  SetDiagram x;
  x.base = f.dom;
  x.variance = y.variance;
  x.carrier.resize(f.dom->objects);
  for (int a = 0; a < f.dom->objects; ++a) x.carrier[a] = y.carrier[f.obj_map[a]];
  x.action.resize(f.dom->morphisms());
  for (int m = 0; m < f.dom->morphisms(); ++m) x.action[m] = y.action[f.mor_map[m]];
  return x;
}

bool diagram_mor_shape_ok(const DiagramMor& m) {
  if (!same_category(m.dom.base, m.cod.base) || m.dom.variance != m.cod.variance) return false;
  const int n = m.dom.base->objects;
  if (static_cast<int>(m.at.size()) != n) return false;
  for (int o = 0; o < n; ++o) {
    if (static_cast<int>(m.at[o].size()) != m.dom.carrier[o]) return false;
    for (int e : m.at[o]) {
      if (e < 0 || e >= m.cod.carrier[o]) return false;
    }
  }
  return true;
}

bool diagram_mor_natural(const DiagramMor& m) {
  if (!diagram_mor_shape_ok(m)) return false;
  const FinCategory& c = *m.dom.base;
  for (int f = 0; f < c.morphisms(); ++f) {
    const int s = m.dom.action_src(f), t = m.dom.action_tgt(f);
    for (int e = 0; e < m.dom.carrier[s]; ++e) {
      if (m.at[t][m.dom.action[f][e]] != m.cod.action[f][m.at[s][e]]) return false;
    }
  }
  return true;
}

bool diagram_mor_equal(const DiagramMor& a, const DiagramMor& b) {
  return diagram_equal(a.dom, b.dom) && diagram_equal(a.cod, b.cod) && a.at == b.at;
}

DiagramMor identity_mor(const SetDiagram& x) {
  DiagramMor m;
  m.dom = x;
  m.cod = x;
  m.at.resize(x.carrier.size());
  for (size_t o = 0; o < x.carrier.size(); ++o) {
    m.at[o].resize(x.carrier[o]);
    for (int e = 0; e < x.carrier[o]; ++e) m.at[o][e] = e;
  }
  return m;
}

DiagramMor compose_mors(const DiagramMor& g, const DiagramMor& f) {
  if (!diagram_equal(f.cod, g.dom)) {
    throw std::invalid_argument("compose_mors: middle diagrams differ");
  }
  DiagramMor h;
  h.dom = f.dom;
  h.cod = g.cod;
  h.at.resize(f.at.size());
  for (size_t o = 0; o < f.at.size(); ++o) {
    h.at[o].resize(f.at[o].size());
    for (size_t e = 0; e < f.at[o].size(); ++e) h.at[o][e] = g.at[o][f.at[o][e]];
  }
  return h;
}

std::optional<DiagramMor> invert_mor(const DiagramMor& m) {
  DiagramMor inv;
  inv.dom = m.cod;
  inv.cod = m.dom;
  inv.at.resize(m.at.size());
  for (size_t o = 0; o < m.at.size(); ++o) {
    if (m.dom.carrier[o] != m.cod.carrier[o]) return std::nullopt;
    inv.at[o].assign(m.cod.carrier[o], kNone);
    for (int e = 0; e < m.dom.carrier[o]; ++e) {
      const int v = m.at[o][e];
      if (inv.at[o][v] != kNone) return std::nullopt;  // not injective
      inv.at[o][v] = e;
    }
    for (int v : inv.at[o]) {
      if (v == kNone) return std::nullopt;  // not surjective
    }
  }
  return inv;
}

namespace {

// Lexicographic backtracking over componentwise functions, checking naturality
// as soon as both endpoints of a morphism are assigned. The visitor returns
// false to stop the search.
template <typename Visit>
void for_each_nat(const SetDiagram& x, const SetDiagram& y, bool bijective_only, Visit&& visit) {
  require_same_base(x, y, "hom_diagrams");
  const FinCategory& c = *x.base;
  const int n = c.objects;
  if (bijective_only) {
    for (int o = 0; o < n; ++o) {
      if (x.carrier[o] != y.carrier[o]) return;
    }
  }
  std::vector<std::vector<int>> at(n);
  bool stop = false;

  auto consistent_at = [&](int o) {
    for (int f = 0; f < c.morphisms(); ++f) {
      const int s = x.action_src(f), t = x.action_tgt(f);
      if (s > o || t > o) continue;
      if (s != o && t != o) continue;  // already checked earlier
      for (int e = 0; e < x.carrier[s]; ++e) {
        if (at[t][x.action[f][e]] != y.action[f][at[s][e]]) return false;
      }
    }
    return true;
  };

  auto rec = [&](auto&& self, int o) -> void {
    if (stop) return;
    if (o == n) {
      DiagramMor m;
      m.dom = x;
      m.cod = y;
      m.at = at;
      if (!visit(m)) stop = true;
      return;
    }
    const int dom_n = x.carrier[o], cod_n = y.carrier[o];
    if (dom_n > 0 && cod_n == 0) return;
    at[o].assign(dom_n, 0);
    if (bijective_only) {
      // carrier sizes already match, so walk permutations instead of all tables
      std::iota(at[o].begin(), at[o].end(), 0);
      do {
        if (consistent_at(o)) self(self, o + 1);
        if (stop) return;
      } while (std::next_permutation(at[o].begin(), at[o].end()));
    } else {
      while (true) {
        if (consistent_at(o)) self(self, o + 1);
        if (stop) return;
        int pos = dom_n - 1;  // odometer step
        while (pos >= 0 && at[o][pos] == cod_n - 1) at[o][pos--] = 0;
        if (pos < 0) break;
        ++at[o][pos];
      }
    }
    at[o].clear();
  };
  rec(rec, 0);
}

}  // namespace

std::vector<DiagramMor> hom_diagrams(const SetDiagram& x, const SetDiagram& y) {
  std::vector<DiagramMor> out;
  for_each_nat(x, y, false, [&](const DiagramMor& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::optional<DiagramMor> diagram_iso(const SetDiagram& x, const SetDiagram& y) {
  std::optional<DiagramMor> found;
  for_each_nat(x, y, true, [&](const DiagramMor& m) {
    found = m;
    return false;
  });
  return found;
}

DiagramProduct product_diagram(const SetDiagram& x, const SetDiagram& y) {
  require_same_base(x, y, "product_diagram");
  const FinCategory& c = *x.base;
  DiagramProduct p;
  p.obj.base = x.base;
  p.obj.variance = x.variance;
  p.obj.carrier.resize(c.objects);
  for (int o = 0; o < c.objects; ++o) p.obj.carrier[o] = x.carrier[o] * y.carrier[o];
  p.obj.action.resize(c.morphisms());
  for (int m = 0; m < c.morphisms(); ++m) {
    const int s = x.action_src(m), t = x.action_tgt(m);
    p.obj.action[m].resize(p.obj.carrier[s]);
    for (int i = 0; i < x.carrier[s]; ++i) {
      for (int j = 0; j < y.carrier[s]; ++j) {
        p.obj.action[m][i * y.carrier[s] + j] = x.action[m][i] * y.carrier[t] + y.action[m][j];
      }
    }
  }
  p.pr1.dom = p.obj;
  p.pr1.cod = x;
  p.pr2.dom = p.obj;
  p.pr2.cod = y;
  p.pr1.at.resize(c.objects);
  p.pr2.at.resize(c.objects);
  for (int o = 0; o < c.objects; ++o) {
    p.pr1.at[o].resize(p.obj.carrier[o]);
    p.pr2.at[o].resize(p.obj.carrier[o]);
    for (int e = 0; e < p.obj.carrier[o]; ++e) {
      p.pr1.at[o][e] = e / y.carrier[o];
      p.pr2.at[o][e] = e % y.carrier[o];
    }
  }
  return p;
}

DiagramMor pair_mor(const DiagramMor& u, const DiagramMor& v) {
  if (!diagram_equal(u.dom, v.dom)) {
    throw std::invalid_argument("pair_mor: legs have different domains");
  }
  const DiagramProduct p = product_diagram(u.cod, v.cod);
  DiagramMor m;
  m.dom = u.dom;
  m.cod = p.obj;
  m.at.resize(u.at.size());
  for (size_t o = 0; o < u.at.size(); ++o) {
    m.at[o].resize(u.at[o].size());
    for (size_t e = 0; e < u.at[o].size(); ++e) {
      m.at[o][e] = u.at[o][e] * v.cod.carrier[o] + v.at[o][e];
    }
  }
  return m;
}

DiagramCoproduct coproduct_diagram(const SetDiagram& x, const SetDiagram& y) {
  require_same_base(x, y, "coproduct_diagram");
  const FinCategory& c = *x.base;
  DiagramCoproduct s;
  s.obj.base = x.base;
  s.obj.variance = x.variance;
  s.obj.carrier.resize(c.objects);
  for (int o = 0; o < c.objects; ++o) s.obj.carrier[o] = x.carrier[o] + y.carrier[o];
  s.obj.action.resize(c.morphisms());
  for (int m = 0; m < c.morphisms(); ++m) {
    const int a = x.action_src(m), t = x.action_tgt(m);
    s.obj.action[m].resize(s.obj.carrier[a]);
    for (int e = 0; e < x.carrier[a]; ++e) s.obj.action[m][e] = x.action[m][e];
    for (int e = 0; e < y.carrier[a]; ++e) {
      s.obj.action[m][x.carrier[a] + e] = x.carrier[t] + y.action[m][e];
    }
  }
  s.in1.dom = x;
  s.in1.cod = s.obj;
  s.in2.dom = y;
  s.in2.cod = s.obj;
  s.in1.at.resize(c.objects);
  s.in2.at.resize(c.objects);
  for (int o = 0; o < c.objects; ++o) {
    s.in1.at[o].resize(x.carrier[o]);
    s.in2.at[o].resize(y.carrier[o]);
    for (int e = 0; e < x.carrier[o]; ++e) s.in1.at[o][e] = e;
    for (int e = 0; e < y.carrier[o]; ++e) s.in2.at[o][e] = x.carrier[o] + e;
  }
  return s;
}

}  // namespace cofact
