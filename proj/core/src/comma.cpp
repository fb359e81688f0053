#include "cofact/comma.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

namespace cofact {

CommaCategory comma(const FunctorData& f, const FunctorData& g) {
  if (!same_category(f.cod, g.cod)) {
    throw std::invalid_argument("comma: functors have different codomains");
  }
  const FinCategory& A = *f.dom;
  const FinCategory& B = *g.dom;
  const FinCategory& C = *f.cod;

  CommaCategory out;
  for (int a = 0; a < A.objects; ++a) {
    for (int b = 0; b < B.objects; ++b) {
      for (int phi = 0; phi < C.morphisms(); ++phi) {
        if (C.src[phi] == f.on_obj(a) && C.tgt[phi] == g.on_obj(b)) {
          out.objects.push_back({a, b, phi});
        }
      }
    }
  }
  const int n = static_cast<int>(out.objects.size());

  FinCategory cat;
  cat.objects = n;
  std::map<std::tuple<int, int, int, int>, int> index;  // (src obj, tgt obj, u, v) -> id
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      const auto& [a1, b1, phi1] = out.objects[s];
      const auto& [a2, b2, phi2] = out.objects[t];
      for (int u = 0; u < A.morphisms(); ++u) {
        if (A.src[u] != a1 || A.tgt[u] != a2) continue;
        for (int v = 0; v < B.morphisms(); ++v) {
          if (B.src[v] != b1 || B.tgt[v] != b2) continue;
          if (C.compose(g.on_mor(v), phi1) != C.compose(phi2, f.on_mor(u))) continue;
          index[{s, t, u, v}] = cat.morphisms();
          cat.src.push_back(s);
          cat.tgt.push_back(t);
          out.morphism_pairs.emplace_back(u, v);
        }
      }
    }
  }
  cat.identity.resize(n);
  for (int o = 0; o < n; ++o) {
    cat.identity[o] = index.at({o, o, A.identity[out.objects[o].a], B.identity[out.objects[o].b]});
  }
  const int m = cat.morphisms();
  cat.comp.assign(m, std::vector<int>(m, kNone));
  for (int h = 0; h < m; ++h) {
    for (int k = 0; k < m; ++k) {
      if (cat.tgt[k] != cat.src[h]) continue;
      const int u = A.compose(out.morphism_pairs[h].first, out.morphism_pairs[k].first);
      const int v = B.compose(out.morphism_pairs[h].second, out.morphism_pairs[k].second);
      cat.comp[h][k] = index.at({cat.src[k], cat.tgt[h], u, v});
    }
  }
  out.cat = make_cat(std::move(cat));

  out.proj_dom.dom = out.cat;
  out.proj_dom.cod = f.dom;
  out.proj_cod.dom = out.cat;
  out.proj_cod.cod = g.dom;
  for (const auto& o : out.objects) {
    out.proj_dom.obj_map.push_back(o.a);
    out.proj_cod.obj_map.push_back(o.b);
  }
  for (const auto& [u, v] : out.morphism_pairs) {
    out.proj_dom.mor_map.push_back(u);
    out.proj_cod.mor_map.push_back(v);
  }
  return out;
}

}  // namespace cofact
