#include "cofact/colimit.hpp"

#include <numeric>
#include <stdexcept>

#include "cofact/union_find.hpp"

namespace cofact {

SetColimit colimit_set_diagram(const SetDiagram& x) {
  if (x.variance != Variance::Covariant) {
    throw std::invalid_argument("colimit_set_diagram: diagram must be covariant");
  }
  const FinCategory& c = *x.base;
  std::vector<int> offset(c.objects + 1, 0);
  for (int o = 0; o < c.objects; ++o) offset[o + 1] = offset[o] + x.carrier[o];
  const int total = offset[c.objects];

  UnionFind uf(total);
  for (int m = 0; m < c.morphisms(); ++m) {
    const int s = c.src[m], t = c.tgt[m];
    for (int e = 0; e < x.carrier[s]; ++e) {
      uf.unite(offset[s] + e, offset[t] + x.action[m][e]);
    }
  }
  const auto blocks = uf.blocks();

  std::vector<int> cls(total, kNone);
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
    for (int e : blocks[b]) cls[e] = b;
  }
  SetColimit out;
  out.size = static_cast<int>(blocks.size());
  out.cocone.resize(c.objects);
  for (int o = 0; o < c.objects; ++o) {
    out.cocone[o].resize(x.carrier[o]);
    for (int e = 0; e < x.carrier[o]; ++e) out.cocone[o][e] = cls[offset[o] + e];
  }
  return out;
}

}  // namespace cofact
