#include "cofact/oracles.hpp"

#include <map>
#include <stdexcept>
#include <utility>

#include "cofact/colimit.hpp"
#include "cofact/comma.hpp"

namespace cofact {

SetDiagram kan_colimit_oracle(const FunctorData& f, const SetDiagram& x) {
  if (x.variance != Variance::Covariant) {
    throw std::invalid_argument("kan_colimit_oracle: diagram must be covariant");
  }
  const FinCategory& b = *f.cod;
  struct PerObject {
    CommaCategory comma;
    SetColimit colimit;
    std::map<std::pair<int, int>, int> index;  // (a, phi) -> comma object
  };
  std::vector<PerObject> per(b.objects);
  for (int obj = 0; obj < b.objects; ++obj) {
    per[obj].comma = comma(f, pick_object(f.cod, obj));
    SetDiagram over;
    over.base = per[obj].comma.cat;
    over.variance = Variance::Covariant;
    for (const auto& o : per[obj].comma.objects) over.carrier.push_back(x.carrier[o.a]);
    for (const auto& [u, v] : per[obj].comma.morphism_pairs) {
      (void)v;
      over.action.push_back(x.action[u]);
    }
    per[obj].colimit = colimit_set_diagram(over);
    for (size_t i = 0; i < per[obj].comma.objects.size(); ++i) {
      const auto& o = per[obj].comma.objects[i];
      per[obj].index[{o.a, o.phi}] = static_cast<int>(i);
    }
  }

  SetDiagram out;
  out.base = f.cod;
  out.variance = Variance::Covariant;
  out.carrier.resize(b.objects);
  for (int obj = 0; obj < b.objects; ++obj) out.carrier[obj] = per[obj].colimit.size;
  out.action.resize(b.morphisms());
  for (int m = 0; m < b.morphisms(); ++m) {
    const int sb = b.src[m];
    const int tb = b.tgt[m];
    out.action[m].assign(out.carrier[sb], -1);
    // Map each representative and insist all representatives of a class
    // agree; a disagreement would mean the induced map is ill-defined.
    for (size_t i = 0; i < per[sb].comma.objects.size(); ++i) {
      const auto& o = per[sb].comma.objects[i];
      const int j = per[tb].index.at({o.a, b.comp[m][o.phi]});
      for (int e = 0; e < x.carrier[o.a]; ++e) {
        const int c = per[sb].colimit.cocone[i][e];
        const int t = per[tb].colimit.cocone[j][e];
        if (out.action[m][c] == -1) {
          out.action[m][c] = t;
        } else if (out.action[m][c] != t) {
          throw std::logic_error("kan_colimit_oracle: induced map is not well-defined");
        }
      }
    }
    for (int c = 0; c < out.carrier[sb]; ++c) {
      if (out.action[m][c] == -1) {
        throw std::logic_error("kan_colimit_oracle: colimit class has no representative");
      }
    }
  }
  return out;
}

long fo_count_formula(const FinMulticategory& o, const std::vector<int>& v,
                      const std::vector<int>& w) {
  const int k = static_cast<int>(v.size());
  const int l = static_cast<int>(w.size());
  if (k > 0 && l == 0) return 0;
  long total = 0;
  std::vector<int> phi(k, 0);
  while (true) {
    long prod = 1;
    for (int j = 0; j < l && prod > 0; ++j) {
      std::vector<int> fibre;
      for (int i = 0; i < k; ++i)
        if (phi[i] == j) fibre.push_back(v[i]);
      long count = 0;
      for (int m = 0; m < o.morphisms(); ++m)
        if (o.profile[m].sources == fibre && o.profile[m].target == w[j]) ++count;
      prod *= count;
    }
    total += prod;
    int i = 0;
    while (i < k && phi[i] + 1 == l) phi[i++] = 0;
    if (i == k) break;
    ++phi[i];
  }
  return total;
}

std::vector<int> operation_graph_component_counts(const FinMulticategory& p) {
  // union by transpositions, then count orbits per target colour
  std::vector<int> parent(p.morphisms());
  for (int i = 0; i < p.morphisms(); ++i) parent[i] = i;
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int f = 0; f < p.morphisms(); ++f)
    for (int t : p.sym[f]) parent[find(t)] = find(f);
  std::vector<int> out(p.colours, 0);
  for (int f = 0; f < p.morphisms(); ++f)
    if (find(f) == f) ++out[p.profile[f].target];
  return out;
}

bool powerset_frobenius_direct(const SetMapping& f, const SubsetObj& x,
                               const SubsetObj& y) {
  const auto lhs = direct_image(f, subset_intersection(x, preimage(f, y)));
  const auto rhs = subset_intersection(direct_image(f, x), y);
  return subset_equal(lhs, rhs);
}

long points_count_oracle(const SetDiagram& y) {
  const FinCategory& b = *y.base;
  if (b.objects == 0) return 1;
  for (int o = 0; o < b.objects; ++o)
    if (y.carrier[o] == 0) return 0;
  std::vector<int> pick(b.objects, 0);
  long total = 0;
  while (true) {
    bool ok = true;
    for (int m = 0; m < b.morphisms() && ok; ++m) {
      if (y.variance == Variance::Covariant) {
        if (y.action[m][pick[b.src[m]]] != pick[b.tgt[m]]) ok = false;
      } else {
        if (y.action[m][pick[b.tgt[m]]] != pick[b.src[m]]) ok = false;
      }
    }
    if (ok) ++total;
    int o = 0;
    while (o < b.objects && pick[o] + 1 == y.carrier[o]) pick[o++] = 0;
    if (o == b.objects) break;
    ++pick[o];
  }
  return total;
}

std::vector<FunctorData> functors_over(const FunctorData& p, const FunctorData& q,
                                       std::int64_t budget) {
  std::vector<FunctorData> out;
  for_each_functor(p.dom, q.dom, budget, [&](const FunctorData& h) {
    if (functor_equal(compose_functors(q, h), p)) out.push_back(h);
    return true;
  });
  return out;
}

std::vector<FunctorData> sections_of(const FunctorData& p, std::int64_t budget) {
  std::vector<FunctorData> out;
  const auto id = identity_functor(p.cod);
  for_each_functor(p.cod, p.dom, budget, [&](const FunctorData& s) {
    if (functor_equal(compose_functors(p, s), id)) out.push_back(s);
    return true;
  });
  return out;
}

}  // namespace cofact
