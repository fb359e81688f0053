#include "cofact/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "cofact/group.hpp"

namespace cofact {

namespace {

// Seeded in-place thinning to at most `keep` entries, preserving order.
template <typename T>
void thin(std::vector<T>& v, size_t keep, std::uint32_t seed) {
  if (v.size() <= keep) return;
  std::vector<int> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937 rng(seed);
  for (size_t i = idx.size() - 1; i > 0; --i) {
    std::swap(idx[i], idx[rng() % (i + 1)]);
  }
  idx.resize(keep);
  std::sort(idx.begin(), idx.end());
  std::vector<T> out;
  out.reserve(keep);
  for (int i : idx) out.push_back(std::move(v[i]));
  v = std::move(out);
}

FinCategory span_category() {  // 1 <- 0 -> 2
  FinCategory c;
  c.objects = 3;
  c.src = {0, 1, 2, 0, 0};
  c.tgt = {0, 1, 2, 1, 2};
  c.identity = {0, 1, 2};
  const int n = 5;
  c.comp.assign(n, std::vector<int>(n, kNone));
  for (int m = 0; m < n; ++m) {
    c.comp[m][c.identity[c.src[m]]] = m;
    c.comp[c.identity[c.tgt[m]]][m] = m;
  }
  return c;
}

FinCategory cospan_category() {  // 1 -> 0 <- 2
  FinCategory c;
  c.objects = 3;
  c.src = {0, 1, 2, 1, 2};
  c.tgt = {0, 1, 2, 0, 0};
  c.identity = {0, 1, 2};
  const int n = 5;
  c.comp.assign(n, std::vector<int>(n, kNone));
  for (int m = 0; m < n; ++m) {
    c.comp[m][c.identity[c.src[m]]] = m;
    c.comp[c.identity[c.tgt[m]]][m] = m;
  }
  return c;
}

FinCategory walking_idempotent() {
  // one object, morphisms {id, e} with e.e = e
  return monoid_category({{0, 1}, {1, 1}}, 0);
}

// Connected groupoid with n objects and the given vertex group: morphisms
// are triples (source, target, group element).
CatRef chaotic_groupoid(int n, const FinGroup& g) {
  FinCategory c;
  c.objects = n;
  const int per = g.order;
  auto id_of = [&](int i, int j, int e) { return (i * n + j) * per + e; };
  c.src.resize(n * n * per);
  c.tgt.resize(n * n * per);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int e = 0; e < per; ++e) {
        c.src[id_of(i, j, e)] = i;
        c.tgt[id_of(i, j, e)] = j;
      }
    }
  }
  c.identity.resize(n);
  for (int i = 0; i < n; ++i) c.identity[i] = id_of(i, i, g.unit);
  const int total = n * n * per;
  c.comp.assign(total, std::vector<int>(total, kNone));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int e1 = 0; e1 < per; ++e1)
          for (int e2 = 0; e2 < per; ++e2)
            c.comp[id_of(j, k, e2)][id_of(i, j, e1)] = id_of(i, k, g.mul[e2][e1]);
  return make_cat(std::move(c));
}

}  // namespace

std::vector<CatRef> named_categories() {
  std::vector<CatRef> out;
  out.push_back(make_cat(terminal_category()));
  out.push_back(make_cat(walking_arrow()));
  out.push_back(make_cat(walking_composable_pair()));
  out.push_back(make_cat(parallel_pair()));
  out.push_back(make_cat(discrete_category(2)));
  out.push_back(make_cat(span_category()));
  out.push_back(make_cat(cospan_category()));
  out.push_back(make_cat(codiscrete_groupoid(2)));
  out.push_back(make_cat(walking_idempotent()));
  out.push_back(make_cat(delooping(cyclic_group(2))));
  out.push_back(make_cat(delooping(cyclic_group(3))));
  out.push_back(make_cat(delooping(cyclic_group(4))));
  out.push_back(make_cat(delooping(klein_four())));
  out.push_back(make_cat(delooping(cyclic_group(6))));
  out.push_back(make_cat(delooping(sym3())));
  return out;
}

std::vector<CatRef> connected_groupoids_upto(int max_morphisms) {
  std::vector<FinGroup> groups;
  for (int n = 1; n <= max_morphisms; ++n) groups.push_back(cyclic_group(n));
  if (max_morphisms >= 4) groups.push_back(klein_four());
  if (max_morphisms >= 6) groups.push_back(sym3());
  std::vector<CatRef> out;
  for (int n = 1; n * n <= max_morphisms; ++n) {
    for (const auto& g : groups) {
      if (n * n * g.order > max_morphisms) continue;
      out.push_back(chaotic_groupoid(n, g));
    }
  }
  // order: by morphism count, then object count (stable within builders)
  std::stable_sort(out.begin(), out.end(), [](const CatRef& a, const CatRef& b) {
    if (a->morphisms() != b->morphisms()) return a->morphisms() < b->morphisms();
    return a->objects < b->objects;
  });
  return out;
}

std::optional<FunctorData> category_iso(const CatRef& a, const CatRef& b) {
  const FinCategory& ca = *a;
  const FinCategory& cb = *b;
  if (ca.objects != cb.objects || ca.morphisms() != cb.morphisms()) return std::nullopt;
  const int n = ca.objects;
  const int m = ca.morphisms();

  // degree profiles prune object assignments
  auto profile = [](const FinCategory& c, int o) {
    int outd = 0, ind = 0, endo = 0;
    for (int mm = 0; mm < c.morphisms(); ++mm) {
      if (c.src[mm] == o) ++outd;
      if (c.tgt[mm] == o) ++ind;
      if (c.src[mm] == o && c.tgt[mm] == o) ++endo;
    }
    return std::tuple<int, int, int>(outd, ind, endo);
  };
  std::vector<std::tuple<int, int, int>> pa(n), pb(n);
  for (int o = 0; o < n; ++o) {
    pa[o] = profile(ca, o);
    pb[o] = profile(cb, o);
  }

  std::vector<int> obj_map(n, -1), obj_used(n, 0);
  std::vector<int> mor_map(m, -1), mor_used(m, 0);

  // Morphism assignment under a fixed object bijection, with composition
  // checks on the assigned prefix.
  std::function<bool(int)> assign_mor = [&](int i) -> bool {
    if (i == m) return true;
    for (int j = 0; j < m; ++j) {
      if (mor_used[j]) continue;
      if (cb.src[j] != obj_map[ca.src[i]] || cb.tgt[j] != obj_map[ca.tgt[i]]) continue;
      const bool i_is_id = ca.identity[ca.src[i]] == i;
      const bool j_is_id = cb.identity[cb.src[j]] == j;
      if (i_is_id != j_is_id) continue;
      bool consistent = true;
      for (int k = 0; k < i && consistent; ++k) {
        if (mor_map[k] == -1) continue;
        if (ca.tgt[k] == ca.src[i] &&
            (mor_map[ca.comp[i][k]] != -1 &&
             mor_map[ca.comp[i][k]] != cb.comp[j][mor_map[k]]))
          consistent = false;
        if (ca.tgt[i] == ca.src[k] &&
            (mor_map[ca.comp[k][i]] != -1 &&
             mor_map[ca.comp[k][i]] != cb.comp[mor_map[k]][j]))
          consistent = false;
      }
      if (ca.tgt[i] == ca.src[i] && consistent) {
        if (mor_map[ca.comp[i][i]] != -1 && mor_map[ca.comp[i][i]] != cb.comp[j][j])
          consistent = false;
      }
      if (!consistent) continue;
      mor_map[i] = j;
      mor_used[j] = 1;
      if (assign_mor(i + 1)) return true;
      mor_map[i] = -1;
      mor_used[j] = 0;
    }
    return false;
  };

  std::function<bool(int)> assign_obj = [&](int o) -> bool {
    if (o == n) {
      std::fill(mor_map.begin(), mor_map.end(), -1);
      std::fill(mor_used.begin(), mor_used.end(), 0);
      return assign_mor(0);
    }
    for (int p = 0; p < n; ++p) {
      if (obj_used[p] || pa[o] != pb[p]) continue;
      obj_map[o] = p;
      obj_used[p] = 1;
      if (assign_obj(o + 1)) return true;
      obj_map[o] = -1;
      obj_used[p] = 0;
    }
    return false;
  };

  if (!assign_obj(0)) return std::nullopt;
  FunctorData f;
  f.dom = a;
  f.cod = b;
  f.obj_map = obj_map;
  f.mor_map = mor_map;
  return f;
}

namespace {

// Backtracking completion of composition tables for a fixed shape (object
// count, endpoints of non-identity morphisms). Identities compose away; the
// remaining cells are assigned in lexicographic order with full
// associativity checks on the known part of the table.
struct TableSearch {
  FinCategory base;
  std::vector<std::pair<int, int>> cells;  // (g, f) with unknown composite
  std::vector<std::tuple<int, int, int>> triples;  // composable (h, g, f)
  long nodes = 0;
  long node_budget = 0;
  int quota = 0;
  std::vector<CatRef>* sink = nullptr;

  bool assoc_ok() const {
    const auto& c = base.comp;
    for (const auto& [h, g, f] : triples) {
      const int gf = c[g][f];
      const int hg = c[h][g];
      if (gf == kNone || hg == kNone) continue;
      const int l = c[h][gf];
      const int r = c[hg][f];
      if (l == kNone || r == kNone) continue;
      if (l != r) return false;
    }
    return true;
  }

  void run(size_t cell) {
    if (quota <= 0 || nodes >= node_budget) return;
    ++nodes;
    if (cell == cells.size()) {
      FinCategory copy = base;
      sink->push_back(make_cat(std::move(copy)));
      --quota;
      return;
    }
    const auto [g, f] = cells[cell];
    for (int h = 0; h < base.morphisms(); ++h) {
      if (base.src[h] != base.src[f] || base.tgt[h] != base.tgt[g]) continue;
      base.comp[g][f] = h;
      if (assoc_ok()) run(cell + 1);
      base.comp[g][f] = kNone;
      if (quota <= 0 || nodes >= node_budget) return;
    }
  }
};

}  // namespace

std::vector<CatRef> enumerate_small_categories(int max_objects, int max_morphisms,
                                               int limit) {
  std::vector<CatRef> out;
  // shapes ordered by total morphism count, then object count
  for (int total = 1; total <= max_morphisms; ++total) {
    for (int n = 1; n <= max_objects && n <= total; ++n) {
      if (static_cast<int>(out.size()) >= limit) return out;
      const int extra = total - n;
      // endpoint assignments: non-decreasing sequences of (src, tgt) pairs
      std::vector<std::vector<std::pair<int, int>>> shapes;
      std::vector<std::pair<int, int>> cur(extra);
      std::function<void(int, int)> gen = [&](int pos, int least) {
        if (pos == extra) {
          shapes.push_back(cur);
          return;
        }
        for (int code = least; code < n * n; ++code) {
          cur[pos] = {code / n, code % n};
          gen(pos + 1, code);
        }
      };
      gen(0, 0);
      for (const auto& shape : shapes) {
        if (static_cast<int>(out.size()) >= limit) return out;
        TableSearch ts;
        ts.base.objects = n;
        for (int o = 0; o < n; ++o) {
          ts.base.src.push_back(o);
          ts.base.tgt.push_back(o);
          ts.base.identity.push_back(o);
        }
        for (const auto& [s, t] : shape) {
          ts.base.src.push_back(s);
          ts.base.tgt.push_back(t);
        }
        const int m = ts.base.morphisms();
        ts.base.comp.assign(m, std::vector<int>(m, kNone));
        for (int f = 0; f < m; ++f) {
          if (ts.base.tgt[f] == ts.base.src[f] && f < n) ts.base.comp[f][f] = f;
        }
        for (int f = 0; f < m; ++f) {
          ts.base.comp[ts.base.identity[ts.base.tgt[f]]][f] = f;
          ts.base.comp[f][ts.base.identity[ts.base.src[f]]] = f;
        }
        for (int g = 0; g < m; ++g) {
          for (int f = 0; f < m; ++f) {
            if (ts.base.tgt[f] != ts.base.src[g]) continue;
            if (ts.base.comp[g][f] == kNone) ts.cells.emplace_back(g, f);
          }
        }
        for (int h = 0; h < m; ++h)
          for (int g = 0; g < m; ++g)
            for (int f = 0; f < m; ++f)
              if (ts.base.tgt[f] == ts.base.src[g] && ts.base.tgt[g] == ts.base.src[h])
                ts.triples.emplace_back(h, g, f);
        std::vector<CatRef> found;
        ts.sink = &found;
        ts.quota = 4;
        ts.node_budget = 50000;
        ts.run(0);
        for (auto& c : found) {
          if (!category_ok(*c)) continue;
          bool fresh = true;
          for (const auto& seen : out) {
            if (category_iso(seen, c)) {
              fresh = false;
              break;
            }
          }
          if (fresh) out.push_back(std::move(c));
          if (static_cast<int>(out.size()) >= limit) return out;
        }
      }
    }
  }
  return out;
}

std::vector<CatRef> corpus_categories(const CorpusOptions& opt) {
  std::vector<CatRef> out = named_categories();
  auto enumerated =
      enumerate_small_categories(opt.max_objects, opt.max_morphisms, 4 * opt.category_limit);
  std::vector<CatRef> fresh;
  for (auto& c : enumerated) {
    bool known = false;
    for (const auto& seen : out) {
      if (category_iso(seen, c)) {
        known = true;
        break;
      }
    }
    if (!known) fresh.push_back(std::move(c));
  }
  thin(fresh, static_cast<size_t>(opt.category_limit), opt.seed);
  out.insert(out.end(), fresh.begin(), fresh.end());
  return out;
}

std::vector<FunctorData> corpus_functors(const std::vector<CatRef>& cats,
                                         const CorpusOptions& opt) {
  std::vector<FunctorData> out;
  for (const auto& c : cats) out.push_back(identity_functor(c));
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < cats.size(); ++i)
    for (size_t j = 0; j < cats.size(); ++j)
      pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
  thin(pairs, static_cast<size_t>(opt.pair_limit), opt.seed + 1);
  for (const auto& [i, j] : pairs) {
    std::vector<FunctorData> found;
    for_each_functor(cats[i], cats[j], opt.budget, [&](const FunctorData& f) {
      found.push_back(f);
      return found.size() < 400;
    });
    if (i == j) {
      // identities are already present
      std::erase_if(found,
                    [&](const FunctorData& f) { return functor_equal(f, out[i]); });
    }
    thin(found, static_cast<size_t>(opt.functor_pair_limit),
         opt.seed + 7919u * static_cast<std::uint32_t>(i) +
             104729u * static_cast<std::uint32_t>(j));
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

std::vector<SetDiagram> corpus_diagrams(const CatRef& base, const CorpusOptions& opt) {
  std::vector<SetDiagram> out;
  out.push_back(terminal_diagram(base));
  for (int a = 0; a < base->objects; ++a)
    out.push_back(representable_diagram(base, a));
  for (int a = 0; a < base->objects && static_cast<int>(out.size()) < opt.diagram_limit;
       ++a) {
    for (int b = a; b < base->objects && static_cast<int>(out.size()) < opt.diagram_limit;
         ++b) {
      out.push_back(coproduct_diagram(representable_diagram(base, a),
                                      representable_diagram(base, b))
                        .obj);
    }
  }
  if (static_cast<int>(out.size()) < opt.diagram_limit) out.push_back(initial_diagram(base));
  std::mt19937 rng(opt.seed + 31u * static_cast<std::uint32_t>(base->morphisms()) +
                   static_cast<std::uint32_t>(base->objects));
  for (int attempt = 0; attempt < 60 && static_cast<int>(out.size()) < opt.diagram_limit;
       ++attempt) {
    SetDiagram x;
    x.base = base;
    x.variance = Variance::Covariant;
    x.carrier.resize(base->objects);
    for (int o = 0; o < base->objects; ++o) x.carrier[o] = rng() % 4;
    x.action.resize(base->morphisms());
    bool feasible = true;
    for (int m = 0; m < base->morphisms() && feasible; ++m) {
      const int sc = x.carrier[base->src[m]];
      const int tc = x.carrier[base->tgt[m]];
      if (sc > 0 && tc == 0) {
        feasible = false;
        break;
      }
      x.action[m].resize(sc);
      for (int e = 0; e < sc; ++e) x.action[m][e] = tc == 0 ? 0 : rng() % tc;
      if (base->identity[base->src[m]] == m)
        for (int e = 0; e < sc; ++e) x.action[m][e] = e;
    }
    if (feasible && diagram_ok(x)) out.push_back(std::move(x));
  }
  return out;
}

std::vector<SetMapping> corpus_mappings(int max_size) {
  std::vector<SetMapping> out;
  for (int dom = 0; dom <= max_size; ++dom) {
    for (int cod = 0; cod <= max_size; ++cod) {
      for_each_mapping(dom, cod, 1000000, [&](const SetMapping& f) {
        out.push_back(f);
        return true;
      });
    }
  }
  return out;
}

namespace {

MulticatRef unit_only_multicat(int colours) {
  FinMulticategory o;
  o.colours = colours;
  for (int c = 0; c < colours; ++c) {
    o.profile.push_back({{c}, c});
    o.unit.push_back(c);
    o.sym.push_back({});
  }
  return make_multicat(std::move(o));
}

MulticatRef one_binary_multicat() {
  FinMulticategory o;
  o.colours = 1;
  o.profile = {{{0}, 0}, {{0, 0}, 0}};
  o.unit = {0};
  o.sym = {{}, {1}};
  return make_multicat(std::move(o));
}

// Commutative monoid with nullary unit, truncated above arity three:
// morphisms u (unary), e (nullary), m2, m3; m2 o m2 = m3 both ways.
MulticatRef monoid_arity3_multicat() {
  FinMulticategory o;
  o.colours = 1;
  o.profile = {{{0}, 0}, {{}, 0}, {{0, 0}, 0}, {{0, 0, 0}, 0}};
  o.unit = {0};
  o.sym = {{}, {}, {2}, {3, 3}};
  o.comp[{2, 0, 2}] = 3;
  o.comp[{2, 1, 2}] = 3;
  o.comp[{2, 0, 1}] = 0;
  o.comp[{2, 1, 1}] = 0;
  o.comp[{3, 0, 1}] = 2;
  o.comp[{3, 1, 1}] = 2;
  o.comp[{3, 2, 1}] = 2;
  return make_multicat(std::move(o));
}

// Two colours a, b with a binary p: (a,a;b), a unary q: (b;a), and their
// composites up to arity two; everything of arity three is truncated.
MulticatRef two_colour_multicat() {
  FinMulticategory o;
  o.colours = 2;
  // 0=ua 1=ub 2=p:(a,a;b) 3=q:(b;a) 4=r1:(b,a;b) 5=r2:(a,b;b) 6=r3:(b,b;b)
  // 7=s0:(a,a;a) 8=s1:(b,a;a) 9=s2:(a,b;a) 10=s3:(b,b;a)
  o.profile = {{{0}, 0},    {{1}, 1},    {{0, 0}, 1}, {{1}, 0},
               {{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}, {{0, 0}, 0},
               {{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 0}};
  o.unit = {0, 1};
  o.sym = {{}, {}, {2}, {}, {5}, {4}, {6}, {7}, {9}, {8}, {10}};
  o.comp[{2, 0, 3}] = 4;
  o.comp[{2, 1, 3}] = 5;
  o.comp[{4, 1, 3}] = 6;
  o.comp[{5, 0, 3}] = 6;
  o.comp[{3, 0, 2}] = 7;
  o.comp[{3, 0, 4}] = 8;
  o.comp[{3, 0, 5}] = 9;
  o.comp[{3, 0, 6}] = 10;
  o.comp[{7, 0, 3}] = 8;
  o.comp[{7, 1, 3}] = 9;
  o.comp[{8, 1, 3}] = 10;
  o.comp[{9, 0, 3}] = 10;
  return make_multicat(std::move(o));
}

}  // namespace

std::vector<MulticatRef> corpus_multicats() {
  std::vector<MulticatRef> out;
  out.push_back(unit_only_multicat(1));
  out.push_back(unit_only_multicat(2));
  out.push_back(one_binary_multicat());
  out.push_back(monoid_arity3_multicat());
  out.push_back(two_colour_multicat());
  out.push_back(multicat_of_category(make_cat(walking_arrow())));
  out.push_back(multicat_of_category(make_cat(delooping(cyclic_group(2)))));
  out.push_back(multicat_of_category(make_cat(span_category())));
  return out;
}

std::vector<MultiFunctor> corpus_multifunctors(const CorpusOptions& opt) {
  std::vector<MultiFunctor> out;
  const auto cats = corpus_multicats();
  for (const auto& o : cats) out.push_back(identity_multifunctor(o));

  const auto triv = cats[0];
  const auto two = cats[1];
  const auto binary = cats[2];
  const auto monoid3 = cats[3];
  const auto mixed = cats[4];

  auto add = [&](MulticatRef dom, MulticatRef cod, std::vector<int> cm,
                 std::vector<int> mm) {
    MultiFunctor f;
    f.dom = std::move(dom);
    f.cod = std::move(cod);
    f.colour_map = std::move(cm);
    f.mor_map = std::move(mm);
    if (!multifunctor_ok(f)) throw std::logic_error("corpus multifunctor invalid");
    out.push_back(std::move(f));
  };

  add(triv, binary, {0}, {0});                       // unit inclusion
  add(triv, monoid3, {0}, {0});                      // unit inclusion
  add(triv, mixed, {0}, {0});                        // colour a
  add(triv, mixed, {1}, {1});                        // colour b
  add(two, triv, {0, 0}, {0, 0});                    // collapse
  add(two, two, {1, 0}, {1, 0});                     // swap
  add(binary, monoid3, {0}, {0, 2});                 // m to m2
  add(mixed, binary, {0, 0}, {0, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1});  // colour collapse

  // unary multifunctors induced by functors between small categories
  const std::vector<CatRef> bases = {make_cat(terminal_category()),
                                     make_cat(walking_arrow()),
                                     make_cat(parallel_pair()),
                                     make_cat(delooping(cyclic_group(2))),
                                     make_cat(span_category())};
  CorpusOptions fopt = opt;
  fopt.pair_limit = 12;
  fopt.functor_pair_limit = 6;
  for (const auto& f : corpus_functors(bases, fopt)) {
    out.push_back(multifunctor_of_functor(f));
  }
  return out;
}

std::vector<std::pair<CatRef, int>> corpus_based_categories(const CorpusOptions& opt) {
  std::vector<std::pair<CatRef, int>> out;
  std::mt19937 rng(opt.seed + 5);
  for (const auto& c : corpus_categories(opt)) {
    if (c->objects == 0) continue;
    out.emplace_back(c, 0);
    if (c->objects > 1) out.emplace_back(c, 1 + static_cast<int>(rng() % (c->objects - 1)));
  }
  return out;
}

}  // namespace cofact
