#include "cofact/multicat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "cofact/union_find.hpp"

namespace cofact {

namespace {

// Raw table lookup: absent and explicitly truncated entries coincide.
std::optional<int> lookup_comp(const FinMulticategory& o, int f, int i, int g) {
  const auto it = o.comp.find({f, i, g});
  if (it == o.comp.end() || it->second == kTruncatedComposite) return std::nullopt;
  return it->second;
}

std::vector<int> swapped(const std::vector<int>& v, int j) {
  std::vector<int> out = v;
  std::swap(out[j], out[j + 1]);
  return out;
}

}  // namespace

int tuple_count(const std::vector<int>& sizes) {
  int n = 1;
  for (int s : sizes) n *= s;
  return n;
}

int index_of_tuple(const std::vector<int>& sizes, const std::vector<int>& tuple) {
  int idx = 0;
  for (size_t i = 0; i < sizes.size(); ++i) idx = idx * sizes[i] + tuple[i];
  return idx;
}

std::vector<int> tuple_of_index(const std::vector<int>& sizes, int index) {
  std::vector<int> t(sizes.size());
  for (int i = static_cast<int>(sizes.size()) - 1; i >= 0; --i) {
    t[i] = index % sizes[i];
    index /= sizes[i];
  }
  return t;
}

MulticatRef make_multicat(FinMulticategory m) {
  for (int f = 0; f < m.morphisms(); ++f) {
    for (int i = 0; i < m.arity(f); ++i) {
      const int u = m.unit[m.profile[f].sources[i]];
      m.comp.try_emplace({f, i, u}, f);
    }
    m.comp.try_emplace({m.unit[m.profile[f].target], 0, f}, f);
  }
  return std::make_shared<const FinMulticategory>(std::move(m));
}

bool composable_multi(const FinMulticategory& o, int f, int i, int g) {
  return i >= 0 && i < o.arity(f) && o.profile[g].target == o.profile[f].sources[i];
}

std::optional<int> compose_multi(const FinMulticategory& o, int f, int i, int g) {
  if (!composable_multi(o, f, i, g))
    throw std::invalid_argument("compose_multi: profiles do not match");
  return lookup_comp(o, f, i, g);
}

std::vector<int> spliced_sources(const FinMulticategory& o, int f, int i, int g) {
  std::vector<int> out;
  const auto& fs = o.profile[f].sources;
  const auto& gs = o.profile[g].sources;
  out.insert(out.end(), fs.begin(), fs.begin() + i);
  out.insert(out.end(), gs.begin(), gs.end());
  out.insert(out.end(), fs.begin() + i + 1, fs.end());
  return out;
}

int apply_perm(const FinMulticategory& o, int f, const std::vector<int>& order) {
  const int k = o.arity(f);
  if (static_cast<int>(order.size()) != k)
    throw std::invalid_argument("apply_perm: order length does not match arity");
  std::vector<int> cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  int m = f;
  for (int p = 0; p < k; ++p) {
    int q = p;
    while (cur[q] != order[p]) ++q;
    for (; q > p; --q) {
      m = o.sym[m][q - 1];
      std::swap(cur[q - 1], cur[q]);
    }
  }
  return m;
}

std::vector<std::string> validate_multicat(const FinMulticategory& o) {
  std::vector<std::string> errors;
  const int n = o.morphisms();
  auto fail = [&](const std::string& s) { errors.push_back(s); };

  if (o.colours < 0) {
    fail("colour count negative");
    return errors;
  }
  for (int f = 0; f < n; ++f) {
    if (o.profile[f].target < 0 || o.profile[f].target >= o.colours) {
      fail("target colour out of range at morphism " + std::to_string(f));
      return errors;
    }
    for (int s : o.profile[f].sources)
      if (s < 0 || s >= o.colours) {
        fail("source colour out of range at morphism " + std::to_string(f));
        return errors;
      }
  }
  if (static_cast<int>(o.unit.size()) != o.colours) {
    fail("unit table has wrong length");
    return errors;
  }
  for (int c = 0; c < o.colours; ++c) {
    const int u = o.unit[c];
    if (u < 0 || u >= n || o.profile[u].sources != std::vector<int>{c} ||
        o.profile[u].target != c) {
      fail("unit of colour " + std::to_string(c) + " is not a (c;c) morphism");
      return errors;
    }
  }
  if (static_cast<int>(o.sym.size()) != n) {
    fail("sym table has wrong length");
    return errors;
  }
  for (int f = 0; f < n; ++f) {
    const int k = o.arity(f);
    if (static_cast<int>(o.sym[f].size()) != std::max(k - 1, 0)) {
      fail("sym row " + std::to_string(f) + " has wrong length");
      return errors;
    }
    for (int j = 0; j + 1 < k; ++j) {
      const int t = o.sym[f][j];
      if (t < 0 || t >= n || o.profile[t].sources != swapped(o.profile[f].sources, j) ||
          o.profile[t].target != o.profile[f].target) {
        fail("sym[" + std::to_string(f) + "][" + std::to_string(j) +
             "] does not have the transposed profile");
        return errors;
      }
    }
  }

  for (const auto& [key, val] : o.comp) {
    const auto [f, i, g] = key;
    if (f < 0 || f >= n || g < 0 || g >= n || !composable_multi(o, f, i, g)) {
      fail("composition key (" + std::to_string(f) + "," + std::to_string(i) + "," +
           std::to_string(g) + ") has mismatched profiles");
      return errors;
    }
    if (val == kTruncatedComposite) continue;
    if (val < 0 || val >= n || o.profile[val].sources != spliced_sources(o, f, i, g) ||
        o.profile[val].target != o.profile[f].target) {
      fail("composite of (" + std::to_string(f) + "," + std::to_string(i) + "," +
           std::to_string(g) + ") has the wrong profile");
      return errors;
    }
  }

  // Unit laws must stay inside the support.
  for (int f = 0; f < n && errors.size() < 8; ++f) {
    for (int i = 0; i < o.arity(f); ++i) {
      const auto r = lookup_comp(o, f, i, o.unit[o.profile[f].sources[i]]);
      if (r != std::optional<int>(f))
        fail("right unit law fails at morphism " + std::to_string(f) + " slot " +
             std::to_string(i));
    }
    if (lookup_comp(o, o.unit[o.profile[f].target], 0, f) != std::optional<int>(f))
      fail("left unit law fails at morphism " + std::to_string(f));
  }

  // Transposition relations presenting the symmetric groups.
  for (int f = 0; f < n && errors.size() < 8; ++f) {
    const int k = o.arity(f);
    for (int j = 0; j + 1 < k; ++j) {
      if (o.sym[o.sym[f][j]][j] != f)
        fail("transposition at slot " + std::to_string(j) +
             " is not an involution on morphism " + std::to_string(f));
      for (int l = j + 2; l + 1 < k; ++l)
        if (o.sym[o.sym[f][j]][l] != o.sym[o.sym[f][l]][j])
          fail("distant transpositions do not commute on morphism " + std::to_string(f));
      if (j + 2 < k) {
        const int a = o.sym[o.sym[o.sym[f][j]][j + 1]][j];
        const int b = o.sym[o.sym[o.sym[f][j + 1]][j]][j + 1];
        if (a != b) fail("braid relation fails on morphism " + std::to_string(f));
      }
    }
  }

  // Equivariance of substitution with the transpositions, truncation-aware:
  // the support is sym-closed, so both sides must be present or both absent.
  for (const auto& [key, val] : o.comp) {
    if (errors.size() >= 8) break;
    const auto [f, i, g] = key;
    const bool present = val != kTruncatedComposite;
    const int kg = o.arity(g);
    for (int j = 0; j + 1 < kg; ++j) {
      const auto lhs = lookup_comp(o, f, i, o.sym[g][j]);
      if (lhs.has_value() != present ||
          (present && lhs != std::optional<int>(o.sym[val][i + j])))
        fail("inner equivariance fails at composition (" + std::to_string(f) + "," +
             std::to_string(i) + "," + std::to_string(g) + ")");
    }
    const int kf = o.arity(f);
    for (int j = 0; j + 1 < kf; ++j) {
      if (j + 1 == i || j == i) continue;
      const auto lhs = lookup_comp(o, o.sym[f][j], i, g);
      const int jj = j + 1 < i ? j : j + kg - 1;
      if (lhs.has_value() != present ||
          (present && lhs != std::optional<int>(o.sym[val][jj])))
        fail("outer equivariance fails at composition (" + std::to_string(f) + "," +
             std::to_string(i) + "," + std::to_string(g) + ")");
    }
    if (i >= 1) {
      // Swapping the slot receiving g with its left neighbour moves the
      // whole substituted block one place left in the composite.
      const auto lhs = lookup_comp(o, o.sym[f][i - 1], i - 1, g);
      if (lhs.has_value() != present)
        fail("block equivariance presence mismatch at composition (" +
             std::to_string(f) + "," + std::to_string(i) + "," + std::to_string(g) + ")");
      else if (present) {
        const int kh = o.arity(val);
        std::vector<int> order;
        for (int p = 0; p < i - 1; ++p) order.push_back(p);
        for (int p = 0; p < kg; ++p) order.push_back(i + p);
        order.push_back(i - 1);
        for (int p = i + kg; p < kh; ++p) order.push_back(p);
        if (lhs != std::optional<int>(apply_perm(o, val, order)))
          fail("block equivariance fails at composition (" + std::to_string(f) + "," +
               std::to_string(i) + "," + std::to_string(g) + ")");
      }
    }
  }

  // Associativity of substitution wherever every intermediate is supported.
  for (const auto& [key, val] : o.comp) {
    if (errors.size() >= 8) break;
    if (val == kTruncatedComposite) continue;
    const auto [f, i, g] = key;
    const int h = val;
    for (const auto& [key2, val2] : o.comp) {
      if (val2 == kTruncatedComposite) continue;
      const auto [g2, j, e] = key2;
      if (g2 == g) {
        const auto lhs = lookup_comp(o, h, i + j, e);
        const auto rhs = lookup_comp(o, f, i, val2);
        if (lhs && rhs && lhs != rhs)
          fail("nested associativity fails at ((" + std::to_string(f) + "," +
               std::to_string(i) + "," + std::to_string(g) + ")," + std::to_string(j) +
               "," + std::to_string(e) + ")");
      }
      if (g2 == f && j < i) {
        const auto lhs = lookup_comp(o, h, j, e);
        const auto rhs = lookup_comp(o, val2, i + o.arity(e) - 1, g);
        if (lhs && rhs && lhs != rhs)
          fail("disjoint associativity fails at morphism pair (" + std::to_string(f) +
               "," + std::to_string(g) + "," + std::to_string(e) + ")");
      }
    }
  }
  return errors;
}

bool multicat_ok(const FinMulticategory& o) { return validate_multicat(o).empty(); }

bool multicat_equal(const FinMulticategory& a, const FinMulticategory& b) {
  return a.colours == b.colours && a.profile == b.profile && a.unit == b.unit &&
         a.comp == b.comp && a.sym == b.sym;
}

std::vector<std::string> validate_algebra(const MultiAlgebra& a) {
  std::vector<std::string> errors;
  if (!a.base) {
    errors.push_back("algebra has no base multicategory");
    return errors;
  }
  const FinMulticategory& o = *a.base;
  if (static_cast<int>(a.carrier.size()) != o.colours) {
    errors.push_back("carrier has wrong length");
    return errors;
  }
  if (static_cast<int>(a.structure.size()) != o.morphisms()) {
    errors.push_back("structure has wrong length");
    return errors;
  }
  auto sizes_of = [&](int f) {
    std::vector<int> s;
    for (int c : o.profile[f].sources) s.push_back(a.carrier[c]);
    return s;
  };
  for (int f = 0; f < o.morphisms(); ++f) {
    const auto sizes = sizes_of(f);
    if (static_cast<int>(a.structure[f].size()) != tuple_count(sizes)) {
      errors.push_back("structure row " + std::to_string(f) + " has wrong length");
      return errors;
    }
    for (int v : a.structure[f])
      if (v < 0 || v >= a.carrier[o.profile[f].target]) {
        errors.push_back("structure value out of range at morphism " + std::to_string(f));
        return errors;
      }
  }
  for (int c = 0; c < o.colours; ++c)
    for (int x = 0; x < a.carrier[c]; ++x)
      if (a.structure[o.unit[c]][x] != x) {
        errors.push_back("unit of colour " + std::to_string(c) +
                         " does not act as the identity");
        break;
      }
  for (const auto& [key, val] : o.comp) {
    if (val == kTruncatedComposite) continue;
    if (!errors.empty()) break;
    const auto [f, i, g] = key;
    const auto sizes = sizes_of(val);
    const int kg = o.arity(g);
    for (int t = 0; t < tuple_count(sizes); ++t) {
      const auto tuple = tuple_of_index(sizes, t);
      const std::vector<int> gt(tuple.begin() + i, tuple.begin() + i + kg);
      std::vector<int> ft(tuple.begin(), tuple.begin() + i);
      ft.push_back(a.structure[g][index_of_tuple(sizes_of(g), gt)]);
      ft.insert(ft.end(), tuple.begin() + i + kg, tuple.end());
      if (a.structure[val][t] != a.structure[f][index_of_tuple(sizes_of(f), ft)]) {
        errors.push_back("structure does not respect composition at (" +
                         std::to_string(f) + "," + std::to_string(i) + "," +
                         std::to_string(g) + ")");
        break;
      }
    }
  }
  for (int f = 0; f < o.morphisms() && errors.empty(); ++f) {
    const auto sizes = sizes_of(f);
    for (int j = 0; j + 1 < o.arity(f); ++j) {
      for (int t = 0; t < tuple_count(sizes); ++t) {
        const auto tuple = tuple_of_index(sizes, t);
        const auto st = swapped(tuple, j);
        if (a.structure[f][t] !=
            a.structure[o.sym[f][j]][index_of_tuple(swapped(sizes, j), st)]) {
          errors.push_back("structure does not respect the transposition at morphism " +
                           std::to_string(f));
          break;
        }
      }
    }
  }
  return errors;
}

bool algebra_ok(const MultiAlgebra& a) { return validate_algebra(a).empty(); }

bool algebra_equal(const MultiAlgebra& a, const MultiAlgebra& b) {
  return multicat_equal(*a.base, *b.base) && a.carrier == b.carrier &&
         a.structure == b.structure;
}

MultiAlgebra terminal_algebra(const MulticatRef& o) {
  MultiAlgebra a;
  a.base = o;
  a.carrier.assign(o->colours, 1);
  for (int f = 0; f < o->morphisms(); ++f) a.structure.push_back({0});
  return a;
}

bool algebra_mor_ok(const MultiAlgebra& a, const MultiAlgebra& b, const AlgebraMor& m) {
  const FinMulticategory& o = *a.base;
  if (!multicat_equal(o, *b.base)) return false;
  if (static_cast<int>(m.at.size()) != o.colours) return false;
  for (int c = 0; c < o.colours; ++c) {
    if (static_cast<int>(m.at[c].size()) != a.carrier[c]) return false;
    for (int v : m.at[c])
      if (v < 0 || v >= b.carrier[c]) return false;
  }
  for (int f = 0; f < o.morphisms(); ++f) {
    std::vector<int> sa, sb;
    for (int c : o.profile[f].sources) {
      sa.push_back(a.carrier[c]);
      sb.push_back(b.carrier[c]);
    }
    for (int t = 0; t < tuple_count(sa); ++t) {
      const auto tuple = tuple_of_index(sa, t);
      std::vector<int> mapped(tuple.size());
      for (size_t i = 0; i < tuple.size(); ++i)
        mapped[i] = m.at[o.profile[f].sources[i]][tuple[i]];
      if (m.at[o.profile[f].target][a.structure[f][t]] !=
          b.structure[f][index_of_tuple(sb, mapped)])
        return false;
    }
  }
  return true;
}

std::vector<AlgebraMor> enumerate_algebra_mors(const MultiAlgebra& a,
                                               const MultiAlgebra& b) {
  const FinMulticategory& o = *a.base;
  std::vector<AlgebraMor> out;
  AlgebraMor m;
  m.at.resize(o.colours);
  for (int c = 0; c < o.colours; ++c) m.at[c].assign(a.carrier[c], 0);
  // Odometer over all families of carrier maps; empty target with non-empty
  // source admits no maps at all.
  for (int c = 0; c < o.colours; ++c)
    if (a.carrier[c] > 0 && b.carrier[c] == 0) return out;
  while (true) {
    if (algebra_mor_ok(a, b, m)) out.push_back(m);
    int c = 0, i = 0;
    while (c < o.colours) {
      if (i == a.carrier[c]) {
        ++c;
        i = 0;
        continue;
      }
      if (m.at[c][i] + 1 < b.carrier[c]) {
        ++m.at[c][i];
        break;
      }
      m.at[c][i] = 0;
      ++i;
    }
    if (c == o.colours) break;
  }
  return out;
}

std::vector<MultiAlgebra> enumerate_algebras(const MulticatRef& o, int max_size) {
  std::vector<MultiAlgebra> out;
  std::vector<int> sizes(o->colours, 0);
  while (true) {
    MultiAlgebra a;
    a.base = o;
    a.carrier = sizes;
    a.structure.resize(o->morphisms());
    std::vector<int> rows(o->morphisms());
    bool feasible = true;
    for (int f = 0; f < o->morphisms(); ++f) {
      std::vector<int> s;
      for (int c : o->profile[f].sources) s.push_back(sizes[c]);
      rows[f] = tuple_count(s);
      a.structure[f].assign(rows[f], 0);
      if (rows[f] > 0 && sizes[o->profile[f].target] == 0) feasible = false;
    }
    if (feasible) {
      // Odometer over every structure table, validating complete candidates.
      while (true) {
        if (algebra_ok(a)) out.push_back(a);
        int f = 0, t = 0;
        while (f < o->morphisms()) {
          if (t == rows[f]) {
            ++f;
            t = 0;
            continue;
          }
          if (a.structure[f][t] + 1 < sizes[o->profile[f].target]) {
            ++a.structure[f][t];
            break;
          }
          a.structure[f][t] = 0;
          ++t;
        }
        if (f == o->morphisms()) break;
      }
    }
    int c = 0;
    while (c < o->colours && sizes[c] == max_size) sizes[c++] = 0;
    if (c == o->colours) break;
    ++sizes[c];
  }
  return out;
}

std::vector<std::string> validate_multifunctor(const MultiFunctor& f) {
  std::vector<std::string> errors;
  if (!f.dom || !f.cod) {
    errors.push_back("functor endpoints missing");
    return errors;
  }
  const FinMulticategory& a = *f.dom;
  const FinMulticategory& b = *f.cod;
  if (static_cast<int>(f.colour_map.size()) != a.colours ||
      static_cast<int>(f.mor_map.size()) != a.morphisms()) {
    errors.push_back("map tables have wrong length");
    return errors;
  }
  for (int c : f.colour_map)
    if (c < 0 || c >= b.colours) {
      errors.push_back("colour image out of range");
      return errors;
    }
  for (int m = 0; m < a.morphisms(); ++m) {
    const int fm = f.mor_map[m];
    if (fm < 0 || fm >= b.morphisms()) {
      errors.push_back("morphism image out of range");
      return errors;
    }
    std::vector<int> mapped;
    for (int s : a.profile[m].sources) mapped.push_back(f.colour_map[s]);
    if (b.profile[fm].sources != mapped ||
        b.profile[fm].target != f.colour_map[a.profile[m].target]) {
      errors.push_back("morphism " + std::to_string(m) + " is not sent over its profile");
      return errors;
    }
  }
  for (int c = 0; c < a.colours; ++c)
    if (f.mor_map[a.unit[c]] != b.unit[f.colour_map[c]])
      errors.push_back("unit of colour " + std::to_string(c) + " is not preserved");
  for (const auto& [key, val] : a.comp) {
    if (val == kTruncatedComposite) continue;
    const auto [m, i, g] = key;
    const auto image = lookup_comp(b, f.mor_map[m], i, f.mor_map[g]);
    if (image != std::optional<int>(f.mor_map[val])) {
      errors.push_back("composition at (" + std::to_string(m) + "," + std::to_string(i) +
                       "," + std::to_string(g) + ") is not preserved");
      if (errors.size() >= 8) return errors;
    }
  }
  for (int m = 0; m < a.morphisms(); ++m)
    for (int j = 0; j + 1 < a.arity(m); ++j)
      if (f.mor_map[a.sym[m][j]] != b.sym[f.mor_map[m]][j]) {
        errors.push_back("transposition at morphism " + std::to_string(m) +
                         " is not preserved");
        if (errors.size() >= 8) return errors;
      }
  return errors;
}

bool multifunctor_ok(const MultiFunctor& f) { return validate_multifunctor(f).empty(); }

bool multifunctor_equal(const MultiFunctor& a, const MultiFunctor& b) {
  return multicat_equal(*a.dom, *b.dom) && multicat_equal(*a.cod, *b.cod) &&
         a.colour_map == b.colour_map && a.mor_map == b.mor_map;
}

MultiFunctor identity_multifunctor(const MulticatRef& o) {
  MultiFunctor f;
  f.dom = o;
  f.cod = o;
  f.colour_map.resize(o->colours);
  std::iota(f.colour_map.begin(), f.colour_map.end(), 0);
  f.mor_map.resize(o->morphisms());
  std::iota(f.mor_map.begin(), f.mor_map.end(), 0);
  return f;
}

MultiFunctor compose_multifunctors(const MultiFunctor& g, const MultiFunctor& f) {
  if (!multicat_equal(*g.dom, *f.cod))
    throw std::invalid_argument("compose_multifunctors: middle objects differ");
  MultiFunctor out;
  out.dom = f.dom;
  out.cod = g.cod;
  for (int c : f.colour_map) out.colour_map.push_back(g.colour_map[c]);
  for (int m : f.mor_map) out.mor_map.push_back(g.mor_map[m]);
  return out;
}

int ElementsMulticat::colour_index(int base_colour, int element) const {
  return colour_lookup.at({base_colour, element});
}

int ElementsMulticat::morphism_index(int base_mor, int tuple_index) const {
  return morphism_lookup.at({base_mor, tuple_index});
}

ElementsMulticat elements_multicat(const MultiAlgebra& a) {
  if (!algebra_ok(a))
    throw std::invalid_argument("elements_multicat: invalid algebra");
  const FinMulticategory& o = *a.base;
  ElementsMulticat out;
  for (int c = 0; c < o.colours; ++c)
    for (int x = 0; x < a.carrier[c]; ++x) {
      out.colour_lookup[{c, x}] = static_cast<int>(out.colour_labels.size());
      out.colour_labels.push_back({c, x});
    }

  auto sizes_of = [&](int f) {
    std::vector<int> s;
    for (int c : o.profile[f].sources) s.push_back(a.carrier[c]);
    return s;
  };

  FinMulticategory e;
  e.colours = static_cast<int>(out.colour_labels.size());
  for (int f = 0; f < o.morphisms(); ++f) {
    const auto sizes = sizes_of(f);
    for (int t = 0; t < tuple_count(sizes); ++t) {
      const auto tuple = tuple_of_index(sizes, t);
      MultiProfile pr;
      for (size_t i = 0; i < tuple.size(); ++i)
        pr.sources.push_back(out.colour_index(o.profile[f].sources[i], tuple[i]));
      pr.target = out.colour_index(o.profile[f].target, a.structure[f][t]);
      out.morphism_lookup[{f, t}] = static_cast<int>(out.morphism_labels.size());
      out.morphism_labels.push_back({f, t});
      e.profile.push_back(std::move(pr));
    }
  }
  e.unit.resize(e.colours);
  for (int i = 0; i < e.colours; ++i) {
    const auto [c, x] = out.colour_labels[i];
    e.unit[i] = out.morphism_index(o.unit[c], x);
  }
  e.sym.resize(e.profile.size());
  for (size_t i = 0; i < out.morphism_labels.size(); ++i) {
    const auto [f, t] = out.morphism_labels[i];
    const auto sizes = sizes_of(f);
    const auto tuple = tuple_of_index(sizes, t);
    for (int j = 0; j + 1 < o.arity(f); ++j)
      e.sym[i].push_back(out.morphism_index(
          o.sym[f][j], index_of_tuple(swapped(sizes, j), swapped(tuple, j))));
  }
  for (const auto& [key, val] : o.comp) {
    const auto [f, i, g] = key;
    const auto fsizes = sizes_of(f);
    const auto gsizes = sizes_of(g);
    for (int tg = 0; tg < tuple_count(gsizes); ++tg) {
      const int y = a.structure[g][tg];
      const auto gt = tuple_of_index(gsizes, tg);
      for (int tf = 0; tf < tuple_count(fsizes); ++tf) {
        const auto ft = tuple_of_index(fsizes, tf);
        if (ft[i] != y) continue;
        const int ef = out.morphism_index(f, tf);
        const int eg = out.morphism_index(g, tg);
        if (val == kTruncatedComposite) {
          e.comp[{ef, i, eg}] = kTruncatedComposite;
          continue;
        }
        std::vector<int> spliced(ft.begin(), ft.begin() + i);
        spliced.insert(spliced.end(), gt.begin(), gt.end());
        spliced.insert(spliced.end(), ft.begin() + i + 1, ft.end());
        e.comp[{ef, i, eg}] =
            out.morphism_index(val, index_of_tuple(sizes_of(val), spliced));
      }
    }
  }
  out.cat = make_multicat(std::move(e));
  out.projection.dom = out.cat;
  out.projection.cod = a.base;
  for (const auto& [c, x] : out.colour_labels) {
    (void)x;
    out.projection.colour_map.push_back(c);
  }
  for (const auto& [f, t] : out.morphism_labels) {
    (void)t;
    out.projection.mor_map.push_back(f);
  }
  return out;
}

bool is_multicovering(const MultiFunctor& p) {
  const FinMulticategory& e = *p.dom;
  const FinMulticategory& o = *p.cod;
  std::map<std::pair<int, std::vector<int>>, int> lifts;
  for (int m = 0; m < e.morphisms(); ++m)
    ++lifts[{p.mor_map[m], e.profile[m].sources}];

  std::vector<std::vector<int>> preimage(o.colours);
  for (int c = 0; c < e.colours; ++c) preimage[p.colour_map[c]].push_back(c);

  for (int f = 0; f < o.morphisms(); ++f) {
    const auto& sources = o.profile[f].sources;
    const int k = static_cast<int>(sources.size());
    std::vector<int> choice(k, 0);
    while (true) {
      std::vector<int> tuple(k);
      bool possible = true;
      for (int i = 0; i < k && possible; ++i) {
        if (preimage[sources[i]].empty()) possible = false;
        else tuple[i] = preimage[sources[i]][choice[i]];
      }
      if (!possible) break;
      const auto it = lifts.find({f, tuple});
      if (it == lifts.end() || it->second != 1) return false;
      int i = 0;
      while (i < k && choice[i] + 1 == static_cast<int>(preimage[sources[i]].size()))
        choice[i++] = 0;
      if (i == k) break;
      ++choice[i];
    }
  }
  return true;
}

namespace {

// Vertices of the comma structure over one codomain colour: pairs of a word
// of domain colours and a codomain morphism from its image to the colour.
struct CommaGraph {
  std::vector<std::pair<std::vector<int>, int>> verts;  // (word, morphism)
  std::map<std::pair<std::vector<int>, int>, int> index;
  std::vector<int> block_of;
  std::vector<int> reps;  // least vertex per component
};

std::vector<CommaGraph> build_comma_graphs(const MultiFunctor& fn, bool* truncated) {
  const FinMulticategory& o = *fn.dom;
  const FinMulticategory& p = *fn.cod;

  std::vector<std::vector<int>> preimage(p.colours);
  for (int c = 0; c < o.colours; ++c) preimage[fn.colour_map[c]].push_back(c);
  std::vector<std::vector<int>> with_target(o.colours);  // domain morphisms by target
  for (int f = 0; f < o.morphisms(); ++f)
    with_target[o.profile[f].target].push_back(f);

  std::vector<CommaGraph> graph(p.colours);
  for (int g = 0; g < p.morphisms(); ++g) {
    const int c = p.profile[g].target;
    const auto& sources = p.profile[g].sources;
    const int k = static_cast<int>(sources.size());
    std::vector<int> choice(k, 0);
    while (true) {
      std::vector<int> word(k);
      bool possible = true;
      for (int i = 0; i < k && possible; ++i) {
        if (preimage[sources[i]].empty()) possible = false;
        else word[i] = preimage[sources[i]][choice[i]];
      }
      if (!possible) break;
      graph[c].index[{word, g}] = static_cast<int>(graph[c].verts.size());
      graph[c].verts.push_back({word, g});
      int i = 0;
      while (i < k && choice[i] + 1 == static_cast<int>(preimage[sources[i]].size()))
        choice[i++] = 0;
      if (i == k) break;
      ++choice[i];
    }
  }

  for (int c = 0; c < p.colours; ++c) {
    auto& gr = graph[c];
    UnionFind uf(static_cast<int>(gr.verts.size()));
    for (int v = 0; v < static_cast<int>(gr.verts.size()); ++v) {
      const auto& [word, g] = gr.verts[v];
      const int k = static_cast<int>(word.size());
      // Transposition edges keep every interleaving of blocks identified.
      for (int j = 0; j + 1 < k; ++j)
        uf.unite(v, gr.index.at({swapped(word, j), p.sym[g][j]}));
      // Substitution edges along domain multimorphisms.
      for (int j = 0; j < k; ++j) {
        for (int f : with_target[word[j]]) {
          const auto h = lookup_comp(p, g, j, fn.mor_map[f]);
          if (!h) {
            *truncated = true;
            continue;
          }
          std::vector<int> w2(word.begin(), word.begin() + j);
          w2.insert(w2.end(), o.profile[f].sources.begin(), o.profile[f].sources.end());
          w2.insert(w2.end(), word.begin() + j + 1, word.end());
          uf.unite(v, gr.index.at({w2, *h}));
        }
      }
    }
    const auto blocks = uf.blocks();
    gr.block_of.assign(gr.verts.size(), -1);
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
      gr.reps.push_back(blocks[b][0]);
      for (int member : blocks[b]) gr.block_of[member] = b;
    }
  }
  return graph;
}

}  // namespace

PushforwardResult multifunctor_pushforward_terminal(const MultiFunctor& fn) {
  const FinMulticategory& p = *fn.cod;
  PushforwardResult res;
  const auto graph = build_comma_graphs(fn, &res.truncated);

  MultiAlgebra alg;
  alg.base = fn.cod;
  alg.carrier.resize(p.colours);
  for (int c = 0; c < p.colours; ++c)
    alg.carrier[c] = static_cast<int>(graph[c].reps.size());
  alg.structure.resize(p.morphisms());
  for (int h = 0; h < p.morphisms(); ++h) {
    const auto& sources = p.profile[h].sources;
    const int c = p.profile[h].target;
    const int k = static_cast<int>(sources.size());
    std::vector<int> sizes(k);
    for (int i = 0; i < k; ++i) sizes[i] = alg.carrier[sources[i]];
    alg.structure[h].assign(tuple_count(sizes), 0);
    for (int t = 0; t < tuple_count(sizes); ++t) {
      const auto tuple = tuple_of_index(sizes, t);
      // Substitute representative morphisms right to left so that earlier
      // slot indices stay stable, then place the concatenated word.
      int acc = h;
      std::vector<int> word;
      bool ok = true;
      for (int i = k - 1; i >= 0 && ok; --i) {
        const auto& [w, g] = graph[sources[i]].verts[graph[sources[i]].reps[tuple[i]]];
        const auto next = lookup_comp(p, acc, i, g);
        if (!next) {
          res.truncated = true;
          ok = false;
        } else {
          acc = *next;
          word.insert(word.begin(), w.begin(), w.end());
        }
      }
      if (ok) alg.structure[h][t] = graph[c].block_of[graph[c].index.at({word, acc})];
    }
  }
  res.algebra = std::move(alg);
  if (!res.truncated && !algebra_ok(res.algebra))
    throw std::logic_error("multifunctor_pushforward_terminal: components are not functorial");
  return res;
}

bool all_singleton(const MultiAlgebra& a) {
  for (int s : a.carrier)
    if (s != 1) return false;
  return true;
}

MultiFactorisation factorise_multi(const MultiFunctor& fn) {
  const FinMulticategory& o = *fn.dom;
  PushforwardResult push = multifunctor_pushforward_terminal(fn);
  MultiFactorisation out;
  out.truncated = push.truncated;
  out.classifying = push.algebra;
  // A truncated pushforward can leave holes in the classifying algebra; the
  // factorisation then does not exist within the declared support, so the
  // flag is returned with the parts left empty.
  if (push.truncated && !algebra_ok(push.algebra)) return out;
  const ElementsMulticat elems = elements_multicat(push.algebra);
  out.covering_part = elems.projection;

  // Component of the canonical one-letter vertex ((X), unit) of each domain
  // colour, read off the same comma graphs that built the algebra.
  const FinMulticategory& p = *fn.cod;
  bool ignored = false;
  const auto graph = build_comma_graphs(fn, &ignored);
  std::vector<int> colour_component(o.colours);
  for (int x = 0; x < o.colours; ++x) {
    const int c = fn.colour_map[x];
    colour_component[x] = graph[c].block_of[graph[c].index.at({{x}, p.unit[c]})];
  }

  out.connected_part.dom = fn.dom;
  out.connected_part.cod = elems.cat;
  for (int x = 0; x < o.colours; ++x)
    out.connected_part.colour_map.push_back(
        elems.colour_index(fn.colour_map[x], colour_component[x]));
  for (int f = 0; f < o.morphisms(); ++f) {
    const int pf = fn.mor_map[f];
    std::vector<int> sizes, tuple;
    for (int s : p.profile[pf].sources) sizes.push_back(push.algebra.carrier[s]);
    for (int s : o.profile[f].sources) tuple.push_back(colour_component[s]);
    out.connected_part.mor_map.push_back(
        elems.morphism_index(pf, index_of_tuple(sizes, tuple)));
  }
  if (!out.truncated && !multifunctor_ok(out.connected_part))
    throw std::logic_error("factorise_multi: connected part is not a multifunctor");
  return out;
}

std::vector<FOMorphism> fo_hom(const FinMulticategory& o, const std::vector<int>& v,
                               const std::vector<int>& w) {
  const int k = static_cast<int>(v.size());
  const int l = static_cast<int>(w.size());
  std::vector<FOMorphism> out;
  std::vector<int> phi(k, 0);
  if (k > 0 && l == 0) return out;
  while (true) {
    // Candidates per target letter: morphisms whose sources read the fibre.
    std::vector<std::vector<int>> cands(l);
    bool any = true;
    for (int j = 0; j < l && any; ++j) {
      std::vector<int> fibre;
      for (int i = 0; i < k; ++i)
        if (phi[i] == j) fibre.push_back(v[i]);
      for (int f = 0; f < o.morphisms(); ++f)
        if (o.profile[f].sources == fibre && o.profile[f].target == w[j])
          cands[j].push_back(f);
      if (cands[j].empty()) any = false;
    }
    if (any) {
      std::vector<int> pick(l, 0);
      while (true) {
        FOMorphism m;
        m.phi = phi;
        for (int j = 0; j < l; ++j) m.components.push_back(cands[j][pick[j]]);
        out.push_back(std::move(m));
        int j = 0;
        while (j < l && pick[j] + 1 == static_cast<int>(cands[j].size())) pick[j++] = 0;
        if (j == l) break;
        ++pick[j];
      }
    }
    int i = 0;
    while (i < k && phi[i] + 1 == l) phi[i++] = 0;
    if (i == k) break;
    ++phi[i];
  }
  return out;
}

FOMorphism fo_identity(const FinMulticategory& o, const std::vector<int>& word) {
  FOMorphism m;
  for (size_t i = 0; i < word.size(); ++i) {
    m.phi.push_back(static_cast<int>(i));
    m.components.push_back(o.unit[word[i]]);
  }
  return m;
}

std::optional<FOMorphism> fo_compose(const FinMulticategory& o,
                                     const std::vector<int>& v,
                                     const std::vector<int>& w,
                                     const std::vector<int>& u,
                                     const FOMorphism& second,
                                     const FOMorphism& first) {
  const int k = static_cast<int>(v.size());
  (void)w;
  FOMorphism out;
  out.phi.resize(k);
  for (int i = 0; i < k; ++i) out.phi[i] = second.phi[first.phi[i]];
  for (int m = 0; m < static_cast<int>(u.size()); ++m) {
    std::vector<int> js;  // fibre of second.phi over m, ascending
    for (int j = 0; j < static_cast<int>(second.phi.size()); ++j)
      if (second.phi[j] == m) js.push_back(j);
    int acc = second.components[m];
    std::vector<int> cur;  // v-positions in the current source order of acc
    for (int p = static_cast<int>(js.size()) - 1; p >= 0; --p) {
      const auto r = compose_multi(o, acc, p, first.components[js[p]]);
      if (!r) return std::nullopt;
      acc = *r;
      std::vector<int> positions;
      for (int i = 0; i < k; ++i)
        if (first.phi[i] == js[p]) positions.push_back(i);
      cur.insert(cur.begin(), positions.begin(), positions.end());
    }
    std::vector<int> target = cur;
    std::sort(target.begin(), target.end());
    std::vector<int> order(cur.size());
    for (size_t q = 0; q < target.size(); ++q)
      order[q] = static_cast<int>(
          std::find(cur.begin(), cur.end(), target[q]) - cur.begin());
    out.components.push_back(apply_perm(o, acc, order));
  }
  return out;
}

MulticatRef multicat_of_category(const CatRef& c) {
  FinMulticategory o;
  o.colours = c->objects;
  for (int m = 0; m < c->morphisms(); ++m)
    o.profile.push_back({{c->src[m]}, c->tgt[m]});
  o.unit = c->identity;
  o.sym.assign(c->morphisms(), {});
  for (int g = 0; g < c->morphisms(); ++g)
    for (int f = 0; f < c->morphisms(); ++f)
      if (c->composable(g, f)) o.comp[{g, 0, f}] = c->comp[g][f];
  return make_multicat(std::move(o));
}

CatRef category_of_multicat(const FinMulticategory& o) {
  FinCategory c;
  c.objects = o.colours;
  for (int m = 0; m < o.morphisms(); ++m) {
    if (o.arity(m) != 1)
      throw std::invalid_argument("category_of_multicat: input is not unary-only");
    c.src.push_back(o.profile[m].sources[0]);
    c.tgt.push_back(o.profile[m].target);
  }
  c.identity = o.unit;
  c.comp.assign(o.morphisms(), std::vector<int>(o.morphisms(), kNone));
  for (int g = 0; g < o.morphisms(); ++g)
    for (int f = 0; f < o.morphisms(); ++f) {
      if (c.tgt[f] != c.src[g]) continue;
      const auto r = lookup_comp(o, g, 0, f);
      if (!r)
        throw std::invalid_argument("category_of_multicat: truncated unary composite");
      c.comp[g][f] = *r;
    }
  return make_cat(std::move(c));
}

MultiFunctor multifunctor_of_functor(const FunctorData& f) {
  MultiFunctor out;
  out.dom = multicat_of_category(f.dom);
  out.cod = multicat_of_category(f.cod);
  out.colour_map = f.obj_map;
  out.mor_map = f.mor_map;
  return out;
}

FunctorData functor_of_multifunctor(const MultiFunctor& f) {
  FunctorData out;
  out.dom = category_of_multicat(*f.dom);
  out.cod = category_of_multicat(*f.cod);
  out.obj_map = f.colour_map;
  out.mor_map = f.mor_map;
  return out;
}

MultiAlgebra algebra_of_diagram(const SetDiagram& x) {
  if (x.variance != Variance::Covariant)
    throw std::invalid_argument("algebra_of_diagram: diagram must be covariant");
  MultiAlgebra a;
  a.base = multicat_of_category(x.base);
  a.carrier = x.carrier;
  a.structure = x.action;
  return a;
}

SetDiagram diagram_of_algebra(const MultiAlgebra& a, const CatRef& base) {
  SetDiagram x;
  x.base = base;
  x.variance = Variance::Covariant;
  x.carrier = a.carrier;
  x.action = a.structure;
  return x;
}

}  // namespace cofact
