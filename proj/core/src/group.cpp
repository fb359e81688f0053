#include "cofact/group.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "cofact/union_find.hpp"

namespace cofact {

namespace {

bool in_range(int v, int n) { return v >= 0 && v < n; }

// Permutations of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<int> element_orders(const FinGroup& g) {
  std::vector<int> ord(g.order, 0);
  for (int a = 0; a < g.order; ++a) {
    int x = a;
    int k = 1;
    while (x != g.unit) {
      x = g.mul[x][a];
      ++k;
    }
    ord[a] = k;
  }
  return ord;
}

}  // namespace

std::vector<std::string> validate_group(const FinGroup& g) {
  std::vector<std::string> errors;
  const int n = g.order;
  if (n <= 0) {
    errors.push_back("order must be positive");
    return errors;
  }
  if (static_cast<int>(g.mul.size()) != n) {
    errors.push_back("mul table has wrong number of rows");
    return errors;
  }
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(g.mul[a].size()) != n) {
      errors.push_back("mul row " + std::to_string(a) + " has wrong length");
      return errors;
    }
    for (int b = 0; b < n; ++b) {
      if (!in_range(g.mul[a][b], n)) {
        errors.push_back("mul[" + std::to_string(a) + "][" + std::to_string(b) +
                         "] out of range");
        return errors;
      }
    }
  }
  if (!in_range(g.unit, n)) {
    errors.push_back("unit out of range");
    return errors;
  }
  for (int a = 0; a < n; ++a) {
    if (g.mul[g.unit][a] != a || g.mul[a][g.unit] != a) {
      errors.push_back("unit law fails at element " + std::to_string(a));
    }
  }
  for (int a = 0; a < n && errors.size() < 8; ++a) {
    for (int b = 0; b < n && errors.size() < 8; ++b) {
      for (int c = 0; c < n && errors.size() < 8; ++c) {
        if (g.mul[g.mul[a][b]][c] != g.mul[a][g.mul[b][c]]) {
          errors.push_back("associativity fails at (" + std::to_string(a) +
                           "," + std::to_string(b) + "," + std::to_string(c) +
                           ")");
        }
      }
    }
  }
  if (static_cast<int>(g.inverse.size()) != n) {
    errors.push_back("inverse table has wrong length");
    return errors;
  }
  for (int a = 0; a < n; ++a) {
    if (!in_range(g.inverse[a], n) || g.mul[a][g.inverse[a]] != g.unit ||
        g.mul[g.inverse[a]][a] != g.unit) {
      errors.push_back("inverse fails at element " + std::to_string(a));
    }
  }
  return errors;
}

bool group_ok(const FinGroup& g) { return validate_group(g).empty(); }

FinGroup make_group(std::vector<std::vector<int>> mul, int unit) {
  FinGroup g;
  g.order = static_cast<int>(mul.size());
  g.mul = std::move(mul);
  g.unit = unit;
  g.inverse.assign(g.order, -1);
  for (int a = 0; a < g.order; ++a) {
    for (int b = 0; b < g.order; ++b) {
      if (a < static_cast<int>(g.mul.size()) &&
          b < static_cast<int>(g.mul[a].size()) && g.mul[a][b] == unit &&
          g.mul[b][a] == unit) {
        g.inverse[a] = b;
        break;
      }
    }
  }
  auto errors = validate_group(g);
  if (!errors.empty()) throw std::invalid_argument("make_group: " + errors[0]);
  return g;
}

FinGroup trivial_group() { return make_group({{0}}, 0); }

FinGroup cyclic_group(int n) {
  if (n <= 0) throw std::invalid_argument("cyclic_group: order must be positive");
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
  return make_group(std::move(mul), 0);
}

FinGroup klein_four() { return group_product(cyclic_group(2), cyclic_group(2)); }

FinGroup sym3() {
  // Elements are the permutations of {0,1,2} in lexicographic order;
  // mul[a][b] applies b first, then a.
  auto perms = all_permutations(3);
  const int n = 6;
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      std::vector<int> c(3);
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      mul[a][b] = static_cast<int>(
          std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return make_group(std::move(mul), 0);
}

FinGroup group_product(const FinGroup& a, const FinGroup& b) {
  const int n = a.order * b.order;
  auto code = [&](int i, int j) { return i * b.order + j; };
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int i = 0; i < a.order; ++i)
    for (int j = 0; j < b.order; ++j)
      for (int k = 0; k < a.order; ++k)
        for (int l = 0; l < b.order; ++l)
          mul[code(i, j)][code(k, l)] = code(a.mul[i][k], b.mul[j][l]);
  return make_group(std::move(mul), code(a.unit, b.unit));
}

std::optional<std::vector<int>> group_iso(const FinGroup& a, const FinGroup& b) {
  if (a.order != b.order) return std::nullopt;
  const int n = a.order;
  auto orda = element_orders(a);
  auto ordb = element_orders(b);
  {
    auto sa = orda;
    auto sb = ordb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<int> phi(n, -1);
  std::vector<char> used(n, 0);
  // phi(x·y) = phi(x)·phi(y) is checked whenever all three slots are known.
  auto consistent = [&](int x) {
    for (int y = 0; y < n; ++y) {
      if (phi[y] < 0) continue;
      int xy = a.mul[x][y];
      if (phi[xy] >= 0 && phi[xy] != b.mul[phi[x]][phi[y]]) return false;
      int yx = a.mul[y][x];
      if (phi[yx] >= 0 && phi[yx] != b.mul[phi[y]][phi[x]]) return false;
    }
    return true;
  };
  std::vector<int> order_of_assign(n);
  std::iota(order_of_assign.begin(), order_of_assign.end(), 0);
  std::function<bool(int)> go = [&](int idx) -> bool {
    if (idx == n) return true;
    int x = order_of_assign[idx];
    for (int v = 0; v < n; ++v) {
      if (used[v] || ordb[v] != orda[x]) continue;
      if (x == a.unit && v != b.unit) continue;
      phi[x] = v;
      used[v] = 1;
      if (consistent(x) && go(idx + 1)) return true;
      phi[x] = -1;
      used[v] = 0;
    }
    return false;
  };
  if (go(0)) return phi;
  return std::nullopt;
}

FinCategory delooping(const FinGroup& g) {
  if (!group_ok(g)) throw std::invalid_argument("delooping: not a group");
  return monoid_category(g.mul, g.unit);
}

std::vector<std::string> validate_gset(const GSet& x) {
  std::vector<std::string> errors;
  if (!group_ok(x.group)) {
    errors.push_back("underlying group is invalid");
    return errors;
  }
  if (x.size < 0) {
    errors.push_back("carrier size negative");
    return errors;
  }
  if (static_cast<int>(x.act.size()) != x.group.order) {
    errors.push_back("action table has wrong number of rows");
    return errors;
  }
  for (int g = 0; g < x.group.order; ++g) {
    if (static_cast<int>(x.act[g].size()) != x.size) {
      errors.push_back("action row " + std::to_string(g) + " has wrong length");
      return errors;
    }
    for (int i = 0; i < x.size; ++i) {
      if (!in_range(x.act[g][i], x.size)) {
        errors.push_back("action value out of range at (" + std::to_string(g) +
                         "," + std::to_string(i) + ")");
        return errors;
      }
    }
  }
  for (int i = 0; i < x.size; ++i) {
    if (x.act[x.group.unit][i] != i) {
      errors.push_back("unit must act as the identity (element " +
                       std::to_string(i) + ")");
    }
  }
  for (int g = 0; g < x.group.order && errors.size() < 8; ++g) {
    for (int h = 0; h < x.group.order && errors.size() < 8; ++h) {
      for (int i = 0; i < x.size; ++i) {
        if (x.act[x.group.mul[g][h]][i] != x.act[g][x.act[h][i]]) {
          errors.push_back("action law fails at (g=" + std::to_string(g) +
                           ",h=" + std::to_string(h) + ",i=" +
                           std::to_string(i) + ")");
          break;
        }
      }
    }
  }
  return errors;
}

bool gset_ok(const GSet& x) { return validate_gset(x).empty(); }

GSet trivial_gset(const FinGroup& g, int size) {
  GSet x;
  x.group = g;
  x.size = size;
  std::vector<int> id(size);
  std::iota(id.begin(), id.end(), 0);
  x.act.assign(g.order, id);
  return x;
}

GSet regular_gset(const FinGroup& g) {
  GSet x;
  x.group = g;
  x.size = g.order;
  x.act.assign(g.order, std::vector<int>(g.order));
  for (int h = 0; h < g.order; ++h)
    for (int i = 0; i < g.order; ++i) x.act[h][i] = g.mul[h][i];
  return x;
}

std::vector<std::vector<int>> gset_orbits(const GSet& x) {
  UnionFind uf(x.size);
  for (int g = 0; g < x.group.order; ++g)
    for (int i = 0; i < x.size; ++i) uf.unite(i, x.act[g][i]);
  return uf.blocks();
}

namespace {

std::vector<int> orbit_size_profile(const GSet& x) {
  std::vector<int> sizes;
  for (const auto& b : gset_orbits(x)) sizes.push_back(static_cast<int>(b.size()));
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

// Backtracking over maps {0..n-1} -> {0..m-1}; prefixes are rejected as soon
// as an equivariance constraint with both endpoints assigned fails.
void for_each_equivariant(const GSet& x, const GSet& y, bool bijective_only,
                          const std::function<bool(const std::vector<int>&)>& visit) {
  const int n = x.size;
  const int m = y.size;
  if (bijective_only && n != m) return;
  std::vector<int> f(n, -1);
  std::vector<char> used(m, 0);
  auto consistent = [&](int i) {
    for (int g = 0; g < x.group.order; ++g) {
      for (int j = 0; j <= i; ++j) {
        int t = x.act[g][j];
        if (t <= i && f[t] != y.act[g][f[j]]) return false;
      }
    }
    return true;
  };
  bool stop = false;
  std::function<void(int)> go = [&](int i) {
    if (stop) return;
    if (i == n) {
      if (!visit(f)) stop = true;
      return;
    }
    for (int v = 0; v < m && !stop; ++v) {
      if (bijective_only && used[v]) continue;
      f[i] = v;
      used[v] = 1;
      if (consistent(i)) go(i + 1);
      f[i] = -1;
      used[v] = 0;
    }
  };
  go(0);
}

}  // namespace

std::optional<std::vector<int>> gset_iso(const GSet& x, const GSet& y) {
  if (x.size != y.size) return std::nullopt;
  if (x.group.order != y.group.order) return std::nullopt;
  if (orbit_size_profile(x) != orbit_size_profile(y)) return std::nullopt;
  std::optional<std::vector<int>> found;
  for_each_equivariant(x, y, true, [&](const std::vector<int>& f) {
    found = f;
    return false;
  });
  return found;
}

std::vector<std::vector<int>> equivariant_maps(const GSet& x, const GSet& y) {
  std::vector<std::vector<int>> out;
  for_each_equivariant(x, y, false, [&](const std::vector<int>& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::vector<GSet> enumerate_gsets(const FinGroup& g, int max_size) {
  std::vector<GSet> reps;
  for (int size = 0; size <= max_size; ++size) {
    auto perms = all_permutations(size);
    std::vector<int> id(size);
    std::iota(id.begin(), id.end(), 0);
    GSet cand;
    cand.group = g;
    cand.size = size;
    cand.act.assign(g.order, {});
    // Assign one permutation per group element; products inside the assigned
    // prefix must already satisfy the action law.
    std::function<void(int)> go = [&](int e) {
      if (e == g.order) {
        bool fresh = true;
        for (const auto& r : reps) {
          if (r.size == size && gset_iso(r, cand).has_value()) {
            fresh = false;
            break;
          }
        }
        if (fresh) reps.push_back(cand);
        return;
      }
      for (const auto& p : perms) {
        if (e == g.unit && p != id) continue;
        cand.act[e] = p;
        bool ok = true;
        for (int a = 0; a <= e && ok; ++a) {
          for (int b = 0; b <= e && ok; ++b) {
            int ab = g.mul[a][b];
            if (ab > e) continue;
            for (int i = 0; i < size; ++i) {
              if (cand.act[ab][i] != cand.act[a][cand.act[b][i]]) {
                ok = false;
                break;
              }
            }
          }
        }
        if (ok) go(e + 1);
      }
      cand.act[e] = {};
    };
    go(0);
  }
  return reps;
}

VertexGroup vertex_group_at(const FinCategory& c, int obj) {
  if (obj < 0 || obj >= c.objects)
    throw std::invalid_argument("vertex_group_at: object out of range");
  auto inv = morphism_inverse_table(c);
  VertexGroup out;
  const int m = static_cast<int>(c.src.size());
  for (int f = 0; f < m; ++f) {
    if (c.src[f] == obj && c.tgt[f] == obj && inv[f] != kNone)
      out.morphisms.push_back(f);
  }
  const int n = static_cast<int>(out.morphisms.size());
  std::vector<int> index(m, -1);
  for (int i = 0; i < n; ++i) index[out.morphisms[i]] = i;
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      mul[i][j] = index[c.comp[out.morphisms[j]][out.morphisms[i]]];
  out.group = make_group(std::move(mul), index[c.identity[obj]]);
  return out;
}

}  // namespace cofact
