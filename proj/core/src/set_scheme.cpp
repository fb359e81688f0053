#include "cofact/set_scheme.hpp"

#include <algorithm>

namespace cofact {

std::vector<std::string> validate_mapping(const SetMapping& f) {
  std::vector<std::string> out;
  if (f.dom_size < 0 || f.cod_size < 0) out.push_back("negative carrier size");
  if (static_cast<int>(f.map.size()) != f.dom_size) out.push_back("value table has wrong length");
  for (int v : f.map) {
    if (v < 0 || v >= f.cod_size) {
      out.push_back("value " + std::to_string(v) + " escapes the codomain");
      break;
    }
  }
  return out;
}

bool mapping_ok(const SetMapping& f) { return validate_mapping(f).empty(); }

SetMapping identity_mapping(int n) {
  SetMapping f{n, n, std::vector<int>(n)};
  for (int i = 0; i < n; ++i) f.map[i] = i;
  return f;
}

SetMapping compose_mappings(const SetMapping& g, const SetMapping& f) {
  SetMapping h{f.dom_size, g.cod_size, std::vector<int>(f.dom_size)};
  for (int i = 0; i < f.dom_size; ++i) h.map[i] = g.map[f.map[i]];
  return h;
}

bool mapping_equal(const SetMapping& a, const SetMapping& b) {
  return a.dom_size == b.dom_size && a.cod_size == b.cod_size && a.map == b.map;
}

std::optional<SetMapping> invert_mapping(const SetMapping& f) {
  if (f.dom_size != f.cod_size) return std::nullopt;
  SetMapping inv{f.cod_size, f.dom_size, std::vector<int>(f.cod_size, -1)};
  for (int i = 0; i < f.dom_size; ++i) {
    if (inv.map[f.map[i]] != -1) return std::nullopt;
    inv.map[f.map[i]] = i;
  }
  return inv;
}

EnumStatus for_each_mapping(int dom_size, int cod_size, std::int64_t budget,
                            const std::function<bool(const SetMapping&)>& visit) {
  if (dom_size > 0 && cod_size == 0) return EnumStatus::Complete;
  SetMapping f{dom_size, cod_size, std::vector<int>(dom_size, 0)};
  std::int64_t emitted = 0;
  while (true) {
    if (++emitted > budget) return EnumStatus::Overflow;
    if (!visit(f)) return EnumStatus::Stopped;
    int pos = dom_size - 1;
    while (pos >= 0 && f.map[pos] == cod_size - 1) f.map[pos--] = 0;
    if (pos < 0) return EnumStatus::Complete;
    ++f.map[pos];
  }
}

bool subset_equal(const SubsetObj& a, const SubsetObj& b) {
  return a.base_size == b.base_size && a.elems == b.elems;
}

bool subset_leq(const SubsetObj& a, const SubsetObj& b) {
  return a.base_size == b.base_size &&
         std::includes(b.elems.begin(), b.elems.end(), a.elems.begin(), a.elems.end());
}

SubsetObj whole_set(int n) {
  SubsetObj s{n, std::vector<int>(n)};
  for (int i = 0; i < n; ++i) s.elems[i] = i;
  return s;
}

SubsetObj empty_subset(int n) { return {n, {}}; }

SubsetObj subset_intersection(const SubsetObj& a, const SubsetObj& b) {
  SubsetObj out{a.base_size, {}};
  std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                        std::back_inserter(out.elems));
  return out;
}

SubsetObj direct_image(const SetMapping& f, const SubsetObj& x) {
  std::vector<char> hit(f.cod_size, 0);
  for (int e : x.elems) hit[f.map[e]] = 1;
  SubsetObj out{f.cod_size, {}};
  for (int v = 0; v < f.cod_size; ++v) {
    if (hit[v]) out.elems.push_back(v);
  }
  return out;
}

SubsetObj preimage(const SetMapping& f, const SubsetObj& y) {
  std::vector<char> in(f.cod_size, 0);
  for (int e : y.elems) in[e] = 1;
  SubsetObj out{f.dom_size, {}};
  for (int v = 0; v < f.dom_size; ++v) {
    if (in[f.map[v]]) out.elems.push_back(v);
  }
  return out;
}

ImageFactorisation image_factorise(const SetMapping& f) {
  const SubsetObj img = direct_image(f, whole_set(f.dom_size));
  ImageFactorisation out;
  out.surjection.dom_size = f.dom_size;
  out.surjection.cod_size = static_cast<int>(img.elems.size());
  for (int i = 0; i < f.dom_size; ++i) {
    const auto it = std::lower_bound(img.elems.begin(), img.elems.end(), f.map[i]);
    out.surjection.map.push_back(static_cast<int>(it - img.elems.begin()));
  }
  out.inclusion = {static_cast<int>(img.elems.size()), f.cod_size, img.elems};
  return out;
}

SetElements PowersetScheme::elements(const Obj& x) const {
  return {FinSetObj{static_cast<int>(x.elems.size())},
          SetMapping{static_cast<int>(x.elems.size()), x.base_size, x.elems}};
}

SetMapping PowersetScheme::lift(const Map& h, const Obj& x, const Mor& point) const {
  (void)point;  // its existence says h lands in x
  SetMapping out{h.dom_size, static_cast<int>(x.elems.size()), {}};
  for (int a = 0; a < h.dom_size; ++a) {
    const auto it = std::lower_bound(x.elems.begin(), x.elems.end(), h.map[a]);
    out.map.push_back(static_cast<int>(it - x.elems.begin()));
  }
  return out;
}

SubsetMor PowersetScheme::point_of_lift(const Map& h, const Obj& x, const Map& lifting) const {
  (void)lifting;  // at most one point exists
  return {terminal(dom(h)), pull(h, x)};
}

std::vector<SubsetMor> PowersetScheme::hom(const Obj& x, const Obj& y) const {
  if (subset_leq(x, y)) return {SubsetMor{x, y}};
  return {};
}

std::optional<SubsetMor> PowersetScheme::mor_invert(const Mor& m) const {
  if (!subset_equal(m.dom, m.cod)) return std::nullopt;
  return SubsetMor{m.cod, m.dom};
}

SubsetProduct PowersetScheme::product(const Obj& x, const Obj& y) const {
  const SubsetObj meet = subset_intersection(x, y);
  return {meet, {meet, x}, {meet, y}};
}

SubsetObj PaddedPowersetScheme::push(const Map& f, const Obj& x) const {
  SubsetObj out = direct_image(f, x);
  if (f.cod_size > 0 && (out.elems.empty() || out.elems.front() != 0)) {
    out.elems.insert(out.elems.begin(), 0);
  }
  return out;
}

}  // namespace cofact
