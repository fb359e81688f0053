#include "cofact/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace cofact {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

const json& need(const json& j, const char* key, const char* ctx) {
  const auto it = j.find(key);
  if (it == j.end()) fail(std::string(ctx) + ": missing field '" + key + "'");
  return *it;
}

int need_int(const json& j, const char* key, const char* ctx) {
  const auto& v = need(j, key, ctx);
  if (!v.is_number_integer()) fail(std::string(ctx) + ": field '" + key + "' must be an integer");
  return v.get<int>();
}

std::vector<int> need_ints(const json& j, const char* key, const char* ctx) {
  const auto& v = need(j, key, ctx);
  if (!v.is_array()) fail(std::string(ctx) + ": field '" + key + "' must be an array");
  std::vector<int> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number_integer()) fail(std::string(ctx) + ": field '" + key + "' must hold integers");
    out.push_back(e.get<int>());
  }
  return out;
}

std::vector<std::vector<int>> need_table(const json& j, const char* key, const char* ctx) {
  const auto& v = need(j, key, ctx);
  if (!v.is_array()) fail(std::string(ctx) + ": field '" + key + "' must be an array of arrays");
  std::vector<std::vector<int>> out;
  out.reserve(v.size());
  for (const auto& row : v) {
    if (!row.is_array()) fail(std::string(ctx) + ": field '" + key + "' must be an array of arrays");
    std::vector<int> r;
    r.reserve(row.size());
    for (const auto& e : row) {
      if (!e.is_number_integer()) fail(std::string(ctx) + ": field '" + key + "' must hold integers");
      r.push_back(e.get<int>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> optional_names(const json& j, const char* key, size_t expected,
                                        const char* ctx) {
  const auto it = j.find(key);
  if (it == j.end()) return {};
  if (!it->is_array()) fail(std::string(ctx) + ": field '" + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& e : *it) {
    if (!e.is_string()) fail(std::string(ctx) + ": field '" + key + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  if (out.size() != expected)
    fail(std::string(ctx) + ": field '" + key + "' has " + std::to_string(out.size()) +
         " entries, expected " + std::to_string(expected));
  return out;
}

template <typename Violations>
void check_valid(const Violations& violations, const char* ctx) {
  if (violations.empty()) return;
  std::string msg = std::string(ctx) + ": ";
  if constexpr (std::is_same_v<typename Violations::value_type, CategoryViolation>) {
    msg += violations.front().detail;
  } else {
    msg += violations.front();
  }
  fail(msg);
}

// ---- category ----

json category_to_json(const FinCategory& c, const std::vector<std::string>& names) {
  json j;
  j["objects"] = c.objects;
  j["source"] = c.src;
  j["target"] = c.tgt;
  j["identity"] = c.identity;
  j["comp"] = c.comp;
  if (!names.empty()) j["object_names"] = names;
  return j;
}

CatRef category_from_json(const json& j, const char* ctx, std::vector<std::string>* names) {
  if (!j.is_object()) fail(std::string(ctx) + ": expected an object");
  FinCategory c;
  c.objects = need_int(j, "objects", ctx);
  c.src = need_ints(j, "source", ctx);
  c.tgt = need_ints(j, "target", ctx);
  c.identity = need_ints(j, "identity", ctx);
  c.comp = need_table(j, "comp", ctx);
  check_valid(validate_category(c), ctx);
  const auto n = optional_names(j, "object_names", static_cast<size_t>(c.objects), ctx);
  if (names) *names = n;
  return make_cat(std::move(c));
}

// ---- functor ----

json functor_to_json(const FunctorData& f) {
  json j;
  j["dom"] = category_to_json(*f.dom, {});
  j["cod"] = category_to_json(*f.cod, {});
  j["object_map"] = f.obj_map;
  j["morphism_map"] = f.mor_map;
  return j;
}

FunctorData functor_from_json(const json& j, const char* ctx) {
  if (!j.is_object()) fail(std::string(ctx) + ": expected an object");
  FunctorData f;
  f.dom = category_from_json(need(j, "dom", ctx), ctx, nullptr);
  f.cod = category_from_json(need(j, "cod", ctx), ctx, nullptr);
  f.obj_map = need_ints(j, "object_map", ctx);
  f.mor_map = need_ints(j, "morphism_map", ctx);
  check_valid(validate_functor(f), ctx);
  return f;
}

// ---- diagram ----

json diagram_to_json(const SetDiagram& x) {
  json j;
  j["base"] = category_to_json(*x.base, {});
  j["variance"] = x.variance == Variance::Covariant ? "covariant" : "contravariant";
  j["carrier"] = x.carrier;
  j["action"] = x.action;
  return j;
}

SetDiagram diagram_from_json(const json& j, const char* ctx) {
  if (!j.is_object()) fail(std::string(ctx) + ": expected an object");
  SetDiagram x;
  x.base = category_from_json(need(j, "base", ctx), ctx, nullptr);
  const auto& var = need(j, "variance", ctx);
  if (var == "covariant") {
    x.variance = Variance::Covariant;
  } else if (var == "contravariant") {
    x.variance = Variance::Contravariant;
  } else {
    fail(std::string(ctx) + ": variance must be 'covariant' or 'contravariant'");
  }
  x.carrier = need_ints(j, "carrier", ctx);
  x.action = need_table(j, "action", ctx);
  check_valid(validate_diagram(x), ctx);
  return x;
}

// ---- group action ----

json gset_to_json(const GSet& x) {
  json j;
  json g;
  g["unit"] = x.group.unit;
  g["mul"] = x.group.mul;
  j["group"] = g;
  j["size"] = x.size;
  j["action"] = x.act;
  return j;
}

GSet gset_from_json(const json& j, const char* ctx) {
  if (!j.is_object()) fail(std::string(ctx) + ": expected an object");
  const auto& gj = need(j, "group", ctx);
  if (!gj.is_object()) fail(std::string(ctx) + ": field 'group' must be an object");
  GSet x;
  try {
    x.group = make_group(need_table(gj, "mul", ctx), need_int(gj, "unit", ctx));
  } catch (const std::exception& e) {
    fail(std::string(ctx) + ": " + e.what());
  }
  x.size = need_int(j, "size", ctx);
  x.act = need_table(j, "action", ctx);
  check_valid(validate_gset(x), ctx);
  return x;
}

// ---- multicategory ----

json multicat_to_json(const FinMulticategory& o) {
  json j;
  j["colours"] = o.colours;
  json mors = json::array();
  for (const auto& p : o.profile) {
    json m;
    m["sources"] = p.sources;
    m["target"] = p.target;
    mors.push_back(std::move(m));
  }
  j["morphisms"] = std::move(mors);
  j["unit"] = o.unit;
  j["sym"] = o.sym;
  json comp = json::array();
  for (const auto& [key, value] : o.comp) {
    const auto [f, i, g] = key;
    comp.push_back(json::array({f, i, g, value}));
  }
  j["comp"] = std::move(comp);
  return j;
}

MulticatRef multicat_from_json(const json& j, const char* ctx) {
  if (!j.is_object()) fail(std::string(ctx) + ": expected an object");
  FinMulticategory o;
  o.colours = need_int(j, "colours", ctx);
  const auto& mors = need(j, "morphisms", ctx);
  if (!mors.is_array()) fail(std::string(ctx) + ": field 'morphisms' must be an array");
  for (const auto& m : mors) {
    if (!m.is_object()) fail(std::string(ctx) + ": morphism entries must be objects");
    MultiProfile p;
    p.sources = need_ints(m, "sources", ctx);
    p.target = need_int(m, "target", ctx);
    o.profile.push_back(std::move(p));
  }
  o.unit = need_ints(j, "unit", ctx);
  o.sym = need_table(j, "sym", ctx);
  const auto comp = need_table(j, "comp", ctx);
  for (const auto& row : comp) {
    if (row.size() != 4) fail(std::string(ctx) + ": comp entries must be [f, slot, g, result]");
    o.comp[{row[0], row[1], row[2]}] = row[3];
  }
  check_valid(validate_multicat(o), ctx);
  return make_multicat(std::move(o));
}

// ---- algebra ----

json algebra_to_json(const MultiAlgebra& a) {
  json j;
  j["multicategory"] = multicat_to_json(*a.base);
  j["carrier"] = a.carrier;
  j["structure"] = a.structure;
  return j;
}

MultiAlgebra algebra_from_json(const json& j, const char* ctx) {
  if (!j.is_object()) fail(std::string(ctx) + ": expected an object");
  MultiAlgebra a;
  a.base = multicat_from_json(need(j, "multicategory", ctx), ctx);
  a.carrier = need_ints(j, "carrier", ctx);
  a.structure = need_table(j, "structure", ctx);
  check_valid(validate_algebra(a), ctx);
  return a;
}

// ---- multifunctor ----

json multifunctor_to_json(const MultiFunctor& f) {
  json j;
  j["dom"] = multicat_to_json(*f.dom);
  j["cod"] = multicat_to_json(*f.cod);
  j["colour_map"] = f.colour_map;
  j["morphism_map"] = f.mor_map;
  return j;
}

MultiFunctor multifunctor_from_json(const json& j, const char* ctx) {
  if (!j.is_object()) fail(std::string(ctx) + ": expected an object");
  MultiFunctor f;
  f.dom = multicat_from_json(need(j, "dom", ctx), ctx);
  f.cod = multicat_from_json(need(j, "cod", ctx), ctx);
  f.colour_map = need_ints(j, "colour_map", ctx);
  f.mor_map = need_ints(j, "morphism_map", ctx);
  check_valid(validate_multifunctor(f), ctx);
  return f;
}

}  // namespace

const char* kind_name(InstanceKind k) {
  switch (k) {
    case InstanceKind::Category: return "category";
    case InstanceKind::Functor: return "functor";
    case InstanceKind::Diagram: return "diagram";
    case InstanceKind::BasedCategory: return "based_category";
    case InstanceKind::GroupAction: return "group_action";
    case InstanceKind::Multicategory: return "multicategory";
    case InstanceKind::Algebra: return "algebra";
    case InstanceKind::Multifunctor: return "multifunctor";
    case InstanceKind::Mapping: return "mapping";
    case InstanceKind::Subset: return "subset";
  }
  return "unknown";
}

Instance parse_instance(const std::string& text) {
  const json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) fail("document is not well-formed");
  if (!doc.is_object()) fail("document must be an object");
  if (need_int(doc, "format", "document") != 1) fail("document: unsupported format version");
  const auto& kind = need(doc, "kind", "document");
  if (!kind.is_string()) fail("document: field 'kind' must be a string");
  const std::string k = kind.get<std::string>();

  Instance out;
  if (k == "category") {
    out.kind = InstanceKind::Category;
    out.category = category_from_json(doc, "category", &out.object_names);
  } else if (k == "functor") {
    out.kind = InstanceKind::Functor;
    out.functor = functor_from_json(doc, "functor");
  } else if (k == "diagram") {
    out.kind = InstanceKind::Diagram;
    out.diagram = diagram_from_json(doc, "diagram");
  } else if (k == "based_category") {
    out.kind = InstanceKind::BasedCategory;
    out.category = category_from_json(need(doc, "category", "based_category"), "based_category",
                                      &out.object_names);
    out.base = need_int(doc, "base", "based_category");
    if (out.base < 0 || out.base >= out.category->objects)
      fail("based_category: base object out of range");
  } else if (k == "group_action") {
    out.kind = InstanceKind::GroupAction;
    out.action = gset_from_json(doc, "group_action");
  } else if (k == "multicategory") {
    out.kind = InstanceKind::Multicategory;
    out.multicat = multicat_from_json(doc, "multicategory");
  } else if (k == "algebra") {
    out.kind = InstanceKind::Algebra;
    out.algebra = algebra_from_json(doc, "algebra");
  } else if (k == "multifunctor") {
    out.kind = InstanceKind::Multifunctor;
    out.multifunctor = multifunctor_from_json(doc, "multifunctor");
  } else if (k == "mapping") {
    out.kind = InstanceKind::Mapping;
    out.mapping.dom_size = need_int(doc, "dom", "mapping");
    out.mapping.cod_size = need_int(doc, "cod", "mapping");
    out.mapping.map = need_ints(doc, "map", "mapping");
    check_valid(validate_mapping(out.mapping), "mapping");
    out.object_names = optional_names(doc, "dom_names",
                                      static_cast<size_t>(out.mapping.dom_size), "mapping");
    out.cod_names = optional_names(doc, "cod_names",
                                   static_cast<size_t>(out.mapping.cod_size), "mapping");
  } else if (k == "subset") {
    out.kind = InstanceKind::Subset;
    out.subset.base_size = need_int(doc, "ambient", "subset");
    out.subset.elems = need_ints(doc, "members", "subset");
    if (out.subset.base_size < 0) fail("subset: ambient size must be non-negative");
    int prev = -1;
    for (const int m : out.subset.elems) {
      if (m <= prev) fail("subset: members must be strictly increasing");
      if (m < 0 || m >= out.subset.base_size) fail("subset: member out of range");
      prev = m;
    }
    out.cod_names = optional_names(doc, "ambient_names",
                                   static_cast<size_t>(out.subset.base_size), "subset");
  } else {
    fail("document: unknown kind '" + k + "'");
  }
  return out;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path + ": cannot read file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const std::invalid_argument& e) {
    fail(path + ": " + e.what());
  }
}

std::string serialise_instance(const Instance& inst) {
  json j;
  j["format"] = 1;
  j["kind"] = kind_name(inst.kind);
  switch (inst.kind) {
    case InstanceKind::Category: {
      json body = category_to_json(*inst.category, inst.object_names);
      for (auto& [key, value] : body.items()) j[key] = value;
      break;
    }
    case InstanceKind::Functor: {
      json body = functor_to_json(inst.functor);
      for (auto& [key, value] : body.items()) j[key] = value;
      break;
    }
    case InstanceKind::Diagram: {
      json body = diagram_to_json(inst.diagram);
      for (auto& [key, value] : body.items()) j[key] = value;
      break;
    }
    case InstanceKind::BasedCategory: {
      j["category"] = category_to_json(*inst.category, inst.object_names);
      j["base"] = inst.base;
      break;
    }
    case InstanceKind::GroupAction: {
      json body = gset_to_json(inst.action);
      for (auto& [key, value] : body.items()) j[key] = value;
      break;
    }
    case InstanceKind::Multicategory: {
      json body = multicat_to_json(*inst.multicat);
      for (auto& [key, value] : body.items()) j[key] = value;
      break;
    }
    case InstanceKind::Algebra: {
      json body = algebra_to_json(inst.algebra);
      for (auto& [key, value] : body.items()) j[key] = value;
      break;
    }
    case InstanceKind::Multifunctor: {
      json body = multifunctor_to_json(inst.multifunctor);
      for (auto& [key, value] : body.items()) j[key] = value;
      break;
    }
    case InstanceKind::Mapping: {
      j["dom"] = inst.mapping.dom_size;
      j["cod"] = inst.mapping.cod_size;
      j["map"] = inst.mapping.map;
      if (!inst.object_names.empty()) j["dom_names"] = inst.object_names;
      if (!inst.cod_names.empty()) j["cod_names"] = inst.cod_names;
      break;
    }
    case InstanceKind::Subset: {
      j["ambient"] = inst.subset.base_size;
      j["members"] = inst.subset.elems;
      if (!inst.cod_names.empty()) j["ambient_names"] = inst.cod_names;
      break;
    }
  }
  return j.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path + ": cannot write file");
  out << serialise_instance(inst);
}

int resolve_object(const Instance& inst, const std::string& spec) {
  const auto& names = inst.object_names;
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == spec) return static_cast<int>(i);
  }
  int value = 0;
  try {
    size_t used = 0;
    value = std::stoi(spec, &used);
    if (used != spec.size()) fail("");
  } catch (const std::exception&) {
    fail("cannot resolve object '" + spec + "'");
  }
  int limit = 0;
  switch (inst.kind) {
    case InstanceKind::Category:
    case InstanceKind::BasedCategory: limit = inst.category->objects; break;
    case InstanceKind::Functor: limit = inst.functor.cod->objects; break;
    case InstanceKind::Diagram: limit = inst.diagram.base->objects; break;
    default: limit = value + 1; break;
  }
  if (value < 0 || value >= limit) fail("object index " + spec + " out of range");
  return value;
}

}  // namespace cofact
