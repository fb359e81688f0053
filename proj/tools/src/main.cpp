// cofact: command line front end for the comprehension-scheme engine.
//
// Every command reads self-describing instance documents, performs one
// operation, and emits a RunReport document on standard output.  Reports are
// byte-deterministic for fixed inputs (timing is omitted unless requested).
//
// Exit codes: 0 success, 1 invalid input, 2 predicate false, 3 enumeration
// budget exceeded.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cofact/cat_scheme.hpp"
#include "cofact/corpus.hpp"
#include "cofact/dot.hpp"
#include "cofact/galois.hpp"
#include "cofact/instance_io.hpp"
#include "cofact/multicat.hpp"
#include "cofact/oracles.hpp"
#include "cofact/scheme.hpp"
#include "cofact/set_scheme.hpp"
#include "cofact/suite.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace cofact;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kPredicateFalse = 2;
constexpr int kBudgetExceeded = 3;

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void invalid(const std::string& msg) { throw std::invalid_argument(msg); }

// ---- report plumbing ----

struct Report {
  json doc;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();
  bool timing = false;

  Report(const std::string& command, const std::vector<std::string>& inputs,
         bool with_timing) {
    doc["format"] = 1;
    doc["command"] = command;
    doc["inputs"] = inputs;
    timing = with_timing;
  }

  void emit() {
    if (timing) {
      const auto ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - started)
                          .count();
      doc["timing_ms"] = ms;
    } else {
      doc["timing_ms"] = nullptr;
    }
    std::cout << doc.dump(2) << "\n";
  }
};

json instance_json(const Instance& inst) {
  return json::parse(serialise_instance(inst));
}

json functor_json(const FunctorData& f) {
  Instance inst;
  inst.kind = InstanceKind::Functor;
  inst.functor = f;
  return instance_json(inst);
}

json diagram_json(const SetDiagram& x) {
  Instance inst;
  inst.kind = InstanceKind::Diagram;
  inst.diagram = x;
  return instance_json(inst);
}

json mapping_json(const SetMapping& f, const std::vector<std::string>& dom_names = {},
                  const std::vector<std::string>& cod_names = {}) {
  Instance inst;
  inst.kind = InstanceKind::Mapping;
  inst.mapping = f;
  inst.object_names = dom_names;
  inst.cod_names = cod_names;
  return instance_json(inst);
}

json multifunctor_json(const MultiFunctor& f) {
  Instance inst;
  inst.kind = InstanceKind::Multifunctor;
  inst.multifunctor = f;
  return instance_json(inst);
}

json gset_json(const GSet& x) {
  Instance inst;
  inst.kind = InstanceKind::GroupAction;
  inst.action = x;
  return instance_json(inst);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) invalid(path + ": cannot write file");
  out << text;
}

// ---- shared option bundles ----

enum class SchemeSel { Copresheaf, Presheaf, Powerset, Multicat };

SchemeSel parse_scheme(const std::string& name) {
  if (name == "copresheaf") return SchemeSel::Copresheaf;
  if (name == "presheaf") return SchemeSel::Presheaf;
  if (name == "powerset") return SchemeSel::Powerset;
  if (name == "multicat") return SchemeSel::Multicat;
  invalid("unknown scheme '" + name + "' (expected copresheaf|presheaf|powerset|multicat)");
}

const char* scheme_name(SchemeSel s) {
  switch (s) {
    case SchemeSel::Copresheaf: return "copresheaf";
    case SchemeSel::Presheaf: return "presheaf";
    case SchemeSel::Powerset: return "powerset";
    case SchemeSel::Multicat: return "multicat";
  }
  return "?";
}

Instance load_kind(const std::string& path, InstanceKind want) {
  Instance inst = load_instance(path);
  if (inst.kind != want)
    invalid(path + ": expected a " + std::string(kind_name(want)) + " document, found " +
            kind_name(inst.kind));
  return inst;
}

// The base object of a command: a name or decimal index resolved against the
// instance, defaulting to the document's own basepoint when it carries one.
int resolve_base(const Instance& inst, const std::string& spec) {
  if (spec.empty()) {
    if (inst.kind == InstanceKind::BasedCategory) return inst.base;
    return 0;
  }
  return resolve_object(inst, spec);
}

Instance load_category_like(const std::string& path) {
  Instance inst = load_instance(path);
  if (inst.kind != InstanceKind::Category && inst.kind != InstanceKind::BasedCategory)
    invalid(path + ": expected a category or based_category document, found " +
            std::string(kind_name(inst.kind)));
  return inst;
}

// Rebind a diagram parsed from its own document onto an already-loaded
// category so pointer-based precondition checks see one object.
SetDiagram rebind_diagram(SetDiagram x, const CatRef& base, const std::string& path) {
  if (!same_category(x.base, base))
    invalid(path + ": diagram base does not match the expected category");
  x.base = base;
  return x;
}

void require_variance(const Instance& inst, SchemeSel scheme, const std::string& path) {
  const bool covariant = inst.diagram.variance == Variance::Covariant;
  if (covariant != (scheme == SchemeSel::Copresheaf))
    invalid(path + ": diagram variance does not match the selected scheme");
}

// ---- factorize ----

int run_factorize(const std::string& path, SchemeSel scheme, const std::string& dot,
                  bool timing) {
  Report report("factorize", {path}, timing);
  report.doc["scheme"] = scheme_name(scheme);
  json& outcome = report.doc["outcome"];
  switch (scheme) {
    case SchemeSel::Copresheaf:
    case SchemeSel::Presheaf: {
      const Instance inst = load_kind(path, InstanceKind::Functor);
      const auto emit_parts = [&](const auto& fac) {
        outcome["middle_objects"] = fac.connected_part.cod->objects;
        outcome["connected_part"] = functor_json(fac.connected_part);
        outcome["covering_part"] = functor_json(fac.covering_part);
        outcome["classifying"] = diagram_json(fac.classifying);
        if (!dot.empty()) write_text(dot, covering_dot(fac.covering_part));
      };
      if (scheme == SchemeSel::Copresheaf)
        emit_parts(factorise(CopresheafScheme{}, inst.functor));
      else
        emit_parts(factorise(PresheafScheme{}, inst.functor));
      break;
    }
    case SchemeSel::Powerset: {
      const Instance inst = load_kind(path, InstanceKind::Mapping);
      const auto fac = image_factorise(inst.mapping);
      json image = json::array();
      for (int v = 0; v < inst.mapping.cod_size; ++v) {
        bool hit = false;
        for (const int w : inst.mapping.map) hit = hit || w == v;
        if (!hit) continue;
        if (static_cast<size_t>(v) < inst.cod_names.size())
          image.push_back(inst.cod_names[static_cast<size_t>(v)]);
        else
          image.push_back(v);
      }
      outcome["image"] = image;
      outcome["surjection"] = mapping_json(fac.surjection, inst.object_names);
      outcome["inclusion"] = mapping_json(fac.inclusion, {}, inst.cod_names);
      if (!dot.empty()) invalid("--dot applies to category-valued schemes only");
      break;
    }
    case SchemeSel::Multicat: {
      const Instance inst = load_kind(path, InstanceKind::Multifunctor);
      const auto fac = factorise_multi(inst.multifunctor);
      outcome["truncated"] = fac.truncated;
      const bool factorisable = algebra_ok(fac.classifying);
      outcome["factorisable"] = factorisable;
      if (factorisable) {
        outcome["connected_part"] = multifunctor_json(fac.connected_part);
        outcome["covering_part"] = multifunctor_json(fac.covering_part);
      }
      if (!dot.empty()) invalid("--dot applies to category-valued schemes only");
      break;
    }
  }
  report.emit();
  return kOk;
}

// ---- elements ----

int run_elements(const std::string& path, SchemeSel scheme, const std::string& dot,
                 bool timing) {
  Report report("elements", {path}, timing);
  report.doc["scheme"] = scheme_name(scheme);
  json& outcome = report.doc["outcome"];
  switch (scheme) {
    case SchemeSel::Copresheaf:
    case SchemeSel::Presheaf: {
      const Instance inst = load_kind(path, InstanceKind::Diagram);
      const bool covariant = inst.diagram.variance == Variance::Covariant;
      if (covariant != (scheme == SchemeSel::Copresheaf))
        invalid(path + ": diagram variance does not match the selected scheme");
      const CatElements els = covariant ? CopresheafScheme{}.elements(inst.diagram)
                                        : PresheafScheme{}.elements(inst.diagram);
      outcome["total_objects"] = els.total->objects;
      outcome["projection"] = functor_json(els.projection);
      if (!dot.empty()) write_text(dot, covering_dot(els.projection));
      break;
    }
    case SchemeSel::Powerset: {
      const Instance inst = load_kind(path, InstanceKind::Subset);
      const auto els = PowersetScheme{}.elements(inst.subset);
      outcome["total"] = els.total.size;
      outcome["projection"] = mapping_json(els.projection, {}, inst.cod_names);
      if (!dot.empty()) invalid("--dot applies to category-valued schemes only");
      break;
    }
    case SchemeSel::Multicat: {
      const Instance inst = load_kind(path, InstanceKind::Algebra);
      const auto els = elements_multicat(inst.algebra);
      outcome["total_colours"] = els.cat->colours;
      outcome["projection"] = multifunctor_json(els.projection);
      if (!dot.empty()) invalid("--dot applies to category-valued schemes only");
      break;
    }
  }
  report.emit();
  return kOk;
}

// ---- kan ----

int run_kan(const std::string& functor_path, const std::string& diagram_path,
            SchemeSel scheme, bool timing) {
  if (scheme != SchemeSel::Copresheaf && scheme != SchemeSel::Presheaf)
    invalid("kan requires --scheme copresheaf or presheaf");
  Report report("kan", {functor_path, diagram_path}, timing);
  report.doc["scheme"] = scheme_name(scheme);
  const Instance fi = load_kind(functor_path, InstanceKind::Functor);
  Instance xi = load_kind(diagram_path, InstanceKind::Diagram);
  const bool covariant = xi.diagram.variance == Variance::Covariant;
  if (covariant != (scheme == SchemeSel::Copresheaf))
    invalid(diagram_path + ": diagram variance does not match the selected scheme");
  const SetDiagram x = rebind_diagram(xi.diagram, fi.functor.dom, diagram_path);
  const SetDiagram pushed = covariant ? CopresheafScheme{}.push(fi.functor, x)
                                      : PresheafScheme{}.push(fi.functor, x);
  report.doc["outcome"]["pushed"] = diagram_json(pushed);
  report.emit();
  return kOk;
}

// ---- pi0 / pi1 / cover ----

int run_pi0(const std::string& path, const std::string& dot, bool timing) {
  Report report("pi0", {path}, timing);
  const Instance inst = load_category_like(path);
  const auto p = pi0_object(inst.category);
  json& outcome = report.doc["outcome"];
  outcome["components"] = p.discrete->objects;
  outcome["component_of"] = p.quotient.obj_map;
  outcome["connected"] = is_connected_object(inst.category);
  if (!dot.empty()) write_text(dot, category_dot(inst.category, inst.object_names));
  report.emit();
  return kOk;
}

json group_table_json(const FinGroup& g) {
  json j;
  j["order"] = g.order;
  j["unit"] = g.unit;
  j["mul"] = g.mul;
  return j;
}

int run_pi1(const std::string& path, const std::string& base, bool timing) {
  Report report("pi1", {path}, timing);
  const Instance inst = load_category_like(path);
  const int alpha = resolve_base(inst, base);
  const auto deck = pi1_at(inst.category, alpha);
  json& outcome = report.doc["outcome"];
  outcome["base"] = alpha;
  outcome["group"] = group_table_json(deck.group);
  outcome["loops"] = deck.loops;
  report.emit();
  return kOk;
}

int run_cover(const std::string& path, const std::string& base, const std::string& dot,
              bool timing) {
  Report report("cover", {path}, timing);
  const Instance inst = load_category_like(path);
  const int alpha = resolve_base(inst, base);
  const auto u = universal_cover(inst.category, alpha);
  json& outcome = report.doc["outcome"];
  outcome["base"] = alpha;
  outcome["total_objects"] = u.elements.cat->objects;
  outcome["basepoint"] = u.basepoint;
  outcome["projection"] = functor_json(u.elements.projection);
  outcome["classifying"] = diagram_json(u.classifying);
  if (!dot.empty()) write_text(dot, covering_dot(u.elements.projection, inst.object_names));
  report.emit();
  return kOk;
}

// ---- borel / fibre ----

int run_borel(const std::string& action_path, const std::string& cat_path,
              const std::string& base, bool timing) {
  Report report("borel", {action_path, cat_path}, timing);
  const Instance ai = load_kind(action_path, InstanceKind::GroupAction);
  const Instance ci = load_category_like(cat_path);
  const int alpha = resolve_base(ci, base);
  const auto u = universal_cover(ci.category, alpha);
  const auto deck = deck_transformations(u);
  if (ai.action.group.mul != deck.group.mul || ai.action.group.unit != deck.group.unit)
    invalid(action_path +
            ": the action's group table must equal the deck group at the chosen base "
            "(order " +
            std::to_string(deck.group.order) + ")");
  const auto cov = borel(ai.action, u, deck);
  json& outcome = report.doc["outcome"];
  outcome["base"] = alpha;
  outcome["covering"] = functor_json(cov.map);
  outcome["classifying"] = diagram_json(cov.classifying);
  report.emit();
  return kOk;
}

int run_fibre(const std::string& path, const std::string& base, bool timing) {
  Report report("fibre", {path}, timing);
  const Instance inst = load_kind(path, InstanceKind::Functor);
  const auto cov = make_covering(inst.functor);
  Instance cod_holder;
  cod_holder.kind = InstanceKind::Category;
  cod_holder.category = inst.functor.cod;
  const int alpha = base.empty() ? 0 : resolve_object(cod_holder, base);
  const auto deck = deck_transformations(universal_cover(inst.functor.cod, alpha));
  const auto x = monodromy_fibre(cov, alpha, deck);
  json& outcome = report.doc["outcome"];
  outcome["base"] = alpha;
  outcome["fibre_size"] = x.size;
  outcome["action"] = gset_json(x);
  report.emit();
  return kOk;
}

// ---- check ----

struct PredicateResult {
  bool holds = false;
  json details = json::object();
};

PredicateResult check_unary_functor(const std::string& predicate, const FunctorData& f) {
  PredicateResult out;
  if (predicate == "initial") out.holds = is_initial_functor(f);
  else if (predicate == "final") out.holds = is_final_functor(f);
  else if (predicate == "dopf") out.holds = is_discrete_opfibration(f);
  else if (predicate == "dfib") out.holds = is_discrete_fibration(f);
  else invalid("internal: unhandled predicate " + predicate);
  return out;
}

template <typename S>
PredicateResult check_map_predicate(const S& s, const std::string& predicate,
                                    const typename S::Map& f) {
  PredicateResult out;
  if (predicate == "covering") out.holds = is_covering_map(s, f);
  else if (predicate == "connected") out.holds = is_connected_map(s, f);
  else invalid("internal: unhandled predicate " + predicate);
  return out;
}

template <typename S>
PredicateResult check_frobenius_files(const S& s, const typename S::Map& f,
                                      const typename S::Obj& x, const typename S::Obj& y) {
  PredicateResult out;
  const auto r = frobenius_check(s, f, x, y);
  out.holds = r.iso;
  return out;
}

template <typename S>
PredicateResult check_bc_files(const S& s, const typename S::Map& h,
                               const typename S::Map& r, const typename S::Obj& x) {
  PredicateResult out;
  const auto pb = pullback_covering(s, h, r);
  const auto c = beck_chevalley_check(s, pb.projection, pb.top, h, r, x);
  out.holds = c.square_commutes && c.iso;
  out.details["square_commutes"] = c.square_commutes;
  out.details["comparison_iso"] = c.iso;
  return out;
}

int run_check(const std::string& predicate, const std::vector<std::string>& files,
              SchemeSel scheme, const std::string& dot, bool timing) {
  Report report("check", files, timing);
  report.doc["predicate"] = predicate;
  report.doc["scheme"] = scheme_name(scheme);
  PredicateResult result;

  const auto want = [&](size_t n, const char* what) {
    if (files.size() != n)
      invalid("check " + predicate + " expects " + std::to_string(n) + " input file(s): " +
              what);
  };

  if (predicate == "initial" || predicate == "final" || predicate == "dopf" ||
      predicate == "dfib") {
    want(1, "a functor");
    const Instance inst = load_kind(files[0], InstanceKind::Functor);
    result = check_unary_functor(predicate, inst.functor);
    if (!dot.empty()) write_text(dot, covering_dot(inst.functor));
  } else if (predicate == "covering" || predicate == "connected") {
    switch (scheme) {
      case SchemeSel::Copresheaf:
      case SchemeSel::Presheaf: {
        want(1, "a functor");
        const Instance inst = load_kind(files[0], InstanceKind::Functor);
        result = scheme == SchemeSel::Copresheaf
                     ? check_map_predicate(CopresheafScheme{}, predicate, inst.functor)
                     : check_map_predicate(PresheafScheme{}, predicate, inst.functor);
        if (!dot.empty()) write_text(dot, covering_dot(inst.functor));
        break;
      }
      case SchemeSel::Powerset: {
        want(1, "a mapping");
        const Instance inst = load_kind(files[0], InstanceKind::Mapping);
        result = check_map_predicate(PowersetScheme{}, predicate, inst.mapping);
        break;
      }
      case SchemeSel::Multicat: {
        want(1, "a multifunctor");
        const Instance inst = load_kind(files[0], InstanceKind::Multifunctor);
        if (predicate == "covering") {
          result.holds = is_multicovering(inst.multifunctor);
        } else {
          const auto push = multifunctor_pushforward_terminal(inst.multifunctor);
          result.holds = !push.truncated && all_singleton(push.algebra);
          result.details["truncated"] = push.truncated;
        }
        break;
      }
    }
  } else if (predicate == "principal") {
    want(1, "a covering functor");
    const Instance inst = load_kind(files[0], InstanceKind::Functor);
    result.holds = is_principal(make_covering(inst.functor));
    if (!dot.empty()) write_text(dot, covering_dot(inst.functor));
  } else if (predicate == "frobenius") {
    switch (scheme) {
      case SchemeSel::Copresheaf:
      case SchemeSel::Presheaf: {
        want(3, "a functor and two diagrams");
        const Instance fi = load_kind(files[0], InstanceKind::Functor);
        const Instance xi = load_kind(files[1], InstanceKind::Diagram);
        const Instance yi = load_kind(files[2], InstanceKind::Diagram);
        require_variance(xi, scheme, files[1]);
        require_variance(yi, scheme, files[2]);
        const auto x = rebind_diagram(xi.diagram, fi.functor.dom, files[1]);
        const auto y = rebind_diagram(yi.diagram, fi.functor.cod, files[2]);
        result = scheme == SchemeSel::Copresheaf
                     ? check_frobenius_files(CopresheafScheme{}, fi.functor, x, y)
                     : check_frobenius_files(PresheafScheme{}, fi.functor, x, y);
        break;
      }
      case SchemeSel::Powerset: {
        want(3, "a mapping and two subsets");
        const Instance fi = load_kind(files[0], InstanceKind::Mapping);
        const Instance xi = load_kind(files[1], InstanceKind::Subset);
        const Instance yi = load_kind(files[2], InstanceKind::Subset);
        if (xi.subset.base_size != fi.mapping.dom_size)
          invalid(files[1] + ": subset ambient must equal the mapping's domain size");
        if (yi.subset.base_size != fi.mapping.cod_size)
          invalid(files[2] + ": subset ambient must equal the mapping's codomain size");
        result = check_frobenius_files(PowersetScheme{}, fi.mapping, xi.subset, yi.subset);
        break;
      }
      case SchemeSel::Multicat:
        invalid("check frobenius is defined for copresheaf, presheaf, and powerset");
    }
  } else if (predicate == "beck-chevalley") {
    switch (scheme) {
      case SchemeSel::Copresheaf:
      case SchemeSel::Presheaf: {
        want(3, "a functor h, a covering r with the same codomain, and a diagram over dom h");
        const Instance hi = load_kind(files[0], InstanceKind::Functor);
        const Instance ri = load_kind(files[1], InstanceKind::Functor);
        const Instance xi = load_kind(files[2], InstanceKind::Diagram);
        require_variance(xi, scheme, files[2]);
        FunctorData r = ri.functor;
        if (!same_category(r.cod, hi.functor.cod))
          invalid(files[1] + ": covering codomain must match the functor codomain");
        r.cod = hi.functor.cod;
        const auto x = rebind_diagram(xi.diagram, hi.functor.dom, files[2]);
        result = scheme == SchemeSel::Copresheaf
                     ? check_bc_files(CopresheafScheme{}, hi.functor, r, x)
                     : check_bc_files(PresheafScheme{}, hi.functor, r, x);
        break;
      }
      case SchemeSel::Powerset: {
        want(3, "a mapping h, a covering r with the same codomain, and a subset of dom h");
        const Instance hi = load_kind(files[0], InstanceKind::Mapping);
        const Instance ri = load_kind(files[1], InstanceKind::Mapping);
        const Instance xi = load_kind(files[2], InstanceKind::Subset);
        if (ri.mapping.cod_size != hi.mapping.cod_size)
          invalid(files[1] + ": covering codomain must match the mapping codomain");
        if (xi.subset.base_size != hi.mapping.dom_size)
          invalid(files[2] + ": subset ambient must equal the mapping's domain size");
        result = check_bc_files(PowersetScheme{}, hi.mapping, ri.mapping, xi.subset);
        break;
      }
      case SchemeSel::Multicat:
        invalid("check beck-chevalley is defined for copresheaf, presheaf, and powerset");
    }
  } else {
    invalid("unknown predicate '" + predicate +
            "' (expected initial|final|dopf|dfib|covering|connected|principal|frobenius|"
            "beck-chevalley)");
  }

  json& outcome = report.doc["outcome"];
  outcome["holds"] = result.holds;
  for (auto& [key, value] : result.details.items()) outcome[key] = value;
  report.emit();
  return result.holds ? kOk : kPredicateFalse;
}

// ---- galois-check ----

int run_galois_check(const std::string& path, const std::string& base, int max_fibre,
                     bool timing) {
  Report report("galois-check", {path}, timing);
  const Instance inst = load_category_like(path);
  const int alpha = resolve_base(inst, base);
  const auto g = galois_check(inst.category, alpha, max_fibre);
  json& outcome = report.doc["outcome"];
  outcome["base"] = alpha;
  outcome["max_fibre"] = max_fibre;
  outcome["gset_classes"] = g.gset_classes;
  outcome["covering_classes"] = g.covering_classes;
  outcome["counts_equal"] = g.counts_equal;
  outcome["essentially_surjective"] = g.essentially_surjective;
  outcome["round_trips"] = g.round_trips;
  outcome["fully_faithful"] = g.fully_faithful;
  outcome["failures"] = g.failures;
  outcome["passed"] = g.passed();
  report.emit();
  return g.passed() ? kOk : kPredicateFalse;
}

// ---- corpus ----

int run_corpus(const std::string& suite, const CorpusOptions& opt, bool timing) {
  Report report("corpus", {suite}, timing);
  json options;
  options["max_objects"] = opt.max_objects;
  options["max_morphisms"] = opt.max_morphisms;
  options["category_limit"] = opt.category_limit;
  options["functor_pair_limit"] = opt.functor_pair_limit;
  options["pair_limit"] = opt.pair_limit;
  options["diagram_limit"] = opt.diagram_limit;
  options["mapping_max_size"] = opt.mapping_max_size;
  options["seed"] = opt.seed;
  options["budget"] = opt.budget;
  report.doc["options"] = options;

  const SuiteResult result = run_suite(suite, opt);
  json checks = json::array();
  long checked = 0;
  long failed = 0;
  for (const auto& c : result.checks) {
    json row;
    row["name"] = c.name;
    row["checked"] = c.checked;
    row["failed"] = c.failed;
    row["notes"] = c.notes;
    checks.push_back(row);
    checked += c.checked;
    failed += c.failed;
  }
  json& outcome = report.doc["outcome"];
  outcome["checks"] = checks;
  outcome["checked"] = checked;
  outcome["failed"] = failed;
  outcome["all_pass"] = result.all_pass();
  report.emit();
  return result.all_pass() ? kOk : kPredicateFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cofact: comprehensive factorisation, coverings, and Galois invariants on "
      "finite categories, finite sets, and finite multicategories"};
  app.require_subcommand(1);

  std::function<int()> runner;
  bool timing = false;
  app.add_flag("--timing", timing,
               "record elapsed milliseconds in the report (off by default so reports "
               "are byte-deterministic)");

  std::string scheme_arg = "copresheaf";
  std::string dot_path;
  std::string base_spec;
  int max_fibre = 3;

  const auto add_scheme = [&](CLI::App* cmd) {
    cmd->add_option("--scheme", scheme_arg, "copresheaf|presheaf|powerset|multicat")
        ->capture_default_str();
  };
  const auto add_dot = [&](CLI::App* cmd) {
    cmd->add_option("--dot", dot_path, "write a DOT rendering to this path");
  };
  const auto add_base = [&](CLI::App* cmd) {
    cmd->add_option("--base", base_spec,
                    "base object: a name or index (defaults to the document basepoint)");
  };

  // factorize
  {
    auto* cmd = app.add_subcommand("factorize",
                                   "split a map into its connected and covering parts");
    static std::string path;
    cmd->add_option("file", path, "map document (functor, mapping, or multifunctor)")
        ->required();
    add_scheme(cmd);
    add_dot(cmd);
    cmd->callback([&] {
      runner = [&] { return run_factorize(path, parse_scheme(scheme_arg), dot_path, timing); };
    });
  }

  // elements
  {
    auto* cmd = app.add_subcommand(
        "elements", "build the elements construction and its covering projection");
    static std::string path;
    cmd->add_option("file", path, "object document (diagram, subset, or algebra)")
        ->required();
    add_scheme(cmd);
    add_dot(cmd);
    cmd->callback([&] {
      runner = [&] { return run_elements(path, parse_scheme(scheme_arg), dot_path, timing); };
    });
  }

  // kan
  {
    auto* cmd = app.add_subcommand("kan", "push a diagram forward along a functor");
    static std::string fpath, xpath;
    cmd->add_option("functor", fpath, "functor document")->required();
    cmd->add_option("diagram", xpath, "diagram over the functor's domain")->required();
    add_scheme(cmd);
    cmd->callback([&] {
      runner = [&] { return run_kan(fpath, xpath, parse_scheme(scheme_arg), timing); };
    });
  }

  // pi0
  {
    auto* cmd = app.add_subcommand("pi0", "connected components of a category");
    static std::string path;
    cmd->add_option("file", path, "category document")->required();
    add_dot(cmd);
    cmd->callback([&] {
      runner = [&] { return run_pi0(path, dot_path, timing); };
    });
  }

  // pi1
  {
    auto* cmd = app.add_subcommand(
        "pi1", "fundamental group at a base object (deck transformations)");
    static std::string path;
    cmd->add_option("file", path, "category or based_category document")->required();
    add_base(cmd);
    cmd->callback([&] {
      runner = [&] { return run_pi1(path, base_spec, timing); };
    });
  }

  // cover
  {
    auto* cmd = app.add_subcommand("cover", "universal covering at a base object");
    static std::string path;
    cmd->add_option("file", path, "category or based_category document")->required();
    add_base(cmd);
    add_dot(cmd);
    cmd->callback([&] {
      runner = [&] { return run_cover(path, base_spec, dot_path, timing); };
    });
  }

  // borel
  {
    auto* cmd = app.add_subcommand(
        "borel", "covering classified by a deck-group action (Borel construction)");
    static std::string apath, cpath;
    cmd->add_option("action", apath, "group_action document over the deck group")
        ->required();
    cmd->add_option("category", cpath, "category or based_category document")->required();
    add_base(cmd);
    cmd->callback([&] {
      runner = [&] { return run_borel(apath, cpath, base_spec, timing); };
    });
  }

  // fibre
  {
    auto* cmd = app.add_subcommand(
        "fibre", "monodromy action of the deck group on a covering's fibre");
    static std::string path;
    cmd->add_option("file", path, "covering functor document")->required();
    add_base(cmd);
    cmd->callback([&] {
      runner = [&] { return run_fibre(path, base_spec, timing); };
    });
  }

  // check
  {
    auto* cmd = app.add_subcommand("check", "evaluate a predicate (exit 2 when false)");
    static std::string predicate;
    static std::vector<std::string> files;
    cmd->add_option("predicate", predicate,
                    "initial|final|dopf|dfib|covering|connected|principal|frobenius|"
                    "beck-chevalley")
        ->required();
    cmd->add_option("files", files, "input documents for the predicate")->required();
    add_scheme(cmd);
    add_dot(cmd);
    cmd->callback([&] {
      runner = [&] {
        return run_check(predicate, files, parse_scheme(scheme_arg), dot_path, timing);
      };
    });
  }

  // galois-check
  {
    auto* cmd = app.add_subcommand(
        "galois-check",
        "classification of bounded-fibre coverings by deck-group actions");
    static std::string path;
    cmd->add_option("file", path, "category or based_category document (groupoid)")
        ->required();
    add_base(cmd);
    cmd->add_option("--max-fibre", max_fibre, "fibre size bound")->capture_default_str();
    cmd->callback([&] {
      runner = [&] { return run_galois_check(path, base_spec, max_fibre, timing); };
    });
  }

  // corpus
  {
    auto* cmd = app.add_subcommand(
        "corpus", "run a property suite over the generated instance corpus");
    static std::string suite;
    static CorpusOptions opt;
    std::string names;
    for (const auto& n : suite_names()) names += (names.empty() ? "" : "|") + n;
    cmd->add_option("suite", suite, names)->required();
    cmd->add_option("--max-objects", opt.max_objects, "object bound for generated categories")
        ->capture_default_str();
    cmd->add_option("--max-morphisms", opt.max_morphisms,
                    "morphism bound for generated categories")
        ->capture_default_str();
    cmd->add_option("--category-limit", opt.category_limit, "number of generated categories")
        ->capture_default_str();
    cmd->add_option("--pair-limit", opt.pair_limit, "functor sample bound per category pair")
        ->capture_default_str();
    cmd->add_option("--diagram-limit", opt.diagram_limit, "diagram sample bound per category")
        ->capture_default_str();
    cmd->add_option("--mapping-max-size", opt.mapping_max_size,
                    "set size bound for generated mappings")
        ->capture_default_str();
    cmd->add_option("--seed", opt.seed, "sampling seed")->capture_default_str();
    cmd->add_option("--budget", opt.budget, "node budget for exhaustive enumerations")
        ->capture_default_str();
    cmd->callback([&] {
      runner = [&] { return run_corpus(suite, opt, timing); };
    });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return runner();
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
}
