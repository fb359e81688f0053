#include "cofact/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>
#include <utility>

#include "cofact/cat_scheme.hpp"
#include "cofact/galois.hpp"
#include "cofact/group.hpp"
#include "cofact/multicat.hpp"
#include "cofact/oracles.hpp"
#include "cofact/scheme.hpp"
#include "cofact/set_scheme.hpp"

namespace cofact {

namespace {

// Filler searches get a budget of their own: they are the one place where
// exhaustive functor enumeration meets mid-sized elements categories.
constexpr std::int64_t kFillerBudget = 20000000;
// Squares whose raw object-assignment space exceeds this are not sampled.
constexpr double kFillerObjSpace = 5e6;
constexpr long kSquareTarget = 600;
constexpr long kSquareTargetDual = 300;
constexpr long kTripleTarget = 340;
constexpr long kUniquenessMappings = 140;
constexpr long kUniquenessFunctors = 70;
constexpr long kUnaryAgreement = 120;

// ---- deterministic sampling ----

template <typename T>
std::vector<T> sample(const std::vector<T>& v, size_t keep, std::uint32_t seed) {
  if (v.size() <= keep) return v;
  std::vector<size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::mt19937 rng(seed);
  for (size_t i = 0; i < keep; ++i) {
    const size_t j = i + rng() % (idx.size() - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(keep);
  std::sort(idx.begin(), idx.end());
  std::vector<T> out;
  out.reserve(keep);
  for (const size_t i : idx) out.push_back(v[i]);
  return out;
}

// ---- deterministic fan-out ----

struct Item {
  bool ok = true;
  std::string note;
  bool skip = false;  // discarded instance: excluded from checked/failed
};

SuiteCheck named(std::string name) {
  SuiteCheck c;
  c.name = std::move(name);
  return c;
}

// Runs fn over 0..n-1 on a small pool; results land in index order, so the
// folded report does not depend on scheduling.
template <typename Fn>
void fan_out(SuiteCheck& check, long n, const Fn& fn) {
  std::vector<Item> items(static_cast<size_t>(n));
  const long hw = static_cast<long>(std::thread::hardware_concurrency());
  const long workers = std::max<long>(1, std::min<long>(hw > 0 ? hw : 4, n));
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (long t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          items[static_cast<size_t>(i)] = fn(i);
        } catch (const std::exception& e) {
          items[static_cast<size_t>(i)] = {false, std::string("exception: ") + e.what()};
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  long skipped = 0;
  for (long i = 0; i < n; ++i) {
    if (items[static_cast<size_t>(i)].skip) {
      ++skipped;
      continue;
    }
    ++check.checked;
    if (!items[static_cast<size_t>(i)].ok) {
      ++check.failed;
      if (check.notes.size() < 4)
        check.notes.push_back("item " + std::to_string(i) + ": " +
                              items[static_cast<size_t>(i)].note);
    }
  }
  if (skipped > 0)
    check.notes.push_back(std::to_string(skipped) +
                          " instances discarded: enumeration over budget");
}

// ---- shared corpus ----

struct Corpus {
  CorpusOptions opt;
  std::vector<CatRef> cats;
  std::vector<FunctorData> functors;
  std::vector<SetMapping> mappings;
  std::vector<MulticatRef> multicats;
  std::vector<MultiFunctor> multifunctors;
  std::vector<std::pair<CatRef, int>> based;
  std::vector<std::vector<SetDiagram>> cov;     // covariant diagrams per category
  std::vector<std::vector<SetDiagram>> contra;  // contravariant diagrams per category
  std::vector<std::vector<int>> functors_into;  // functor indices by codomain
  std::vector<std::pair<int, int>> composable;  // (i, j) with cod f_i = dom f_j
  std::map<const FinCategory*, int> index;

  int cat_of(const CatRef& c) const {
    const auto it = index.find(c.get());
    return it == index.end() ? -1 : it->second;
  }
};

// Contravariant fibre objects over c, built through the opposite category.
// The tables of the double opposite equal the original, so the base is
// swapped back to c itself.
std::vector<SetDiagram> contravariant_diagrams(const CatRef& c, const CorpusOptions& opt) {
  std::vector<SetDiagram> out;
  for (const auto& w : corpus_diagrams(opposite_cat(c), opt)) {
    SetDiagram x = dualise(w);
    x.base = c;
    out.push_back(std::move(x));
  }
  return out;
}

Corpus build_corpus(const CorpusOptions& opt) {
  Corpus c;
  c.opt = opt;
  c.cats = corpus_categories(opt);
  c.functors = corpus_functors(c.cats, opt);
  c.mappings = corpus_mappings(opt.mapping_max_size);
  c.multicats = corpus_multicats();
  c.multifunctors = corpus_multifunctors(opt);
  c.based = corpus_based_categories(opt);
  for (size_t k = 0; k < c.cats.size(); ++k) c.index[c.cats[k].get()] = static_cast<int>(k);
  c.cov.resize(c.cats.size());
  c.contra.resize(c.cats.size());
  for (size_t k = 0; k < c.cats.size(); ++k) {
    c.cov[k] = corpus_diagrams(c.cats[k], opt);
    c.contra[k] = contravariant_diagrams(c.cats[k], opt);
  }
  c.functors_into.resize(c.cats.size());
  for (size_t i = 0; i < c.functors.size(); ++i) {
    const int k = c.cat_of(c.functors[i].cod);
    if (k >= 0) c.functors_into[static_cast<size_t>(k)].push_back(static_cast<int>(i));
  }
  for (size_t i = 0; i < c.functors.size(); ++i)
    for (size_t j = 0; j < c.functors.size(); ++j)
      if (c.functors[i].cod.get() == c.functors[j].dom.get())
        c.composable.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return c;
}

// ---- orthogonality ----

template <typename S>
SuiteCheck orthogonality_squares(const std::string& name, const Corpus& c, long target,
                                 std::uint32_t seed) {
  const S s;
  struct Square {
    FunctorData l, r, top, bottom;
  };
  std::vector<Square> squares;
  const auto pairs = sample(c.composable, static_cast<size_t>(target * 3), seed);
  for (const auto& [i, j] : pairs) {
    if (static_cast<long>(squares.size()) >= target) break;
    const auto& f = c.functors[static_cast<size_t>(i)];
    const auto& g = c.functors[static_cast<size_t>(j)];
    const auto ff = factorise(s, f);
    const auto fg = factorise(s, s.compose(g, f));
    // keep the exhaustive filler search tractable
    const double space =
        std::pow(std::max(1.0, static_cast<double>(fg.connected_part.cod->objects)),
                 static_cast<double>(ff.connected_part.cod->objects));
    if (space > kFillerObjSpace) continue;
    squares.push_back({ff.connected_part, fg.covering_part, fg.connected_part,
                       s.compose(g, ff.covering_part)});
  }
  SuiteCheck check = named(name);
  fan_out(check, static_cast<long>(squares.size()), [&](long i) -> Item {
    const auto& q = squares[static_cast<size_t>(i)];
    if (!is_connected_map(s, q.l)) return {false, "left leg not connected"};
    if (!is_covering_map(s, q.r)) return {false, "right leg not a covering"};
    if (!s.map_equal(s.compose(q.r, q.top), s.compose(q.bottom, q.l)))
      return {false, "square does not commute"};
    const auto res = orthogonality_check(s, q.l, q.r, q.top, q.bottom, kFillerBudget);
    if (res.status != EnumStatus::Complete) return {false, "filler enumeration overflowed"};
    if (res.fillers != 1)
      return {false, std::to_string(res.fillers) + " fillers, expected exactly 1"};
    return {};
  });
  return check;
}

void sec_orthogonality(const Corpus& c, std::vector<SuiteCheck>& out) {
  out.push_back(orthogonality_squares<CopresheafScheme>("orthogonality.copresheaf", c,
                                                        kSquareTarget, c.opt.seed + 101));
  out.push_back(orthogonality_squares<PresheafScheme>("orthogonality.presheaf", c,
                                                      kSquareTargetDual, c.opt.seed + 102));
}

// ---- factorisation ----

template <typename S, typename Maps>
SuiteCheck factorise_every(const std::string& name, const S& s, const Maps& maps) {
  SuiteCheck check = named(name);
  fan_out(check, static_cast<long>(maps.size()), [&](long i) -> Item {
    const auto& f = maps[static_cast<size_t>(i)];
    const auto fac = factorise(s, f);
    if (!is_connected_map(s, fac.connected_part)) return {false, "left part not connected"};
    if (!is_covering_map(s, fac.covering_part)) return {false, "right part not a covering"};
    if (!s.map_equal(s.compose(fac.covering_part, fac.connected_part), f))
      return {false, "parts do not recompose"};
    return {};
  });
  return check;
}

SuiteCheck factorise_multifunctors(const Corpus& c) {
  SuiteCheck check = named("factorise.multicat");
  // Inputs whose pushforward leaves the declared support cannot be
  // factorised; they are reported as flagged rather than as failures.
  std::vector<const MultiFunctor*> usable;
  long flagged = 0;
  for (const auto& f : c.multifunctors) {
    const auto fac = factorise_multi(f);
    if (fac.truncated && !algebra_ok(fac.classifying))
      ++flagged;
    else
      usable.push_back(&f);
  }
  if (flagged > 0)
    check.notes.push_back(std::to_string(flagged) +
                          " inputs flagged: truncated support, no factorisation");
  fan_out(check, static_cast<long>(usable.size()), [&](long i) -> Item {
    const auto& f = *usable[static_cast<size_t>(i)];
    const auto fac = factorise_multi(f);
    if (!multifunctor_equal(compose_multifunctors(fac.covering_part, fac.connected_part), f))
      return {false, "parts do not recompose"};
    if (!is_multicovering(fac.covering_part)) return {false, "right part not a covering"};
    if (!all_singleton(multifunctor_pushforward_terminal(fac.connected_part).algebra))
      return {false, "left part not connected"};
    return {};
  });
  return check;
}

// Relabelled copy of a category together with the relabelling isomorphism.
std::pair<CatRef, FunctorData> permuted_copy(const CatRef& c, std::uint32_t seed) {
  std::mt19937 rng(seed);
  const int no = c->objects;
  const int nm = c->morphisms();
  std::vector<int> op(static_cast<size_t>(no));
  std::vector<int> mp(static_cast<size_t>(nm));
  std::iota(op.begin(), op.end(), 0);
  std::iota(mp.begin(), mp.end(), 0);
  for (int i = no - 1; i > 0; --i) std::swap(op[static_cast<size_t>(i)], op[rng() % (i + 1)]);
  for (int i = nm - 1; i > 0; --i) std::swap(mp[static_cast<size_t>(i)], mp[rng() % (i + 1)]);
  FinCategory d;
  d.objects = no;
  d.src.assign(static_cast<size_t>(nm), 0);
  d.tgt.assign(static_cast<size_t>(nm), 0);
  d.identity.assign(static_cast<size_t>(no), 0);
  d.comp.assign(static_cast<size_t>(nm), std::vector<int>(static_cast<size_t>(nm), kNone));
  for (int m = 0; m < nm; ++m) {
    d.src[static_cast<size_t>(mp[static_cast<size_t>(m)])] =
        op[static_cast<size_t>(c->src[static_cast<size_t>(m)])];
    d.tgt[static_cast<size_t>(mp[static_cast<size_t>(m)])] =
        op[static_cast<size_t>(c->tgt[static_cast<size_t>(m)])];
  }
  for (int o = 0; o < no; ++o)
    d.identity[static_cast<size_t>(op[static_cast<size_t>(o)])] =
        mp[static_cast<size_t>(c->identity[static_cast<size_t>(o)])];
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f)
      if (c->comp[static_cast<size_t>(g)][static_cast<size_t>(f)] != kNone)
        d.comp[static_cast<size_t>(mp[static_cast<size_t>(g)])]
              [static_cast<size_t>(mp[static_cast<size_t>(f)])] =
            mp[static_cast<size_t>(c->comp[static_cast<size_t>(g)][static_cast<size_t>(f)])];
  CatRef ref = make_cat(std::move(d));
  FunctorData iso;
  iso.dom = c;
  iso.cod = ref;
  iso.obj_map = op;
  iso.mor_map = mp;
  return {ref, iso};
}

// Middle uniqueness by witness search: relabel the canonical middle, form the
// two orthogonality squares between the factorisations, and confirm that the
// unique fillers exist and invert each other.
SuiteCheck uniqueness_functors(const Corpus& c) {
  const CopresheafScheme s;
  SuiteCheck check = named("uniqueness.copresheaf");
  // The witness search enumerates functors between the two middles, so skip
  // inputs whose middle makes that space intractable.
  std::vector<FunctorData> eligible;
  for (const auto& f : c.functors) {
    const int n = factorise(s, f).connected_part.cod->objects;
    if (std::pow(std::max(1.0, static_cast<double>(n)), static_cast<double>(n)) <=
        kFillerObjSpace)
      eligible.push_back(f);
  }
  const auto maps = sample(eligible, kUniquenessFunctors + kUniquenessFunctors / 4,
                           c.opt.seed + 6);
  fan_out(check, static_cast<long>(maps.size()), [&](long idx) -> Item {
    const auto& f = maps[static_cast<size_t>(idx)];
    const auto fac = factorise(s, f);
    const CatRef mid = fac.connected_part.cod;
    const auto [mid2, iso] =
        permuted_copy(mid, c.opt.seed + 1000 + static_cast<std::uint32_t>(idx));
    const auto inv = invert_functor(iso);
    if (!inv) return {false, "relabelling is not invertible"};
    const auto l2 = compose_functors(iso, fac.connected_part);
    const auto r2 = compose_functors(fac.covering_part, *inv);
    const auto fwd =
        orthogonality_check(s, fac.connected_part, r2, l2, fac.covering_part, kFillerBudget);
    const auto bwd =
        orthogonality_check(s, l2, fac.covering_part, fac.connected_part, r2, kFillerBudget);
    if (fwd.status != EnumStatus::Complete || bwd.status != EnumStatus::Complete)
      return {true, "", true};  // space too large to enumerate: discard
    if (fwd.fillers != 1 || bwd.fillers != 1) return {false, "mediating map not unique"};
    if (!functor_equal(compose_functors(*bwd.filler, *fwd.filler), identity_functor(mid)) ||
        !functor_equal(compose_functors(*fwd.filler, *bwd.filler), identity_functor(mid2)))
      return {false, "mediating maps do not invert"};
    return {};
  });
  return check;
}

// Middle uniqueness on mappings, the fully exhaustive version: every
// (surjection, injection) factorisation has a middle of the image size and
// exactly one bijection aligning it with the canonical one.
SuiteCheck uniqueness_mappings(const Corpus& c) {
  SuiteCheck check = named("uniqueness.powerset");
  const auto maps = sample(c.mappings, kUniquenessMappings, c.opt.seed + 5);
  fan_out(check, static_cast<long>(maps.size()), [&](long idx) -> Item {
    const auto& f = maps[static_cast<size_t>(idx)];
    const auto canon = image_factorise(f);
    const int k = canon.surjection.cod_size;
    long alternatives = 0;
    std::string bad;
    for (int m = 0; m <= f.cod_size && bad.empty(); ++m) {
      for_each_mapping(f.dom_size, m, c.opt.budget, [&](const SetMapping& l) {
        std::vector<char> hit(static_cast<size_t>(m), 0);
        for (const int v : l.map) hit[static_cast<size_t>(v)] = 1;
        for (const char h : hit)
          if (!h) return true;  // not surjective
        for_each_mapping(m, f.cod_size, c.opt.budget, [&](const SetMapping& r) {
          std::vector<char> seen(static_cast<size_t>(f.cod_size), 0);
          for (const int v : r.map) {
            if (seen[static_cast<size_t>(v)]) return true;  // not injective
            seen[static_cast<size_t>(v)] = 1;
          }
          if (!mapping_equal(compose_mappings(r, l), f)) return true;
          ++alternatives;
          if (m != k) {
            bad = "middle of size " + std::to_string(m) + ", image has " + std::to_string(k);
            return false;
          }
          int mediators = 0;
          for_each_mapping(k, m, c.opt.budget, [&](const SetMapping& phi) {
            if (!invert_mapping(phi)) return true;
            if (mapping_equal(compose_mappings(phi, canon.surjection), l) &&
                mapping_equal(compose_mappings(r, phi), canon.inclusion))
              ++mediators;
            return true;
          });
          if (mediators != 1) {
            bad = std::to_string(mediators) + " mediating bijections";
            return false;
          }
          return true;
        });
        return bad.empty();
      });
    }
    if (!bad.empty()) return {false, bad};
    if (alternatives == 0) return {false, "no factorisation found"};
    return {};
  });
  return check;
}

void sec_factorisation(const Corpus& c, std::vector<SuiteCheck>& out) {
  out.push_back(
      factorise_every("factorise.copresheaf", CopresheafScheme{}, c.functors));
  out.push_back(factorise_every("factorise.presheaf", PresheafScheme{}, c.functors));
  out.push_back(factorise_every("factorise.powerset", PowersetScheme{}, c.mappings));
  out.push_back(factorise_multifunctors(c));
  out.push_back(uniqueness_mappings(c));
  out.push_back(uniqueness_functors(c));
}

// ---- consistency ----

template <typename S, typename Maps>
SuiteCheck consistency_on(const std::string& name, const S& s, const Maps& maps) {
  const auto rep = check_consistency(s, maps);
  SuiteCheck check = named(name);
  check.checked = rep.composable_covering_pairs + rep.cancellation_pairs;
  check.failed = rep.composition_failures + rep.cancellation_failures;
  for (const auto& [i, j] : rep.composition_counterexamples)
    if (check.notes.size() < 4)
      check.notes.push_back("composite of coverings " + std::to_string(i) + ", " +
                            std::to_string(j) + " is not a covering");
  for (const auto& [i, j] : rep.cancellation_counterexamples)
    if (check.notes.size() < 4)
      check.notes.push_back("cancellation fails at " + std::to_string(i) + ", " +
                            std::to_string(j));
  return check;
}

SuiteCheck consistency_multicat(const Corpus& c) {
  SuiteCheck check = named("consistency.multicat");
  std::vector<char> cov(c.multifunctors.size());
  for (size_t i = 0; i < c.multifunctors.size(); ++i)
    cov[i] = is_multicovering(c.multifunctors[i]) ? 1 : 0;
  for (size_t i = 0; i < c.multifunctors.size(); ++i) {
    for (size_t j = 0; j < c.multifunctors.size(); ++j) {
      const auto& f = c.multifunctors[i];
      const auto& g = c.multifunctors[j];
      if (f.cod.get() != g.dom.get()) continue;
      if (!cov[j]) continue;
      const bool composite_covers = is_multicovering(compose_multifunctors(g, f));
      if (cov[i]) {
        ++check.checked;
        if (!composite_covers) {
          ++check.failed;
          if (check.notes.size() < 4)
            check.notes.push_back("composite of coverings " + std::to_string(i) + ", " +
                                  std::to_string(j) + " is not a covering");
        }
      }
      if (composite_covers) {
        ++check.checked;
        if (!cov[i]) {
          ++check.failed;
          if (check.notes.size() < 4)
            check.notes.push_back("cancellation fails at " + std::to_string(i) + ", " +
                                  std::to_string(j));
        }
      }
    }
  }
  return check;
}

void sec_consistency(const Corpus& c, std::vector<SuiteCheck>& out) {
  out.push_back(consistency_on("consistency.copresheaf", CopresheafScheme{}, c.functors));
  out.push_back(consistency_on("consistency.presheaf", PresheafScheme{}, c.functors));
  out.push_back(consistency_on("consistency.powerset", PowersetScheme{}, c.mappings));
  out.push_back(consistency_multicat(c));
}

// ---- Frobenius, base change, connected stability ----

template <typename S>
struct ConditionItems {
  struct Frob {
    typename S::Map f;
    typename S::Obj x, y;
  };
  struct Bc {
    typename S::Map top, left, right, bottom;
    typename S::Obj x;
  };
  struct Stab {
    typename S::Map l, r;
  };
  std::vector<Frob> frob;
  std::vector<Bc> bc;
  std::vector<Stab> stab;
};

template <typename S>
void run_condition_checks(const std::string& prefix, const S& s,
                          const ConditionItems<S>& items, std::vector<SuiteCheck>& out) {
  SuiteCheck frob = named("frobenius." + prefix);
  fan_out(frob, static_cast<long>(items.frob.size()), [&](long i) -> Item {
    const auto& it = items.frob[static_cast<size_t>(i)];
    if (!frobenius_check(s, it.f, it.x, it.y).iso)
      return {false, "projection formula comparison not invertible"};
    return {};
  });
  out.push_back(std::move(frob));

  SuiteCheck bc = named("beck_chevalley." + prefix);
  fan_out(bc, static_cast<long>(items.bc.size()), [&](long i) -> Item {
    const auto& it = items.bc[static_cast<size_t>(i)];
    const auto res = beck_chevalley_check(s, it.top, it.left, it.right, it.bottom, it.x);
    if (!res.square_commutes) return {false, "pullback square does not commute"};
    if (!res.iso) return {false, "base-change comparison not invertible"};
    return {};
  });
  out.push_back(std::move(bc));

  SuiteCheck stab = named("stability." + prefix);
  fan_out(stab, static_cast<long>(items.stab.size()), [&](long i) -> Item {
    const auto& it = items.stab[static_cast<size_t>(i)];
    if (!connected_stability_check(s, it.l, it.r).pulled_connected)
      return {false, "pulled-back map lost connectedness"};
    return {};
  });
  out.push_back(std::move(stab));
}

// Items for the two category schemes; `fibre` selects the variance.
//
// The three conditions are genuine theorems only on restricted families
// here: Frobenius holds for every covering and for arbitrary maps into
// groupoid bases; base change holds when the bottom map lands in a groupoid
// or is itself a covering; connected maps are stable under pullback along
// coverings over groupoid bases.  (Over a non-groupoid base all three admit
// counterexamples: pull the connected inclusion of the source of an arrow
// back along the covering classified by the representable at its target —
// the pullback is empty.)
template <typename S>
ConditionItems<S> cat_condition_items(const S& s, const Corpus& c,
                                      const std::vector<std::vector<SetDiagram>>& fibre,
                                      std::uint32_t seed) {
  ConditionItems<S> items;
  CorpusOptions upstairs_opt = c.opt;
  upstairs_opt.diagram_limit = 3;
  const bool contravariant = !fibre.empty() && !fibre.front().empty()
                                 ? fibre.front().front().variance == Variance::Contravariant
                                 : false;
  const auto diagrams_over = [&](const CatRef& base) {
    return contravariant ? contravariant_diagrams(base, upstairs_opt)
                         : corpus_diagrams(base, upstairs_opt);
  };
  for (size_t k = 0; k < c.cats.size(); ++k) {
    const bool groupoid_base = is_groupoid(*c.cats[k]);
    for (size_t di = 0; di < fibre[k].size(); ++di) {
      const auto& x = fibre[k][di];
      const auto els = s.elements(x);
      const auto& r = els.projection;
      const auto upstairs = diagrams_over(els.total);
      for (size_t xi = 0; xi < upstairs.size() && xi < 2; ++xi)
        for (size_t yi = 0; yi < fibre[k].size() && yi < 2; ++yi)
          items.frob.push_back({r, upstairs[xi], fibre[k][yi]});
      if (groupoid_base) {
        int used = 0;
        for (const int fi : c.functors_into[k]) {
          if (used >= 4) break;
          const auto& h = c.functors[static_cast<size_t>(fi)];
          const int kd = c.cat_of(h.dom);
          if (kd < 0 || fibre[static_cast<size_t>(kd)].empty()) continue;
          const auto pb = pullback_covering(s, h, r);
          items.bc.push_back(
              {pb.projection, pb.top, h, r, fibre[static_cast<size_t>(kd)].front()});
          ++used;
        }
      }
      // covering bottoms are valid over any base
      for (size_t dj = 0; dj < fibre[k].size() && dj < di + 2; ++dj) {
        if (dj == di) continue;
        const auto els2 = s.elements(fibre[k][dj]);
        const auto over2 = diagrams_over(els2.total);
        if (over2.empty()) continue;
        const auto pb = pullback_covering(s, els2.projection, r);
        items.bc.push_back({pb.projection, pb.top, els2.projection, r, over2.front()});
      }
    }
    if (groupoid_base) {
      int used = 0;
      for (const int fi : c.functors_into[k]) {
        if (used >= 3) break;
        const auto& h = c.functors[static_cast<size_t>(fi)];
        const int kd = c.cat_of(h.dom);
        if (kd < 0 || fibre[static_cast<size_t>(kd)].empty()) continue;
        for (size_t yi = 0; yi < fibre[k].size() && yi < 2; ++yi)
          items.frob.push_back(
              {h, fibre[static_cast<size_t>(kd)].front(), fibre[k][yi]});
        ++used;
      }
    }
  }
  for (const auto& f : c.functors) {
    const auto fac = factorise(s, f);
    const CatRef mid = fac.connected_part.cod;
    if (!is_groupoid(*mid)) continue;
    const auto over_mid = diagrams_over(mid);
    for (size_t yi = 0; yi < over_mid.size() && yi < 4; ++yi)
      items.stab.push_back({fac.connected_part, s.elements(over_mid[yi]).projection});
  }
  items.frob = sample(items.frob, kTripleTarget, seed + 1);
  items.bc = sample(items.bc, kTripleTarget, seed + 2);
  items.stab = sample(items.stab, kTripleTarget, seed + 3);
  return items;
}

std::vector<SubsetObj> subsets_of(int n) {
  std::vector<SubsetObj> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    SubsetObj x;
    x.base_size = n;
    for (int v = 0; v < n; ++v)
      if (mask & (1 << v)) x.elems.push_back(v);
    out.push_back(std::move(x));
  }
  return out;
}

ConditionItems<PowersetScheme> powerset_condition_items(const Corpus& c, std::uint32_t seed) {
  const PowersetScheme s;
  ConditionItems<PowersetScheme> items;
  std::vector<SetMapping> coverings;
  for (const auto& f : c.mappings)
    if (is_covering_map(s, f)) coverings.push_back(f);
  for (const auto& f : coverings) {
    const auto xs = subsets_of(f.dom_size);
    const auto ys = subsets_of(f.cod_size);
    for (size_t xi = 0; xi < xs.size() && xi < 3; ++xi)
      for (size_t yi = 0; yi < ys.size() && yi < 3; ++yi)
        items.frob.push_back({f, xs[xi], ys[ys.size() - 1 - yi]});
  }
  for (const auto& r : coverings) {
    int used = 0;
    for (const auto& h : c.mappings) {
      if (h.cod_size != r.cod_size) continue;
      if (used >= 4) break;
      const auto pb = pullback_covering(s, h, r);
      const auto xs = subsets_of(h.dom_size);
      items.bc.push_back({pb.projection, pb.top, h, r, xs[xs.size() / 2]});
      if (xs.size() > 1)
        items.bc.push_back({pb.projection, pb.top, h, r, xs[xs.size() - 1]});
      ++used;
    }
  }
  for (const auto& f : c.mappings) {
    const auto fac = factorise(s, f);
    const int k = fac.connected_part.cod_size;
    const auto ys = subsets_of(k);
    for (size_t yi = 0; yi < ys.size() && yi < 3; ++yi)
      items.stab.push_back({fac.connected_part, s.elements(ys[ys.size() - 1 - yi]).projection});
  }
  items.frob = sample(items.frob, kTripleTarget, seed + 1);
  items.bc = sample(items.bc, kTripleTarget, seed + 2);
  items.stab = sample(items.stab, kTripleTarget, seed + 3);
  return items;
}

// The damaged scheme must fail all three condition families somewhere.
SuiteCheck mutation_broken(const Corpus& c) {
  const PaddedPowersetScheme s;
  SuiteCheck check = named("mutation.broken_scheme");
  check.checked = 3;

  std::vector<SetMapping> coverings;
  std::vector<SetMapping> connecteds;
  for (const auto& f : c.mappings) {
    if (is_covering_map(s, f)) coverings.push_back(f);
    if (is_connected_map(s, f)) connecteds.push_back(f);
  }

  bool frob_broken = false;
  for (const auto& f : coverings) {
    for (const auto& x : subsets_of(f.dom_size)) {
      for (const auto& y : subsets_of(f.cod_size)) {
        try {
          if (!frobenius_check(s, f, x, y).iso) frob_broken = true;
        } catch (const std::exception&) {
          frob_broken = true;
        }
        if (frob_broken) break;
      }
      if (frob_broken) break;
    }
    if (frob_broken) break;
  }
  if (!frob_broken) {
    ++check.failed;
    check.notes.push_back("projection formula still holds on the damaged scheme");
  }

  bool bc_broken = false;
  for (const auto& r : coverings) {
    for (const auto& h : c.mappings) {
      if (h.cod_size != r.cod_size) continue;
      try {
        const auto pb = pullback_covering(s, h, r);
        for (const auto& x : subsets_of(h.dom_size)) {
          const auto res = beck_chevalley_check(s, pb.projection, pb.top, h, r, x);
          if (!res.square_commutes || !res.iso) {
            bc_broken = true;
            break;
          }
        }
      } catch (const std::exception&) {
        bc_broken = true;
      }
      if (bc_broken) break;
    }
    if (bc_broken) break;
  }
  if (!bc_broken) {
    ++check.failed;
    check.notes.push_back("base change still holds on the damaged scheme");
  }

  bool stab_broken = false;
  for (const auto& l : connecteds) {
    for (const auto& r : coverings) {
      if (r.cod_size != l.cod_size) continue;
      try {
        if (!connected_stability_check(s, l, r).pulled_connected) stab_broken = true;
      } catch (const std::exception&) {
        stab_broken = true;
      }
      if (stab_broken) break;
    }
    if (stab_broken) break;
  }
  if (!stab_broken) {
    ++check.failed;
    check.notes.push_back("connected stability still holds on the damaged scheme");
  }
  return check;
}

void sec_frobenius(const Corpus& c, std::vector<SuiteCheck>& out) {
  run_condition_checks("copresheaf", CopresheafScheme{},
                       cat_condition_items(CopresheafScheme{}, c, c.cov, c.opt.seed + 200),
                       out);
  run_condition_checks("presheaf", PresheafScheme{},
                       cat_condition_items(PresheafScheme{}, c, c.contra, c.opt.seed + 300),
                       out);
  run_condition_checks("powerset", PowersetScheme{},
                       powerset_condition_items(c, c.opt.seed + 400), out);
  out.push_back(mutation_broken(c));
}

// ---- Kan oracle ----

SuiteCheck kan_oracle_check(const Corpus& c) {
  SuiteCheck check = named("kan.oracle_equality");
  struct P {
    const FunctorData* f;
    const SetDiagram* x;
  };
  std::vector<P> ps;
  for (const auto& f : c.functors) {
    const int k = c.cat_of(f.dom);
    if (k < 0) continue;
    for (const auto& x : c.cov[static_cast<size_t>(k)]) ps.push_back({&f, &x});
  }
  fan_out(check, static_cast<long>(ps.size()), [&](long i) -> Item {
    const auto& [f, x] = ps[static_cast<size_t>(i)];
    const auto main = left_kan(*f, *x).pushed;
    const auto ref = kan_colimit_oracle(*f, *x);
    if (main.carrier != ref.carrier) return {false, "colimit carriers differ"};
    if (main.action != ref.action) return {false, "transition tables differ"};
    return {};
  });
  return check;
}

void sec_kan(const Corpus& c, std::vector<SuiteCheck>& out) {
  out.push_back(kan_oracle_check(c));
}

// ---- elements lemma ----

template <typename S>
SuiteCheck elements_lemma_on(const std::string& name, const S& s,
                             const std::vector<std::pair<typename S::Map, typename S::Obj>>&
                                 items,
                             std::int64_t budget) {
  SuiteCheck check = named(name);
  fan_out(check, static_cast<long>(items.size()), [&](long i) -> Item {
    const auto& [h, x] = items[static_cast<size_t>(i)];
    const auto res = elements_lemma_check(s, h, x, budget);
    if (res.status != EnumStatus::Complete) return {false, "lift enumeration overflowed"};
    if (!res.bijective)
      return {false, std::to_string(res.lifts) + " lifts vs " + std::to_string(res.points) +
                         " points"};
    return {};
  });
  return check;
}

void sec_elements(const Corpus& c, std::vector<SuiteCheck>& out) {
  std::vector<std::pair<FunctorData, SetDiagram>> cps, ps;
  for (size_t k = 0; k < c.cats.size(); ++k) {
    int used = 0;
    for (const int fi : c.functors_into[k]) {
      if (used >= 3) break;
      for (size_t xi = 0; xi < c.cov[k].size() && xi < 3; ++xi)
        cps.emplace_back(c.functors[static_cast<size_t>(fi)], c.cov[k][xi]);
      for (size_t xi = 0; xi < c.contra[k].size() && xi < 3; ++xi)
        ps.emplace_back(c.functors[static_cast<size_t>(fi)], c.contra[k][xi]);
      ++used;
    }
  }
  std::vector<std::pair<SetMapping, SubsetObj>> pws;
  for (const auto& h : c.mappings) {
    const auto xs = subsets_of(h.cod_size);
    for (size_t xi = 0; xi < xs.size() && xi < 2; ++xi)
      pws.emplace_back(h, xs[xs.size() - 1 - xi]);
  }
  out.push_back(elements_lemma_on("elements_lemma.copresheaf", CopresheafScheme{},
                                  sample(cps, kTripleTarget, c.opt.seed + 501),
                                  c.opt.budget));
  out.push_back(elements_lemma_on("elements_lemma.presheaf", PresheafScheme{},
                                  sample(ps, kTripleTarget, c.opt.seed + 502), c.opt.budget));
  out.push_back(elements_lemma_on("elements_lemma.powerset", PowersetScheme{},
                                  sample(pws, kTripleTarget, c.opt.seed + 503),
                                  c.opt.budget));
}

// ---- Galois ----

SuiteCheck galois_pi1_tables() {
  SuiteCheck check = named("galois.pi1_group_tables");
  const std::vector<std::pair<std::string, FinGroup>> groups = {
      {"Z/2", cyclic_group(2)},
      {"Z/3", cyclic_group(3)},
      {"Z/2 x Z/2", klein_four()},
      {"S3", sym3()},
  };
  for (const auto& [label, g] : groups) {
    ++check.checked;
    const auto deck = pi1_at(make_cat(delooping(g)), 0);
    if (!group_iso(deck.group, g)) {
      ++check.failed;
      check.notes.push_back("pi1 of the delooping of " + label + " is not " + label);
    }
  }
  return check;
}

SuiteCheck galois_deck_vs_yoneda(const Corpus& c) {
  SuiteCheck check = named("galois.deck_vs_yoneda");
  fan_out(check, static_cast<long>(c.based.size()), [&](long i) -> Item {
    const auto& [cat, base] = c.based[static_cast<size_t>(i)];
    const auto deck = pi1_at(cat, base);
    const auto vg = vertex_group_at(*cat, base);
    if (deck.group.mul != vg.group.mul || deck.group.unit != vg.group.unit)
      return {false, "deck group table differs from the endomorphism oracle"};
    return {};
  });
  return check;
}

SuiteCheck galois_classification() {
  SuiteCheck check = named("galois.classification");
  const auto groupoids = connected_groupoids_upto(6);
  fan_out(check, static_cast<long>(groupoids.size()), [&](long i) -> Item {
    const auto rep = galois_check(groupoids[static_cast<size_t>(i)], 0, 3);
    if (!rep.passed())
      return {false, rep.failures.empty() ? std::string("class counts differ")
                                          : rep.failures.front()};
    return {};
  });
  return check;
}

SuiteCheck galois_borel_roundtrip() {
  SuiteCheck check = named("galois.borel_roundtrip");
  const auto groupoids = connected_groupoids_upto(6);
  fan_out(check, static_cast<long>(groupoids.size()), [&](long i) -> Item {
    const auto& a = groupoids[static_cast<size_t>(i)];
    const auto u = universal_cover(a, 0);
    const auto deck = deck_transformations(u);
    for (const auto& x : enumerate_gsets(deck.group, 3)) {
      const auto cov = borel(x, u, deck);
      const auto back = monodromy_fibre(cov, 0, deck);
      if (!gset_iso(x, back)) return {false, "monodromy after quotient lost the action"};
    }
    for (const auto& d : enumerate_covering_classes(a, 3)) {
      const auto cov = covering_of_diagram(d);
      const auto x = monodromy_fibre(cov, 0, deck);
      const auto again = borel(x, u, deck);
      if (!diagram_iso(d, again.classifying))
        return {false, "quotient after monodromy lost the covering"};
    }
    return {};
  });
  return check;
}

void sec_galois(const Corpus& c, std::vector<SuiteCheck>& out) {
  out.push_back(galois_pi1_tables());
  out.push_back(galois_deck_vs_yoneda(c));
  out.push_back(galois_classification());
  out.push_back(galois_borel_roundtrip());
}

// ---- multicategory layer ----

SuiteCheck multicat_elements_covering(const Corpus& c) {
  SuiteCheck check = named("multicat.elements_covering");
  std::vector<MultiAlgebra> algebras;
  for (const auto& o : c.multicats) {
    algebras.push_back(terminal_algebra(o));
    if (o->morphisms() <= 6)
      for (auto& a : enumerate_algebras(o, 2)) algebras.push_back(std::move(a));
  }
  fan_out(check, static_cast<long>(algebras.size()), [&](long i) -> Item {
    const auto els = elements_multicat(algebras[static_cast<size_t>(i)]);
    if (!is_multicovering(els.projection)) return {false, "projection is not a multicovering"};
    return {};
  });
  return check;
}

SuiteCheck multicat_unary_agreement(const Corpus& c) {
  const CopresheafScheme s;
  SuiteCheck check = named("multicat.unary_agreement");
  const auto maps = sample(c.functors, kUnaryAgreement, c.opt.seed + 21);
  fan_out(check, static_cast<long>(maps.size()), [&](long i) -> Item {
    const auto& f = maps[static_cast<size_t>(i)];
    const auto mf = multifunctor_of_functor(f);
    const auto pushed = multifunctor_pushforward_terminal(mf);
    if (pushed.truncated) return {false, "unary pushforward reported truncation"};
    const auto lhs = diagram_of_algebra(pushed.algebra, f.cod);
    const auto kan = left_kan(f, terminal_diagram(f.dom)).pushed;
    // The two constructions label colimit classes independently, so agree
    // up to the colimit identification; find it and transport everything.
    const auto ident = diagram_iso(lhs, kan);
    if (!ident) return {false, "pushforward disagrees with the Kan extension"};
    const auto mfac = factorise_multi(mf);
    const auto cfac = factorise(s, f);
    const auto conn_t = functor_of_multifunctor(mfac.connected_part);
    const auto cov_t = functor_of_multifunctor(mfac.covering_part);
    if (!functor_equal(compose_functors(cov_t, conn_t), f))
      return {false, "translated parts do not recompose"};
    // Both middles label objects (base object, fibre element) and morphisms
    // (base morphism, element over its source) in lexicographic order, so
    // the identification acts inside each fibre block.
    const FinCategory& base = *f.cod;
    std::vector<int> obj_off(static_cast<size_t>(base.objects) + 1, 0);
    std::vector<int> mor_off(static_cast<size_t>(base.morphisms()) + 1, 0);
    for (int o = 0; o < base.objects; ++o)
      obj_off[static_cast<size_t>(o) + 1] =
          obj_off[static_cast<size_t>(o)] + lhs.carrier[static_cast<size_t>(o)];
    for (int m = 0; m < base.morphisms(); ++m)
      mor_off[static_cast<size_t>(m) + 1] =
          mor_off[static_cast<size_t>(m)] +
          lhs.carrier[static_cast<size_t>(base.src[static_cast<size_t>(m)])];
    FunctorData phi;
    phi.dom = conn_t.cod;
    phi.cod = cfac.connected_part.cod;
    phi.obj_map.assign(static_cast<size_t>(phi.dom->objects), 0);
    phi.mor_map.assign(static_cast<size_t>(phi.dom->morphisms()), 0);
    if (phi.dom->objects != obj_off[static_cast<size_t>(base.objects)] ||
        phi.cod->objects != phi.dom->objects)
      return {false, "middles have different sizes"};
    for (int o = 0; o < base.objects; ++o)
      for (int e = 0; e < lhs.carrier[static_cast<size_t>(o)]; ++e)
        phi.obj_map[static_cast<size_t>(obj_off[static_cast<size_t>(o)] + e)] =
            obj_off[static_cast<size_t>(o)] + ident->at[static_cast<size_t>(o)][static_cast<size_t>(e)];
    for (int m = 0; m < base.morphisms(); ++m) {
      const int so = base.src[static_cast<size_t>(m)];
      for (int e = 0; e < lhs.carrier[static_cast<size_t>(so)]; ++e)
        phi.mor_map[static_cast<size_t>(mor_off[static_cast<size_t>(m)] + e)] =
            mor_off[static_cast<size_t>(m)] + ident->at[static_cast<size_t>(so)][static_cast<size_t>(e)];
    }
    if (!functor_ok(phi)) return {false, "middle identification is not a functor"};
    if (!functor_equal(compose_functors(phi, conn_t), cfac.connected_part))
      return {false, "connected parts disagree"};
    if (!functor_equal(compose_functors(cfac.covering_part, phi), cov_t))
      return {false, "covering parts disagree"};
    return {};
  });
  return check;
}

SuiteCheck multicat_fo_counts(const Corpus& c) {
  SuiteCheck check = named("multicat.fo_counts");
  struct W {
    const FinMulticategory* o;
    std::vector<int> v, w;
  };
  std::vector<W> work;
  for (const auto& o : c.multicats) {
    std::vector<std::vector<int>> words = {{}, {0}, {0, 0}, {0, 0, 0}};
    if (o->colours > 1) {
      words.push_back({1});
      words.push_back({0, 1});
      words.push_back({1, 0, 1});
    }
    for (const auto& v : words)
      for (const auto& w : words) work.push_back({o.get(), v, w});
  }
  fan_out(check, static_cast<long>(work.size()), [&](long i) -> Item {
    const auto& it = work[static_cast<size_t>(i)];
    const long direct = static_cast<long>(fo_hom(*it.o, it.v, it.w).size());
    const long formula = fo_count_formula(*it.o, it.v, it.w);
    if (direct != formula)
      return {false, std::to_string(direct) + " morphisms vs formula value " +
                         std::to_string(formula)};
    return {};
  });
  return check;
}

void sec_multicat(const Corpus& c, std::vector<SuiteCheck>& out) {
  out.push_back(multicat_elements_covering(c));
  out.push_back(multicat_unary_agreement(c));
  out.push_back(multicat_fo_counts(c));
}

using Section = void (*)(const Corpus&, std::vector<SuiteCheck>&);

const std::vector<std::pair<std::string, Section>>& sections() {
  static const std::vector<std::pair<std::string, Section>> table = {
      {"orthogonality", &sec_orthogonality}, {"factorisation", &sec_factorisation},
      {"consistency", &sec_consistency},     {"frobenius", &sec_frobenius},
      {"kan", &sec_kan},                     {"elements", &sec_elements},
      {"galois", &sec_galois},               {"multicat", &sec_multicat},
  };
  return table;
}

void run_section(const std::string& name, Section sec, const Corpus& c,
                 std::vector<SuiteCheck>& out) {
  try {
    sec(c, out);
  } catch (const std::exception& e) {
    SuiteCheck crashed = named(name + ".exception");
    crashed.checked = 1;
    crashed.failed = 1;
    crashed.notes.push_back(e.what());
    out.push_back(std::move(crashed));
  }
}

}  // namespace

bool SuiteResult::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass()) return false;
  return !checks.empty();
}

const SuiteCheck* SuiteResult::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, sec] : sections()) names.push_back(name);
  names.push_back("theorems");
  return names;
}

SuiteResult run_suite(const std::string& suite, const CorpusOptions& opt) {
  SuiteResult result;
  result.suite = suite;
  result.options = opt;
  const Corpus corpus = build_corpus(opt);
  if (suite == "theorems") {
    for (const auto& [name, sec] : sections()) run_section(name, sec, corpus, result.checks);
    return result;
  }
  for (const auto& [name, sec] : sections()) {
    if (name == suite) {
      run_section(name, sec, corpus, result.checks);
      return result;
    }
  }
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace cofact
