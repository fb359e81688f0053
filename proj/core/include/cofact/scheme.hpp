#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cofact/functor.hpp"  // EnumStatus

namespace cofact {

// A comprehension scheme instance: a base category of Objects and Maps,
// and over every Object a fibre category (Obj/Mor) with a terminal object,
// pushforward left adjoint to pullback along every Map, and an elements
// construction realising global points of a fibre object as lifts into a
// total Object. Everything is finite and table-backed; object and morphism
// equality is strict table equality, which the canonical constructions
// below rely on (pullback is strictly functorial in all shipped instances).
template <typename S>
concept SchemeInstance = requires(const S s, const typename S::Object a,
                                  const typename S::Map f, const typename S::Obj x,
                                  const typename S::Mor m, std::int64_t budget,
                                  const std::function<bool(const typename S::Map&)>& visit) {
  { s.dom(f) } -> std::convertible_to<typename S::Object>;
  { s.cod(f) } -> std::convertible_to<typename S::Object>;
  { s.object_equal(a, a) } -> std::convertible_to<bool>;
  { s.compose(f, f) } -> std::convertible_to<typename S::Map>;
  { s.identity(a) } -> std::convertible_to<typename S::Map>;
  { s.map_equal(f, f) } -> std::convertible_to<bool>;
  { s.invert(f) } -> std::convertible_to<std::optional<typename S::Map>>;
  { s.for_each_map(a, a, budget, visit) } -> std::same_as<EnumStatus>;

  { s.terminal(a) } -> std::convertible_to<typename S::Obj>;
  { s.obj_equal(x, x) } -> std::convertible_to<bool>;
  { s.push(f, x) } -> std::convertible_to<typename S::Obj>;
  { s.pull(f, x) } -> std::convertible_to<typename S::Obj>;
  { s.push_mor(f, m) } -> std::convertible_to<typename S::Mor>;
  { s.pull_mor(f, m) } -> std::convertible_to<typename S::Mor>;
  { s.adjunction_unit(f, x) } -> std::convertible_to<typename S::Mor>;
  { s.adjunction_counit(f, x) } -> std::convertible_to<typename S::Mor>;

  { s.elements(x).total } -> std::convertible_to<typename S::Object>;
  { s.elements(x).projection } -> std::convertible_to<typename S::Map>;
  { s.lift(f, x, m) } -> std::convertible_to<typename S::Map>;
  { s.point_of_lift(f, x, f) } -> std::convertible_to<typename S::Mor>;

  { s.hom(x, x) } -> std::convertible_to<std::vector<typename S::Mor>>;
  { s.compose_mor(m, m) } -> std::convertible_to<typename S::Mor>;
  { s.id_mor(x) } -> std::convertible_to<typename S::Mor>;
  { s.mor_equal(m, m) } -> std::convertible_to<bool>;
  { s.mor_invert(m) } -> std::convertible_to<std::optional<typename S::Mor>>;
  { s.product(x, x).obj } -> std::convertible_to<typename S::Obj>;
  { s.product(x, x).pr1 } -> std::convertible_to<typename S::Mor>;
  { s.product(x, x).pr2 } -> std::convertible_to<typename S::Mor>;
  { s.pairing(m, m) } -> std::convertible_to<typename S::Mor>;
};

// The fibre object classifying f, i.e. the pushforward of the terminal
// object of the fibre over its domain.
template <SchemeInstance S>
typename S::Obj comprehension(const S& s, const typename S::Map& f) {
  return s.push(f, s.terminal(s.dom(f)));
}

// The canonical comparison dom(f) -> el(classifying f) over cod(f): the lift
// classified by the adjunction unit at the terminal object.
template <SchemeInstance S>
typename S::Map unit_morphism(const S& s, const typename S::Map& f) {
  const auto x = comprehension(s, f);
  return s.lift(f, x, s.adjunction_unit(f, s.terminal(s.dom(f))));
}

// Global points of a fibre object.
template <SchemeInstance S>
std::vector<typename S::Mor> scheme_points(const S& s, const typename S::Object& a,
                                           const typename S::Obj& x) {
  return s.hom(s.terminal(a), x);
}

// First isomorphism x -> y in the deterministic hom order, if any.
template <SchemeInstance S>
std::optional<typename S::Mor> scheme_iso(const S& s, const typename S::Obj& x,
                                          const typename S::Obj& y) {
  for (const auto& m : s.hom(x, y)) {
    if (s.mor_invert(m)) return m;
  }
  return std::nullopt;
}

template <SchemeInstance S>
struct CoveringCheck {
  bool covering = false;
  typename S::Obj classifying;
  typename S::Map eta;
  std::optional<typename S::Map> eta_inv;
};

// f is a covering when its unit comparison into the elements of its
// classifying object is invertible.
template <SchemeInstance S>
CoveringCheck<S> covering_check(const S& s, const typename S::Map& f) {
  CoveringCheck<S> out;
  out.classifying = comprehension(s, f);
  out.eta = unit_morphism(s, f);
  out.eta_inv = s.invert(out.eta);
  out.covering = out.eta_inv.has_value();
  return out;
}

template <SchemeInstance S>
bool is_covering_map(const S& s, const typename S::Map& f) {
  return covering_check(s, f).covering;
}

// f is connected when its classifying object is terminal.
template <SchemeInstance S>
bool is_connected_map(const S& s, const typename S::Map& f) {
  return scheme_iso(s, comprehension(s, f), s.terminal(s.cod(f))).has_value();
}

template <SchemeInstance S>
struct SchemeFactorisation {
  typename S::Map connected_part;  // dom f -> el(classifying)
  typename S::Map covering_part;   // el(classifying) -> cod f
  typename S::Obj classifying;
};

// The (connected, covering) factorisation of f through the elements of its
// classifying object.
template <SchemeInstance S>
SchemeFactorisation<S> factorise(const S& s, const typename S::Map& f) {
  SchemeFactorisation<S> out;
  out.classifying = comprehension(s, f);
  out.connected_part = unit_morphism(s, f);
  out.covering_part = s.elements(out.classifying).projection;
  return out;
}

template <SchemeInstance S>
struct CoveringPullback {
  typename S::Obj classifying;  // classifies the covering r over cod(r)
  typename S::Obj pulled;       // its pullback along h, over dom(h)
  typename S::Map projection;   // el(pulled) -> dom(h): the pulled-back covering
  typename S::Map top;          // el(pulled) -> dom(r)
};

// Pullback of a covering r along an arbitrary map h with cod(h) = cod(r),
// realised as the elements of the pulled-back classifying object. The top
// map is the lift classified by the tautological point, composed with the
// inverse unit of r.
template <SchemeInstance S>
CoveringPullback<S> pullback_covering(const S& s, const typename S::Map& h,
                                      const typename S::Map& r) {
  const auto rc = covering_check(s, r);
  if (!rc.covering) throw std::invalid_argument("pullback_covering: r is not a covering");
  CoveringPullback<S> out;
  out.classifying = rc.classifying;
  out.pulled = s.pull(h, rc.classifying);
  const auto els = s.elements(out.pulled);
  out.projection = els.projection;
  const auto taut = s.point_of_lift(out.projection, out.pulled, s.identity(els.total));
  const auto into_elements = s.lift(s.compose(h, out.projection), rc.classifying, taut);
  out.top = s.compose(*rc.eta_inv, into_elements);
  return out;
}

template <SchemeInstance S>
struct DiagonalFillerResult {
  int candidates = 0;  // points of the pulled classifying object matching the top leg
  std::optional<typename S::Map> filler;
  bool verified = false;  // filler makes both triangles commute
};

// Unique diagonal of a square  top: a -> e, r: e -> b covering,
// l: a -> a', bottom: a' -> b  with r∘top = bottom∘l and l connected.
// Sections of the pulled-back covering correspond to points of the pulled
// classifying object; precomposition with l picks out the one matching top.
template <SchemeInstance S>
DiagonalFillerResult<S> diagonal_filler(const S& s, const typename S::Map& l,
                                        const typename S::Map& r, const typename S::Map& top,
                                        const typename S::Map& bottom) {
  const auto rc = covering_check(s, r);
  if (!rc.covering) throw std::invalid_argument("diagonal_filler: r is not a covering");
  if (!s.obj_equal(s.pull(l, s.terminal(s.cod(l))), s.terminal(s.dom(l)))) {
    throw std::logic_error("diagonal_filler: pullback does not preserve the terminal strictly");
  }
  const auto sigma_top =
      s.point_of_lift(s.compose(bottom, l), rc.classifying, s.compose(rc.eta, top));
  const auto pulled = s.pull(bottom, rc.classifying);

  DiagonalFillerResult<S> out;
  std::optional<typename S::Mor> chosen;
  for (const auto& p : scheme_points(s, s.cod(l), pulled)) {
    if (s.mor_equal(s.pull_mor(l, p), sigma_top)) {
      ++out.candidates;
      if (!chosen) chosen = p;
    }
  }
  if (out.candidates != 1) return out;

  const auto els = s.elements(pulled);
  const auto section = s.lift(s.identity(s.cod(l)), pulled, *chosen);
  const auto taut = s.point_of_lift(els.projection, pulled, s.identity(els.total));
  const auto into_elements =
      s.lift(s.compose(bottom, els.projection), rc.classifying, taut);
  const auto g = s.compose(*rc.eta_inv, s.compose(into_elements, section));
  out.verified =
      s.map_equal(s.compose(g, l), top) && s.map_equal(s.compose(r, g), bottom);
  out.filler = g;
  return out;
}

template <SchemeInstance S>
struct OrthogonalityCheck {
  EnumStatus status = EnumStatus::Complete;
  int fillers = 0;
  std::optional<typename S::Map> filler;  // first one in enumeration order
  bool unique() const { return status == EnumStatus::Complete && fillers == 1; }
};

// Exhaustive filler count for the square  r ∘ top = bottom ∘ l: every map
// g: cod(l) -> dom(r) is enumerated and tested on both triangles. This is
// the brute-force counterpart of diagonal_filler.
template <SchemeInstance S>
OrthogonalityCheck<S> orthogonality_check(const S& s, const typename S::Map& l,
                                          const typename S::Map& r,
                                          const typename S::Map& top,
                                          const typename S::Map& bottom,
                                          std::int64_t budget = 1000000) {
  OrthogonalityCheck<S> out;
  out.status =
      s.for_each_map(s.cod(l), s.dom(r), budget, [&](const typename S::Map& g) {
        if (s.map_equal(s.compose(g, l), top) && s.map_equal(s.compose(r, g), bottom)) {
          ++out.fillers;
          if (!out.filler) out.filler = g;
        }
        return true;
      });
  return out;
}

struct ConsistencyReport {
  int maps = 0;
  int coverings = 0;
  int composable_covering_pairs = 0;
  int composition_failures = 0;
  int cancellation_pairs = 0;  // g covering and g∘f covering
  int cancellation_failures = 0;
  std::vector<std::pair<int, int>> composition_counterexamples;  // (i, j): maps[j] ∘ maps[i]
  std::vector<std::pair<int, int>> cancellation_counterexamples;
  bool consistent() const { return composition_failures == 0 && cancellation_failures == 0; }
};

// Checks that coverings compose and are left-cancellable across all
// composable pairs drawn from the given maps.
template <SchemeInstance S>
ConsistencyReport check_consistency(const S& s, const std::vector<typename S::Map>& maps) {
  ConsistencyReport out;
  out.maps = static_cast<int>(maps.size());
  std::vector<char> cov(maps.size());
  for (size_t i = 0; i < maps.size(); ++i) {
    cov[i] = is_covering_map(s, maps[i]);
    out.coverings += cov[i] ? 1 : 0;
  }
  for (size_t i = 0; i < maps.size(); ++i) {
    for (size_t j = 0; j < maps.size(); ++j) {
      if (!s.object_equal(s.cod(maps[i]), s.dom(maps[j]))) continue;
      if (!cov[j]) continue;  // both laws require the outer map to be a covering
      const bool composite_covers = is_covering_map(s, s.compose(maps[j], maps[i]));
      if (cov[i]) {
        ++out.composable_covering_pairs;
        if (!composite_covers) {
          ++out.composition_failures;
          out.composition_counterexamples.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
      }
      if (composite_covers) {
        ++out.cancellation_pairs;
        if (!cov[i]) {
          ++out.cancellation_failures;
          out.cancellation_counterexamples.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
      }
    }
  }
  return out;
}

template <SchemeInstance S>
struct FrobeniusCheck {
  bool iso = false;
  typename S::Mor comparison;
};

// Projection formula for f: the canonical map
// f_!(x × f* y) -> f_! x × y  built from the pushed projections and the
// counit. Holds for coverings when the scheme satisfies base change.
template <SchemeInstance S>
FrobeniusCheck<S> frobenius_check(const S& s, const typename S::Map& f,
                                  const typename S::Obj& x, const typename S::Obj& y) {
  const auto prod = s.product(x, s.pull(f, y));
  const auto leg1 = s.push_mor(f, prod.pr1);
  const auto leg2 = s.compose_mor(s.adjunction_counit(f, y), s.push_mor(f, prod.pr2));
  FrobeniusCheck<S> out;
  out.comparison = s.pairing(leg1, leg2);
  out.iso = s.mor_invert(out.comparison).has_value();
  return out;
}

template <SchemeInstance S>
struct BeckChevalleyCheck {
  bool square_commutes = false;
  bool iso = false;
  typename S::Mor comparison;
};

// Base-change comparison for a commuting square  right ∘ top = bottom ∘ left:
// left_!(top* x) -> bottom*(right_! x), the mate built from the unit of
// right and the counit of left.
template <SchemeInstance S>
BeckChevalleyCheck<S> beck_chevalley_check(const S& s, const typename S::Map& top,
                                           const typename S::Map& left,
                                           const typename S::Map& right,
                                           const typename S::Map& bottom,
                                           const typename S::Obj& x) {
  BeckChevalleyCheck<S> out;
  out.square_commutes = s.map_equal(s.compose(right, top), s.compose(bottom, left));
  if (!out.square_commutes) return out;
  const auto pushed = s.push(right, x);
  const auto lead = s.push_mor(left, s.pull_mor(top, s.adjunction_unit(right, x)));
  const auto fin = s.adjunction_counit(left, s.pull(bottom, pushed));
  out.comparison = s.compose_mor(fin, lead);
  out.iso = s.mor_invert(out.comparison).has_value();
  return out;
}

template <SchemeInstance S>
struct StabilityCheck {
  bool pulled_connected = false;
  typename S::Map top;  // base change of l along the covering r
};

// Connected maps should be stable under pullback along coverings: the top
// leg of the covering pullback of r along l is l base-changed to dom(r).
template <SchemeInstance S>
StabilityCheck<S> connected_stability_check(const S& s, const typename S::Map& l,
                                            const typename S::Map& r) {
  const auto pb = pullback_covering(s, l, r);
  StabilityCheck<S> out;
  out.top = pb.top;
  out.pulled_connected = is_connected_map(s, pb.top);
  return out;
}

// Counit of comprehension ⊣ elements at x: the pushforward of the
// tautological point along the elements projection, followed by the
// adjunction counit.
template <SchemeInstance S>
typename S::Mor comprehension_counit(const S& s, const typename S::Obj& x) {
  const auto els = s.elements(x);
  const auto taut = s.point_of_lift(els.projection, x, s.identity(els.total));
  return s.compose_mor(s.adjunction_counit(els.projection, x),
                       s.push_mor(els.projection, taut));
}

template <SchemeInstance S>
bool comprehension_counit_iso(const S& s, const typename S::Obj& x) {
  return s.mor_invert(comprehension_counit(s, x)).has_value();
}

template <SchemeInstance S>
struct ElementsLemmaCheck {
  EnumStatus status = EnumStatus::Complete;
  int lifts = 0;
  int points = 0;
  bool round_trips = false;
  bool bijective = false;
};

// The elements lemma at (h, x): lifts of h through the elements projection
// of x correspond one-to-one to global points of h* x, via lift and
// point_of_lift. Lift enumeration is budgeted.
template <SchemeInstance S>
ElementsLemmaCheck<S> elements_lemma_check(const S& s, const typename S::Map& h,
                                           const typename S::Obj& x, std::int64_t budget) {
  const auto els = s.elements(x);
  const auto points = scheme_points(s, s.dom(h), s.pull(h, x));
  ElementsLemmaCheck<S> out;
  out.points = static_cast<int>(points.size());
  out.round_trips = true;
  std::vector<typename S::Map> lifts;
  out.status = s.for_each_map(s.dom(h), els.total, budget, [&](const typename S::Map& g) {
    if (s.map_equal(s.compose(els.projection, g), h)) lifts.push_back(g);
    return true;
  });
  if (out.status != EnumStatus::Complete) return out;
  out.lifts = static_cast<int>(lifts.size());
  for (const auto& p : points) {
    const auto g = s.lift(h, x, p);
    if (!s.map_equal(s.compose(els.projection, g), h) ||
        !s.mor_equal(s.point_of_lift(h, x, g), p)) {
      out.round_trips = false;
    }
  }
  for (const auto& g : lifts) {
    if (!s.map_equal(s.lift(h, x, s.point_of_lift(h, x, g)), g)) out.round_trips = false;
  }
  out.bijective = out.round_trips && out.lifts == out.points;
  return out;
}

}  // namespace cofact
