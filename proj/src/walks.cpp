#include "circuit_atlas/walks.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "walks_internal.hpp"

namespace circuit_atlas {

WalkFlags flags_of(WalkClass c) {
  switch (c) {
    case WalkClass::efm: return {true, true, true, false, false, false};
    case WalkClass::efmb: return {true, true, true, false, true, false};
    case WalkClass::efmr: return {true, true, true, true, false, false};
    case WalkClass::fm: return {false, true, true, false, false, false};
    case WalkClass::fmb: return {false, true, true, false, true, false};
    case WalkClass::fmr: return {false, true, true, true, false, false};
    case WalkClass::fms: return {false, true, true, false, false, true};
    case WalkClass::f: return {false, true, false, false, false, false};
    case WalkClass::fb: return {false, true, false, false, true, false};
    case WalkClass::fr: return {false, true, false, true, false, false};
    case WalkClass::fbr: return {false, true, false, true, true, false};
    case WalkClass::fs: return {false, true, false, false, false, true};
    case WalkClass::soft: return {};
  }
  throw std::logic_error("unknown walk class");
}

std::string_view to_string(WalkClass c) {
  switch (c) {
    case WalkClass::efm: return "efm";
    case WalkClass::efmb: return "efmb";
    case WalkClass::efmr: return "efmr";
    case WalkClass::fm: return "fm";
    case WalkClass::fmb: return "fmb";
    case WalkClass::fmr: return "fmr";
    case WalkClass::fms: return "fms";
    case WalkClass::f: return "f";
    case WalkClass::fb: return "fb";
    case WalkClass::fr: return "fr";
    case WalkClass::fbr: return "fbr";
    case WalkClass::fs: return "fs";
    case WalkClass::soft: return "soft";
  }
  throw std::logic_error("unknown walk class");
}

std::optional<WalkClass> parse_walk_class(std::string_view name) {
  for (auto c : kAllWalkClasses) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view to_string(DistanceStatus s) {
  switch (s) {
    case DistanceStatus::exact: return "exact";
    case DistanceStatus::no_walk: return "no_walk";
    case DistanceStatus::exceeds_cap: return "exceeds_cap";
  }
  throw std::logic_error("unknown status");
}

std::vector<Vector> Walk::points(const CircuitSet& circuits) const {
  std::vector<Vector> pts{start};
  for (const auto& s : steps) pts.push_back(pts.back() + s.length * circuits[s.circuit].g);
  return pts;
}

Instance::Instance(Polyhedron P)
    : P_(std::move(P)), graph_(edge_graph(P_)), circuits_(enumerate_circuits(P_)), rank_a_(rank(P_.A())) {
  for (std::size_t i = 0; i < graph_.vertices.size(); ++i) index_.emplace(graph_.vertices[i].coords, i);
}

std::optional<std::size_t> Instance::vertex_index(const Vector& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Instance::sign_compatible_bound() const {
  const std::size_t n = P_.dim();
  const std::size_t m = P_.distinct_row_count();
  const std::size_t a = n - rank_a_;
  const std::size_t b = rank_a_ + m >= n ? rank_a_ + m - n : 0;
  return std::min(a, b);
}

namespace detail {

std::optional<Rational> ratio_test(const Vector& slack, const Vector& image) {
  std::optional<Rational> best;
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (image[i].sign() <= 0) continue;
    if (slack[i].is_zero()) return Rational(0);
    Rational a = slack[i] / image[i];
    if (!best || a < *best) best = std::move(a);
  }
  return best;
}

DistanceResult make_result(WalkClass cls, std::size_t u, std::size_t v) {
  DistanceResult r;
  r.walk_class = cls;
  r.from = u;
  r.to = v;
  return r;
}

DistanceResult exact_result(WalkClass cls, std::size_t u, std::size_t v, Walk walk) {
  DistanceResult r = make_result(cls, u, v);
  r.status = DistanceStatus::exact;
  r.value = walk.steps.size();
  r.witness = std::move(walk);
  return r;
}

DistanceResult trivial_result(const Instance& inst, WalkClass cls, std::size_t u) {
  return exact_result(cls, u, u, Walk{inst.vertices()[u].coords, {}});
}

}  // namespace detail

StepOutcome maximal_step(const Polyhedron& P, const Vector& y, const Circuit& g) {
  if (!P.is_feasible(y)) throw PolyhedronError("maximal_step: start point " + to_string(y) + " is infeasible");
  const auto alpha = detail::ratio_test(P.slack(y), g.image);
  if (!alpha) return {StepKind::recession, Rational(0), {}};
  if (alpha->is_zero()) return {StepKind::blocked, Rational(0), {}};
  return {StepKind::moved, *alpha, y + *alpha * g.g};
}

WalkCheck verify_walk(const Instance& inst, const Walk& walk, WalkClass cls, const Vector& target) {
  WalkCheck out;
  auto fail = [&](std::string msg) {
    out.ok = false;
    out.violations.push_back(std::move(msg));
  };
  const auto& P = inst.polyhedron();
  const auto& cs = inst.circuits();
  const WalkFlags fl = flags_of(cls);
  if (walk.start.size() != P.dim() || target.size() != P.dim()) {
    fail("dimension mismatch");
    return out;
  }
  for (std::size_t i = 0; i < walk.steps.size(); ++i) {
    if (walk.steps[i].circuit >= cs.size()) {
      fail("step " + std::to_string(i) + " uses an unknown circuit");
      return out;
    }
    if (walk.steps[i].length.sign() <= 0) fail("step " + std::to_string(i) + " has non-positive length");
  }
  const auto pts = walk.points(cs);
  if (pts.back() != target) fail("walk ends at " + to_string(pts.back()) + ", not at " + to_string(target));

  if (fl.f || fl.m || fl.e) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!P.is_feasible(pts[i])) fail("point " + std::to_string(i) + " " + to_string(pts[i]) + " is infeasible");
    }
  }
  if (fl.m && out.ok) {
    for (std::size_t i = 0; i < walk.steps.size(); ++i) {
      const auto alpha = detail::ratio_test(P.slack(pts[i]), cs[walk.steps[i].circuit].image);
      if (!alpha || *alpha != walk.steps[i].length) fail("step " + std::to_string(i) + " is not maximal");
    }
  }
  if (fl.e) {
    std::vector<std::optional<std::size_t>> idx;
    for (const auto& p : pts) idx.push_back(inst.vertex_index(p));
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (!idx[i]) fail("point " + std::to_string(i) + " is not a vertex");
    }
    for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
      if (idx[i] && idx[i + 1] && !inst.graph().adjacent(*idx[i], *idx[i + 1])) {
        fail("step " + std::to_string(i) + " does not follow an edge");
      }
    }
  }
  std::set<std::size_t> used;
  for (const auto& s : walk.steps) used.insert(s.circuit);
  if (fl.r && used.size() != walk.steps.size()) fail("a circuit is used twice");
  if (fl.b) {
    for (auto c : used) {
      if (used.count(CircuitSet::negation(c))) fail("circuit " + to_string(cs[c].g) + " is used in both directions");
    }
  }
  if (fl.s) {
    const Vector bw = P.B() * (target - walk.start);
    for (auto c : used) {
      if (!sign_compatible(cs[c].image, bw)) fail("circuit " + to_string(cs[c].g) + " is not compatible with the target");
      for (auto d : used) {
        if (c < d && !sign_compatible(cs[c].image, cs[d].image)) {
          fail("circuits " + to_string(cs[c].g) + " and " + to_string(cs[d].g) + " are not sign-compatible");
        }
      }
    }
  }
  return out;
}

namespace {

void check_pair(const Instance& inst, std::size_t u, std::size_t v) {
  if (u >= inst.vertices().size() || v >= inst.vertices().size()) {
    throw std::out_of_range("vertex index out of range (have " + std::to_string(inst.vertices().size()) + " vertices)");
  }
}

std::size_t default_cap(const Instance& inst, const SearchOptions& opts) {
  return opts.cap.value_or(inst.circuits().size());
}

WalkClass edge_variant(WalkClass c) {
  switch (c) {
    case WalkClass::fmb: return WalkClass::efmb;
    case WalkClass::fmr: return WalkClass::efmr;
    default: return WalkClass::efm;
  }
}

bool is_edge(WalkClass c) { return c == WalkClass::efm || c == WalkClass::efmb || c == WalkClass::efmr; }
bool is_maximal(WalkClass c) {
  return c == WalkClass::fm || c == WalkClass::fmb || c == WalkClass::fmr || c == WalkClass::fms;
}
bool is_feasible_family(WalkClass c) {
  return c == WalkClass::f || c == WalkClass::fb || c == WalkClass::fr || c == WalkClass::fbr;
}

}  // namespace

DistanceResult distance_edge(const Instance& inst, std::size_t u, std::size_t v, WalkClass cls) {
  check_pair(inst, u, v);
  if (!is_edge(cls)) throw std::invalid_argument("distance_edge: not an edge class");
  return detail::edge_search(inst, u, v, cls);
}

DistanceResult distance_feasible_maximal(const Instance& inst, std::size_t u, std::size_t v, WalkClass cls,
                                         const SearchOptions& opts) {
  check_pair(inst, u, v);
  if (!is_maximal(cls)) throw std::invalid_argument("distance_feasible_maximal: not a maximal class");
  if (cls == WalkClass::fms) return detail::maximal_search(inst, u, v, cls, default_cap(inst, opts), nullptr);
  const DistanceResult edge = detail::edge_search(inst, u, v, edge_variant(cls));
  return detail::maximal_search(inst, u, v, cls, default_cap(inst, opts),
                                edge.status == DistanceStatus::exact ? &edge : nullptr);
}

DistanceResult distance_sign_compatible(const Instance& inst, std::size_t u, std::size_t v) {
  check_pair(inst, u, v);
  return detail::sign_compatible_search(inst, u, v);
}

DistanceResult distance_feasible(const Instance& inst, std::size_t u, std::size_t v, WalkClass cls) {
  check_pair(inst, u, v);
  if (!is_feasible_family(cls)) throw std::invalid_argument("distance_feasible: not a feasible class");
  const DistanceResult fs = detail::sign_compatible_search(inst, u, v);
  auto all = detail::feasible_search(inst, u, v, fs, {cls});
  for (auto& r : all) {
    if (r.walk_class == cls) return r;
  }
  throw std::logic_error("feasible_search dropped the requested class");
}

DistanceResult distance_soft(const Instance& inst, std::size_t u, std::size_t v) {
  check_pair(inst, u, v);
  const DistanceResult fs = detail::sign_compatible_search(inst, u, v);
  return detail::soft_search(inst, u, v, fs);
}

DistanceResult distance(const Instance& inst, WalkClass cls, std::size_t u, std::size_t v, const SearchOptions& opts) {
  if (is_edge(cls)) return distance_edge(inst, u, v, cls);
  if (is_maximal(cls)) return distance_feasible_maximal(inst, u, v, cls, opts);
  if (is_feasible_family(cls)) return distance_feasible(inst, u, v, cls);
  if (cls == WalkClass::fs) return distance_sign_compatible(inst, u, v);
  return distance_soft(inst, u, v);
}

std::vector<DistanceResult> all_distances(const Instance& inst, std::size_t u, std::size_t v, const SearchOptions& opts) {
  check_pair(inst, u, v);
  std::map<WalkClass, DistanceResult> out;
  for (auto c : {WalkClass::efm, WalkClass::efmb, WalkClass::efmr}) out[c] = detail::edge_search(inst, u, v, c);
  const std::size_t cap = default_cap(inst, opts);
  for (auto c : {WalkClass::fm, WalkClass::fmb, WalkClass::fmr}) {
    const DistanceResult& edge = out[edge_variant(c)];
    out[c] = detail::maximal_search(inst, u, v, c, cap, edge.status == DistanceStatus::exact ? &edge : nullptr);
  }
  out[WalkClass::fms] = detail::maximal_search(inst, u, v, WalkClass::fms, cap, nullptr);
  out[WalkClass::fs] = detail::sign_compatible_search(inst, u, v);
  for (auto& r : detail::feasible_search(inst, u, v, out[WalkClass::fs],
                                         {WalkClass::f, WalkClass::fb, WalkClass::fr, WalkClass::fbr})) {
    out[r.walk_class] = std::move(r);
  }
  const DistanceResult& f = out[WalkClass::f];
  const DistanceResult& bound = f.status == DistanceStatus::exact && f.value < out[WalkClass::fs].value ? f : out[WalkClass::fs];
  out[WalkClass::soft] = detail::soft_search(inst, u, v, bound);
  std::vector<DistanceResult> ordered;
  for (auto c : kAllWalkClasses) ordered.push_back(std::move(out[c]));
  return ordered;
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  for (unsigned t = 0; t < n; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> ordered_pairs(const Instance& inst) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const std::size_t nv = inst.vertices().size();
  for (std::size_t u = 0; u < nv; ++u) {
    for (std::size_t v = 0; v < nv; ++v) {
      if (u != v) pairs.emplace_back(u, v);
    }
  }
  return pairs;
}

}  // namespace

DiameterResult diameter(const Instance& inst, WalkClass cls, const SearchOptions& opts, unsigned jobs) {
  if (inst.vertices().empty()) throw PolyhedronError("diameter of a polyhedron without vertices");
  const auto pairs = ordered_pairs(inst);
  std::vector<DistanceResult> results(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t i) {
    results[i] = distance(inst, cls, pairs[i].first, pairs[i].second, opts);
  });
  DiameterResult d;
  d.walk_class = cls;
  bool have_value = false;
  std::optional<std::size_t> first_no_walk, first_cap;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (r.status == DistanceStatus::no_walk && !first_no_walk) first_no_walk = i;
    if (r.status == DistanceStatus::exceeds_cap && !first_cap) first_cap = i;
    if (r.status == DistanceStatus::exact && (!have_value || r.value > d.value)) {
      have_value = true;
      d.value = r.value;
      d.from = r.from;
      d.to = r.to;
    }
  }
  if (first_no_walk || first_cap) {
    const std::size_t i = first_no_walk ? *first_no_walk : *first_cap;
    d.status = first_no_walk ? DistanceStatus::no_walk : DistanceStatus::exceeds_cap;
    d.from = pairs[i].first;
    d.to = pairs[i].second;
  }
  return d;
}

const std::vector<HierarchyRelation>& hierarchy_relations() {
  using C = WalkClass;
  static const std::vector<HierarchyRelation> relations = {
      {C::efmb, C::efm}, {C::efmr, C::efm}, {C::efm, C::fm},  {C::efmb, C::fmb}, {C::efmr, C::fmr}, {C::fmb, C::fm},
      {C::fmr, C::fm},   {C::fm, C::f},     {C::fmb, C::fb},  {C::fmr, C::fr},   {C::fb, C::f},     {C::fr, C::f},
      {C::fbr, C::fr},   {C::fbr, C::fb},   {C::fs, C::fbr},  {C::fs, C::f},     {C::fs, C::fb},    {C::fs, C::fr},
      {C::fs, C::soft},  {C::f, C::soft},   {C::fms, C::fm},  {C::fms, C::fs},
  };
  return relations;
}

namespace {

// [lo, hi] with hi == nullopt meaning unbounded; no_walk is +infinity.
struct Range {
  std::optional<std::size_t> lo;  // nullopt = infinity
  std::optional<std::size_t> hi;
};

Range range_of(const DistanceResult& r) {
  switch (r.status) {
    case DistanceStatus::exact: return {r.value, r.value};
    case DistanceStatus::no_walk: return {std::nullopt, std::nullopt};
    case DistanceStatus::exceeds_cap: return {r.cap + 1, std::nullopt};
  }
  return {};
}

// -1 violated, 0 inconclusive, 1 holds.
int compare_ge(const DistanceResult& greater, const DistanceResult& lesser) {
  const Range g = range_of(greater), l = range_of(lesser);
  const bool g_inf = greater.status == DistanceStatus::no_walk;
  const bool l_inf = lesser.status == DistanceStatus::no_walk;
  if (g_inf) return 1;
  if (l_inf) return greater.status == DistanceStatus::exact ? -1 : 0;
  // Both finite lower bounds.
  if (g.hi && *g.hi < *l.lo) return -1;
  if (l.hi && *g.lo >= *l.hi) return 1;
  return 0;
}

}  // namespace

HierarchyReport verify_hierarchy(const Instance& inst, const SearchOptions& opts, unsigned jobs) {
  HierarchyReport rep;
  const auto pairs = ordered_pairs(inst);
  rep.pairs = pairs.size();
  rep.distances.resize(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t i) {
    rep.distances[i] = all_distances(inst, pairs[i].first, pairs[i].second, opts);
  });
  auto slot = [](WalkClass c) {
    return static_cast<std::size_t>(std::find(kAllWalkClasses.begin(), kAllWalkClasses.end(), c) - kAllWalkClasses.begin());
  };
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (const auto& rel : hierarchy_relations()) {
      const int c = compare_ge(rep.distances[i][slot(rel.greater)], rep.distances[i][slot(rel.lesser)]);
      if (c < 0) rep.violations.push_back({pairs[i].first, pairs[i].second, rel});
      if (c == 0) rep.inconclusive.push_back({pairs[i].first, pairs[i].second, rel});
    }
  }
  return rep;
}

}  // namespace circuit_atlas
