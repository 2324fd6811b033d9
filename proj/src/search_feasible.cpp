// Oracles with arbitrary step lengths: sign-compatible, feasible (with the
// b and r variants) and soft distances. Step lengths are decided by
// strictly_positive_solution; integer echelon forms only prune candidates.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <stdexcept>

#include "circuit_atlas/lp.hpp"
#include "echelon.hpp"
#include "walks_internal.hpp"

namespace circuit_atlas::detail {
namespace {

struct Found {
  std::vector<std::size_t> circuits;
  Vector lengths;
};

// sum_j alpha_j g_j = w with alpha > 0.
std::optional<Vector> positive_combination(const CircuitSet& cs, const std::vector<std::size_t>& set, const Vector& w) {
  LinearSystem sys(set.size());
  for (std::size_t r = 0; r < w.size(); ++r) {
    Vector row(set.size());
    for (std::size_t j = 0; j < set.size(); ++j) row[j] = cs[set[j]].g[r];
    sys.add_eq(row, w[r]);
  }
  std::vector<std::size_t> vars(set.size());
  for (std::size_t j = 0; j < vars.size(); ++j) vars[j] = j;
  return strictly_positive_solution(sys, vars);
}

// Smallest linearly independent subset of `candidates` (size in [1, kmax])
// with w a strictly positive combination of it. Pairwise compatibility is
// enforced when `compat` is non-empty. Minimal positive representations can
// always be taken independent (conic Caratheodory), so nothing is lost.
template <typename Ops>
std::optional<Found> smallest_positive_set(const CircuitSet& cs, const std::vector<std::size_t>& candidates,
                                           const std::vector<std::vector<bool>>& compat, const Vector& w,
                                           std::size_t kmax) {
  using Ech = Echelon<Ops>;
  const std::size_t n = w.size();
  typename Ech::Row wrow;
  if (!Ech::convert(primitive(w), wrow)) throw EchelonOverflow();
  std::vector<typename Ech::Row> rows(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!Ech::convert(cs[candidates[i]].g, rows[i])) throw EchelonOverflow();
  }

  for (std::size_t k = 1; k <= kmax; ++k) {
    std::vector<std::size_t> chosen;  // positions in candidates
    std::optional<Found> result;
    // Depth-first over increasing positions; the echelon tracks independence.
    std::function<bool(std::size_t, const Ech&)> rec = [&](std::size_t from, const Ech& ech) {
      const bool last = chosen.size() + 1 == k;
      std::optional<Ech> with_w;
      bool w_inside = false;
      if (last) {
        w_inside = ech.contains(wrow);
        if (w_inside) return false;  // g_k would get coefficient zero
        with_w.emplace(ech);
        with_w->add(wrow);
      }
      for (std::size_t i = from; i < candidates.size(); ++i) {
        if (!compat.empty()) {
          bool ok = true;
          for (auto j : chosen) ok = ok && compat[i][j];
          if (!ok) continue;
        }
        if (last && !with_w->contains(rows[i])) continue;
        Ech next = ech;
        if (!next.add(rows[i])) continue;
        chosen.push_back(i);
        if (last) {
          std::vector<std::size_t> set;
          for (auto p : chosen) set.push_back(candidates[p]);
          if (auto alpha = positive_combination(cs, set, w)) {
            result = Found{std::move(set), std::move(*alpha)};
            return true;
          }
        } else if (rec(i + 1, next)) {
          return true;
        }
        chosen.pop_back();
      }
      return false;
    };
    (void)n;
    if (rec(0, Ech(w.size()))) return result;
  }
  return std::nullopt;
}

std::optional<Found> smallest_positive_set_any(const CircuitSet& cs, const std::vector<std::size_t>& candidates,
                                               const std::vector<std::vector<bool>>& compat, const Vector& w,
                                               std::size_t kmax) {
  try {
    return smallest_positive_set<Int128Ops>(cs, candidates, compat, w, kmax);
  } catch (const EchelonOverflow&) {
    return smallest_positive_set<MpzOps>(cs, candidates, compat, w, kmax);
  }
}

Walk walk_from(const Vector& start, const Found& found) {
  Walk walk{start, {}};
  for (std::size_t j = 0; j < found.circuits.size(); ++j) walk.steps.push_back({found.circuits[j], found.lengths[j]});
  return walk;
}

DistanceResult relabel(const DistanceResult& r, WalkClass cls) {
  DistanceResult out = r;
  out.walk_class = cls;
  return out;
}

constexpr std::array<WalkClass, 4> kFeasibleClasses = {WalkClass::f, WalkClass::fb, WalkClass::fr, WalkClass::fbr};

// Tuple search for f, fb, fr, fbr below the sign-compatible distance.
template <typename Ops>
void feasible_tuples(const Instance& inst, std::size_t u, std::size_t v, std::size_t upper,
                     std::array<bool, 4>& open, std::array<std::optional<Walk>, 4>& found,
                     std::array<std::size_t, 4>& value) {
  using Ech = Echelon<Ops>;
  const auto& P = inst.polyhedron();
  const auto& cs = inst.circuits();
  const Vector& start = inst.vertices()[u].coords;
  const Vector& target = inst.vertices()[v].coords;
  const Vector w = target - start;
  const Vector slack_u = P.slack(start);
  const Vector slack_v = P.slack(target);
  const std::size_t N = cs.size();

  typename Ech::Row wrow;
  if (!Ech::convert(primitive(w), wrow)) throw EchelonOverflow();
  std::vector<typename Ech::Row> rows(N);
  for (std::size_t c = 0; c < N; ++c) {
    if (!Ech::convert(cs[c].g, rows[c])) throw EchelonOverflow();
  }
  // First step must leave u into P; the last must arrive at v from inside P.
  std::vector<bool> leaves_u(N, true), enters_v(N, true);
  for (std::size_t c = 0; c < N; ++c) {
    for (std::size_t i = 0; i < cs[c].image.size(); ++i) {
      if (slack_u[i].is_zero() && cs[c].image[i].sign() > 0) leaves_u[c] = false;
      if (slack_v[i].is_zero() && cs[c].image[i].sign() < 0) enters_v[c] = false;
    }
  }

  std::map<std::vector<std::size_t>, bool> set_ok;
  auto combination_exists = [&](const std::vector<std::size_t>& tuple) {
    std::vector<std::size_t> set = tuple;
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    auto it = set_ok.find(set);
    if (it != set_ok.end()) return it->second;
    const bool ok = positive_combination(cs, set, w).has_value();
    set_ok.emplace(std::move(set), ok);
    return ok;
  };

  auto feasible_lengths = [&](const std::vector<std::size_t>& tuple) -> std::optional<Vector> {
    const std::size_t k = tuple.size();
    LinearSystem sys(k);
    for (std::size_t r = 0; r < w.size(); ++r) {
      Vector row(k);
      for (std::size_t j = 0; j < k; ++j) row[j] = cs[tuple[j]].g[r];
      sys.add_eq(row, w[r]);
    }
    for (std::size_t i = 1; i < k; ++i) {
      for (std::size_t r = 0; r < slack_u.size(); ++r) {
        Vector row = zeros(k);
        bool any = false;
        for (std::size_t j = 0; j < i; ++j) {
          row[j] = cs[tuple[j]].image[r];
          any = any || !row[j].is_zero();
        }
        if (any) sys.add_le(row, slack_u[r]);
      }
    }
    std::vector<std::size_t> vars(k);
    for (std::size_t j = 0; j < k; ++j) vars[j] = j;
    return strictly_positive_solution(sys, vars);
  };

  for (std::size_t k = 2; k < upper; ++k) {
    if (std::none_of(open.begin(), open.end(), [](bool b) { return b; })) return;
    std::vector<std::size_t> tuple;
    std::array<bool, 4> open_at_k = open;
    std::function<void(const Ech&)> rec = [&](const Ech& ech) {
      const std::size_t pos = tuple.size();
      const bool last = pos + 1 == k;
      std::optional<Ech> with_w;
      bool w_inside = false;
      if (last) {
        w_inside = ech.contains(wrow);
        if (!w_inside) {
          with_w.emplace(ech);
          with_w->add(wrow);
        }
      }
      for (std::size_t c = 0; c < N; ++c) {
        if (std::none_of(open_at_k.begin(), open_at_k.end(), [](bool b) { return b; })) return;
        if (pos == 0 && !leaves_u[c]) continue;
        if (last && !enters_v[c]) continue;
        if (pos > 0 && tuple.back() == c) continue;
        if (last && !w_inside && (!with_w->contains(rows[c]) || ech.contains(rows[c]))) continue;

        tuple.push_back(c);
        bool repeat = false, backwards = false;
        for (std::size_t j = 0; j < tuple.size(); ++j) {
          for (std::size_t l = j + 1; l < tuple.size(); ++l) {
            repeat = repeat || tuple[j] == tuple[l];
            backwards = backwards || tuple[j] == CircuitSet::negation(tuple[l]);
          }
        }
        const std::array<bool, 4> qualifies = {true, !backwards, !repeat, !repeat && !backwards};
        bool useful = false;
        for (std::size_t x = 0; x < 4; ++x) useful = useful || (open_at_k[x] && qualifies[x]);
        if (useful) {
          if (last) {
            if (combination_exists(tuple)) {
              if (auto alpha = feasible_lengths(tuple)) {
                Walk walk{start, {}};
                for (std::size_t j = 0; j < k; ++j) walk.steps.push_back({tuple[j], (*alpha)[j]});
                for (std::size_t x = 0; x < 4; ++x) {
                  if (open_at_k[x] && qualifies[x]) {
                    open_at_k[x] = false;
                    found[x] = walk;
                    value[x] = k;
                  }
                }
              }
            }
          } else {
            Ech next = ech;
            next.add(rows[c]);
            rec(next);
          }
        }
        tuple.pop_back();
      }
    };
    rec(Ech(w.size()));
    open = open_at_k;
  }
}

}  // namespace

DistanceResult sign_compatible_search(const Instance& inst, std::size_t u, std::size_t v) {
  if (u == v) return trivial_result(inst, WalkClass::fs, u);
  const auto& P = inst.polyhedron();
  const auto& cs = inst.circuits();
  const Vector& start = inst.vertices()[u].coords;
  const Vector w = inst.vertices()[v].coords - start;
  const auto candidates = compatible_candidates(P, cs, w);
  std::vector<std::vector<bool>> compat(candidates.size(), std::vector<bool>(candidates.size()));
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      compat[i][j] = sign_compatible(cs[candidates[i]].image, cs[candidates[j]].image);
    }
  }
  const std::size_t kmax = std::min(candidates.size(), P.dim() - inst.rank_a());
  if (auto found = smallest_positive_set_any(cs, candidates, compat, w, kmax)) {
    return exact_result(WalkClass::fs, u, v, walk_from(start, *found));
  }
  return make_result(WalkClass::fs, u, v);
}

DistanceResult soft_search(const Instance& inst, std::size_t u, std::size_t v, const DistanceResult& bound) {
  if (u == v) return trivial_result(inst, WalkClass::soft, u);
  if (bound.status != DistanceStatus::exact) throw std::logic_error("soft_search needs an exact upper bound");
  const auto& cs = inst.circuits();
  const Vector& start = inst.vertices()[u].coords;
  const Vector w = inst.vertices()[v].coords - start;
  std::vector<std::size_t> all(cs.size());
  for (std::size_t c = 0; c < cs.size(); ++c) all[c] = c;
  if (bound.value > 1) {
    if (auto found = smallest_positive_set_any(cs, all, {}, w, bound.value - 1)) {
      return exact_result(WalkClass::soft, u, v, walk_from(start, *found));
    }
  }
  return relabel(bound, WalkClass::soft);
}

std::vector<DistanceResult> feasible_search(const Instance& inst, std::size_t u, std::size_t v,
                                            const DistanceResult& fs, const std::vector<WalkClass>& wanted) {
  std::vector<DistanceResult> out;
  if (u == v) {
    for (auto c : wanted) out.push_back(trivial_result(inst, c, u));
    return out;
  }
  if (fs.status != DistanceStatus::exact) throw std::logic_error("feasible_search needs the exact sign-compatible distance");
  std::array<bool, 4> open{};
  for (std::size_t x = 0; x < 4; ++x) {
    open[x] = std::find(wanted.begin(), wanted.end(), kFeasibleClasses[x]) != wanted.end();
  }
  std::array<std::optional<Walk>, 4> found;
  std::array<std::size_t, 4> value{};

  const Vector& start = inst.vertices()[u].coords;
  const Vector w = inst.vertices()[v].coords - start;
  if (fs.value > 1) {
    // One step: the segment itself, when its direction is a circuit.
    if (auto c = inst.circuits().find(w)) {
      for (std::size_t x = 0; x < 4; ++x) {
        if (!open[x]) continue;
        open[x] = false;
        found[x] = Walk{start, {{*c, *positive_multiple(w, inst.circuits()[*c].g)}}};
        value[x] = 1;
      }
    }
    try {
      auto open_copy = open;
      auto found_copy = found;
      auto value_copy = value;
      feasible_tuples<Int128Ops>(inst, u, v, fs.value, open_copy, found_copy, value_copy);
      open = open_copy;
      found = found_copy;
      value = value_copy;
    } catch (const EchelonOverflow&) {
      feasible_tuples<MpzOps>(inst, u, v, fs.value, open, found, value);
    }
  }
  for (std::size_t x = 0; x < 4; ++x) {
    const WalkClass cls = kFeasibleClasses[x];
    if (std::find(wanted.begin(), wanted.end(), cls) == wanted.end()) continue;
    if (found[x]) {
      out.push_back(exact_result(cls, u, v, *found[x]));
    } else {
      out.push_back(relabel(fs, cls));
    }
  }
  return out;
}

}  // namespace circuit_atlas::detail
