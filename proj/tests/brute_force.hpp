#pragma once

// Exhaustive reference searches for the tests. They share no search code
// with the library: step lengths come from linear algebra on each circuit
// tuple (kernel dimension at most one, scanned as an exact interval), maximal
// walks come from plain depth-first enumeration of maximal_step.

#include <functional>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "circuit_atlas/walks.hpp"

namespace brute {

using namespace circuit_atlas;

// Set of t satisfying a list of a + b t > 0 or a + b t >= 0.
class Interval {
 public:
  bool add(const Rational& a, const Rational& b, bool strict) {
    if (b.is_zero()) {
      if (a.sign() < 0 || (strict && a.is_zero())) empty_ = true;
      return !empty_;
    }
    const Rational t = -a / b;
    if (b.sign() > 0) {
      if (!lo_ || t > *lo_ || (t == *lo_ && strict)) {
        lo_ = t;
        lo_open_ = strict;
      }
    } else {
      if (!hi_ || t < *hi_ || (t == *hi_ && strict)) {
        hi_ = t;
        hi_open_ = strict;
      }
    }
    return !is_empty();
  }

  bool is_empty() const {
    if (empty_) return true;
    if (!lo_ || !hi_) return false;
    if (*lo_ < *hi_) return false;
    return !(*lo_ == *hi_ && !lo_open_ && !hi_open_);
  }

  Rational pick() const {
    if (lo_ && hi_) return (*lo_ + *hi_) / Rational(2);
    if (lo_) return *lo_ + Rational(1);
    if (hi_) return *hi_ - Rational(1);
    return Rational(0);
  }

 private:
  bool empty_ = false;
  std::optional<Rational> lo_, hi_;
  bool lo_open_ = false, hi_open_ = false;
};

// Positive lengths alpha with sum alpha_j g_j = w and, when `feasible`, every
// intermediate point inside P. Throws when the tuple's kernel is too large.
inline std::optional<Vector> lengths_for(const Instance& inst, const std::vector<std::size_t>& tuple,
                                         const Vector& start, const Vector& w, bool feasible) {
  const auto& cs = inst.circuits();
  const std::size_t n = w.size(), k = tuple.size();
  Matrix G(n, k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t r = 0; r < n; ++r) G(r, j) = cs[tuple[j]].g[r];
  }
  Matrix Gw(n, k + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < k; ++j) Gw(r, j) = G(r, j);
    Gw(r, k) = w[r];
  }
  if (rank(Gw) > rank(G)) return std::nullopt;
  const auto K = kernel_basis(G);
  if (K.size() > 1) throw std::logic_error("brute force needs a kernel of dimension <= 1");

  Vector p;
  if (K.empty()) {
    const auto s = solve(G, w);
    if (!std::holds_alternative<Vector>(s)) return std::nullopt;
    p = std::get<Vector>(s);
  } else {
    std::optional<Vector> found;
    for (const auto& b : kernel_basis(Gw)) {
      if (!b[k].is_zero()) {
        found = Vector(k);
        for (std::size_t j = 0; j < k; ++j) (*found)[j] = -b[j] / b[k];
        break;
      }
    }
    if (!found) return std::nullopt;
    p = *found;
  }
  const Vector dir = K.empty() ? zeros(k) : K[0];

  Interval t;
  for (std::size_t j = 0; j < k; ++j) {
    if (!t.add(p[j], dir[j], true)) return std::nullopt;
  }
  if (feasible) {
    const Vector slack = inst.polyhedron().slack(start);
    for (std::size_t i = 1; i < k; ++i) {
      for (std::size_t r = 0; r < slack.size(); ++r) {
        Rational a = slack[r], b(0);
        for (std::size_t j = 0; j < i; ++j) {
          a -= p[j] * cs[tuple[j]].image[r];
          b -= dir[j] * cs[tuple[j]].image[r];
        }
        if (!t.add(a, b, false)) return std::nullopt;
      }
    }
  }
  const Rational chosen = t.pick();
  Vector alpha(k);
  for (std::size_t j = 0; j < k; ++j) alpha[j] = p[j] + chosen * dir[j];
  return alpha;
}

inline bool tuple_allowed(const std::vector<std::size_t>& tuple, const WalkFlags& fl) {
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    for (std::size_t l = j + 1; l < tuple.size(); ++l) {
      if (fl.r && tuple[j] == tuple[l]) return false;
      if (fl.b && tuple[j] == CircuitSet::negation(tuple[l])) return false;
    }
  }
  return true;
}

// Smallest k <= max_len with a walk of class f, fb, fr, fbr, fs or soft;
// nullopt if none that short. Keep max_len <= 3 so kernels stay small.
inline std::optional<std::size_t> feasible_distance(const Instance& inst, std::size_t u, std::size_t v,
                                                    WalkClass cls, std::size_t max_len) {
  if (u == v) return 0;
  const WalkFlags fl = flags_of(cls);
  const Vector& start = inst.vertices()[u].coords;
  const Vector w = inst.vertices()[v].coords - start;
  const auto& cs = inst.circuits();
  const std::size_t N = cs.size();
  const Vector bw = inst.polyhedron().B() * w;
  // Sign-compatible walks are feasible in any order, soft walks have no order.
  const bool unordered = !fl.f || fl.s;
  for (std::size_t k = 1; k <= max_len; ++k) {
    std::vector<std::size_t> tuple(k, 0);
    bool found = false;
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
      if (found) return;
      if (pos == k) {
        if (tuple_allowed(tuple, fl) && lengths_for(inst, tuple, start, w, fl.f && !fl.s)) found = true;
        return;
      }
      for (std::size_t c = 0; c < N && !found; ++c) {
        if (pos > 0 && tuple[pos - 1] == c) continue;
        if (unordered && pos > 0 && c < tuple[pos - 1]) continue;
        if (fl.s) {
          bool ok = sign_compatible(cs[c].image, bw);
          for (std::size_t j = 0; j < pos; ++j) ok = ok && sign_compatible(cs[c].image, cs[tuple[j]].image);
          if (!ok) continue;
        }
        tuple[pos] = c;
        rec(pos + 1);
      }
    };
    rec(0);
    if (found) return k;
  }
  return std::nullopt;
}

// Smallest k <= max_len with a maximal walk of class `cls` (efm.. or fm..),
// by depth-first enumeration of circuit sequences.
inline std::optional<std::size_t> maximal_distance(const Instance& inst, std::size_t u, std::size_t v,
                                                   WalkClass cls, std::size_t max_len) {
  if (u == v) return 0;
  const WalkFlags fl = flags_of(cls);
  const auto& P = inst.polyhedron();
  const auto& cs = inst.circuits();
  const Vector& target = inst.vertices()[v].coords;
  const Vector bw = P.B() * (target - inst.vertices()[u].coords);

  std::optional<std::size_t> best;
  std::vector<std::size_t> used;
  std::function<void(const Vector&, std::size_t, std::size_t)> rec = [&](const Vector& y, std::size_t at,
                                                                        std::size_t depth) {
    if (y == target) {
      if (!best || depth < *best) best = depth;
      return;
    }
    if (depth == max_len || (best && depth + 1 >= *best)) return;
    for (std::size_t c = 0; c < cs.size(); ++c) {
      if (fl.s) {
        if (!sign_compatible(cs[c].image, bw)) continue;
        bool ok = true;
        for (auto d : used) ok = ok && sign_compatible(cs[c].image, cs[d].image);
        if (!ok) continue;
      }
      used.push_back(c);
      const bool allowed = tuple_allowed(used, fl);
      used.pop_back();
      if (!allowed) continue;
      const auto step = maximal_step(P, y, cs[c]);
      if (step.kind != StepKind::moved) continue;
      std::size_t next_at = 0;
      if (fl.e) {
        const auto idx = inst.vertex_index(step.point);
        if (!idx || !inst.graph().adjacent(at, *idx)) continue;
        next_at = *idx;
      }
      used.push_back(c);
      rec(step.point, next_at, depth + 1);
      used.pop_back();
    }
  };
  rec(inst.vertices()[u].coords, u, 0);
  return best;
}

}  // namespace brute
