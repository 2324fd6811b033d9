// Breadth-first oracles: edge walks on the vertex-edge graph and maximal
// circuit walks over exact points.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "walks_internal.hpp"

namespace circuit_atlas::detail {
namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool operator==(const Bits&) const = default;
  std::size_t hash() const {
    std::size_t h = 0x51ed27;
    for (auto w : words_) h = (h ^ static_cast<std::size_t>(w)) * 0x100000001b3ULL;
    return h;
  }
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      for (std::uint64_t w = words_[k]; w != 0; w &= w - 1) fn(k * 64 + static_cast<std::size_t>(__builtin_ctzll(w)));
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct StateKey {
  Vector point;
  Bits used;
  bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const { return VectorHash{}(k.point) * 31 + k.used.hash(); }
};

struct EdgeKey {
  std::size_t vertex;
  Bits used;
  bool operator==(const EdgeKey&) const = default;
};

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& k) const { return k.vertex * 0x9e3779b97f4a7c15ULL + k.used.hash(); }
};

struct EdgeMove {
  std::size_t to;
  std::size_t circuit;
  Rational length;
};

std::vector<std::vector<EdgeMove>> edge_moves(const Instance& inst) {
  const auto& vs = inst.vertices();
  std::vector<std::vector<EdgeMove>> moves(vs.size());
  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (auto b : inst.graph().adjacency[a]) {
      const Vector d = vs[b].coords - vs[a].coords;
      const auto c = inst.circuits().find(d);
      if (!c) throw std::logic_error("edge direction " + to_string(d) + " is not a circuit");
      moves[a].push_back({b, *c, *positive_multiple(d, inst.circuits()[*c].g)});
    }
  }
  return moves;
}

}  // namespace

DistanceResult edge_search(const Instance& inst, std::size_t u, std::size_t v, WalkClass cls) {
  if (u == v) return trivial_result(inst, cls, u);
  const auto moves = edge_moves(inst);
  const WalkFlags fl = flags_of(cls);
  const std::size_t n_circuits = inst.circuits().size();
  const std::size_t cap = inst.vertices().size();

  struct Node {
    std::size_t vertex;
    Bits used;
    std::size_t parent;
    std::size_t circuit;
    Rational length;
  };
  std::vector<Node> nodes;
  nodes.push_back({u, Bits(n_circuits), 0, 0, Rational(0)});
  std::unordered_set<EdgeKey, EdgeKeyHash> seen_state;
  std::vector<bool> seen_vertex(inst.vertices().size(), false);
  const bool track = fl.r || fl.b;
  if (track) {
    seen_state.insert({u, nodes[0].used});
  } else {
    seen_vertex[u] = true;
  }

  auto finish = [&](std::size_t leaf) {
    Walk w{inst.vertices()[u].coords, {}};
    for (std::size_t i = leaf; i != 0; i = nodes[i].parent) w.steps.push_back({nodes[i].circuit, nodes[i].length});
    std::reverse(w.steps.begin(), w.steps.end());
    return exact_result(cls, u, v, std::move(w));
  };

  std::size_t begin = 0, end = 1, depth = 0;
  while (begin < end) {
    if (depth == cap) {
      DistanceResult r = make_result(cls, u, v);
      r.status = DistanceStatus::exceeds_cap;
      r.cap = cap;
      return r;
    }
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& mv : moves[nodes[i].vertex]) {
        if (fl.r && nodes[i].used.test(mv.circuit)) continue;
        if (fl.b && nodes[i].used.test(CircuitSet::negation(mv.circuit))) continue;
        Bits used = nodes[i].used;
        if (track) {
          used.set(mv.circuit);
          if (!seen_state.insert({mv.to, used}).second) continue;
        } else {
          if (seen_vertex[mv.to]) continue;
          seen_vertex[mv.to] = true;
        }
        nodes.push_back({mv.to, std::move(used), i, mv.circuit, mv.length});
        if (mv.to == v) return finish(nodes.size() - 1);
      }
    }
    begin = end;
    end = nodes.size();
    ++depth;
  }
  return make_result(cls, u, v);
}

DistanceResult maximal_search(const Instance& inst, std::size_t u, std::size_t v, WalkClass cls, std::size_t cap,
                              const DistanceResult* bound) {
  if (u == v) return trivial_result(inst, cls, u);
  const auto& P = inst.polyhedron();
  const auto& cs = inst.circuits();
  const WalkFlags fl = flags_of(cls);
  const Vector& start = inst.vertices()[u].coords;
  const Vector& target = inst.vertices()[v].coords;
  const std::size_t n_circuits = cs.size();

  std::size_t limit = cap;
  if (bound) limit = std::min(limit, bound->value - 1);

  std::vector<bool> compat_target(n_circuits, true);
  std::vector<std::vector<bool>> compat;
  if (fl.s) {
    const Vector bw = P.B() * (target - start);
    for (std::size_t c = 0; c < n_circuits; ++c) compat_target[c] = sign_compatible(cs[c].image, bw);
    compat.assign(n_circuits, std::vector<bool>(n_circuits, false));
    for (std::size_t c = 0; c < n_circuits; ++c) {
      if (!compat_target[c]) continue;
      for (std::size_t d = 0; d < n_circuits; ++d) {
        compat[c][d] = compat_target[d] && sign_compatible(cs[c].image, cs[d].image);
      }
    }
  }
  std::vector<std::vector<std::size_t>> limiting_rows(n_circuits);
  for (std::size_t c = 0; c < n_circuits; ++c) {
    for (std::size_t i = 0; i < cs[c].image.size(); ++i) {
      if (cs[c].image[i].sign() > 0) limiting_rows[c].push_back(i);
    }
  }
  auto step_length = [&](const Vector& slack, std::size_t c) -> std::optional<Rational> {
    std::optional<Rational> best;
    for (auto i : limiting_rows[c]) {
      if (slack[i].is_zero()) return Rational(0);
    }
    for (auto i : limiting_rows[c]) {
      Rational a = slack[i] / cs[c].image[i];
      if (!best || a < *best) best = std::move(a);
    }
    return best;
  };

  struct Node {
    Vector point;
    Vector slack;
    Bits used;
    std::size_t parent;
    std::size_t circuit;
    Rational alpha;
  };
  const bool track = fl.r || fl.b || fl.s;
  auto admissible = [&](const Node& node, std::size_t c) {
    if (fl.r && node.used.test(c)) return false;
    if (fl.b && node.used.test(CircuitSet::negation(c))) return false;
    if (fl.s) {
      if (!compat_target[c]) return false;
      bool ok = true;
      node.used.for_each([&](std::size_t d) { ok = ok && compat[c][d]; });
      if (!ok) return false;
    }
    return true;
  };

  std::vector<Node> nodes;
  nodes.push_back({start, P.slack(start), Bits(n_circuits), 0, 0, Rational(0)});
  std::unordered_set<StateKey, StateKeyHash> seen;
  seen.insert({start, Bits(track ? n_circuits : 0)});

  auto finish = [&](std::size_t leaf, std::size_t last_circuit, const Rational& last_alpha) {
    Walk w{start, {{last_circuit, last_alpha}}};
    for (std::size_t i = leaf; i != 0; i = nodes[i].parent) w.steps.push_back({nodes[i].circuit, nodes[i].alpha});
    std::reverse(w.steps.begin(), w.steps.end());
    return exact_result(cls, u, v, std::move(w));
  };

  std::size_t begin = 0, end = 1, depth = 0;
  bool exhausted = false;
  while (depth + 1 <= limit) {
    // Walks of length depth + 1: one more maximal step must land on target.
    for (std::size_t i = begin; i < end; ++i) {
      const Vector dir = target - nodes[i].point;
      const auto c = cs.find(dir);
      if (!c || !admissible(nodes[i], *c)) continue;
      const auto alpha = step_length(nodes[i].slack, *c);
      if (alpha && !alpha->is_zero() && *alpha == *positive_multiple(dir, cs[*c].g)) return finish(i, *c, *alpha);
    }
    if (depth + 2 > limit) break;
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t c = 0; c < n_circuits; ++c) {
        if (!admissible(nodes[i], c)) continue;
        const auto alpha = step_length(nodes[i].slack, c);
        if (!alpha || alpha->is_zero()) continue;
        Vector point = nodes[i].point + *alpha * cs[c].g;
        Bits used(track ? n_circuits : 0);
        if (track) {
          used = nodes[i].used;
          used.set(c);
        }
        if (!seen.insert({point, used}).second) continue;
        Vector slack = nodes[i].slack - *alpha * cs[c].image;
        nodes.push_back({std::move(point), std::move(slack), std::move(used), i, c, *alpha});
      }
    }
    begin = end;
    end = nodes.size();
    ++depth;
    if (begin == end) {
      exhausted = true;
      break;
    }
  }

  if (bound && bound->value <= cap) {
    DistanceResult r = *bound;
    r.walk_class = cls;
    return r;
  }
  DistanceResult r = make_result(cls, u, v);
  if (!exhausted) {
    r.status = DistanceStatus::exceeds_cap;
    r.cap = cap;
  }
  return r;
}

}  // namespace circuit_atlas::detail
