#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circuit_atlas/circuits.hpp"

namespace circuit_atlas {

enum class WalkClass { efm, efmb, efmr, fm, fmb, fmr, fms, f, fb, fr, fbr, fs, soft };

inline constexpr std::array<WalkClass, 13> kAllWalkClasses = {
    WalkClass::efm, WalkClass::efmb, WalkClass::efmr, WalkClass::fm, WalkClass::fmb, WalkClass::fmr, WalkClass::fms,
    WalkClass::f,   WalkClass::fb,   WalkClass::fr,   WalkClass::fbr, WalkClass::fs, WalkClass::soft};

struct WalkFlags {
  bool e = false;  // consecutive points are adjacent vertices
  bool f = false;  // every point feasible
  bool m = false;  // every step has maximal length
  bool r = false;  // no signed circuit twice
  bool b = false;  // never both g and -g
  bool s = false;  // pairwise sign-compatible, and with the target direction
};

WalkFlags flags_of(WalkClass c);
std::string_view to_string(WalkClass c);
/// Accepts the names printed by to_string ("efm", ..., "soft").
std::optional<WalkClass> parse_walk_class(std::string_view name);

struct Step {
  std::size_t circuit;  // index into the instance's CircuitSet
  Rational length;
};

struct Walk {
  Vector start;
  std::vector<Step> steps;

  /// start, start + l1 g1, ...
  std::vector<Vector> points(const CircuitSet& circuits) const;
};

/// A polyhedron with its vertices, graph and circuits, computed once.
class Instance {
 public:
  explicit Instance(Polyhedron P);

  const Polyhedron& polyhedron() const { return P_; }
  const EdgeGraph& graph() const { return graph_; }
  const std::vector<Vertex>& vertices() const { return graph_.vertices; }
  const CircuitSet& circuits() const { return circuits_; }
  std::size_t rank_a() const { return rank_a_; }
  std::optional<std::size_t> vertex_index(const Vector& x) const;
  /// min{n - rank A, rank A - n + m_B} with duplicate rows counted once.
  std::size_t sign_compatible_bound() const;

 private:
  Polyhedron P_;
  EdgeGraph graph_;
  CircuitSet circuits_;
  std::size_t rank_a_ = 0;
  std::map<Vector, std::size_t> index_;
};

enum class StepKind { moved, blocked, recession };

struct StepOutcome {
  StepKind kind;
  Rational alpha;  // set when moved
  Vector point;    // set when moved
};

/// Ratio test from feasible y along g. Throws PolyhedronError if y is not in P.
StepOutcome maximal_step(const Polyhedron& P, const Vector& y, const Circuit& g);

struct WalkCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

WalkCheck verify_walk(const Instance& inst, const Walk& walk, WalkClass cls, const Vector& target);

enum class DistanceStatus { exact, no_walk, exceeds_cap };
std::string_view to_string(DistanceStatus s);

struct DistanceResult {
  WalkClass walk_class = WalkClass::efm;
  std::size_t from = 0;
  std::size_t to = 0;
  DistanceStatus status = DistanceStatus::no_walk;
  std::size_t value = 0;  // when exact
  std::size_t cap = 0;    // when exceeds_cap: no walk of length <= cap exists
  std::optional<Walk> witness;
};

struct SearchOptions {
  /// Depth cap for fm, fmb, fmr, fms; defaults to the signed circuit count.
  std::optional<std::size_t> cap;
};

/// Any class. Throws std::out_of_range for a bad vertex index.
DistanceResult distance(const Instance& inst, WalkClass cls, std::size_t u, std::size_t v,
                        const SearchOptions& opts = {});

DistanceResult distance_edge(const Instance& inst, std::size_t u, std::size_t v, WalkClass cls);
DistanceResult distance_feasible_maximal(const Instance& inst, std::size_t u, std::size_t v, WalkClass cls,
                                         const SearchOptions& opts = {});
DistanceResult distance_feasible(const Instance& inst, std::size_t u, std::size_t v, WalkClass cls);
DistanceResult distance_sign_compatible(const Instance& inst, std::size_t u, std::size_t v);
DistanceResult distance_soft(const Instance& inst, std::size_t u, std::size_t v);

/// All thirteen classes for one ordered pair, sharing work between them.
/// Ordered like kAllWalkClasses.
std::vector<DistanceResult> all_distances(const Instance& inst, std::size_t u, std::size_t v,
                                          const SearchOptions& opts = {});

struct DiameterResult {
  WalkClass walk_class = WalkClass::efm;
  /// no_walk if some pair has no walk; exceeds_cap if some pair hit the cap.
  DistanceStatus status = DistanceStatus::exact;
  std::size_t value = 0;  // maximum over pairs with exact distances
  std::size_t from = 0;   // first pair (lexicographic) attaining value, or the first offending pair
  std::size_t to = 0;
};

/// Runs fn(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

DiameterResult diameter(const Instance& inst, WalkClass cls, const SearchOptions& opts = {}, unsigned jobs = 1);

struct HierarchyRelation {
  WalkClass greater;
  WalkClass lesser;
};

/// lhs >= rhs for every listed pair of classes.
const std::vector<HierarchyRelation>& hierarchy_relations();

struct RelationIssue {
  std::size_t from;
  std::size_t to;
  HierarchyRelation relation;
};

struct HierarchyReport {
  std::size_t pairs = 0;
  std::vector<RelationIssue> violations;
  std::vector<RelationIssue> inconclusive;
  /// distances[p][c]: pair p in (from, to) lexicographic order, class c as in kAllWalkClasses.
  std::vector<std::vector<DistanceResult>> distances;
};

HierarchyReport verify_hierarchy(const Instance& inst, const SearchOptions& opts = {}, unsigned jobs = 1);

}  // namespace circuit_atlas
