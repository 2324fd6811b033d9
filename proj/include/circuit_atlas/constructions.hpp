#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circuit_atlas/walks.hpp"

namespace circuit_atlas {

struct Expectation {
  enum class Kind { equals, at_least, no_walk };

  WalkClass walk_class;
  std::string from;  // marked vertex names
  std::string to;
  Kind kind = Kind::equals;
  std::size_t value = 0;
  // false when the value was fixed by exhaustive search rather than printed
  bool stated = true;
};

std::string describe(const Expectation& e);
bool satisfied(const Expectation& e, const DistanceResult& r);

struct MarkedVertex {
  std::string name;
  Vector point;
};

struct CorpusItem {
  std::string name;
  Polyhedron polyhedron;
  std::vector<MarkedVertex> marked;
  std::vector<Expectation> expected;
  std::optional<std::size_t> vertex_count;

  const Vector& point(const std::string& marked_name) const;
};

/// The nine separating examples, in a fixed order.
std::vector<CorpusItem> corpus();
std::optional<CorpusItem> corpus_item(const std::string& name);

/// Cube [-1,1]^3 with the six corners other than -1 and 1 cut at `depth`
/// along each incident edge. Valid depths are checked in the tests.
CorpusItem truncated_cube(const Rational& depth);

Polyhedron simplex(std::size_t n);
Polyhedron cube(std::size_t n);

/// k in {3, 4, 6}.
Polyhedron affinely_regular_polygon(std::size_t k);

/// k >= 5 vertices; marked v1 = (-1,0), v2 = (-1,-3). k = 7 is the 7-gon item.
Polyhedron backwards_chain_polygon(std::size_t k);

/// Even k >= 4. Slopes strictly decreasing and negative; default -1, -2, ...
/// Vertex 0 is the origin, vertex k/2 lies on the x1-axis.
Polyhedron extremal_fm_polygon(std::size_t k, std::vector<Rational> slopes = {});

/// Bounded full-dimensional polytope with m rows in total, n in {2, 3, 4}.
Polyhedron random_polytope(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace circuit_atlas
