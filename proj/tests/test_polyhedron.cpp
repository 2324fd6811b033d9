#include <set>

#include "circuit_atlas/polyhedron.hpp"
#include "doctest.h"

using namespace circuit_atlas;

namespace {

Vector vec(std::initializer_list<Rational> xs) { return Vector(xs); }

const std::optional<Rational> inf;

Polyhedron unit_square() {
  return Polyhedron::from_bounds("square", 2, Matrix(0, 2), {},
                                 {{vec({1, 0}), Rational(0), Rational(1)}, {vec({0, 1}), Rational(0), Rational(1)}});
}

Polyhedron four_dim() {
  std::vector<RowBound> rows = {
      {vec({1, 0, 0, 0}), Rational(0), Rational(3, 2)}, {vec({0, 1, 0, 0}), Rational(0), Rational(1)},
      {vec({0, 0, 1, 0}), Rational(0), Rational(1)},    {vec({0, 0, 0, 1}), Rational(0), Rational(1)},
      {vec({1, 1, 0, 0}), inf, Rational(2)},            {vec({1, 0, 1, 0}), inf, Rational(2)},
      {vec({1, 0, 0, 1}), inf, Rational(2)},
  };
  return Polyhedron::from_bounds("four-dim", 4, Matrix(0, 4), {}, rows);
}

std::set<Vector> coords(const std::vector<Vertex>& vs) {
  std::set<Vector> out;
  for (const auto& v : vs) out.insert(v.coords);
  return out;
}

}  // namespace

TEST_CASE("two-sided rows expand and skip infinite bounds") {
  CHECK(unit_square().row_count() == 4);
  std::vector<RowBound> rows = {
      {vec({1, 0, 0}), Rational(0), inf}, {vec({0, 1, 0}), Rational(0), Rational(1)},
      {vec({0, 0, 1}), Rational(0), Rational(1)}, {vec({1, 1, 0}), inf, Rational(2)},
      {vec({1, 0, 1}), inf, Rational(2)},
  };
  const auto P = Polyhedron::from_bounds("p", 3, Matrix(0, 3), {}, rows);
  // One row per finite bound: 1 + 2 + 2 + 1 + 1.
  CHECK(P.row_count() == 7);
  CHECK(P.B().row(0) == vec({-1, 0, 0}));
  CHECK(P.d()[0] == Rational(0));
  CHECK(four_dim().row_count() == 11);
}

TEST_CASE("build rejects malformed input") {
  CHECK_THROWS_AS(Polyhedron::from_bounds("bad", 2, Matrix(0, 2), {}, {{vec({1}), Rational(0), Rational(1)}}),
                  PolyhedronError);
  CHECK_THROWS_AS(Polyhedron::from_bounds("bad", 2, Matrix(0, 2), {}, {{vec({1, 0}), Rational(2), Rational(1)}}),
                  PolyhedronError);
  CHECK_THROWS_AS(Polyhedron::from_bounds("bad", 2, Matrix::from_rows({vec({1, 1})}, 2), {}, {}), PolyhedronError);
}

TEST_CASE("vertices of the 4D polytope") {
  const auto vs = enumerate_vertices(four_dim());
  CHECK(vs.size() == 23);
  std::set<Vector> expected;
  for (int mask = 0; mask < 16; ++mask) {
    Vector v{Rational(mask & 1), Rational((mask >> 1) & 1), Rational((mask >> 2) & 1), Rational((mask >> 3) & 1)};
    if (v != vec({1, 0, 0, 0})) expected.insert(v);
  }
  for (int mask = 0; mask < 8; ++mask) {
    expected.insert(vec({Rational(3, 2), Rational(mask & 1, 2), Rational((mask >> 1) & 1, 2),
                         Rational((mask >> 2) & 1, 2)}));
  }
  CHECK(coords(vs) == expected);
  for (const auto& v : vs) {
    Matrix tight = four_dim().B().select_rows(v.tight_rows);
    CHECK(rank(tight) == 4);
  }
}

TEST_CASE("square vertices, feasibility and graph") {
  const auto P = unit_square();
  const auto g = edge_graph(P);
  REQUIRE(g.vertices.size() == 4);
  CHECK(g.vertices[0].coords == vec({0, 0}));
  CHECK(g.vertices[3].coords == vec({1, 1}));
  CHECK(g.edges.size() == 4);
  CHECK(g.adjacent(0, 1));
  CHECK_FALSE(g.adjacent(0, 3));
  CHECK(P.is_feasible(vec({Rational(1, 2), 1})));
  CHECK_FALSE(P.is_feasible(vec({2, 0})));
  CHECK_THROWS_AS(P.is_feasible(vec({0})), PolyhedronError);
}

TEST_CASE("polygon from vertices keeps the declared order") {
  const std::vector<Vector> hex = {vec({0, 1}), vec({1, 2}), vec({2, 2}), vec({5, -1}), vec({3, -3}), vec({0, 0})};
  const auto P = polygon_from_vertices("hexagon", hex);
  CHECK(P.row_count() == 6);
  const auto g = edge_graph(P);
  REQUIRE(g.vertices.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(g.vertices[i].coords == hex[i]);
    CHECK(g.adjacent(i, (i + 1) % 6));
    CHECK(g.adjacency[i].size() == 2);
  }
  CHECK_FALSE(P.is_feasible(vec({10, 10})));

  CHECK_THROWS_AS(polygon_from_vertices("bad", {vec({0, 0}), vec({1, 0}), vec({2, 0}), vec({0, 1})}), PolyhedronError);
  CHECK_THROWS_AS(polygon_from_vertices("bad", {vec({0, 0}), vec({1, 1}), vec({1, 0}), vec({0, 1})}), PolyhedronError);
}

TEST_CASE("declared order must match the vertex set") {
  const auto P = unit_square().with_vertex_order({vec({0, 0}), vec({1, 0}), vec({1, 1})});
  CHECK_THROWS_AS(enumerate_vertices(P), PolyhedronError);
}

TEST_CASE("equality constraints") {
  // Standard simplex in R^3 written as x >= 0, x1 + x2 + x3 = 1.
  const auto P = Polyhedron::from_bounds(
      "triangle", 3, Matrix::from_rows({vec({1, 1, 1})}, 3), {Rational(1)},
      {{vec({1, 0, 0}), Rational(0), inf}, {vec({0, 1, 0}), Rational(0), inf}, {vec({0, 0, 1}), Rational(0), inf}});
  const auto g = edge_graph(P);
  CHECK(g.vertices.size() == 3);
  CHECK(g.edges.size() == 3);
  CHECK_FALSE(P.is_feasible(vec({0, 0, 0})));
}

TEST_CASE("unbounded and non-pointed inputs") {
  const auto strip = Polyhedron::from_bounds("strip", 2, Matrix(0, 2), {}, {{vec({1, 0}), Rational(0), Rational(1)}});
  CHECK_FALSE(strip.is_pointed());
  CHECK_THROWS_AS(enumerate_vertices(strip), PolyhedronError);
  const auto orthant = Polyhedron::from_bounds("orthant", 2, Matrix(0, 2), {},
                                               {{vec({1, 0}), Rational(0), inf}, {vec({0, 1}), Rational(0), inf}});
  const auto g = edge_graph(orthant);
  CHECK(g.vertices.size() == 1);
  CHECK(g.edges.empty());
}

TEST_CASE("duplicate-free row count") {
  const auto P = Polyhedron::from_inequalities("dup", 2, Matrix(0, 2), {},
                                               Matrix::from_rows({vec({1, 0}), vec({2, 0}), vec({-1, 0}), vec({0, 1}), vec({0, -3})}, 2),
                                               {Rational(1), Rational(3), Rational(0), Rational(1), Rational(0)});
  CHECK(P.row_count() == 5);
  CHECK(P.distinct_row_count() == 4);
}
