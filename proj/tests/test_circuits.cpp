#include <functional>
#include <set>

#include "circuit_atlas/circuits.hpp"
#include "doctest.h"

using namespace circuit_atlas;

namespace {

Vector vec(std::initializer_list<Rational> xs) { return Vector(xs); }

const std::optional<Rational> inf;

Polyhedron fms_polygon() {
  return Polyhedron::from_bounds("fms", 2, Matrix(0, 2), {},
                                 {{vec({1, 0}), Rational(0), inf},
                                  {vec({1, 1}), Rational(0), Rational(6)},
                                  {vec({1, -1}), Rational(-1), Rational(4)},
                                  {vec({1, -2}), Rational(-3), inf}});
}

Polyhedron fs_polytope() {
  return Polyhedron::from_bounds("fs", 3, Matrix(0, 3), {},
                                 {{vec({1, 0, 0}), Rational(0), inf},
                                  {vec({0, 1, 0}), Rational(0), Rational(1)},
                                  {vec({0, 0, 1}), Rational(0), Rational(1)},
                                  {vec({1, 1, 0}), inf, Rational(2)},
                                  {vec({1, 0, 1}), inf, Rational(2)}});
}

Polyhedron cube(std::size_t n) {
  std::vector<RowBound> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back({unit_vector(n, i), Rational(0), Rational(1)});
  return Polyhedron::from_bounds("cube", n, Matrix(0, n), {}, rows);
}

std::set<Vector> as_set(const CircuitSet& cs) {
  std::set<Vector> out;
  for (const auto& c : cs) out.insert(c.g);
  return out;
}

std::set<Vector> with_negations(std::initializer_list<Vector> reps) {
  std::set<Vector> out;
  for (const auto& g : reps) {
    out.insert(g);
    out.insert(Rational(-1) * g);
  }
  return out;
}

std::vector<bool> support(const Vector& v) {
  std::vector<bool> s;
  for (const auto& x : v) s.push_back(!x.is_zero());
  return s;
}

bool strictly_inside(const std::vector<bool>& a, const std::vector<bool>& b) {
  bool smaller = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
    smaller = smaller || (b[i] && !a[i]);
  }
  return smaller;
}

// Circuits by definition: nonzero primitive integer vectors in a box whose B
// image is support-minimal among the images of all other box vectors.
std::set<Vector> brute_force_circuits(const Polyhedron& P, long box) {
  const std::size_t n = P.dim();
  std::vector<Vector> all;
  Vector v(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      if (!is_zero(v) && is_zero(P.A() * v)) all.push_back(v);
      return;
    }
    for (long x = -box; x <= box; ++x) {
      v[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  std::set<Vector> out;
  for (const auto& g : all) {
    if (primitive(g) != g) continue;
    const auto sg = support(P.B() * g);
    bool minimal = true;
    for (const auto& z : all) {
      if (strictly_inside(support(P.B() * z), sg)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.insert(g);
  }
  return out;
}

}  // namespace

TEST_CASE("circuits of a polygon are its edge normals rotated") {
  const auto cs = enumerate_circuits(fms_polygon());
  CHECK(as_set(cs) == with_negations({vec({0, 1}), vec({1, -1}), vec({1, 1}), vec({2, 1})}));
}

TEST_CASE("circuits of the three-dimensional sign example") {
  const auto cs = enumerate_circuits(fs_polytope());
  CHECK(as_set(cs) == with_negations({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1}), vec({1, -1, 0}), vec({1, 0, -1}),
                                      vec({1, -1, -1})}));
}

TEST_CASE("cube circuits are the signed unit vectors") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto cs = enumerate_circuits(cube(n));
    std::set<Vector> expected;
    for (std::size_t i = 0; i < n; ++i) {
      expected.insert(unit_vector(n, i));
      expected.insert(Rational(-1) * unit_vector(n, i));
    }
    CHECK(as_set(cs) == expected);
  }
}

TEST_CASE("enumeration matches the definition on small boxes") {
  CHECK(as_set(enumerate_circuits(fs_polytope())) == brute_force_circuits(fs_polytope(), 2));
  CHECK(as_set(enumerate_circuits(fms_polygon())) == brute_force_circuits(fms_polygon(), 3));
  const auto with_eq = Polyhedron::from_bounds(
      "eq", 4, Matrix::from_rows({vec({1, 1, 1, 1})}, 4), {Rational(2)},
      {{vec({1, 0, 0, 0}), Rational(0), Rational(1)},
       {vec({0, 1, 0, 0}), Rational(0), Rational(1)},
       {vec({0, 0, 1, 0}), Rational(0), Rational(1)},
       {vec({0, 0, 0, 1}), Rational(0), Rational(1)},
       {vec({1, 2, 0, 0}), inf, Rational(2)}});
  CHECK(as_set(enumerate_circuits(with_eq)) == brute_force_circuits(with_eq, 2));
}

TEST_CASE("circuit set structure") {
  const auto P = fs_polytope();
  const auto cs = enumerate_circuits(P);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    CHECK(cs[CircuitSet::negation(i)].g == Rational(-1) * cs[i].g);
    CHECK(cs[i].image == P.B() * cs[i].g);
    CHECK(primitive(cs[i].g) == cs[i].g);
    CHECK(cs.find(Rational(3) * cs[i].g) == i);
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      const auto si = support(cs[i].image), sj = support(cs[j].image);
      CHECK_FALSE(strictly_inside(si, sj));
      CHECK_FALSE(strictly_inside(sj, si));
      if (j != CircuitSet::negation(i)) CHECK_FALSE(positive_multiple(cs[i].g, cs[j].g));
    }
  }
  const auto g = edge_graph(P);
  for (const auto& e : g.edges) CHECK(cs.find(e.direction).has_value());
}

TEST_CASE("sign compatibility") {
  const auto P = fms_polygon();
  const Vector w = vec({-1, 4});
  CHECK(P.B() * w == vec({1, -3, 3, 5, -5, 9}));
  CHECK(sign_compatible(P.B() * vec({0, 1}), P.B() * w));
  CHECK_FALSE(sign_compatible(P.B() * vec({1, 1}), P.B() * w));
  CHECK(sign_compatible(vec({1, -2, 0}), zeros(3)));
  CHECK(sign_compatible(vec({1, -2, 0}), vec({3, 0, 5})));
  CHECK_FALSE(sign_compatible(vec({1, -2, 0}), vec({-3, 0, 5})));

  const auto cs = enumerate_circuits(P);
  std::set<Vector> found;
  for (auto i : compatible_candidates(P, cs, w)) found.insert(cs[i].g);
  CHECK(found == std::set<Vector>{vec({0, 1}), vec({-1, 1})});
}

TEST_CASE("compatible candidates along diagonals") {
  const auto Q = fs_polytope();
  const auto cs = enumerate_circuits(Q);
  std::set<Vector> found;
  for (auto i : compatible_candidates(Q, cs, vec({1, 1, 1}))) found.insert(cs[i].g);
  CHECK(found == std::set<Vector>{vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})});

  const auto C = cube(4);
  const auto cc = enumerate_circuits(C);
  std::set<Vector> unit;
  for (auto i : compatible_candidates(C, cc, vec({1, 1, 1, 1}))) unit.insert(cc[i].g);
  CHECK(unit == std::set<Vector>{unit_vector(4, 0), unit_vector(4, 1), unit_vector(4, 2), unit_vector(4, 3)});
}
