#include "circuit_atlas/polyhedron.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "circuit_atlas/combinations.hpp"

namespace circuit_atlas {
namespace {

void check_dims(std::size_t n, const Matrix& A, const Vector& b) {
  if (A.rows() > 0 && A.cols() != n) throw PolyhedronError("A has " + std::to_string(A.cols()) + " columns, expected " + std::to_string(n));
  if (b.size() != A.rows()) throw PolyhedronError("b has wrong length");
}

Matrix normalize_cols(const Matrix& A, std::size_t n) { return A.rows() == 0 ? Matrix(0, n) : A; }

}  // namespace

Polyhedron Polyhedron::from_bounds(std::string name, std::size_t n, Matrix A, Vector b,
                                   const std::vector<RowBound>& rows) {
  if (n == 0) throw PolyhedronError("dimension must be positive");
  check_dims(n, A, b);
  Polyhedron P;
  P.name_ = std::move(name);
  P.n_ = n;
  P.A_ = normalize_cols(A, n);
  P.b_ = std::move(b);
  P.B_ = Matrix(0, n);
  P.input_rows_ = rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.coeffs.size() != n) throw PolyhedronError("row " + std::to_string(i) + " has wrong length");
    if (r.lower && r.upper && *r.lower > *r.upper) {
      throw PolyhedronError("row " + std::to_string(i) + " has lower bound above upper bound");
    }
    if (r.lower) {
      P.B_.append_row(Rational(-1) * r.coeffs);
      P.d_.push_back(-*r.lower);
    }
    if (r.upper) {
      P.B_.append_row(r.coeffs);
      P.d_.push_back(*r.upper);
    }
  }
  return P;
}

Polyhedron Polyhedron::from_inequalities(std::string name, std::size_t n, Matrix A, Vector b, Matrix B,
                                         Vector d) {
  if (B.rows() != d.size()) throw PolyhedronError("d has wrong length");
  if (B.rows() > 0 && B.cols() != n) throw PolyhedronError("B has wrong column count");
  std::vector<RowBound> rows;
  for (std::size_t i = 0; i < B.rows(); ++i) rows.push_back({B.row(i), std::nullopt, d[i]});
  return from_bounds(std::move(name), n, std::move(A), std::move(b), rows);
}

bool Polyhedron::is_feasible(const Vector& x) const {
  if (x.size() != n_) throw PolyhedronError("point has dimension " + std::to_string(x.size()) + ", expected " + std::to_string(n_));
  const Vector ax = A_ * x;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    if (ax[i] != b_[i]) return false;
  }
  const Vector bx = B_ * x;
  for (std::size_t i = 0; i < bx.size(); ++i) {
    if (bx[i] > d_[i]) return false;
  }
  return true;
}

Vector Polyhedron::slack(const Vector& x) const {
  if (x.size() != n_) throw PolyhedronError("point has wrong dimension");
  return d_ - B_ * x;
}

bool Polyhedron::is_pointed() const { return rank(A_.stack(B_)) == n_; }

std::size_t Polyhedron::distinct_row_count() const {
  std::unordered_set<Vector, VectorHash> seen;
  for (std::size_t i = 0; i < B_.rows(); ++i) {
    Vector r = B_.row(i);
    if (is_zero(r)) continue;
    seen.insert(primitive(r));
  }
  return seen.size();
}

Polyhedron Polyhedron::with_vertex_order(std::vector<Vector> order) const {
  Polyhedron P = *this;
  P.vertex_order_ = std::move(order);
  return P;
}

Polyhedron Polyhedron::renamed(std::string name) const {
  Polyhedron P = *this;
  P.name_ = std::move(name);
  return P;
}

bool EdgeGraph::adjacent(std::size_t u, std::size_t v) const {
  const auto& adj = adjacency.at(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<Vertex> enumerate_vertices(const Polyhedron& P) {
  if (!P.is_pointed()) throw PolyhedronError("polyhedron '" + P.name() + "' is not pointed");
  const std::size_t n = P.dim();
  const std::size_t rank_a = rank(P.A());
  const std::size_t k = n - rank_a;
  std::unordered_set<Vector, VectorHash> seen;
  std::vector<Vector> points;
  for_each_combination(P.row_count(), k, [&](const std::vector<std::size_t>& subset) {
    Matrix M = P.A().stack(P.B().select_rows(subset));
    Vector rhs = P.b();
    for (auto i : subset) rhs.push_back(P.d()[i]);
    auto result = solve(M, rhs);
    if (auto* x = std::get_if<Vector>(&result)) {
      if (P.is_feasible(*x) && seen.insert(*x).second) points.push_back(*x);
    }
    return true;
  });

  if (P.declared_vertex_order().empty()) {
    std::sort(points.begin(), points.end());
  } else {
    const auto& order = P.declared_vertex_order();
    std::unordered_set<Vector, VectorHash> declared(order.begin(), order.end());
    if (declared.size() != order.size() || declared != seen) {
      throw PolyhedronError("declared vertex list of '" + P.name() + "' does not match its vertices");
    }
    points = order;
  }

  std::vector<Vertex> out;
  out.reserve(points.size());
  for (auto& x : points) {
    const Vector s = P.slack(x);
    Vertex v{std::move(x), {}};
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i].is_zero()) v.tight_rows.push_back(i);
    }
    out.push_back(std::move(v));
  }
  return out;
}

EdgeGraph edge_graph(const Polyhedron& P, std::vector<Vertex> vertices) {
  EdgeGraph g;
  g.vertices = std::move(vertices);
  g.adjacency.assign(g.vertices.size(), {});
  const std::size_t n = P.dim();
  for (std::size_t u = 0; u < g.vertices.size(); ++u) {
    for (std::size_t v = u + 1; v < g.vertices.size(); ++v) {
      std::vector<std::size_t> common;
      std::set_intersection(g.vertices[u].tight_rows.begin(), g.vertices[u].tight_rows.end(),
                            g.vertices[v].tight_rows.begin(), g.vertices[v].tight_rows.end(),
                            std::back_inserter(common));
      if (rank(P.A().stack(P.B().select_rows(common))) + 1 != n) continue;
      g.adjacency[u].push_back(v);
      g.adjacency[v].push_back(u);
      g.edges.push_back({u, v, primitive(g.vertices[v].coords - g.vertices[u].coords)});
    }
  }
  for (auto& adj : g.adjacency) std::sort(adj.begin(), adj.end());
  return g;
}

EdgeGraph edge_graph(const Polyhedron& P) { return edge_graph(P, enumerate_vertices(P)); }

Polyhedron polygon_from_vertices(std::string name, const std::vector<Vector>& vertices) {
  const std::size_t k = vertices.size();
  if (k < 3) throw PolyhedronError("a polygon needs at least three vertices");
  for (const auto& p : vertices) {
    if (p.size() != 2) throw PolyhedronError("polygon vertices must be 2-dimensional");
  }
  std::vector<RowBound> rows;
  for (std::size_t i = 0; i < k; ++i) {
    const Vector& p = vertices[i];
    const Vector& q = vertices[(i + 1) % k];
    Vector normal = primitive(Vector{q[1] - p[1], p[0] - q[0]});
    if (is_zero(normal)) throw PolyhedronError("repeated polygon vertex");
    Rational c = dot(normal, p);
    int side = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i || j == (i + 1) % k) continue;
      const int s = (dot(normal, vertices[j]) - c).sign();
      if (s == 0 || (side != 0 && s != side)) {
        throw PolyhedronError("polygon '" + name + "' is not strictly convex at edge " + std::to_string(i));
      }
      side = s;
    }
    if (side > 0) {
      normal = Rational(-1) * normal;
      c = -c;
    }
    rows.push_back({std::move(normal), std::nullopt, std::move(c)});
  }
  return Polyhedron::from_bounds(std::move(name), 2, Matrix(0, 2), {}, rows).with_vertex_order(vertices);
}

}  // namespace circuit_atlas
