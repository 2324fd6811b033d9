#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuit_atlas/matrix.hpp"

namespace circuit_atlas {

/// Thrown when a polyhedron is malformed or lacks the structure an operation
/// needs (dimension mismatch, empty row range, no vertices).
class PolyhedronError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One two-sided input row `lower <= coeffs . x <= upper`; a missing bound is
/// infinite.
struct RowBound {
  Vector coeffs;
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

/// P = {x in R^n : A x = b, B x <= d}.
///
/// Two-sided input rows are expanded into single-sided rows of B: the lower
/// bound (if finite) becomes `-coeffs . x <= -lower`, followed by the upper
/// bound (if finite) `coeffs . x <= upper`. Infinite bounds never become rows.
class Polyhedron {
 public:
  static Polyhedron from_bounds(std::string name, std::size_t n, Matrix A, Vector b,
                                const std::vector<RowBound>& rows);
  static Polyhedron from_inequalities(std::string name, std::size_t n, Matrix A, Vector b, Matrix B,
                                      Vector d);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return n_; }
  const Matrix& A() const { return A_; }
  const Vector& b() const { return b_; }
  const Matrix& B() const { return B_; }
  const Vector& d() const { return d_; }
  std::size_t row_count() const { return B_.rows(); }

  /// Rows as given on input (before expansion); used for serialization.
  const std::vector<RowBound>& input_rows() const { return input_rows_; }

  /// Exact membership. Throws PolyhedronError on a dimension mismatch.
  bool is_feasible(const Vector& x) const;
  /// d - B x.
  Vector slack(const Vector& x) const;
  /// rank of (A; B) equals n.
  bool is_pointed() const;
  /// Number of B rows after dropping rows that are positive multiples of an
  /// earlier row.
  std::size_t distinct_row_count() const;

  /// Optional caller-declared vertex order (e.g. a polygon listed around its
  /// boundary). When present it must equal the enumerated vertex set.
  const std::vector<Vector>& declared_vertex_order() const { return vertex_order_; }
  Polyhedron with_vertex_order(std::vector<Vector> order) const;
  Polyhedron renamed(std::string name) const;

 private:
  std::string name_;
  std::size_t n_ = 0;
  Matrix A_;
  Vector b_;
  Matrix B_;
  Vector d_;
  std::vector<RowBound> input_rows_;
  std::vector<Vector> vertex_order_;
};

struct Vertex {
  Vector coords;
  std::vector<std::size_t> tight_rows;
};

struct Edge {
  std::size_t from;
  std::size_t to;
  /// Primitive integer direction of `to - from`.
  Vector direction;
};

struct EdgeGraph {
  std::vector<Vertex> vertices;
  std::vector<std::vector<std::size_t>> adjacency;
  /// One entry per undirected edge with from < to.
  std::vector<Edge> edges;

  bool adjacent(std::size_t u, std::size_t v) const;
};

/// All vertices by exhaustive basis enumeration, deduplicated. Ordered
/// lexicographically by coordinates, or by the declared order when the
/// polyhedron carries one. Throws PolyhedronError when P is not pointed or a
/// declared order does not match.
std::vector<Vertex> enumerate_vertices(const Polyhedron& P);

/// u, v adjacent iff rank(A rows together with the rows tight at both) = n - 1.
EdgeGraph edge_graph(const Polyhedron& P, std::vector<Vertex> vertices);
EdgeGraph edge_graph(const Polyhedron& P);

/// Polygon with the given vertices listed in boundary order (either
/// orientation). Each edge yields one inequality with coprime integer
/// coefficients. The vertex order is recorded as the declared order. Throws
/// PolyhedronError unless the points are in strictly convex position.
Polyhedron polygon_from_vertices(std::string name, const std::vector<Vector>& vertices);

}  // namespace circuit_atlas
