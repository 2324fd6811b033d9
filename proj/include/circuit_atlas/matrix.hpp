#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "circuit_atlas/rational.hpp"

namespace circuit_atlas {

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  /// Builds a matrix from row vectors; `cols` is needed when `rows` is empty.
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Matrix transpose() const;
  Matrix select_rows(const std::vector<std::size_t>& indices) const;
  /// Rows of `this` followed by rows of `below`.
  Matrix stack(const Matrix& below) const;
  void append_row(const Vector& row);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

Vector operator*(const Matrix& m, const Vector& x);

/// Rank over the rationals.
std::size_t rank(const Matrix& m);

/// Rational basis of {x : m x = 0}; has cols - rank vectors.
std::vector<Vector> kernel_basis(const Matrix& m);

struct Inconsistent {};
struct Underdetermined {};

using SolveResult = std::variant<Vector, Inconsistent, Underdetermined>;

/// Solves m x = rhs. Returns the unique solution, or a tag when the system has
/// no solution or more than one.
SolveResult solve(const Matrix& m, const Vector& rhs);

}  // namespace circuit_atlas
