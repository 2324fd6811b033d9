#include "circuit_atlas/matrix.hpp"

#include <stdexcept>

namespace circuit_atlas {
namespace {

// Reduced row echelon form in place. Pivots are taken as the first nonzero
// entry of each column, scanning columns left to right. Returns pivot columns.
std::vector<std::size_t> reduce(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    }
    const Rational inv = Rational(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("matrix row has wrong length");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& indices) const {
  Matrix m(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(indices[i], j);
  }
  return m;
}

Matrix Matrix::stack(const Matrix& below) const {
  if (below.cols_ != cols_) throw std::invalid_argument("stack: column mismatch");
  Matrix m = *this;
  m.entries_.insert(m.entries_.end(), below.entries_.begin(), below.entries_.end());
  m.rows_ += below.rows_;
  return m;
}

void Matrix::append_row(const Vector& row) {
  if (row.size() != cols_) throw std::invalid_argument("append_row: length mismatch");
  entries_.insert(entries_.end(), row.begin(), row.end());
  ++rows_;
}

Vector operator*(const Matrix& m, const Vector& x) {
  if (x.size() != m.cols()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
  Vector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpq_class acc = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero() && !x[j].is_zero()) acc += m(i, j).value() * x[j].value();
    }
    out[i] = Rational(std::move(acc));
  }
  return out;
}

std::size_t rank(const Matrix& m) {
  Matrix work = m;
  return reduce(work).size();
}

std::vector<Vector> kernel_basis(const Matrix& m) {
  Matrix work = m;
  const auto pivots = reduce(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v = zeros(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -work(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

SolveResult solve(const Matrix& m, const Vector& rhs) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = rhs[i];
  }
  const auto pivots = reduce(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return Inconsistent{};
  if (pivots.size() < m.cols()) return Underdetermined{};
  Vector x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
  return x;
}

}  // namespace circuit_atlas
