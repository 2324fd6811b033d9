#include <random>
#include <variant>

#include "circuit_atlas/matrix.hpp"
#include "doctest.h"

using namespace circuit_atlas;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<long>> rows, std::size_t cols) {
  std::vector<Vector> out;
  for (const auto& r : rows) {
    Vector v;
    for (long x : r) v.emplace_back(x);
    out.push_back(std::move(v));
  }
  return Matrix::from_rows(out, cols);
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<long> coef(-3, 3);
  std::uniform_int_distribution<long> den(1, 4);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(coef(rng), den(rng));
  }
  return m;
}

}  // namespace

TEST_CASE("rational canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(2, -4).str() == "-1/2");
  CHECK(Rational(6, 3).str() == "2");
  CHECK(Rational(0, -5).str() == "0");
  CHECK((Rational(1, 6) + Rational(1, 3)).str() == "1/2");
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("-7/21") == Rational(-1, 3));
  CHECK(Rational::parse("2724/100").str() == "681/25");
  CHECK(Rational::parse("123456789012345678901234567890/2").str() == "61728394506172839450617283945");
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
}

TEST_CASE("arithmetic result is independent of the input representation") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 30);
  std::uniform_int_distribution<long> scale(1, 20);
  for (int trial = 0; trial < 500; ++trial) {
    const long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    const long s = scale(rng), t = scale(rng);
    const Rational x(a, b), y(c, d);
    const Rational xu(a * s, b * s), yu(c * t, d * t);
    CHECK((x + y).str() == (xu + yu).str());
    CHECK((x - y).str() == (xu - yu).str());
    CHECK((x * y).str() == (xu * yu).str());
    if (!y.is_zero()) CHECK((x / y).str() == (xu / yu).str());
    CHECK(x.hash() == xu.hash());
  }
}

TEST_CASE("primitive vectors") {
  CHECK(primitive({Rational(2), Rational(-10)}) == Vector{Rational(1), Rational(-5)});
  CHECK(primitive({Rational(1, 2), Rational(1, 3)}) == Vector{Rational(3), Rational(2)});
  CHECK(primitive({Rational(0), Rational(-4)}) == Vector{Rational(0), Rational(-1)});
  CHECK(positive_multiple({Rational(3), Rational(6)}, {Rational(1), Rational(2)}) == Rational(3));
  CHECK_FALSE(positive_multiple({Rational(-3), Rational(-6)}, {Rational(1), Rational(2)}));
  CHECK_FALSE(positive_multiple({Rational(3), Rational(5)}, {Rational(1), Rational(2)}));
}

TEST_CASE("rank") {
  CHECK(rank(mat({{1, 0}, {0, 1}}, 2)) == 2);
  CHECK(rank(mat({{1, 1}}, 2)) == 1);
  CHECK(rank(Matrix(0, 3)) == 0);
  // Rows of the 4D polytope's constraint matrix.
  const Matrix B = mat({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}}, 4);
  CHECK(rank(B) == 4);
}

TEST_CASE("kernel basis") {
  CHECK(kernel_basis(mat({{1, 0}, {0, 1}}, 2)).empty());
  const auto k1 = kernel_basis(mat({{1, 1}}, 2));
  REQUIRE(k1.size() == 1);
  CHECK(primitive(k1[0]) == Vector{Rational(-1), Rational(1)});
  const Matrix M = mat({{1, 1, 0, 0}, {1, 0, 1, 0}}, 4);
  const auto k2 = kernel_basis(M);
  CHECK(k2.size() == 2);
  for (const auto& v : k2) CHECK(is_zero(M * v));
}

TEST_CASE("solve") {
  auto r1 = solve(mat({{1, 0}, {0, 1}}, 2), {Rational(1), Rational(2)});
  REQUIRE(std::holds_alternative<Vector>(r1));
  CHECK(std::get<Vector>(r1) == Vector{Rational(1), Rational(2)});
  CHECK(std::holds_alternative<Underdetermined>(solve(mat({{1, 1}}, 2), {Rational(1)})));
  auto r3 = solve(mat({{1, 0}, {1, 1}}, 2), {Rational(0), Rational(0)});
  REQUIRE(std::holds_alternative<Vector>(r3));
  CHECK(std::get<Vector>(r3) == zeros(2));
  CHECK(std::holds_alternative<Inconsistent>(solve(mat({{1, 1}, {1, 1}}, 2), {Rational(0), Rational(1)})));
}

TEST_CASE("linear algebra properties on random matrices") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + trial % 5, cols = 1 + (trial / 5) % 5;
    Matrix M = random_matrix(rng, rows, cols);
    if (trial % 3 == 0 && rows > 1) {
      for (std::size_t j = 0; j < cols; ++j) M(rows - 1, j) = M(0, j) * Rational(2);
    }
    CHECK(rank(M) == rank(M.transpose()));
    const auto basis = kernel_basis(M);
    CHECK(basis.size() == cols - rank(M));
    for (const auto& v : basis) CHECK(is_zero(M * v));

    Vector x(cols);
    for (std::size_t j = 0; j < cols; ++j) x[j] = Rational(static_cast<long>(j) - 2, 3);
    const Vector rhs = M * x;
    auto r = solve(M, rhs);
    if (auto* sol = std::get_if<Vector>(&r)) {
      CHECK(M * *sol == rhs);
      CHECK(rank(M) == cols);
    } else {
      CHECK(std::holds_alternative<Underdetermined>(r));
      CHECK(rank(M) < cols);
    }
  }
}
