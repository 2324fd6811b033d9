#include <random>
#include <set>

#include "circuit_atlas/lp.hpp"
#include "doctest.h"

using namespace circuit_atlas;

namespace {

Vector vec(std::initializer_list<Rational> xs) { return Vector(xs); }

struct Ineq {
  Vector a;
  Rational b;  // a . x <= b
};

// Fourier-Motzkin elimination; exponential but exact and independent of the
// simplex code.
bool fourier_motzkin_feasible(std::vector<Ineq> rows, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Ineq> pos, neg, keep;
    for (auto& r : rows) {
      const int s = r.a[k].sign();
      (s > 0 ? pos : s < 0 ? neg : keep).push_back(std::move(r));
    }
    // Scaled copies add nothing; drop them to keep the blow-up in check.
    std::set<std::pair<Vector, Rational>> seen;
    auto fresh = [&](const Ineq& r) {
      Rational scale(1);
      for (const auto& x : r.a) {
        if (!x.is_zero()) {
          scale = x.abs();
          break;
        }
      }
      return seen.insert({(Rational(1) / scale) * r.a, r.b / scale}).second;
    };
    std::vector<Ineq> kept;
    for (auto& r : keep) {
      if (is_zero(r.a) || fresh(r)) kept.push_back(std::move(r));
    }
    keep = std::move(kept);
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        const Rational lp = Rational(-1) * q.a[k];
        const Rational lq = p.a[k];
        Ineq c{lp * p.a + lq * q.a, lp * p.b + lq * q.b};
        if (is_zero(c.a) || fresh(c)) keep.push_back(std::move(c));
      }
    }
    rows = std::move(keep);
  }
  for (const auto& r : rows) {
    if (r.b.sign() < 0) return false;
  }
  return true;
}

std::vector<Ineq> as_inequalities(const LinearSystem& sys) {
  std::vector<Ineq> out;
  for (std::size_t i = 0; i < sys.eq.rows(); ++i) {
    out.push_back({sys.eq.row(i), sys.eq_rhs[i]});
    out.push_back({Rational(-1) * sys.eq.row(i), -sys.eq_rhs[i]});
  }
  for (std::size_t i = 0; i < sys.le.rows(); ++i) out.push_back({sys.le.row(i), sys.le_rhs[i]});
  for (std::size_t j = 0; j < sys.num_vars; ++j) {
    if (sys.nonneg[j]) out.push_back({Rational(-1) * unit_vector(sys.num_vars, j), Rational(0)});
  }
  return out;
}

LinearSystem random_system(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> nv(1, 4), ne(0, 2), nl(1, 5), coef(-3, 3), rhs(-4, 6);
  std::bernoulli_distribution coin(0.5);
  const std::size_t n = static_cast<std::size_t>(nv(rng));
  LinearSystem sys(n, false);
  for (std::size_t j = 0; j < n; ++j) sys.nonneg[j] = coin(rng);
  auto row = [&] {
    Vector r(n);
    for (auto& x : r) x = coef(rng);
    return r;
  };
  for (long i = ne(rng); i > 0; --i) sys.add_eq(row(), rhs(rng));
  for (long i = nl(rng); i > 0; --i) sys.add_le(row(), rhs(rng));
  return sys;
}

}  // namespace

TEST_CASE("feasibility basics") {
  LinearSystem box(1);
  box.add_le(vec({1}), 1);
  CHECK(feasible(box).status == LpStatus::feasible);

  LinearSystem empty(1, false);
  empty.add_le(vec({-1}), -1);
  empty.add_le(vec({1}), 0);
  CHECK(feasible(empty).status == LpStatus::infeasible);
}

TEST_CASE("feasibility of the three-step walk in the 4D polytope") {
  // alpha1 e1 + alpha2 (-1,1,1,1) + alpha3 e1 = (1,1,1,1); intermediate points
  // stay in 0 <= x <= (3/2,1,1,1), x1 + x_j <= 2.
  const std::vector<Vector> g = {vec({1, 0, 0, 0}), vec({-1, 1, 1, 1}), vec({1, 0, 0, 0})};
  LinearSystem sys(3);
  for (std::size_t r = 0; r < 4; ++r) sys.add_eq(vec({g[0][r], g[1][r], g[2][r]}), 1);
  const std::vector<Vector> B = {vec({1, 0, 0, 0}), vec({0, 1, 0, 0}), vec({0, 0, 1, 0}), vec({0, 0, 0, 1}),
                                 vec({-1, 0, 0, 0}), vec({0, -1, 0, 0}), vec({0, 0, -1, 0}), vec({0, 0, 0, -1}),
                                 vec({1, 1, 0, 0}), vec({1, 0, 1, 0}), vec({1, 0, 0, 1})};
  const Vector d = vec({Rational(3, 2), 1, 1, 1, 0, 0, 0, 0, 2, 2, 2});
  for (std::size_t i = 1; i < 3; ++i) {
    for (std::size_t r = 0; r < B.size(); ++r) {
      Vector row = zeros(3);
      for (std::size_t j = 0; j < i; ++j) row[j] = dot(B[r], g[j]);
      sys.add_le(row, d[r]);
    }
  }
  const auto out = feasible(sys);
  REQUIRE(out.status == LpStatus::feasible);
  CHECK(sys.satisfied_by(out.witness));
  CHECK(sys.satisfied_by(vec({1, 1, 1})));
  const auto pos = strictly_positive_solution(sys, {0, 1, 2});
  REQUIRE(pos);
  CHECK(sys.satisfied_by(*pos));
  for (const auto& a : *pos) CHECK(a.sign() > 0);
  // The first step must reach x1 >= 1 before (-1,1,1,1) applies.
  LinearSystem short_first = sys;
  short_first.add_le(vec({1, 0, 0}), Rational(99, 100));
  CHECK(feasible(short_first).status == LpStatus::infeasible);
}

TEST_CASE("maximize") {
  LinearSystem box(1);
  box.add_le(vec({1}), 1);
  auto out = maximize(box, vec({1}));
  REQUIRE(out.status == LpStatus::feasible);
  CHECK(*out.optimum == Rational(1));

  LinearSystem ray(1);
  out = maximize(ray, vec({1}));
  CHECK(out.status == LpStatus::unbounded);
  CHECK(out.ray[0].sign() > 0);

  // Ratio test from (2,-2) along (0,1) through the rows of the small polygon
  // 0 <= x1, 0 <= x1 + x2 <= 6, -1 <= x1 - x2 <= 4, -3 <= x1 - 2 x2.
  LinearSystem step(1);
  const std::vector<std::pair<Vector, Rational>> rows = {
      {vec({-1, 0}), 0}, {vec({-1, -1}), 0}, {vec({1, 1}), 6}, {vec({-1, 1}), 1}, {vec({1, -1}), 4}, {vec({-1, 2}), 3}};
  const Vector y = vec({2, -2}), g = vec({0, 1});
  for (const auto& [a, b] : rows) step.add_le(vec({dot(a, g)}), b - dot(a, y));
  out = maximize(step, vec({1}));
  REQUIRE(out.status == LpStatus::feasible);
  CHECK(*out.optimum == Rational(9, 2));
  CHECK(y[1] + *out.optimum == Rational(5, 2));
}

TEST_CASE("free variables and equalities") {
  LinearSystem sys(2, false);
  sys.add_eq(vec({1, 1}), -3);
  sys.add_le(vec({1, -1}), 1);
  const auto out = maximize(sys, vec({1, 0}));
  REQUIRE(out.status == LpStatus::feasible);
  CHECK(*out.optimum == Rational(-1));
  CHECK(sys.satisfied_by(out.witness));
}

TEST_CASE("strictly positive solutions") {
  LinearSystem sum(2);
  sum.add_eq(vec({1, 1}), 1);
  const auto w = strictly_positive_solution(sum, {0, 1});
  REQUIRE(w);
  CHECK(sum.satisfied_by(*w));
  CHECK((*w)[0].sign() > 0);
  CHECK((*w)[1].sign() > 0);

  LinearSystem zero(1);
  zero.add_eq(vec({1}), 0);
  CHECK_FALSE(strictly_positive_solution(zero, {0}));

  // Unbounded directions are still fine: x1 - x2 = 0 with x free above.
  LinearSystem open(2);
  open.add_eq(vec({1, -1}), 0);
  const auto o = strictly_positive_solution(open, {0, 1});
  REQUIRE(o);
  CHECK((*o)[0].sign() > 0);
}

TEST_CASE("simplex agrees with Fourier-Motzkin on random systems") {
  std::mt19937_64 rng(99);
  int feasible_count = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const LinearSystem sys = random_system(rng);
    const bool oracle = fourier_motzkin_feasible(as_inequalities(sys), sys.num_vars);
    const auto out = feasible(sys);
    CHECK((out.status == LpStatus::feasible) == oracle);
    if (out.status == LpStatus::feasible) {
      ++feasible_count;
      CHECK(sys.satisfied_by(out.witness));
      Vector obj(sys.num_vars);
      for (std::size_t j = 0; j < sys.num_vars; ++j) obj[j] = Rational(static_cast<long>(j % 3) - 1);
      const auto best = maximize(sys, obj);
      CHECK(sys.satisfied_by(best.witness));
      if (best.status == LpStatus::feasible) {
        // No feasible point beats the optimum.
        auto rows = as_inequalities(sys);
        rows.push_back({Rational(-1) * obj, -(*best.optimum) - Rational(1, 100000000)});
        CHECK_FALSE(fourier_motzkin_feasible(rows, sys.num_vars));
      } else {
        CHECK(dot(obj, best.ray).sign() > 0);
        CHECK(sys.satisfied_by(best.witness + Rational(5) * best.ray));
      }
    }
    if (auto pos = strictly_positive_solution(sys, {0})) {
      CHECK(sys.satisfied_by(*pos));
      CHECK((*pos)[0].sign() > 0);
    } else if (out.status == LpStatus::feasible) {
      auto rows = as_inequalities(sys);
      rows.push_back({Rational(-1) * unit_vector(sys.num_vars, 0), Rational(-1, 1000000)});
      CHECK_FALSE(fourier_motzkin_feasible(rows, sys.num_vars));
    }
  }
  CHECK(feasible_count > 50);
}
