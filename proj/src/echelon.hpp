#pragma once

// Incremental fraction-free row echelon form over integers, used to test
// linear span membership of small integer vectors quickly.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "circuit_atlas/rational.hpp"

namespace circuit_atlas::detail {

struct EchelonOverflow : std::runtime_error {
  EchelonOverflow() : std::runtime_error("integer echelon overflow") {}
};

inline __int128 gcd_abs(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct Int128Ops {
  using Int = __int128;
  static constexpr __int128 kLimit = static_cast<__int128>(1) << 62;
  static Int gcd(const Int& a, const Int& b) { return gcd_abs(a, b); }
  static void check(const Int& x) {
    if (x > kLimit || x < -kLimit) throw EchelonOverflow();
  }
  static Int div(const Int& a, const Int& b) { return a / b; }
  static bool zero(const Int& x) { return x == 0; }
  // Entries must stay well inside 64 bits so that products fit.
  static bool from(const Rational& r, Int& out) {
    if (!r.is_integer() || !r.value().get_num().fits_slong_p()) return false;
    const long v = r.value().get_num().get_si();
    if (v > (1L << 40) || v < -(1L << 40)) return false;
    out = v;
    return true;
  }
};

struct MpzOps {
  using Int = mpz_class;
  static Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }
  static void check(const Int&) {}
  static Int div(const Int& a, const Int& b) { return a / b; }
  static bool zero(const Int& x) { return sgn(x) == 0; }
  static bool from(const Rational& r, Int& out) {
    if (!r.is_integer()) return false;
    out = r.value().get_num();
    return true;
  }
};

template <typename Ops>
class Echelon {
 public:
  using Int = typename Ops::Int;
  using Row = std::vector<Int>;

  explicit Echelon(std::size_t n) : n_(n) {}

  std::size_t rank() const { return rows_.size(); }

  /// Adds v; returns false (and leaves the form unchanged) if v is already in
  /// the span.
  bool add(const Row& v) {
    Row r = reduce(v);
    std::size_t p = 0;
    while (p < n_ && Ops::zero(r[p])) ++p;
    if (p == n_) return false;
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

  bool contains(const Row& v) const {
    const Row r = reduce(v);
    for (const auto& x : r) {
      if (!Ops::zero(x)) return false;
    }
    return true;
  }

  static bool convert(const Vector& v, Row& out) {
    out.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!Ops::from(v[i], out[i])) return false;
    }
    return true;
  }

 private:
  Row reduce(Row v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t p = pivots_[k];
      if (Ops::zero(v[p])) continue;
      const Row& r = rows_[k];
      const Int a = r[p];
      const Int b = v[p];
      Int g = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        v[j] = v[j] * a - r[j] * b;
        Ops::check(v[j]);
        g = Ops::gcd(g, v[j]);
      }
      if (!Ops::zero(g)) {
        for (auto& x : v) x = Ops::div(x, g);
      }
    }
    return v;
  }

  std::size_t n_;
  std::vector<Row> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace circuit_atlas::detail
