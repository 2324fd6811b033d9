#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace circuit_atlas {

/// Exact fraction with arbitrary-precision numerator and denominator.
///
/// Values are always kept in canonical form (gcd(|p|, q) = 1, q > 0), so two
/// equal rationals have identical representations and can key hash maps.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value);

  /// Parses "p", "p/q" or "-p/q". Throws std::invalid_argument on malformed
  /// text or a zero denominator.
  static Rational parse(std::string_view text);

  /// "p" when the denominator is one, "p/q" otherwise.
  std::string str() const;

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return mpz_cmp_ui(value_.get_den_mpz_t(), 1) == 0; }
  Rational abs() const;
  const mpq_class& value() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  double to_double() const { return value_.get_d(); }
  std::size_t hash() const;

  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

using Vector = std::vector<Rational>;

Vector zeros(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
Rational dot(const Vector& a, const Vector& b);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Rational& s, const Vector& v);
bool is_zero(const Vector& v);

/// Positive multiple of `v` with coprime integer entries. The zero vector maps
/// to itself.
Vector primitive(const Vector& v);

/// If `v` = lambda * `g` for some lambda > 0, returns lambda.
std::optional<Rational> positive_multiple(const Vector& v, const Vector& g);

std::string to_string(const Vector& v);
Vector parse_vector(const std::vector<std::string>& parts);

struct VectorHash {
  std::size_t operator()(const Vector& v) const;
};

}  // namespace circuit_atlas

template <>
struct std::hash<circuit_atlas::Rational> {
  std::size_t operator()(const circuit_atlas::Rational& r) const { return r.hash(); }
};
