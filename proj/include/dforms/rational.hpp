#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dforms {

/// Exact rational scalar. GMP keeps the value canonical (gcd 1, positive
/// denominator) after every operation.
using Rational = mpq_class;
using Integer = mpz_class;

using RatVec = std::vector<Rational>;
using IntVec = std::vector<Integer>;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed
/// text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Always "p/q" with q > 0, also for integers ("3/1").
std::string format_rational(const Rational& r);

inline int sign(const Rational& r) { return sgn(r); }

/// Element of the ordered ring Q[eps] where eps is a positive infinitesimal.
/// Stored as coefficients by ascending eps-degree with no trailing zeros.
class EpsRational {
 public:
  EpsRational() = default;
  EpsRational(const Rational& c);  // NOLINT(google-explicit-constructor)
  EpsRational(long c) : EpsRational(Rational(c)) {}  // NOLINT
  explicit EpsRational(std::vector<Rational> coeffs);

  /// The infinitesimal itself.
  static EpsRational eps();

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Sign of the lowest-degree nonzero coefficient.
  int sign() const;
  Rational coeff(std::size_t k) const;
  /// Value after substituting a rational for eps.
  Rational evaluate(const Rational& at) const;

  EpsRational operator-() const;
  EpsRational& operator+=(const EpsRational& o);
  EpsRational& operator-=(const EpsRational& o);
  EpsRational& operator*=(const EpsRational& o);
  EpsRational& operator*=(const Rational& s);
  EpsRational& operator/=(const Rational& s);

  friend EpsRational operator+(EpsRational a, const EpsRational& b) { return a += b; }
  friend EpsRational operator-(EpsRational a, const EpsRational& b) { return a -= b; }
  friend EpsRational operator*(EpsRational a, const EpsRational& b) { return a *= b; }
  friend EpsRational operator*(EpsRational a, const Rational& s) { return a *= s; }
  friend EpsRational operator/(EpsRational a, const Rational& s) { return a /= s; }

  friend bool operator==(const EpsRational& a, const EpsRational& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend std::strong_ordering operator<=>(const EpsRational& a, const EpsRational& b);

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

inline int sign(const EpsRational& e) { return e.sign(); }

std::ostream& operator<<(std::ostream& os, const EpsRational& e);

Integer gcd_of(const IntVec& v);
Integer lcm_of_denominators(const RatVec& v);

}  // namespace dforms
