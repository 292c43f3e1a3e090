#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "dforms/rational.hpp"

namespace dforms {

using Exponent = std::vector<int>;

/// Polynomial with rational coefficients in a fixed number of variables.
/// Zero coefficients are never stored.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  /// c + sum_i a_i x_i
  static Polynomial affine(const RatVec& a, const Rational& c);
  static Polynomial monomial(const Exponent& e, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int degree() const;
  Rational constant_term() const;
  Rational coefficient(const Exponent& e) const;

  void add_term(const Exponent& e, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial derivative(std::size_t i) const;
  Rational evaluate(std::span<const Rational> x) const;
  /// Replaces variable i by subs[i]; all substitutes share one variable count.
  Polynomial substitute(const std::vector<Polynomial>& subs) const;
  /// Same polynomial in `total` variables, old variable i becoming i + offset.
  Polynomial embed(std::size_t total, std::size_t offset) const;

  std::string to_string() const;

 private:
  std::size_t nvars_ = 0;
  std::map<Exponent, Rational> terms_;
};

}  // namespace dforms
