#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dforms/linalg.hpp"
#include "dforms/polynomial.hpp"

namespace dforms {

/// Bitmask of coordinate indices.
using IndexMask = std::uint32_t;

/// Affine map x -> matrix * x + offset from Q^n to Q^m.
struct AffineMap {
  RatMatrix matrix;  // m x n
  RatVec offset;     // m

  std::size_t source_dim() const { return matrix.cols(); }
  std::size_t target_dim() const { return matrix.rows(); }
  RatVec operator()(std::span<const Rational> x) const;
  static AffineMap identity(std::size_t n);
  /// this ∘ g
  AffineMap compose(const AffineMap& g) const;
};

/// Polynomial superform sum_{I,J} phi_{I,J} d'x_I ∧ d''x_J on Q^n, stored in
/// the normal order: all d'-factors ascending, then all d''-factors ascending.
class SuperForm {
 public:
  using Key = std::pair<IndexMask, IndexMask>;

  SuperForm() = default;
  explicit SuperForm(std::size_t nvars);
  static SuperForm function(const Polynomial& p);
  static SuperForm constant(std::size_t nvars, const Rational& c);
  /// phi d'x_I ∧ d''x_J with I, J given as index lists in any order; the
  /// sign of sorting them is applied.
  static SuperForm term(const Polynomial& phi, const std::vector<std::size_t>& I, const std::vector<std::size_t>& J);
  static SuperForm dprime_coordinate(std::size_t nvars, std::size_t i);
  static SuperForm dsecond_coordinate(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return nvars_; }
  const std::map<Key, Polynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Polynomial coefficient(IndexMask I, IndexMask J) const;
  void add_term(IndexMask I, IndexMask J, const Polynomial& phi);

  /// Bidegrees present, sorted.
  std::vector<std::pair<int, int>> bidegrees() const;
  /// Part of bidegree (p, q).
  SuperForm component(int p, int q) const;
  /// Single bidegree (p, q) or throws when not homogeneous; zero gives (0, 0).
  std::pair<int, int> bidegree() const;

  SuperForm operator-() const;
  SuperForm& operator+=(const SuperForm& o);
  SuperForm& operator-=(const SuperForm& o);
  SuperForm& operator*=(const Rational& s);
  friend SuperForm operator+(SuperForm a, const SuperForm& b) { return a += b; }
  friend SuperForm operator-(SuperForm a, const SuperForm& b) { return a -= b; }
  friend SuperForm operator*(SuperForm a, const Rational& s) { return a *= s; }
  friend SuperForm operator*(const Rational& s, SuperForm a) { return a *= s; }
  friend bool operator==(const SuperForm&, const SuperForm&) = default;

  SuperForm times(const Polynomial& p) const;

  std::string to_string() const;

 private:
  std::size_t nvars_ = 0;
  std::map<Key, Polynomial> terms_;
};

SuperForm wedge(const SuperForm& a, const SuperForm& b);
SuperForm dprime(const SuperForm& a);
SuperForm dsecond(const SuperForm& a);

enum class Slot { prime, second };
/// Interior product with v' (Slot::prime) or v'' (Slot::second), inserted in
/// the first argument.
SuperForm contract(const SuperForm& a, const RatVec& v, Slot slot);

/// f^* a for a form a on the target of f.
SuperForm pullback_affine(const AffineMap& f, const SuperForm& a);

/// Same form on Q^total with variable i renamed to i + offset.
SuperForm embed(const SuperForm& a, std::size_t total, std::size_t offset);

}  // namespace dforms
