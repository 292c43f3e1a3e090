#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dforms/polyhedron.hpp"
#include "dforms/superform.hpp"

namespace dforms {

struct AffineFunction {
  RatVec linear;
  Rational constant;

  Rational operator()(std::span<const Rational> x) const { return dot(linear, x) + constant; }
  Polynomial polynomial() const { return Polynomial::affine(linear, constant); }
  friend bool operator==(const AffineFunction&, const AffineFunction&) = default;
};

/// Continuous function that is affine on each maximal cell of a complex.
class PLFunction {
 public:
  PLFunction() = default;
  /// One affine function per maximal cell; continuity is verified on
  /// pairwise intersections at chart points.
  PLFunction(std::size_t n, std::vector<Polyhedron> cells, std::vector<AffineFunction> pieces);
  static PLFunction affine(const AffineFunction& f);
  /// max of affine functions on the whole space.
  static PLFunction max_of(std::size_t n, const std::vector<AffineFunction>& fs);

  std::size_t ambient() const { return n_; }
  const std::vector<Polyhedron>& cells() const { return cells_; }
  const std::vector<AffineFunction>& pieces() const { return pieces_; }
  Complex complex() const { return Complex(n_, cells_); }

  /// The affine function of some maximal cell containing `cell`.
  std::optional<AffineFunction> piece_on(const Polyhedron& cell) const;
  Rational operator()(std::span<const Rational> x) const;
  /// Hyperplanes spanned by facets of the maximal cells, normalized and deduplicated.
  std::vector<Inequality> breaking_hyperplanes() const;

 private:
  std::size_t n_ = 0;
  std::vector<Polyhedron> cells_;
  std::vector<AffineFunction> pieces_;
};

/// Cellwise polynomial forms (ambient coordinates) on the maximal cells of
/// a complex that agree after restriction to shared faces.
class PiecewiseForm {
 public:
  PiecewiseForm() = default;
  PiecewiseForm(std::size_t n, std::vector<Polyhedron> cells, std::vector<SuperForm> forms);
  static PiecewiseForm global(const SuperForm& a);
  static PiecewiseForm from_pl(const PLFunction& f);

  std::size_t ambient() const { return n_; }
  const std::vector<Polyhedron>& cells() const { return cells_; }
  const std::vector<SuperForm>& forms() const { return forms_; }
  /// Form of some maximal cell containing `cell`.
  std::optional<SuperForm> form_on(const Polyhedron& cell) const;

  /// Description of the first shared face where restrictions disagree.
  std::optional<std::string> compatibility_failure() const;

 private:
  std::size_t n_ = 0;
  std::vector<Polyhedron> cells_;
  std::vector<SuperForm> forms_;
};

/// First shared face (of maximal cells) where the given cellwise forms
/// restrict differently, with the two restrictions.
struct CompatibilityWitness {
  Polyhedron face;
  std::size_t first, second;  // indices of the disagreeing cells
  SuperForm restriction_first, restriction_second;
};
std::optional<CompatibilityWitness> find_incompatibility(const std::vector<Polyhedron>& cells,
                                                         const std::vector<SuperForm>& forms);

}  // namespace dforms
