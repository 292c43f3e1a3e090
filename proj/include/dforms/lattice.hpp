#pragma once

#include <vector>

#include "dforms/linalg.hpp"

namespace dforms {

/// Result of reducing integer rows by unimodular row operations.
struct HermiteForm {
  std::vector<IntVec> rows;        // nonzero rows in Hermite normal form
  std::vector<std::size_t> pivots; // pivot column of each row, strictly increasing
};

/// Row-style Hermite normal form: positive pivots, entries above a pivot
/// reduced into [0, pivot). Unique for the lattice spanned by the input.
/// When `transform` is non-null it receives the unimodular U with U*input = [H; 0].
HermiteForm hermite_normal_form(const std::vector<IntVec>& rows, std::size_t cols,
                                std::vector<IntVec>* transform = nullptr);

/// A lattice in Z^n given by a basis in canonical Hermite form.
class Lattice {
 public:
  Lattice() = default;
  /// The zero lattice of Z^n.
  explicit Lattice(std::size_t ambient) : ambient_(ambient) {}

  /// Lattice generated by integer vectors (need not be independent).
  static Lattice generated_by(const std::vector<IntVec>& gens, std::size_t ambient);
  /// span_Q(gens) ∩ Z^n for arbitrary rational generators; zero vectors allowed.
  static Lattice saturation_of_span(const std::vector<RatVec>& gens, std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<IntVec>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  /// Basis vectors as rational vectors.
  std::vector<RatVec> rational_basis() const;
  bool is_saturated() const;
  bool contains(std::span<const Rational> v) const;

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<IntVec> basis_;
  std::vector<std::size_t> pivots_;
};

struct SaturationResult {
  Lattice lattice;  // the saturated lattice span(vectors) ∩ Z^n
  Integer index;    // [saturation : lattice generated by the input]
};

/// Throws std::invalid_argument when the input is empty or all-zero.
SaturationResult saturate(const std::vector<IntVec>& vectors, std::size_t ambient);

/// covolume(sub) / covolume(sup) for lattices spanning the same subspace.
/// Throws std::invalid_argument on span mismatch.
Rational lattice_index(const Lattice& sub, const Lattice& sup);

/// Same ratio for rational generating sets of full-rank lattices in a common
/// subspace: covol(<a>) / covol(<b>), where <.> is the Z-span.
Rational covolume_ratio(const std::vector<RatVec>& a, const std::vector<RatVec>& b, std::size_t ambient);

/// Coordinates of x (lying in the span) with respect to a Hermite basis.
RatVec hermite_coordinates(const Lattice& lat, std::span<const Rational> x);

/// Coordinates of the unit vectors e_j, j not a pivot of the basis; together
/// with the basis they span Q^n.
std::vector<std::size_t> complement_coordinates(const Lattice& lat);

/// Integer vector m with w·m = 1 for a primitive integer vector w.
IntVec unimodular_partner(const IntVec& w);

IntVec to_integer_vector(std::span<const Rational> v);
RatVec to_rational_vector(const IntVec& v);

}  // namespace dforms

namespace dforms {

/// e_1, ..., e_n as rational vectors.
std::vector<RatVec> unit_vectors(std::size_t n);
/// Primitive integer basis of the orthogonal complement of the span.
std::vector<RatVec> orthogonal_complement(const Lattice& lat);
/// Saturated lattice spanned by possibly empty rational vectors.
Lattice span_lattice(const std::vector<RatVec>& gens, std::size_t ambient);

}  // namespace dforms
