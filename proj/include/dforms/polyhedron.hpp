#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dforms/lattice.hpp"

namespace dforms {

/// Half-space a·x <= b.
struct Inequality {
  RatVec a;
  Rational b;
  friend bool operator==(const Inequality&, const Inequality&) = default;
};

/// Affine parametrization x = base + sum_k u_k basis[k] of the affine hull,
/// with basis the Hermite basis of the saturated lattice N ∩ Z^n.
struct Chart {
  RatVec base;
  Lattice lattice;

  std::size_t dim() const { return lattice.rank(); }
  std::vector<RatVec> basis() const { return lattice.rational_basis(); }
  RatVec to_ambient(std::span<const Rational> u) const;
  /// Chart coordinates of a point of the affine hull.
  RatVec to_chart(std::span<const Rational> x) const;
  /// Chart coordinates of a vector of the linear span.
  RatVec vector_to_chart(std::span<const Rational> v) const;
};

/// Nonempty rational polyhedron kept in a canonical H-representation:
/// equalities in reduced row echelon form, followed by the irredundant
/// inequalities reduced modulo the equalities (zero in pivot columns),
/// scaled to primitive integer normals and sorted lexicographically.
/// Copies share the immutable representation.
class Polyhedron {
 public:
  /// Canonicalizes {A x <= b, E x = e}; nullopt when empty.
  static std::optional<Polyhedron> make(std::size_t n, const std::vector<Inequality>& ineqs,
                                        const std::vector<Inequality>& eqs = {});
  /// As make, throwing std::invalid_argument on an empty system.
  static Polyhedron nonempty(std::size_t n, const std::vector<Inequality>& ineqs,
                             const std::vector<Inequality>& eqs = {});
  static Polyhedron whole_space(std::size_t n);
  static Polyhedron point(const RatVec& p);
  /// Convex hull of points plus the cone spanned by rays.
  static Polyhedron hull(std::size_t n, const std::vector<RatVec>& points, const std::vector<RatVec>& rays = {});

  std::size_t ambient() const { return d_->n; }
  std::size_t dim() const { return d_->dim; }
  std::size_t codim() const { return d_->n - d_->dim; }
  const std::vector<Inequality>& inequalities() const { return d_->ineqs; }
  const std::vector<Inequality>& equalities() const { return d_->eqs; }
  const Chart& chart() const { return d_->chart; }
  const Lattice& lattice() const { return d_->chart.lattice; }
  const std::string& key() const { return d_->key; }

  bool contains(std::span<const Rational> x) const;
  bool contains(const Polyhedron& other) const;
  bool is_bounded() const;
  /// A point in the relative interior.
  RatVec relative_interior_point() const;
  /// Affine hull as a polyhedron.
  Polyhedron affine_hull() const;
  /// Recession cone {x : A x <= 0, E x = 0}.
  Polyhedron recession_cone() const;

  std::vector<Polyhedron> facets() const;
  /// All nonempty faces including the polyhedron itself, each once, sorted
  /// by dimension and then canonical key.
  std::vector<Polyhedron> faces() const;
  std::vector<RatVec> vertices() const;
  bool is_face_of(const Polyhedron& sigma) const;
  /// The facet-defining inequality of this polyhedron that is tight on the facet tau.
  const Inequality& facet_inequality(const Polyhedron& tau) const;

  /// Inequalities of the polyhedron written in its chart coordinates; the
  /// chart image is full-dimensional in Q^dim.
  std::vector<Inequality> chart_inequalities() const;

  /// Image of a chart-coordinate inequality system back in ambient space.
  static Polyhedron from_chart(const Chart& chart, const std::vector<Inequality>& chart_ineqs);

  std::string to_string() const;

  friend bool operator==(const Polyhedron& a, const Polyhedron& b) { return a.key() == b.key(); }
  friend bool operator<(const Polyhedron& a, const Polyhedron& b) { return a.key() < b.key(); }

 private:
  struct Data {
    std::size_t n = 0, dim = 0;
    std::vector<Inequality> eqs, ineqs;
    Chart chart;
    std::string key;
  };
  explicit Polyhedron(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

std::optional<Polyhedron> intersect(const Polyhedron& p, const Polyhedron& q);

/// Splits p by the hyperplane a·x = b when it passes through the relative
/// interior; otherwise returns {p}.
std::vector<Polyhedron> split(const Polyhedron& p, const RatVec& a, const Rational& b);

/// Polyhedron lifted to a product: p × Q^m or Q^m × p.
Polyhedron embed_left(const Polyhedron& p, std::size_t m);
Polyhedron embed_right(std::size_t m, const Polyhedron& p);
Polyhedron product(const Polyhedron& p, const Polyhedron& q);

struct WeightedCell {
  Polyhedron cell;
  Rational weight;  // multiplier of the canonical lattice weight, > 0
};

/// Normal vector n_{sigma,tau}: lies in N_sigma, points into sigma and
/// satisfies mu_sigma = mu_tau ∧ n. Throws if tau is not a facet of sigma.
RatVec normal_vector(const WeightedCell& tau, const WeightedCell& sigma);

/// Multiplier of the weight induced on N2/N1 by the images of `vectors`
/// relative to the canonical quotient lattice. N1 ⊆ N2 required.
Rational quotient_multiplier(const Lattice& n1, const Lattice& n2, const std::vector<RatVec>& vectors);
/// mu2 = mu1 ∧ mu3 on multipliers, checking that n1 ⊆ n2.
Rational weight_wedge(const Lattice& n1, const Rational& mu1, const Lattice& n2, const Rational& mu3);
/// mu3 with mu2 = mu1 ∧ mu3.
Rational weight_quotient(const Lattice& n1, const Rational& mu1, const Lattice& n2, const Rational& mu2);

/// Lattice of N1 ∩ N2 together with the multiplier of mu1 ∩ mu2.
/// Throws unless N1 + N2 is the whole space.
std::pair<Lattice, Rational> stable_weight(const Lattice& n1, const Rational& mu1, const Lattice& n2,
                                           const Rational& mu2);

WeightedCell cell_product(const WeightedCell& a, const WeightedCell& b);

/// Finite polyhedral complex, closed under faces, sorted by (dim, key).
class Complex {
 public:
  Complex() = default;
  Complex(std::size_t n, const std::vector<Polyhedron>& maximal);

  std::size_t ambient() const { return n_; }
  const std::vector<Polyhedron>& cells() const { return cells_; }
  std::vector<Polyhedron> maximal_cells() const;
  std::vector<Polyhedron> cells_of_dim(std::size_t d) const;
  /// Pairwise intersections are common faces.
  bool is_valid() const;

 private:
  std::size_t n_ = 0;
  std::vector<Polyhedron> cells_;
};

Complex common_refinement(const Complex& a, const Complex& b);

}  // namespace dforms
