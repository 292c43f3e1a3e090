#pragma once

#include <vector>

#include "dforms/polyhedron.hpp"
#include "dforms/superform.hpp"

namespace dforms {

/// u -> base + B u for the chart of a polyhedron.
AffineMap chart_map(const Chart& chart);

/// Pull-back of an ambient form to chart coordinates of the cell.
SuperForm restrict(const SuperForm& a, const Polyhedron& cell);

/// Chart coordinates of tau expressed in the chart of sigma ⊇ tau: the affine
/// map v -> u with chart_sigma(u) = chart_tau(v).
AffineMap chart_transition(const Polyhedron& tau, const Polyhedron& sigma);

/// Restriction of a form given in sigma's chart to tau's chart.
SuperForm restrict_chart(const SuperForm& a_sigma, const Polyhedron& sigma, const Polyhedron& tau);

/// Lexicographic pulling triangulation of a bounded full-dimensional
/// polytope; each simplex is its list of vertices.
std::vector<std::vector<RatVec>> triangulate(const Polyhedron& polytope);

/// Exact integral of a polynomial over a bounded full-dimensional polytope
/// in Q^d with respect to Lebesgue measure.
Rational integrate_polynomial(const Polynomial& f, const Polyhedron& polytope);

/// Integral of a (d, d)-form given in the cell's chart coordinates over the
/// weighted cell of dimension d.
Rational integrate_chart_form(const SuperForm& eta_chart, const WeightedCell& cell);

/// Integral of an ambient (d, d)-form over a bounded weighted cell of dimension d.
Rational integrate_top(const SuperForm& eta, const WeightedCell& cell);

/// first: -sum over facets of the integral of (alpha, n'')|tau, the partner
/// of d'. second: +sum of (alpha, n')|tau, the partner of d''.
enum class Boundary { first, second };
Rational boundary_integral(const SuperForm& alpha, const WeightedCell& cell, Boundary which);

struct StokesResult {
  Rational lhs, rhs;
  bool equal = false;
};
StokesResult stokes_check(const SuperForm& alpha, const WeightedCell& cell, Boundary which);

}  // namespace dforms
