#pragma once

#include <stdexcept>

#include "delta_fixtures.hpp"
#include "dforms/refine.hpp"

namespace fixture {

enum class Side { prime, second };

/// (dT)(eta) = (-1)^{deg T + 1} T(d eta) against bump-weighted random eta on [-1,1]^n.
inline bool duality_holds(const DeltaForm& t, Side side, int trials = 2) {
  const std::size_t n = t.ambient();
  auto td = t.tridegree();
  if (!td) return true;
  const auto [p, q, r] = *td;
  const int ep = static_cast<int>(n) - p - r - (side == Side::prime ? 1 : 0);
  const int eq = static_cast<int>(n) - q - r - (side == Side::second ? 1 : 0);
  const DeltaForm dt = side == Side::prime ? d_prime(t) : d_second(t);
  if (ep < 0 || eq < 0) return dt.empty();
  const Polyhedron window = box(n, -1, 1);
  for (int k = 0; k < trials; ++k) {
    SuperForm eta = oracle::random_form(n, ep, eq, 2, 2).times(bump(n));
    SuperForm deta = side == Side::prime ? dprime(eta) : dsecond(eta);
    Rational lhs = eval_pairing(dt, eta, window);
    Rational rhs = eval_pairing(t, deta, window);
    if ((p + q) % 2 == 0) rhs = -rhs;
    if (lhs != rhs) return false;
  }
  return true;
}

/// Boundary coefficient from the balancing residue and second-slot contractions:
/// beta = sum_i (beta_i, v_i'') - sum_sigma (alpha_sigma, n''_sigma)|_tau,
/// where sum_i beta_i ⊗ v_i is the N_tau-part of the residue.
inline DeltaForm boundary_prime_by_contraction(const DeltaForm& t) {
  const DeltaForm c = t.canonical();
  std::vector<Term> out;
  for (const auto& piece : boundary_pieces(c.terms())) {
    const Polyhedron& rho = piece.rho;
    const std::size_t n = t.ambient();
    std::vector<RatVec> cols = rho.lattice().rational_basis();
    for (auto k : complement_coordinates(rho.lattice())) {
      RatVec e(n);
      e[k] = 1;
      cols.push_back(e);
    }
    SuperForm beta(rho.dim());
    for (const auto& inc : piece.incidences) {
      const Term& term = c.terms()[inc.term];
      const RatVec nv = normal_vector({inc.tau, Rational(1)}, {term.cell, term.weight});
      auto coords = solve(RatMatrix::from_columns(cols, n), nv);
      if (!coords) throw std::logic_error("complement splitting is not a basis");
      RatVec along(rho.dim());
      for (std::size_t k = 0; k < rho.dim(); ++k) along[k] = (*coords)[k];
      const SuperForm a_tau = restrict_chart(term.form, term.cell, rho);
      beta += contract(a_tau, along, Slot::second);
      beta -= restrict_chart(contract(term.form, term.cell.chart().vector_to_chart(nv), Slot::second), term.cell, rho);
    }
    if (!beta.is_zero()) out.push_back({rho, Rational(1), beta});
  }
  return DeltaForm(t.ambient(), std::move(out));
}

}  // namespace fixture
