#include <bit>

#include "dforms/delta_form.hpp"
#include "dforms/refine.hpp"

namespace dforms {

namespace {

// Components of v along e_{c_k} in the splitting Q^n = N ⊕ span(e_c).
RatVec complement_components(const Lattice& lat, const RatVec& v, const std::vector<std::size_t>& comp) {
  const std::size_t n = lat.ambient(), d = lat.rank();
  std::vector<RatVec> cols = lat.rational_basis();
  for (auto c : comp) {
    RatVec e(n);
    e[c] = 1;
    cols.push_back(e);
  }
  auto x = solve(RatMatrix::from_columns(cols, n), v);
  if (!x) throw std::logic_error("complement_components: splitting is not a basis");
  return RatVec(x->begin() + static_cast<long>(d), x->end());
}

// Contribution of one incidence sigma ⊃ tau to the boundary coefficient,
// in the chart of tau (shared by every piece of its affine hull). In chart
// coordinates (s, t) of sigma adapted to tau, with t the coordinate that is
// 1 on the lattice normal, this is the d''t- (first) or d't-part (second)
// of the coefficient restricted to t = 0.
SuperForm boundary_coefficient(const Term& term, const Polyhedron& tau, Boundary which) {
  const Polyhedron& sigma = term.cell;
  const std::size_t d = sigma.dim();
  AffineMap tr = chart_transition(tau, sigma);
  // The transverse direction is the part of the normal along the canonical
  // complement of N_tau, so every sigma ⊃ tau projects onto tau the same way.
  RatVec n0 = normal_vector({tau, Rational(1)}, {sigma, Rational(1)});
  const auto comp = complement_coordinates(tau.lattice());
  const RatVec b = complement_components(tau.lattice(), n0, comp);
  RatVec transverse(n0.size());
  for (std::size_t k = 0; k < comp.size(); ++k) transverse[comp[k]] = b[k];
  RatVec m = sigma.chart().vector_to_chart(transverse);
  RatMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k + 1 < d; ++k) g(i, k) = tr.matrix(i, k);
    g(i, d - 1) = m[i];
  }
  SuperForm adapted = pullback_affine({g, tr.offset}, term.form);
  const IndexMask tb = IndexMask(1) << (d - 1);
  std::vector<Polynomial> at_zero;
  for (std::size_t k = 0; k + 1 < d; ++k) at_zero.push_back(Polynomial::variable(d - 1, k));
  at_zero.push_back(Polynomial(d - 1));
  SuperForm out(d - 1);
  for (const auto& [key, phi] : adapted.terms()) {
    const auto [I, J] = key;
    Polynomial c = phi.substitute(at_zero);
    if (which == Boundary::first) {
      if (!(J & tb) || (I & tb)) continue;
      // phi d's_I d''s_J' d''t = (-1)^{|I|+|J'|} d''t ∧ phi d's_I d''s_J'
      if ((std::popcount(I) + std::popcount(J) - 1) % 2) c = -c;
      out.add_term(I, J & ~tb, -c);
    } else {
      if (!(I & tb) || (J & tb)) continue;
      if ((std::popcount(I) - 1) % 2) c = -c;
      out.add_term(I & ~tb, J, c);
    }
  }
  return out * term.weight;
}

DeltaForm boundary(const DeltaForm& t, Boundary which, const char* name) {
  DeltaForm c = t.canonical();
  require_balanced(c, name);
  std::vector<Term> out;
  for (const auto& piece : boundary_pieces(c.terms())) {
    SuperForm beta(piece.rho.dim());
    for (const auto& inc : piece.incidences)
      beta += boundary_coefficient(c.terms()[inc.term], inc.tau, which);
    if (!beta.is_zero()) out.push_back({piece.rho, Rational(1), beta});
  }
  return DeltaForm(t.ambient(), std::move(out)).canonical();
}

DeltaForm apply_termwise(const DeltaForm& t, SuperForm (*op)(const SuperForm&)) {
  std::vector<Term> out;
  for (const auto& term : t.terms()) out.push_back({term.cell, term.weight, op(term.form)});
  return DeltaForm(t.ambient(), std::move(out)).canonical();
}

}  // namespace

BalanceReport is_balanced(const DeltaForm& t) {
  DeltaForm c = t.canonical();
  BalanceReport rep;
  for (const auto& piece : boundary_pieces(c.terms())) {
    ++rep.checked;
    const Polyhedron& rho = piece.rho;
    const auto comp = complement_coordinates(rho.lattice());
    std::vector<SuperForm> residue(t.ambient(), SuperForm(rho.dim()));
    std::vector<SuperForm> projected(comp.size(), SuperForm(rho.dim()));
    for (const auto& inc : piece.incidences) {
      const Term& term = c.terms()[inc.term];
      RatVec nv = normal_vector({inc.tau, Rational(1)}, {term.cell, term.weight});
      SuperForm a = restrict_chart(term.form, term.cell, rho);
      for (std::size_t j = 0; j < nv.size(); ++j) residue[j] += a * nv[j];
      RatVec b = complement_components(rho.lattice(), nv, comp);
      for (std::size_t k = 0; k < comp.size(); ++k) projected[k] += a * b[k];
    }
    BalanceFailure f{rho, residue, {}};
    for (std::size_t k = 0; k < comp.size(); ++k)
      if (!projected[k].is_zero()) f.projected.emplace_back(comp[k], projected[k]);
    if (!f.projected.empty()) {
      rep.balanced = false;
      rep.failures.push_back(std::move(f));
    }
  }
  return rep;
}

void require_balanced(const DeltaForm& t, const std::string& operation) {
  BalanceReport rep = is_balanced(t);
  if (rep.balanced) return;
  std::vector<Polyhedron> cells;
  for (const auto& f : rep.failures) cells.push_back(f.tau);
  throw PreconditionError("unbalanced", operation + ": input is not balanced", cells, rep);
}

DeltaForm dP_prime(const DeltaForm& t) { return apply_termwise(t, &dprime); }
DeltaForm dP_second(const DeltaForm& t) { return apply_termwise(t, &dsecond); }
DeltaForm boundary_prime(const DeltaForm& t) { return boundary(t, Boundary::first, "boundary_prime"); }
DeltaForm boundary_second(const DeltaForm& t) { return boundary(t, Boundary::second, "boundary_second"); }
DeltaForm d_prime(const DeltaForm& t) { return dP_prime(t) - boundary_prime(t); }
DeltaForm d_second(const DeltaForm& t) { return dP_second(t) - boundary_second(t); }

}  // namespace dforms
