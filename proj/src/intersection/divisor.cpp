#include "dforms/intersection.hpp"
#include "dforms/refine.hpp"

namespace dforms {

namespace {

// a ∘ f for a·y + c.
Inequality pull_inequality(const AffineMap& f, const Inequality& h) {
  const std::size_t n = f.matrix.cols();
  RatVec row(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < f.matrix.rows(); ++i) row[j] += h.a[i] * f.matrix(i, j);
  return {row, h.b - dot(h.a, f.offset)};
}

std::optional<Polyhedron> preimage(const AffineMap& f, const Polyhedron& p) {
  std::vector<Inequality> ineqs, eqs;
  for (const auto& h : p.inequalities()) ineqs.push_back(pull_inequality(f, h));
  for (const auto& h : p.equalities()) eqs.push_back(pull_inequality(f, h));
  return Polyhedron::make(f.matrix.cols(), ineqs, eqs);
}

// Component of v in N_tau for the splitting Q^n = N_tau ⊕ span(e_c), c off the Hermite pivots.
RatVec lattice_part(const Lattice& lat, const RatVec& v) {
  const std::size_t n = lat.ambient();
  std::vector<RatVec> cols = lat.rational_basis();
  const std::size_t d = cols.size();
  for (auto c : complement_coordinates(lat)) {
    RatVec e(n);
    e[c] = 1;
    cols.push_back(e);
  }
  auto x = solve(RatMatrix::from_columns(cols, n), v);
  if (!x) throw std::logic_error("lattice_part: splitting is not a basis");
  RatVec out(n);
  for (std::size_t k = 0; k < d; ++k) out = add(out, scale(cols[k], (*x)[k]));
  return out;
}

AffineFunction piece_or_throw(const PLFunction& phi, const Polyhedron& cell) {
  auto a = phi.piece_on(cell);
  if (!a) throw PreconditionError("domain", "PL function is not defined on a cell of the support", {cell});
  return *a;
}

}  // namespace

PLFunction pullback_pl(const AffineMap& f, const PLFunction& phi) {
  if (f.matrix.rows() != phi.ambient()) throw std::invalid_argument("pullback_pl: dimension mismatch");
  const std::size_t n = f.matrix.cols();
  std::vector<Polyhedron> cells;
  std::vector<AffineFunction> pieces;
  for (std::size_t k = 0; k < phi.cells().size(); ++k) {
    auto pre = preimage(f, phi.cells()[k]);
    if (!pre || pre->dim() != n) continue;
    const auto& a = phi.pieces()[k];
    Inequality h = pull_inequality(f, {a.linear, Rational(0)});
    cells.push_back(*pre);
    pieces.push_back({h.a, a.constant - h.b});
  }
  return PLFunction(n, std::move(cells), std::move(pieces));
}

PiecewiseForm dsecond_pl(const PLFunction& phi) {
  std::vector<SuperForm> forms;
  for (const auto& a : phi.pieces()) forms.push_back(dsecond(SuperForm::function(a.polynomial())));
  return PiecewiseForm(phi.ambient(), phi.cells(), std::move(forms));
}

PiecewiseForm dprime_pl(const PLFunction& phi) {
  std::vector<SuperForm> forms;
  for (const auto& a : phi.pieces()) forms.push_back(dprime(SuperForm::function(a.polynomial())));
  return PiecewiseForm(phi.ambient(), phi.cells(), std::move(forms));
}

DeltaForm divisor_intersect(const PLFunction& phi, const DeltaForm& t) {
  if (phi.ambient() != t.ambient()) throw std::invalid_argument("divisor_intersect: dimension mismatch");
  const DeltaForm c = t.canonical();
  require_balanced(c, "divisor_intersect");
  const auto hyperplanes = phi.breaking_hyperplanes();
  std::vector<Term> refined;
  std::vector<AffineFunction> slope;
  for (const auto& term : c.terms())
    for (const auto& piece : cut_by(term.cell, hyperplanes)) {
      slope.push_back(piece_or_throw(phi, piece));
      refined.push_back({piece, term.weight, term.form});
    }
  std::vector<Term> out;
  for (const auto& bp : boundary_pieces(refined)) {
    const AffineFunction a_tau = piece_or_throw(phi, bp.rho);
    SuperForm beta(bp.rho.dim());
    for (const auto& inc : bp.incidences) {
      const Term& term = refined[inc.term];
      RatVec n = normal_vector({inc.tau, Rational(1)}, {term.cell, term.weight});
      Rational s = dot(slope[inc.term].linear, n) - dot(a_tau.linear, lattice_part(bp.rho.lattice(), n));
      if (sgn(s) == 0) continue;
      beta += restrict_chart(term.form, term.cell, bp.rho) * s;
    }
    if (!beta.is_zero()) out.push_back({bp.rho, Rational(1), beta});
  }
  return DeltaForm(t.ambient(), std::move(out)).canonical();
}

bool divisor_commutes_check(const PLFunction& phi1, const PLFunction& phi2, const DeltaForm& t) {
  return equals(divisor_intersect(phi1, divisor_intersect(phi2, t)),
                divisor_intersect(phi2, divisor_intersect(phi1, t)));
}

CornerLocusCheck corner_locus_identity_check(const PLFunction& phi, const DeltaForm& t) {
  CornerLocusCheck r;
  const PiecewiseForm dpp = dsecond_pl(phi);
  r.direct = divisor_intersect(phi, t);
  const DeltaForm x = ps_multiply(dpp, t);
  r.via_d = d_prime(x) + ps_multiply(dpp, d_prime(t));
  r.via_bd = -boundary_prime(x) - ps_multiply(dpp, boundary_prime(t));
  r.agree = equals(r.direct, r.via_d) && equals(r.direct, r.via_bd);
  return r;
}

}  // namespace dforms
