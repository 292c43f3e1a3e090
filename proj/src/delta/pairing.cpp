#include "dforms/delta_form.hpp"
#include "dforms/refine.hpp"

namespace dforms {

Rational eval_pairing(const DeltaForm& t, const SuperForm& eta, const Polyhedron& window) {
  if (eta.nvars() != t.ambient() || window.ambient() != t.ambient())
    throw std::invalid_argument("eval_pairing: dimension mismatch");
  if (!window.is_bounded()) throw std::invalid_argument("eval_pairing: window must be bounded");
  Rational total;
  if (eta.is_zero()) return total;
  const auto [ep, eq] = eta.bidegree();
  for (const auto& term : t.terms()) {
    const std::size_t d = term.cell.dim();
    for (const auto& [p, q] : term.form.bidegrees())
      if (static_cast<std::size_t>(p + ep) != d || static_cast<std::size_t>(q + eq) != d)
        throw std::invalid_argument("eval_pairing: bidegrees are not complementary");
    auto piece = intersect(term.cell, window);
    if (!piece || piece->dim() < d) continue;
    total += integrate_chart_form(wedge(term.form, restrict(eta, *piece)), {*piece, term.weight});
  }
  return total;
}

DeltaForm from_piecewise(const PiecewiseForm& alpha) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < alpha.cells().size(); ++i) {
    const Polyhedron& c = alpha.cells()[i];
    if (c.dim() != alpha.ambient()) continue;
    terms.push_back({c, Rational(1), restrict(alpha.forms()[i], c)});
  }
  return DeltaForm(alpha.ambient(), std::move(terms)).canonical();
}

PiecewiseForm as_piecewise_form(const DeltaForm& t) {
  const std::size_t n = t.ambient();
  const DeltaForm c = t.canonical();
  std::vector<Inequality> hyperplanes;
  for (const auto& term : c.terms()) {
    if (term.cell.dim() != n) throw std::invalid_argument("as_piecewise_form: support is not full-dimensional");
    hyperplanes.insert(hyperplanes.end(), term.cell.inequalities().begin(), term.cell.inequalities().end());
  }
  // Arrangement of all facet hyperplanes; pieces outside the support carry 0.
  std::vector<Polyhedron> pieces = cut_by(Polyhedron::whole_space(n), hyperplanes);
  std::vector<SuperForm> forms;
  // Full-dimensional charts coincide with ambient coordinates.
  for (const auto& piece : pieces) {
    SuperForm f(n);
    for (const auto& term : c.terms())
      if (term.cell.contains(piece)) f = f + restrict_term(term, piece);
    forms.push_back(f);
  }
  if (auto w = find_incompatibility(pieces, forms))
    throw PreconditionError("unbalanced", "as_piecewise_form: pieces disagree on a common face",
                            {w->face, pieces[w->first], pieces[w->second]});
  return PiecewiseForm(n, std::move(pieces), std::move(forms));
}

}  // namespace dforms
