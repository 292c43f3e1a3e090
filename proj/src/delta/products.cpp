#include "dforms/delta_form.hpp"
#include "dforms/refine.hpp"

namespace dforms {

namespace {

std::vector<Inequality> breaking_hyperplanes(const PiecewiseForm& alpha) {
  std::vector<Inequality> out;
  for (const auto& c : alpha.cells()) {
    out.insert(out.end(), c.inequalities().begin(), c.inequalities().end());
    out.insert(out.end(), c.equalities().begin(), c.equalities().end());
  }
  return out;
}

// Chart coordinates of sigma × tau mapped to the pair of factor chart coordinates.
AffineMap product_chart_to_factors(const Polyhedron& prod, const Polyhedron& a, const Polyhedron& b) {
  const std::size_t n = a.ambient(), da = a.dim(), db = b.dim();
  const Chart& ch = prod.chart();
  auto split_vec = [&](const RatVec& v, bool point) {
    RatVec x(v.begin(), v.begin() + static_cast<long>(n)), y(v.begin() + static_cast<long>(n), v.end());
    RatVec u = point ? a.chart().to_chart(x) : a.chart().vector_to_chart(x);
    RatVec w = point ? b.chart().to_chart(y) : b.chart().vector_to_chart(y);
    u.insert(u.end(), w.begin(), w.end());
    return u;
  };
  const auto basis = ch.basis();
  RatMatrix m(da + db, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    RatVec col = split_vec(basis[k], false);
    for (std::size_t i = 0; i < da + db; ++i) m(i, k) = col[i];
  }
  return {m, split_vec(ch.base, true)};
}

}  // namespace

DeltaForm ps_multiply(const PiecewiseForm& alpha, const DeltaForm& t) {
  if (alpha.ambient() != t.ambient()) throw std::invalid_argument("ps_multiply: ambient dimension mismatch");
  const auto hyperplanes = breaking_hyperplanes(alpha);
  std::vector<Term> out;
  for (const auto& term : t.terms()) {
    for (const auto& piece : cut_by(term.cell, hyperplanes)) {
      auto a = alpha.form_on(piece);
      if (!a) throw PreconditionError("domain", "ps_multiply: piecewise form does not cover the support", {piece});
      out.push_back({piece, term.weight, wedge(restrict(*a, piece), restrict_chart(term.form, term.cell, piece))});
    }
  }
  return DeltaForm(t.ambient(), std::move(out)).canonical();
}

DeltaForm multiply(const SuperForm& alpha, const DeltaForm& t) {
  if (alpha.nvars() != t.ambient()) throw std::invalid_argument("multiply: ambient dimension mismatch");
  std::vector<Term> out;
  for (const auto& term : t.terms()) out.push_back({term.cell, term.weight, wedge(restrict(alpha, term.cell), term.form)});
  return DeltaForm(t.ambient(), std::move(out)).canonical();
}

DeltaForm exterior_product(const DeltaForm& s, const DeltaForm& t) {
  const std::size_t n = s.ambient(), m = t.ambient();
  std::vector<Term> out;
  for (const auto& a : s.terms())
    for (const auto& b : t.terms()) {
      WeightedCell c = cell_product({a.cell, a.weight}, {b.cell, b.weight});
      const std::size_t da = a.cell.dim(), db = b.cell.dim();
      SuperForm f = wedge(embed(a.form, da + db, 0), embed(b.form, da + db, da));
      out.push_back({c.cell, c.weight, pullback_affine(product_chart_to_factors(c.cell, a.cell, b.cell), f)});
    }
  return DeltaForm(n + m, std::move(out)).canonical();
}

}  // namespace dforms
