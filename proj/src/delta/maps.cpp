#include "dforms/delta_form.hpp"

namespace dforms {

namespace {

RatVec apply_linear(const RatMatrix& l, std::span<const Rational> v) {
  RatVec out(l.rows());
  for (std::size_t i = 0; i < l.rows(); ++i)
    for (std::size_t j = 0; j < l.cols(); ++j) out[i] += l(i, j) * v[j];
  return out;
}

std::vector<RatVec> apply_linear(const RatMatrix& l, const std::vector<RatVec>& vs) {
  std::vector<RatVec> out;
  for (const auto& v : vs) out.push_back(apply_linear(l, v));
  return out;
}

Rational ratio_or_one(const std::vector<RatVec>& a, const std::vector<RatVec>& b, std::size_t ambient) {
  if (a.empty()) return Rational(1);
  return covolume_ratio(a, b, ambient);
}

// Affine map between chart coordinates: source chart -> ambient -> f -> target chart.
// `back` solves target-chart coordinates through the column basis `cols` based at `origin`.
AffineMap chart_to_chart(const Chart& source, const AffineMap& f, const RatVec& origin, const RatMatrix& cols) {
  const auto basis = source.basis();
  const std::size_t d = cols.cols();
  if (d == 0) return {RatMatrix(0, basis.size()), {}};
  auto solve_in = [&](const RatVec& y) {
    auto u = solve(cols, y);
    if (!u) throw std::logic_error("chart_to_chart: point outside the target affine hull");
    return *u;
  };
  RatMatrix m(d, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    RatVec col = solve_in(apply_linear(f.matrix, basis[k]));
    for (std::size_t i = 0; i < d; ++i) m(i, k) = col[i];
  }
  return {m, solve_in(sub(f(source.base), origin))};
}

RatMatrix columns(const std::vector<RatVec>& vs, std::size_t rows) { return RatMatrix::from_columns(vs, rows); }

}  // namespace

DeltaForm pushforward(const AffineMap& f, const DeltaForm& t) {
  if (f.source_dim() != t.ambient()) throw std::invalid_argument("pushforward: dimension mismatch");
  const std::size_t n = f.source_dim(), m = f.target_dim();
  std::vector<Term> out;
  for (const auto& term : t.terms()) {
    const Polyhedron& sigma = term.cell;
    // Proper on the cell iff the recession cone meets the kernel only at 0.
    std::vector<Inequality> eqs = sigma.recession_cone().equalities();
    for (std::size_t i = 0; i < m; ++i) {
      RatVec row(n);
      for (std::size_t j = 0; j < n; ++j) row[j] = f.matrix(i, j);
      eqs.push_back({row, Rational(0)});
    }
    if (Polyhedron::nonempty(n, sigma.recession_cone().inequalities(), eqs).dim() > 0)
      throw PreconditionError("non_proper", "pushforward: map is not proper on the support", {sigma});
    const auto basis = sigma.chart().basis();
    const auto images = apply_linear(f.matrix, basis);
    const RatVec origin = f(sigma.chart().base);
    if (!images.empty() && rank(columns(images, m)) != images.size())
      throw PreconditionError("non_injective", "pushforward: map is not injective on a support cell", {sigma});

    // Image cell from the chart description of sigma.
    const RatMatrix cols = images.empty() ? RatMatrix(m, 0) : columns(images, m);
    std::vector<Inequality> img_eqs;
    if (!images.empty())
      for (const auto& p : kernel(cols.transpose())) img_eqs.push_back({p, dot(p, origin)});
    std::vector<Inequality> img_ineqs;
    if (!images.empty()) {
      auto g = inverse(cols.transpose() * cols);
      RatMatrix left = *g * cols.transpose();
      for (const auto& c : sigma.chart_inequalities()) {
        RatVec a(m);
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t k = 0; k < c.a.size(); ++k) a[j] += c.a[k] * left(k, j);
        img_ineqs.push_back({a, c.b + dot(a, origin)});
      }
    }
    Polyhedron image = images.empty() ? Polyhedron::point(origin) : Polyhedron::nonempty(m, img_ineqs, img_eqs);
    Rational w = term.weight * ratio_or_one(images, image.chart().basis(), m);
    AffineMap back = chart_to_chart(image.chart(), AffineMap::identity(m), origin, cols);
    out.push_back({image, w, pullback_affine(back, term.form)});
  }
  return DeltaForm(m, std::move(out)).canonical();
}

DeltaForm pullback_surjective(const AffineMap& f, const DeltaForm& s) {
  if (f.target_dim() != s.ambient()) throw std::invalid_argument("pullback: dimension mismatch");
  const std::size_t n = f.source_dim(), m = f.target_dim();
  if (rank(f.matrix) != m) throw PreconditionError("non_surjective", "pullback: map is not surjective", {});
  auto pull = [&](const Inequality& q) {
    Inequality r{RatVec(n), q.b - dot(q.a, f.offset)};
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < m; ++i) r.a[j] += q.a[i] * f.matrix(i, j);
    return r;
  };
  // Fiber weight delta with mu_std(Q^n) = delta ∧ mu_std(Q^m), as a multiple
  // of the canonical weight of the kernel lattice.
  Rational fiber = 1;
  {
    std::vector<RatVec> cols = Lattice::saturation_of_span(kernel(f.matrix), n).rational_basis();
    for (std::size_t i = 0; i < m; ++i) {
      RatVec e(m);
      e[i] = 1;
      cols.push_back(*solve(f.matrix, e));
    }
    fiber = 1 / abs(determinant(RatMatrix::from_columns(cols, n)));
  }
  std::vector<Term> out;
  for (const auto& term : s.terms()) {
    const Polyhedron& sigma = term.cell;
    std::vector<Inequality> ineqs, eqs;
    for (const auto& q : sigma.inequalities()) ineqs.push_back(pull(q));
    for (const auto& q : sigma.equalities()) eqs.push_back(pull(q));
    Polyhedron pre = Polyhedron::nonempty(n, ineqs, eqs);
    // delta ∧ mu against the canonical weight of N_pre: lifting a basis of
    // N_sigma costs the index of f(N_pre) in N_sigma.
    const auto images = apply_linear(f.matrix, pre.chart().basis());
    std::vector<RatVec> nonzero;
    for (const auto& v : images)
      if (!is_zero(v)) nonzero.push_back(v);
    Rational w = term.weight * fiber;
    if (sigma.dim() > 0) w /= covolume_ratio(nonzero, sigma.chart().basis(), m);
    const auto sb = sigma.chart().basis();
    const RatMatrix cols = sb.empty() ? RatMatrix(m, 0) : columns(sb, m);
    AffineMap to_sigma = chart_to_chart(pre.chart(), f, sigma.chart().base, cols);
    out.push_back({pre, w, pullback_affine(to_sigma, term.form)});
  }
  return DeltaForm(n, std::move(out)).canonical();
}

}  // namespace dforms
