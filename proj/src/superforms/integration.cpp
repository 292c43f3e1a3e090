#include "dforms/integration.hpp"

#include <map>
#include <stdexcept>

namespace dforms {

AffineMap chart_map(const Chart& chart) {
  const std::size_t n = chart.base.size(), d = chart.dim();
  RatMatrix m(n, d);
  const auto& b = chart.lattice.basis();
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < n; ++i) m(i, k) = Rational(b[k][i]);
  return {m, chart.base};
}

SuperForm restrict(const SuperForm& a, const Polyhedron& cell) { return pullback_affine(chart_map(cell.chart()), a); }

AffineMap chart_transition(const Polyhedron& tau, const Polyhedron& sigma) {
  const Chart& ct = tau.chart();
  const Chart& cs = sigma.chart();
  const std::size_t dt = ct.dim(), ds = cs.dim();
  RatMatrix m(ds, dt);
  const auto bt = ct.basis();
  for (std::size_t k = 0; k < dt; ++k) {
    RatVec col = cs.vector_to_chart(bt[k]);
    for (std::size_t i = 0; i < ds; ++i) m(i, k) = col[i];
  }
  return {m, cs.to_chart(ct.base)};
}

SuperForm restrict_chart(const SuperForm& a_sigma, const Polyhedron& sigma, const Polyhedron& tau) {
  return pullback_affine(chart_transition(tau, sigma), a_sigma);
}

namespace {

struct Triangulator {
  std::map<std::string, std::vector<std::vector<RatVec>>> memo;

  const std::vector<std::vector<RatVec>>& run(const Polyhedron& f) {
    auto it = memo.find(f.key());
    if (it != memo.end()) return it->second;
    std::vector<std::vector<RatVec>> out;
    if (f.dim() == 0) {
      out.push_back({f.chart().base});
    } else {
      const RatVec apex = f.vertices().front();
      for (const auto& g : f.facets()) {
        if (g.contains(apex)) continue;
        for (auto s : run(g)) {
          s.push_back(apex);
          out.push_back(std::move(s));
        }
      }
    }
    return memo.emplace(f.key(), std::move(out)).first->second;
  }
};

Integer factorial(unsigned long k) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

// Integral over the simplex conv(vs) in Q^d of f.
Rational integrate_simplex(const Polynomial& f, const std::vector<RatVec>& vs) {
  const std::size_t d = vs.size() - 1;
  RatMatrix edges(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) edges(i, k) = vs[i + 1][k] - vs[0][k];
  Rational scaled_volume = abs(determinant(edges));  // d! vol
  std::vector<Polynomial> subs;
  for (std::size_t k = 0; k < d; ++k) {
    RatVec coeffs(d + 1);
    for (std::size_t i = 0; i <= d; ++i) coeffs[i] = vs[i][k];
    subs.push_back(Polynomial::affine(coeffs, Rational(0)));
  }
  Polynomial g = f.substitute(subs);
  Rational total = 0;
  for (const auto& [e, c] : g.terms()) {
    Integer num = 1;
    unsigned long s = 0;
    for (int a : e) {
      num *= factorial(static_cast<unsigned long>(a));
      s += static_cast<unsigned long>(a);
    }
    total += c * Rational(num) / Rational(factorial(d + s));
  }
  return total * scaled_volume;
}

}  // namespace

std::vector<std::vector<RatVec>> triangulate(const Polyhedron& polytope) {
  if (!polytope.is_bounded()) throw std::invalid_argument("triangulate: unbounded polyhedron");
  Triangulator t;
  return t.run(polytope);
}

Rational integrate_polynomial(const Polynomial& f, const Polyhedron& polytope) {
  if (polytope.dim() != polytope.ambient()) throw std::invalid_argument("integrate_polynomial: polytope not full-dimensional");
  if (polytope.ambient() == 0) return f.constant_term();
  Rational total = 0;
  for (const auto& s : triangulate(polytope)) total += integrate_simplex(f, s);
  return total;
}

Rational integrate_chart_form(const SuperForm& eta_chart, const WeightedCell& cell) {
  const std::size_t d = cell.cell.dim();
  if (eta_chart.nvars() != d) throw std::invalid_argument("integrate: form is not in chart coordinates");
  if (eta_chart.is_zero()) return 0;
  if (eta_chart.bidegree() != std::pair<int, int>(static_cast<int>(d), static_cast<int>(d)))
    throw std::invalid_argument("integrate: bidegree does not match the cell dimension");
  if (!cell.cell.is_bounded()) throw std::invalid_argument("integrate: unbounded cell");
  const IndexMask full = d == 32 ? ~IndexMask(0) : (IndexMask(1) << d) - 1;
  Polynomial phi = eta_chart.coefficient(full, full);
  // d'u_1∧d''u_1∧...∧d'u_d∧d''u_d = (-1)^{d(d-1)/2} d'u_{1..d}∧d''u_{1..d}
  if ((d * (d - 1) / 2) % 2) phi = -phi;
  if (d == 0) return cell.weight * phi.constant_term();
  Polyhedron chart_polytope = Polyhedron::nonempty(d, cell.cell.chart_inequalities());
  return cell.weight * integrate_polynomial(phi, chart_polytope);
}

Rational integrate_top(const SuperForm& eta, const WeightedCell& cell) {
  if (eta.nvars() != cell.cell.ambient()) throw std::invalid_argument("integrate_top: dimension mismatch");
  const int d = static_cast<int>(cell.cell.dim());
  if (!eta.is_zero() && eta.bidegree() != std::pair<int, int>(d, d))
    throw std::invalid_argument("integrate_top: bidegree does not match the cell dimension");
  if (!cell.cell.is_bounded()) throw std::invalid_argument("integrate_top: unbounded cell");
  return integrate_chart_form(restrict(eta, cell.cell), cell);
}

namespace {
Rational facet_term(const SuperForm& alpha, const WeightedCell& sigma, const Polyhedron& tau, const Rational& nu,
                    Boundary which) {
  RatVec n = normal_vector({tau, nu}, sigma);
  SuperForm c = contract(alpha, n, which == Boundary::first ? Slot::second : Slot::prime);
  Rational v = integrate_chart_form(restrict(c, tau), {tau, nu});
  return which == Boundary::first ? -v : v;
}
}  // namespace

Rational boundary_integral(const SuperForm& alpha, const WeightedCell& cell, Boundary which) {
  const int m = static_cast<int>(cell.cell.dim());
  if (alpha.nvars() != cell.cell.ambient()) throw std::invalid_argument("boundary_integral: dimension mismatch");
  if (!cell.cell.is_bounded()) throw std::invalid_argument("boundary_integral: unbounded cell");
  if (!alpha.is_zero()) {
    auto want = which == Boundary::first ? std::pair<int, int>(m - 1, m) : std::pair<int, int>(m, m - 1);
    if (alpha.bidegree() != want) throw std::invalid_argument("boundary_integral: bidegree mismatch");
  }
  Rational total = 0;
  const auto facets = cell.cell.facets();
  for (std::size_t i = 0; i < facets.size(); ++i) {
    Rational v = facet_term(alpha, cell, facets[i], Rational(1), which);
    if (i == 0 && facet_term(alpha, cell, facets[i], Rational(2), which) != v)
      throw std::logic_error("boundary_integral: facet weight dependence");
    total += v;
  }
  return total;
}

StokesResult stokes_check(const SuperForm& alpha, const WeightedCell& cell, Boundary which) {
  StokesResult r;
  r.rhs = boundary_integral(alpha, cell, which);
  r.lhs = integrate_top(which == Boundary::first ? dprime(alpha) : dsecond(alpha), cell);
  r.equal = r.lhs == r.rhs;
  return r;
}

}  // namespace dforms
