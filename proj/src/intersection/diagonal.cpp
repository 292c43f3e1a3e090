#include "dforms/intersection.hpp"

namespace dforms {

namespace {

RatVec unit(std::size_t n, std::size_t i) {
  RatVec e(n);
  e[i] = 1;
  return e;
}

// Projection Q^{n+m} -> Q^n onto the first factor.
AffineMap first_projection(std::size_t n, std::size_t m) {
  RatMatrix p(n, n + m);
  for (std::size_t i = 0; i < n; ++i) p(i, i) = 1;
  return {p, RatVec(n)};
}

}  // namespace

DeltaForm wedge_diagonal(const DeltaForm& s, const DeltaForm& t) {
  if (s.ambient() != t.ambient()) throw std::invalid_argument("wedge_diagonal: dimension mismatch");
  const std::size_t n = s.ambient();
  require_balanced(s, "wedge_diagonal");
  require_balanced(t, "wedge_diagonal");
  DeltaForm x = exterior_product(s, t);
  for (std::size_t i = n; i-- > 0;) {
    auto phi = PLFunction::max_of(2 * n, {{unit(2 * n, i), Rational(0)}, {unit(2 * n, n + i), Rational(0)}});
    x = divisor_intersect(phi, x);
  }
  return pushforward(first_projection(n, n), x);
}

DeltaForm pullback_general(const AffineMap& f, const DeltaForm& s) {
  const std::size_t n = f.matrix.cols(), m = f.matrix.rows();
  if (s.ambient() != m) throw std::invalid_argument("pullback_general: dimension mismatch");
  require_balanced(s, "pullback_general");
  // Gamma_f is cut out by the divisors of max{y_j, f_j(x)} on Q^n × Q^m.
  DeltaForm x = exterior_product(DeltaForm::cell(Polyhedron::whole_space(n)), s);
  for (std::size_t j = m; j-- > 0;) {
    RatVec fj(n + m);
    for (std::size_t k = 0; k < n; ++k) fj[k] = f.matrix(j, k);
    auto phi = PLFunction::max_of(n + m, {{unit(n + m, n + j), Rational(0)}, {fj, f.offset[j]}});
    x = divisor_intersect(phi, x);
  }
  return pushforward(first_projection(n, m), x);
}

}  // namespace dforms
