#pragma once

#include <bit>

#include "dforms/superform.hpp"
#include "oracles.hpp"

namespace oracle {

inline dforms::Rational small_rational() {
  dforms::Rational q(uniform(-5, 5), uniform(1, 3));
  q.canonicalize();
  return q;
}

inline dforms::Polynomial random_polynomial(std::size_t n, int max_degree, int terms = 3) {
  dforms::Polynomial p(n);
  for (int t = 0; t < terms; ++t) {
    dforms::Exponent e(n, 0);
    int budget = static_cast<int>(uniform(0, max_degree));
    for (int k = 0; k < budget && n > 0; ++k) ++e[static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 1))];
    p.add_term(e, small_rational());
  }
  return p;
}

inline dforms::IndexMask random_mask(std::size_t n, int size) {
  dforms::IndexMask m = 0;
  while (std::popcount(m) < size) m |= dforms::IndexMask(1) << uniform(0, static_cast<long>(n) - 1);
  return m;
}

inline dforms::SuperForm random_form(std::size_t n, int p, int q, int max_degree = 2, int terms = 2) {
  dforms::SuperForm f(n);
  for (int t = 0; t < terms; ++t) f.add_term(random_mask(n, p), random_mask(n, q), random_polynomial(n, max_degree));
  return f;
}

// Value of a form on the tagged basis vectors (slot, index) at a point,
// computed from the determinant definition of wedge products of 1-forms.
inline dforms::Rational evaluate_multilinear(const dforms::SuperForm& a, const std::vector<std::pair<int, std::size_t>>& vectors,
                                             const dforms::RatVec& point) {
  dforms::Rational total = 0;
  const std::size_t k = vectors.size();
  for (const auto& [key, phi] : a.terms()) {
    std::vector<std::pair<int, std::size_t>> gens;
    for (std::size_t i = 0; i < a.nvars(); ++i)
      if (key.first >> i & 1) gens.emplace_back(0, i);
    for (std::size_t i = 0; i < a.nvars(); ++i)
      if (key.second >> i & 1) gens.emplace_back(1, i);
    if (gens.size() != k) continue;
    std::vector<dforms::RatVec> m(k, dforms::RatVec(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) m[r][c] = gens[r] == vectors[c] ? 1 : 0;
    total += phi.evaluate(point) * (k ? leibniz_det(m) : dforms::Rational(1));
  }
  return total;
}

}  // namespace oracle
