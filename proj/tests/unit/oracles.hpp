#pragma once
// Independent reference computations used only by tests: brute-force
// determinants and minors, integer-point counting, random generators.

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "dforms/rational.hpp"

namespace oracle {

using dforms::Integer;
using dforms::IntVec;
using dforms::Rational;
using dforms::RatVec;

// Leibniz expansion; fine for the small sizes in tests.
inline Rational leibniz_det(const std::vector<RatVec>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational p = (inversions % 2) ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) p *= m[i][perm[i]];
    total += p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> sel;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) sel.push_back(i);
    fn(sel);
  } while (std::prev_permutation(mask.begin(), mask.end()));
}

// gcd of all maximal (k x k) minors of k independent integer rows: the index
// of the lattice they generate inside its saturation.
inline Integer gcd_of_minors(const std::vector<IntVec>& rows) {
  const std::size_t k = rows.size(), n = rows.front().size();
  Integer g = 0;
  for_each_subset(n, k, [&](const std::vector<std::size_t>& cols) {
    std::vector<RatVec> sub(k, RatVec(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub[i][j] = Rational(rows[i][cols[j]]);
    Integer d = leibniz_det(sub).get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
  });
  return g;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20240611u);
  return gen;
}

inline long uniform(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng());
}

}  // namespace oracle
