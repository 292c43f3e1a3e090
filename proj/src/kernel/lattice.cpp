#include "dforms/lattice.hpp"

#include <stdexcept>

namespace dforms {

namespace {

void row_combine(std::vector<IntVec>& m, std::size_t i, std::size_t j, const Integer& a, const Integer& b,
                 const Integer& c, const Integer& d) {
  // (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j), with ad - bc = ±1
  for (std::size_t k = 0; k < m[i].size(); ++k) {
    Integer x = m[i][k], y = m[j][k];
    m[i][k] = a * x + b * y;
    m[j][k] = c * x + d * y;
  }
}

void ext_gcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

}  // namespace

HermiteForm hermite_normal_form(const std::vector<IntVec>& input, std::size_t cols,
                                std::vector<IntVec>* transform) {
  std::vector<IntVec> m = input;
  const std::size_t nrows = m.size();
  for (const auto& r : m)
    if (r.size() != cols) throw std::invalid_argument("hermite_normal_form: ragged rows");
  std::vector<IntVec> u;
  if (transform) {
    u.assign(nrows, IntVec(nrows));
    for (std::size_t i = 0; i < nrows; ++i) u[i][i] = 1;
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < nrows; ++c) {
    for (std::size_t i = r + 1; i < nrows; ++i) {
      if (m[i][c] == 0) continue;
      if (m[r][c] == 0) {
        std::swap(m[r], m[i]);
        if (transform) std::swap(u[r], u[i]);
        continue;
      }
      Integer g, s, t;
      ext_gcd(m[r][c], m[i][c], g, s, t);
      Integer a = m[r][c] / g, b = m[i][c] / g;
      // [s t; -b a] has determinant s a + t b = 1
      row_combine(m, r, i, s, t, -b, a);
      if (transform) row_combine(u, r, i, s, t, -b, a);
    }
    if (m[r][c] == 0) continue;
    if (m[r][c] < 0) {
      for (auto& x : m[r]) x = -x;
      if (transform)
        for (auto& x : u[r]) x = -x;
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t k = 0; k < cols; ++k) m[i][k] -= q * m[r][k];
      if (transform)
        for (std::size_t k = 0; k < nrows; ++k) u[i][k] -= q * u[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  HermiteForm out;
  out.rows.assign(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(r));
  out.pivots = std::move(pivots);
  if (transform) *transform = std::move(u);
  return out;
}

Lattice Lattice::generated_by(const std::vector<IntVec>& gens, std::size_t ambient) {
  Lattice lat(ambient);
  if (gens.empty()) return lat;
  auto h = hermite_normal_form(gens, ambient);
  lat.basis_ = std::move(h.rows);
  lat.pivots_ = std::move(h.pivots);
  return lat;
}

Lattice Lattice::saturation_of_span(const std::vector<RatVec>& gens, std::size_t ambient) {
  std::vector<RatVec> nonzero;
  for (const auto& g : gens) {
    if (g.size() != ambient) throw std::invalid_argument("saturation_of_span: dimension mismatch");
    if (!is_zero(g)) nonzero.push_back(g);
  }
  if (nonzero.empty()) return Lattice(ambient);
  // Orthogonal complement C (rows), then the integer kernel of C.
  auto comp = kernel(RatMatrix::from_rows(nonzero, ambient));
  if (comp.empty()) {
    std::vector<IntVec> id(ambient, IntVec(ambient));
    for (std::size_t i = 0; i < ambient; ++i) id[i][i] = 1;
    return generated_by(id, ambient);
  }
  // rows of C^T, reduce with transform; zero rows of the result give the kernel.
  std::vector<IntVec> ct(ambient, IntVec(comp.size()));
  for (std::size_t i = 0; i < ambient; ++i)
    for (std::size_t j = 0; j < comp.size(); ++j) ct[i][j] = comp[j][i].get_num();
  std::vector<IntVec> u;
  auto h = hermite_normal_form(ct, comp.size(), &u);
  std::vector<IntVec> kern(u.begin() + static_cast<std::ptrdiff_t>(h.rows.size()), u.end());
  return generated_by(kern, ambient);
}

std::vector<RatVec> Lattice::rational_basis() const {
  std::vector<RatVec> out;
  for (const auto& b : basis_) out.push_back(to_rational_vector(b));
  return out;
}

bool Lattice::contains(std::span<const Rational> v) const {
  if (v.size() != ambient_) return false;
  RatVec x(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto p = pivots_[i];
    Rational q = x[p] / Rational(basis_[i][p]);
    if (q.get_den() != 1) return false;
    for (std::size_t k = 0; k < ambient_; ++k) x[k] -= q * Rational(basis_[i][k]);
  }
  return is_zero(x);
}

bool Lattice::is_saturated() const {
  return *this == saturation_of_span(rational_basis(), ambient_);
}

SaturationResult saturate(const std::vector<IntVec>& vectors, std::size_t ambient) {
  bool any = false;
  for (const auto& v : vectors) {
    if (v.size() != ambient) throw std::invalid_argument("saturate: dimension mismatch");
    for (const auto& x : v)
      if (x != 0) any = true;
  }
  if (!any) throw std::invalid_argument("saturate: degenerate input (empty or all-zero vectors)");
  Lattice gen = Lattice::generated_by(vectors, ambient);
  std::vector<RatVec> rat;
  for (const auto& v : vectors) rat.push_back(to_rational_vector(v));
  Lattice sat = Lattice::saturation_of_span(rat, ambient);
  Rational idx = lattice_index(gen, sat);
  return {std::move(sat), idx.get_num()};
}

RatVec hermite_coordinates(const Lattice& lat, std::span<const Rational> x) {
  RatVec rest(x.begin(), x.end());
  RatVec coords(lat.rank());
  const auto& b = lat.basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto p = lat.pivots()[i];
    coords[i] = rest[p] / Rational(b[i][p]);
    if (sgn(coords[i]) != 0)
      for (std::size_t k = 0; k < rest.size(); ++k) rest[k] -= coords[i] * Rational(b[i][k]);
  }
  if (!is_zero(rest)) throw std::invalid_argument("hermite_coordinates: vector outside the span");
  return coords;
}

Rational lattice_index(const Lattice& sub, const Lattice& sup) {
  if (sub.ambient() != sup.ambient() || sub.rank() != sup.rank())
    throw std::invalid_argument("lattice_index: span mismatch");
  const std::size_t d = sub.rank();
  RatMatrix coords(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    RatVec c;
    try {
      c = hermite_coordinates(sup, to_rational_vector(sub.basis()[i]));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("lattice_index: span mismatch");
    }
    for (std::size_t j = 0; j < d; ++j) coords(i, j) = c[j];
  }
  return abs(determinant(coords));
}

Rational covolume_ratio(const std::vector<RatVec>& a, const std::vector<RatVec>& b, std::size_t ambient) {
  auto integral = [&](const std::vector<RatVec>& gens, Integer& scale_out) {
    Integer l = 1;
    for (const auto& g : gens) l = lcm(l, lcm_of_denominators(g));
    std::vector<IntVec> out;
    for (const auto& g : gens) out.push_back(to_integer_vector(scale(g, Rational(l))));
    scale_out = l;
    return out;
  };
  Integer la, lb;
  Lattice lat_a = Lattice::generated_by(integral(a, la), ambient);
  Lattice lat_b = Lattice::generated_by(integral(b, lb), ambient);
  if (lat_a.rank() != lat_b.rank()) throw std::invalid_argument("covolume_ratio: span mismatch");
  Rational r = lattice_index(lat_a, lat_b);
  // covol(<a>) = covol(<l a>) / l^d
  for (std::size_t i = 0; i < lat_a.rank(); ++i) r = r * Rational(lb) / Rational(la);
  return r;
}

std::vector<std::size_t> complement_coordinates(const Lattice& lat) {
  std::vector<bool> piv(lat.ambient(), false);
  for (auto p : lat.pivots()) piv[p] = true;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < lat.ambient(); ++j)
    if (!piv[j]) out.push_back(j);
  return out;
}

IntVec unimodular_partner(const IntVec& w) {
  // Accumulate Bezout coefficients left to right: g_k = gcd(w_0..w_k).
  IntVec m(w.size());
  Integer g = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == 0) continue;
    if (g == 0) {
      g = w[k];
      m[k] = 1;
      continue;
    }
    Integer ng, s, t;
    ext_gcd(g, w[k], ng, s, t);
    for (std::size_t j = 0; j < k; ++j) m[j] *= s;
    m[k] = t;
    g = ng;
  }
  if (g < 0) {
    for (auto& x : m) x = -x;
    g = -g;
  }
  if (g != 1) throw std::invalid_argument("unimodular_partner: vector is not primitive");
  return m;
}

IntVec to_integer_vector(std::span<const Rational> v) {
  IntVec out;
  for (const auto& x : v) {
    if (x.get_den() != 1) throw std::invalid_argument("to_integer_vector: non-integral entry");
    out.push_back(x.get_num());
  }
  return out;
}

RatVec to_rational_vector(const IntVec& v) {
  RatVec out;
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

}  // namespace dforms

namespace dforms {

std::vector<RatVec> unit_vectors(std::size_t n) {
  std::vector<RatVec> out(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

std::vector<RatVec> orthogonal_complement(const Lattice& lat) {
  if (lat.rank() == 0) return unit_vectors(lat.ambient());
  return kernel(RatMatrix::from_rows(lat.rational_basis(), lat.ambient()));
}

Lattice span_lattice(const std::vector<RatVec>& gens, std::size_t ambient) {
  for (const auto& g : gens)
    if (!is_zero(g)) return Lattice::saturation_of_span(gens, ambient);
  return Lattice(ambient);
}

}  // namespace dforms
