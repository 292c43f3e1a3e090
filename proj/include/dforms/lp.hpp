#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "dforms/linalg.hpp"

namespace dforms {

/// {x : A x <= b, E x = e} with rational constraint matrices. The right-hand
/// sides live in an ordered field or ring F that supports division by
/// nonzero rationals (Rational or EpsRational); pivots only ever divide by
/// entries of A and E, so the simplex stays exact over F.
template <class F>
struct LinearSystem {
  std::size_t n = 0;
  RatMatrix A;
  std::vector<F> b;
  RatMatrix E;
  std::vector<F> e;

  LinearSystem() = default;
  explicit LinearSystem(std::size_t vars) : n(vars), A(0, vars), E(0, vars) {}

  void add_inequality(const RatVec& row, const F& rhs) { append(A, b, row, rhs); }
  void add_equality(const RatVec& row, const F& rhs) { append(E, e, row, rhs); }

 private:
  void append(RatMatrix& m, std::vector<F>& v, const RatVec& row, const F& rhs) {
    if (row.size() != n) throw std::invalid_argument("LinearSystem: row dimension mismatch");
    RatMatrix grown(m.rows() + 1, n);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < n; ++j) grown(i, j) = m(i, j);
    for (std::size_t j = 0; j < n; ++j) grown(m.rows(), j) = row[j];
    m = std::move(grown);
    v.push_back(rhs);
  }
};

template <class F>
struct FeasibilityResult {
  bool feasible = false;
  std::vector<F> witness;  // satisfies the system exactly when feasible
  /// Farkas multipliers (inequality rows first, then equality rows) with
  /// y >= 0 on inequality rows, y^T [A; E] = 0 and y^T [b; e] < 0.
  RatVec certificate;
};

enum class LpStatus { optimal, unbounded, infeasible };
enum class Sense { minimize, maximize };

template <class F>
struct ExtremumResult {
  LpStatus status = LpStatus::infeasible;
  F value{};
  std::vector<F> witness;
};

namespace detail {

template <class F>
class Simplex {
 public:
  explicit Simplex(const LinearSystem<F>& sys) : sys_(sys) { build(); }

  bool phase_one();
  RatVec farkas() const;
  ExtremumResult<F> optimize(const RatVec& cost);  // minimizes cost^T x
  std::vector<F> solution() const;

 private:
  void build();
  void pivot(std::size_t row, std::size_t col);
  // Bland's rule on the current objective; returns false when unbounded.
  bool run(std::vector<Rational>& d, F& value);

  const LinearSystem<F>& sys_;
  std::size_t m_ = 0, nz_ = 0, ncol_ = 0;
  std::vector<std::vector<Rational>> t_;
  std::vector<F> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<int> row_sign_;
  std::vector<bool> needs_artificial_;
  std::vector<Rational> d1_;
  F w_{};
};

template <class F>
void Simplex<F>::build() {
  const std::size_t n = sys_.n, mi = sys_.A.rows(), me = sys_.E.rows();
  m_ = mi + me;
  nz_ = 2 * n + mi;
  ncol_ = nz_ + m_;
  t_.assign(m_, std::vector<Rational>(ncol_));
  rhs_.assign(m_, F{});
  row_sign_.assign(m_, 1);
  needs_artificial_.assign(m_, true);
  basis_.resize(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    const bool ineq = i < mi;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& a = ineq ? sys_.A(i, j) : sys_.E(i - mi, j);
      t_[i][j] = a;
      t_[i][n + j] = -a;
    }
    if (ineq) t_[i][2 * n + i] = 1;
    rhs_[i] = ineq ? sys_.b[i] : sys_.e[i - mi];
    if (sign(rhs_[i]) < 0) {
      row_sign_[i] = -1;
      for (std::size_t j = 0; j < nz_; ++j) t_[i][j] = -t_[i][j];
      rhs_[i] = -rhs_[i];
    }
    t_[i][nz_ + i] = 1;
    // A slack with nonnegative right-hand side starts in the basis.
    needs_artificial_[i] = !(ineq && row_sign_[i] > 0);
    basis_[i] = needs_artificial_[i] ? nz_ + i : 2 * n + i;
  }
}

template <class F>
void Simplex<F>::pivot(std::size_t row, std::size_t col) {
  Rational inv = 1 / t_[row][col];
  for (auto& x : t_[row])
    if (sgn(x) != 0) x *= inv;
  rhs_[row] *= inv;
  for (std::size_t i = 0; i < m_; ++i) {
    if (i == row || sgn(t_[i][col]) == 0) continue;
    Rational f = t_[i][col];
    for (std::size_t j = 0; j < ncol_; ++j)
      if (sgn(t_[row][j]) != 0) t_[i][j] -= f * t_[row][j];
    rhs_[i] -= rhs_[row] * f;
  }
  basis_[row] = col;
}

template <class F>
bool Simplex<F>::run(std::vector<Rational>& d, F& value) {
  // Artificial columns never (re-)enter the basis.
  for (;;) {
    std::size_t enter = ncol_;
    for (std::size_t j = 0; j < nz_; ++j)
      if (sgn(d[j]) < 0) {
        enter = j;
        break;
      }
    if (enter == ncol_) return true;
    std::size_t leave = m_;
    F best{};
    for (std::size_t i = 0; i < m_; ++i) {
      if (sgn(t_[i][enter]) <= 0) continue;
      F ratio = rhs_[i] / t_[i][enter];
      if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m_) return false;
    Rational f = d[enter];
    pivot(leave, enter);
    for (std::size_t j = 0; j < ncol_; ++j)
      if (sgn(t_[leave][j]) != 0) d[j] -= f * t_[leave][j];
    value -= rhs_[leave] * f;
  }
}

template <class F>
bool Simplex<F>::phase_one() {
  d1_.assign(ncol_, Rational(0));
  w_ = F{};
  for (std::size_t i = 0; i < m_; ++i) {
    if (!needs_artificial_[i]) continue;
    for (std::size_t j = 0; j < nz_; ++j) d1_[j] -= t_[i][j];
    w_ += rhs_[i];
  }
  // run() tracks the negated objective value
  F neg = -w_;
  run(d1_, neg);
  w_ = -neg;
  if (sign(w_) != 0) return false;
  // Drive zero-level artificials out of the basis where possible.
  for (std::size_t i = 0; i < m_; ++i) {
    if (basis_[i] < nz_) continue;
    for (std::size_t j = 0; j < nz_; ++j)
      if (sgn(t_[i][j]) != 0) {
        pivot(i, j);
        break;
      }
  }
  return true;
}

template <class F>
RatVec Simplex<F>::farkas() const {
  // d_{a_i} = cost(a_i) - y_i for the phase-one duals y; certificate lambda_i = -sign_i y_i.
  RatVec y(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    Rational yi = Rational(needs_artificial_[i] ? 1 : 0) - d1_[nz_ + i];
    y[i] = -Rational(row_sign_[i]) * yi;
  }
  return y;
}

template <class F>
ExtremumResult<F> Simplex<F>::optimize(const RatVec& cost) {
  const std::size_t n = sys_.n;
  std::vector<Rational> c(ncol_);
  for (std::size_t j = 0; j < n; ++j) {
    c[j] = cost[j];
    c[n + j] = -cost[j];
  }
  std::vector<Rational> d = c;
  F value{};
  for (std::size_t i = 0; i < m_; ++i) {
    const Rational& cb = c[basis_[i]];
    if (sgn(cb) == 0) continue;
    for (std::size_t j = 0; j < ncol_; ++j)
      if (sgn(t_[i][j]) != 0) d[j] -= cb * t_[i][j];
    value -= rhs_[i] * cb;
  }
  ExtremumResult<F> res;
  if (!run(d, value)) {
    res.status = LpStatus::unbounded;
    return res;
  }
  res.status = LpStatus::optimal;
  res.value = -value;
  res.witness = solution();
  return res;
}

template <class F>
std::vector<F> Simplex<F>::solution() const {
  const std::size_t n = sys_.n;
  std::vector<F> x(n, F{});
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t b = basis_[i];
    if (b < n) x[b] += rhs_[i];
    else if (b < 2 * n) x[b - n] -= rhs_[i];
  }
  return x;
}

}  // namespace detail

template <class F>
FeasibilityResult<F> lp_feasible(const LinearSystem<F>& sys) {
  if (sys.A.cols() != sys.n || sys.E.cols() != sys.n || sys.A.rows() != sys.b.size() ||
      sys.E.rows() != sys.e.size())
    throw std::invalid_argument("lp_feasible: dimension mismatch");
  detail::Simplex<F> s(sys);
  FeasibilityResult<F> out;
  out.feasible = s.phase_one();
  if (out.feasible) out.witness = s.solution();
  else out.certificate = s.farkas();
  return out;
}

/// Optimizes objective^T x over the system.
template <class F>
ExtremumResult<F> lp_extremum(const RatVec& objective, const LinearSystem<F>& sys, Sense sense) {
  if (objective.size() != sys.n) throw std::invalid_argument("lp_extremum: objective dimension mismatch");
  if (sys.A.cols() != sys.n || sys.E.cols() != sys.n) throw std::invalid_argument("lp_extremum: dimension mismatch");
  detail::Simplex<F> s(sys);
  ExtremumResult<F> out;
  if (!s.phase_one()) return out;
  RatVec cost = objective;
  if (sense == Sense::maximize)
    for (auto& c : cost) c = -c;
  out = s.optimize(cost);
  if (out.status == LpStatus::optimal && sense == Sense::maximize) out.value = -out.value;
  return out;
}

}  // namespace dforms
