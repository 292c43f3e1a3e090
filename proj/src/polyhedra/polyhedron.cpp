#include "dforms/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dforms/lp.hpp"

namespace dforms {

namespace {

LinearSystem<Rational> system_of(std::size_t n, const std::vector<Inequality>& ineqs,
                                 const std::vector<Inequality>& eqs) {
  LinearSystem<Rational> sys(n);
  for (const auto& h : ineqs) sys.add_inequality(h.a, h.b);
  for (const auto& h : eqs) sys.add_equality(h.a, h.b);
  return sys;
}

void check_dim(std::size_t n, const std::vector<Inequality>& hs) {
  for (const auto& h : hs)
    if (h.a.size() != n) throw std::invalid_argument("polyhedron: constraint dimension mismatch");
}

// Positive rescaling making `a` a primitive integer vector; b follows.
Inequality normalized(const Inequality& h) {
  RatVec p = primitive_integer(h.a);
  std::size_t j = 0;
  while (sgn(h.a[j]) == 0) ++j;
  Rational s = p[j] / h.a[j];
  return {p, h.b * s};
}

std::string format_vector(const RatVec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_rational(v[i]);
  }
  return s + "]";
}

bool inequality_less(const Inequality& x, const Inequality& y) {
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

}  // namespace

RatVec Chart::to_ambient(std::span<const Rational> u) const {
  RatVec x = base;
  const auto& b = lattice.basis();
  for (std::size_t k = 0; k < b.size(); ++k)
    for (std::size_t i = 0; i < x.size(); ++i)
      if (sgn(b[k][i]) != 0) x[i] += u[k] * Rational(b[k][i]);
  return x;
}

RatVec Chart::to_chart(std::span<const Rational> x) const { return hermite_coordinates(lattice, sub(x, base)); }

RatVec Chart::vector_to_chart(std::span<const Rational> v) const { return hermite_coordinates(lattice, v); }

std::optional<Polyhedron> Polyhedron::make(std::size_t n, const std::vector<Inequality>& ineqs_in,
                                           const std::vector<Inequality>& eqs_in) {
  check_dim(n, ineqs_in);
  check_dim(n, eqs_in);
  // Trivial rows: 0 <= b or 0 = e.
  std::vector<Inequality> ineqs, eqs;
  for (const auto& h : ineqs_in) {
    if (is_zero(h.a)) {
      if (h.b < 0) return std::nullopt;
    } else {
      ineqs.push_back(h);
    }
  }
  for (const auto& h : eqs_in) {
    if (is_zero(h.a)) {
      if (sgn(h.b) != 0) return std::nullopt;
    } else {
      eqs.push_back(h);
    }
  }
  auto sys = system_of(n, ineqs, eqs);
  if (!lp_feasible(sys).feasible) return std::nullopt;

  // Implicit equalities. One LP settles the common case of none.
  if (!ineqs.empty()) {
    LinearSystem<Rational> slack(n + 1);
    for (const auto& h : ineqs) {
      RatVec row = h.a;
      row.push_back(1);
      slack.add_inequality(row, h.b);
    }
    for (const auto& h : eqs) {
      RatVec row = h.a;
      row.push_back(0);
      slack.add_equality(row, h.b);
    }
    RatVec t_only(n + 1);
    t_only[n] = 1;
    slack.add_inequality(t_only, Rational(1));
    auto best = lp_extremum(t_only, slack, Sense::maximize);
    if (best.value <= 0) {
      std::vector<Inequality> strict;
      std::vector<Inequality> implicit;
      for (const auto& h : ineqs) {
        auto lo = lp_extremum(h.a, sys, Sense::minimize);
        if (lo.status == LpStatus::optimal && lo.value == h.b) implicit.push_back(h);
        else strict.push_back(h);
      }
      for (auto& h : implicit) eqs.push_back(h);
      ineqs = std::move(strict);
    }
  }

  auto data = std::make_shared<Data>();
  data->n = n;
  std::vector<std::size_t> pivots;
  if (!eqs.empty()) {
    RatMatrix aug(eqs.size(), n + 1);
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = eqs[i].a[j];
      aug(i, n) = eqs[i].b;
    }
    auto ech = rref(aug);
    for (std::size_t i = 0; i < ech.reduced.rows(); ++i) {
      RatVec row = ech.reduced.row(i);
      Rational rhs = row.back();
      row.pop_back();
      data->eqs.push_back({row, rhs});
    }
    pivots = ech.pivots;
  }

  std::vector<Inequality> reduced;
  for (auto h : ineqs) {
    for (std::size_t k = 0; k < data->eqs.size(); ++k) {
      Rational c = h.a[pivots[k]];
      if (sgn(c) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) h.a[j] -= c * data->eqs[k].a[j];
      h.b -= c * data->eqs[k].b;
    }
    if (is_zero(h.a)) continue;  // 0 <= b, already known feasible
    reduced.push_back(normalized(h));
  }
  std::sort(reduced.begin(), reduced.end(), inequality_less);
  // Parallel duplicates: keep the tightest (first after sorting).
  std::vector<Inequality> unique;
  for (auto& h : reduced)
    if (unique.empty() || unique.back().a != h.a) unique.push_back(h);

  std::vector<bool> keep(unique.size(), true);
  for (std::size_t i = 0; i < unique.size(); ++i) {
    LinearSystem<Rational> rest(n);
    for (std::size_t j = 0; j < unique.size(); ++j)
      if (j != i && keep[j]) rest.add_inequality(unique[j].a, unique[j].b);
    for (const auto& h : data->eqs) rest.add_equality(h.a, h.b);
    auto hi = lp_extremum(unique[i].a, rest, Sense::maximize);
    if (hi.status == LpStatus::optimal && hi.value <= unique[i].b) keep[i] = false;
  }
  for (std::size_t i = 0; i < unique.size(); ++i)
    if (keep[i]) data->ineqs.push_back(unique[i]);

  data->dim = n - data->eqs.size();
  data->chart.base.assign(n, Rational(0));
  for (std::size_t k = 0; k < data->eqs.size(); ++k) data->chart.base[pivots[k]] = data->eqs[k].b;
  if (data->dim == 0) {
    data->chart.lattice = Lattice(n);
  } else if (data->eqs.empty()) {
    std::vector<RatVec> units(n, RatVec(n));
    for (std::size_t i = 0; i < n; ++i) units[i][i] = 1;
    data->chart.lattice = Lattice::saturation_of_span(units, n);
  } else {
    std::vector<RatVec> rows;
    for (const auto& h : data->eqs) rows.push_back(h.a);
    data->chart.lattice = Lattice::saturation_of_span(kernel(RatMatrix::from_rows(rows, n)), n);
  }

  std::ostringstream key;
  key << n << "|E";
  for (const auto& h : data->eqs) key << format_vector(h.a) << "=" << format_rational(h.b) << ";";
  key << "|I";
  for (const auto& h : data->ineqs) key << format_vector(h.a) << "<=" << format_rational(h.b) << ";";
  data->key = key.str();
  return Polyhedron(std::move(data));
}

Polyhedron Polyhedron::nonempty(std::size_t n, const std::vector<Inequality>& ineqs,
                                const std::vector<Inequality>& eqs) {
  auto p = make(n, ineqs, eqs);
  if (!p) throw std::invalid_argument("polyhedron: empty constraint system");
  return *p;
}

Polyhedron Polyhedron::whole_space(std::size_t n) { return nonempty(n, {}); }

Polyhedron Polyhedron::point(const RatVec& p) {
  std::vector<Inequality> eqs;
  for (std::size_t i = 0; i < p.size(); ++i) {
    RatVec e(p.size());
    e[i] = 1;
    eqs.push_back({e, p[i]});
  }
  return nonempty(p.size(), {}, eqs);
}

Polyhedron Polyhedron::hull(std::size_t n, const std::vector<RatVec>& points, const std::vector<RatVec>& rays) {
  if (points.empty()) throw std::invalid_argument("hull: needs at least one point");
  std::vector<RatVec> dirs;
  for (std::size_t i = 1; i < points.size(); ++i) dirs.push_back(sub(points[i], points[0]));
  for (const auto& r : rays) dirs.push_back(r);
  if (rank(RatMatrix::from_rows(dirs, n)) == 0) return point(points[0]);
  std::vector<Inequality> eqs;
  for (const auto& w : kernel(RatMatrix::from_rows(dirs, n))) eqs.push_back({w, dot(w, points[0])});
  const Polyhedron aff = nonempty(n, {}, eqs);
  const std::size_t d = aff.dim();
  const Chart& ch = aff.chart();
  std::vector<RatVec> cp, cr;
  for (const auto& p : points) cp.push_back(ch.to_chart(p));
  for (const auto& r : rays) cr.push_back(ch.vector_to_chart(r));

  // Every facet hyperplane is spanned by d-1 differences of generators lying on it.
  std::vector<Inequality> chart_ineqs;
  auto consider = [&](const RatVec& w) {
    for (int s : {1, -1}) {
      RatVec a = scale(w, Rational(s));
      bool ok = true;
      for (const auto& r : cr)
        if (dot(a, r) > 0) ok = false;
      if (!ok) continue;
      Rational b = dot(a, cp[0]);
      for (const auto& p : cp) b = std::max(b, dot(a, p));
      // keep only facet hyperplanes: tight generators span dimension d-1
      std::vector<RatVec> tight;
      const RatVec* anchor = nullptr;
      for (const auto& p : cp)
        if (dot(a, p) == b) {
          if (anchor) tight.push_back(sub(p, *anchor));
          else anchor = &p;
        }
      for (const auto& r : cr)
        if (sgn(dot(a, r)) == 0) tight.push_back(r);
      if (tight.size() + 1 < d || rank(RatMatrix::from_rows(tight, d)) + 1 != d) continue;
      chart_ineqs.push_back({a, b});
    }
  };
  std::vector<RatVec> diffs;
  for (std::size_t i = 0; i < cp.size(); ++i)
    for (std::size_t j = i + 1; j < cp.size(); ++j) diffs.push_back(sub(cp[j], cp[i]));
  for (const auto& r : cr) diffs.push_back(r);
  if (d == 1) {
    consider(RatVec(1, Rational(1)));
  } else if (diffs.size() >= d - 1) {
    std::vector<bool> mask(diffs.size(), false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(d - 1), true);
    do {
      std::vector<RatVec> sel;
      for (std::size_t i = 0; i < diffs.size(); ++i)
        if (mask[i]) sel.push_back(diffs[i]);
      auto ker = kernel(RatMatrix::from_rows(sel, d));
      if (ker.size() == 1) consider(ker[0]);
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return from_chart(ch, chart_ineqs);
}

bool Polyhedron::contains(std::span<const Rational> x) const {
  for (const auto& h : equalities())
    if (dot(h.a, x) != h.b) return false;
  for (const auto& h : inequalities())
    if (dot(h.a, x) > h.b) return false;
  return true;
}

bool Polyhedron::contains(const Polyhedron& other) const {
  const Chart& ch = other.chart();
  const auto basis = ch.basis();
  for (const auto& h : equalities()) {
    if (dot(h.a, ch.base) != h.b) return false;
    for (const auto& v : basis)
      if (sgn(dot(h.a, v)) != 0) return false;
  }
  auto sys = system_of(other.ambient(), other.inequalities(), other.equalities());
  for (const auto& h : inequalities()) {
    auto hi = lp_extremum(h.a, sys, Sense::maximize);
    if (hi.status != LpStatus::optimal || hi.value > h.b) return false;
  }
  return true;
}

bool Polyhedron::is_bounded() const { return recession_cone().dim() == 0; }

RatVec Polyhedron::relative_interior_point() const {
  const std::size_t n = ambient();
  if (inequalities().empty()) return chart().base;
  LinearSystem<Rational> sys(n + 1);
  for (const auto& h : inequalities()) {
    RatVec row = h.a;
    row.push_back(1);
    sys.add_inequality(row, h.b);
  }
  for (const auto& h : equalities()) {
    RatVec row = h.a;
    row.push_back(0);
    sys.add_equality(row, h.b);
  }
  RatVec t_only(n + 1);
  t_only[n] = 1;
  sys.add_inequality(t_only, Rational(1));
  auto best = lp_extremum(t_only, sys, Sense::maximize);
  RatVec x(best.witness.begin(), best.witness.begin() + static_cast<long>(n));
  return x;
}

Polyhedron Polyhedron::affine_hull() const { return nonempty(ambient(), {}, equalities()); }

Polyhedron Polyhedron::recession_cone() const {
  std::vector<Inequality> ineqs, eqs;
  for (const auto& h : inequalities()) ineqs.push_back({h.a, Rational(0)});
  for (const auto& h : equalities()) eqs.push_back({h.a, Rational(0)});
  return nonempty(ambient(), ineqs, eqs);
}

std::vector<Polyhedron> Polyhedron::facets() const {
  std::vector<Polyhedron> out;
  for (const auto& h : inequalities()) {
    auto eqs = equalities();
    eqs.push_back(h);
    out.push_back(nonempty(ambient(), inequalities(), eqs));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Polyhedron> Polyhedron::faces() const {
  std::map<std::string, Polyhedron> seen;
  std::vector<Polyhedron> frontier{*this};
  seen.emplace(key(), *this);
  while (!frontier.empty()) {
    std::vector<Polyhedron> next;
    for (const auto& f : frontier)
      for (auto& g : f.facets())
        if (seen.emplace(g.key(), g).second) next.push_back(g);
    frontier = std::move(next);
  }
  std::vector<Polyhedron> out;
  for (auto& [k, f] : seen) out.push_back(f);
  std::stable_sort(out.begin(), out.end(),
                   [](const Polyhedron& a, const Polyhedron& b) { return a.dim() < b.dim(); });
  return out;
}

std::vector<RatVec> Polyhedron::vertices() const {
  std::vector<RatVec> out;
  for (const auto& f : faces())
    if (f.dim() == 0) out.push_back(f.chart().base);
  std::sort(out.begin(), out.end());
  return out;
}

bool Polyhedron::is_face_of(const Polyhedron& sigma) const {
  if (*this == sigma) return true;
  if (dim() >= sigma.dim() || !sigma.contains(*this)) return false;
  RatVec r = relative_interior_point();
  auto eqs = sigma.equalities();
  for (const auto& h : sigma.inequalities())
    if (dot(h.a, r) == h.b) eqs.push_back(h);
  auto f = make(sigma.ambient(), sigma.inequalities(), eqs);
  return f && *f == *this;
}

const Inequality& Polyhedron::facet_inequality(const Polyhedron& tau) const {
  if (tau.dim() + 1 != dim() || !tau.is_face_of(*this))
    throw std::invalid_argument("facet_inequality: not a facet");
  RatVec r = tau.relative_interior_point();
  for (const auto& h : inequalities())
    if (dot(h.a, r) == h.b) return h;
  throw std::logic_error("facet_inequality: no tight inequality");
}

std::vector<Inequality> Polyhedron::chart_inequalities() const {
  const auto basis = chart().basis();
  std::vector<Inequality> out;
  for (const auto& h : inequalities()) {
    RatVec a(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) a[k] = dot(h.a, basis[k]);
    out.push_back({a, h.b - dot(h.a, chart().base)});
  }
  return out;
}

Polyhedron Polyhedron::from_chart(const Chart& chart, const std::vector<Inequality>& chart_ineqs) {
  const std::size_t n = chart.base.size(), d = chart.dim();
  const auto basis = chart.basis();
  const auto& piv = chart.lattice.pivots();
  // u = Q^{-1} (x - base)|pivots with Q[j][k] = basis[k][piv[j]].
  RatMatrix q(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) q(j, k) = basis[k][piv[j]];
  RatMatrix qinv = d ? *inverse(q) : RatMatrix(0, 0);
  std::vector<Inequality> ineqs, eqs;
  for (const auto& h : chart_ineqs) {
    RatVec a(n);
    for (std::size_t j = 0; j < d; ++j) {
      Rational c = 0;
      for (std::size_t k = 0; k < d; ++k) c += h.a[k] * qinv(k, j);
      a[piv[j]] = c;
    }
    ineqs.push_back({a, h.b + dot(a, chart.base)});
  }
  if (d < n) {
    std::vector<RatVec> normals;
    if (d) {
      normals = kernel(RatMatrix::from_rows(basis, n));
    } else {
      for (std::size_t i = 0; i < n; ++i) normals.push_back(RatMatrix::identity(n).row(i));
    }
    for (const auto& w : normals) eqs.push_back({w, dot(w, chart.base)});
  }
  return nonempty(n, ineqs, eqs);
}

std::string Polyhedron::to_string() const { return key(); }

std::optional<Polyhedron> intersect(const Polyhedron& p, const Polyhedron& q) {
  if (p.ambient() != q.ambient()) throw std::invalid_argument("intersect: ambient dimension mismatch");
  auto ineqs = p.inequalities();
  ineqs.insert(ineqs.end(), q.inequalities().begin(), q.inequalities().end());
  auto eqs = p.equalities();
  eqs.insert(eqs.end(), q.equalities().begin(), q.equalities().end());
  return Polyhedron::make(p.ambient(), ineqs, eqs);
}

std::vector<Polyhedron> split(const Polyhedron& p, const RatVec& a, const Rational& b) {
  auto sys = system_of(p.ambient(), p.inequalities(), p.equalities());
  auto lo = lp_extremum(a, sys, Sense::minimize);
  auto hi = lp_extremum(a, sys, Sense::maximize);
  const bool below = lo.status == LpStatus::unbounded || lo.value < b;
  const bool above = hi.status == LpStatus::unbounded || hi.value > b;
  if (!below || !above) return {p};
  auto le = p.inequalities();
  le.push_back({a, b});
  auto ge = p.inequalities();
  ge.push_back({scale(a, Rational(-1)), -b});
  return {Polyhedron::nonempty(p.ambient(), le, p.equalities()),
          Polyhedron::nonempty(p.ambient(), ge, p.equalities())};
}

namespace {
std::vector<Inequality> pad(const std::vector<Inequality>& hs, std::size_t before, std::size_t after) {
  std::vector<Inequality> out;
  for (const auto& h : hs) {
    RatVec a(before, Rational(0));
    a.insert(a.end(), h.a.begin(), h.a.end());
    a.resize(a.size() + after, Rational(0));
    out.push_back({a, h.b});
  }
  return out;
}
}  // namespace

Polyhedron embed_left(const Polyhedron& p, std::size_t m) {
  return Polyhedron::nonempty(p.ambient() + m, pad(p.inequalities(), 0, m), pad(p.equalities(), 0, m));
}

Polyhedron embed_right(std::size_t m, const Polyhedron& p) {
  return Polyhedron::nonempty(p.ambient() + m, pad(p.inequalities(), m, 0), pad(p.equalities(), m, 0));
}

Polyhedron product(const Polyhedron& p, const Polyhedron& q) {
  const std::size_t n = p.ambient(), m = q.ambient();
  auto ineqs = pad(p.inequalities(), 0, m);
  auto qi = pad(q.inequalities(), n, 0);
  ineqs.insert(ineqs.end(), qi.begin(), qi.end());
  auto eqs = pad(p.equalities(), 0, m);
  auto qe = pad(q.equalities(), n, 0);
  eqs.insert(eqs.end(), qe.begin(), qe.end());
  return Polyhedron::nonempty(n + m, ineqs, eqs);
}

RatVec normal_vector(const WeightedCell& tau, const WeightedCell& sigma) {
  const Inequality& h = sigma.cell.facet_inequality(tau.cell);
  const auto& bs = sigma.cell.lattice().basis();
  const std::size_t n = sigma.cell.ambient();
  // -a restricted to the lattice of sigma: vanishes on tau, positive into sigma.
  RatVec w(bs.size());
  for (std::size_t k = 0; k < bs.size(); ++k) w[k] = -dot(h.a, to_rational_vector(bs[k]));
  IntVec m = unimodular_partner(to_integer_vector(primitive_integer(w)));
  IntVec n0(n, Integer(0));
  for (std::size_t k = 0; k < bs.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) n0[i] += m[k] * bs[k][i];
  // Canonical representative modulo the lattice of tau.
  const auto& bt = tau.cell.lattice().basis();
  const auto& pt = tau.cell.lattice().pivots();
  for (std::size_t k = 0; k < bt.size(); ++k) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), n0[pt[k]].get_mpz_t(), bt[k][pt[k]].get_mpz_t());
    if (q == 0) continue;
    for (std::size_t i = 0; i < n; ++i) n0[i] -= q * bt[k][i];
  }
  return scale(to_rational_vector(n0), sigma.weight / tau.weight);
}

namespace {
bool sublattice_of_span(const Lattice& a, const Lattice& b) {
  if (a.ambient() != b.ambient()) return false;
  for (const auto& v : a.basis())
    if (!b.contains(to_rational_vector(v))) return false;
  return true;
}
}  // namespace

Rational quotient_multiplier(const Lattice& n1, const Lattice& n2, const std::vector<RatVec>& vectors) {
  if (!sublattice_of_span(n1, n2)) throw std::invalid_argument("quotient_multiplier: spans not nested");
  if (n1.rank() + vectors.size() != n2.rank())
    throw std::invalid_argument("quotient_multiplier: wrong number of quotient vectors");
  std::vector<RatVec> gens = n1.rational_basis();
  gens.insert(gens.end(), vectors.begin(), vectors.end());
  if (rank(RatMatrix::from_rows(gens, n2.ambient())) != n2.rank())
    throw std::invalid_argument("quotient_multiplier: vectors do not span the quotient");
  return covolume_ratio(gens, n2.rational_basis(), n2.ambient());
}

Rational weight_wedge(const Lattice& n1, const Rational& mu1, const Lattice& n2, const Rational& mu3) {
  if (!sublattice_of_span(n1, n2)) throw std::invalid_argument("weight_wedge: spans not nested");
  return mu1 * mu3;
}

Rational weight_quotient(const Lattice& n1, const Rational& mu1, const Lattice& n2, const Rational& mu2) {
  if (!sublattice_of_span(n1, n2)) throw std::invalid_argument("weight_quotient: spans not nested");
  return mu2 / mu1;
}

std::pair<Lattice, Rational> stable_weight(const Lattice& n1, const Rational& mu1, const Lattice& n2,
                                           const Rational& mu2) {
  const std::size_t n = n1.ambient();
  std::vector<RatVec> gens = n1.rational_basis();
  for (const auto& v : n2.rational_basis()) gens.push_back(v);
  if (gens.empty() || rank(RatMatrix::from_rows(gens, n)) != n)
    throw std::invalid_argument("stable_weight: spans are not transversal");
  const Rational index = covolume_ratio(gens, unit_vectors(n), n);
  std::vector<RatVec> normals = orthogonal_complement(n1);
  for (const auto& w : orthogonal_complement(n2)) normals.push_back(w);
  return {span_lattice(normals.empty() ? unit_vectors(n) : kernel(RatMatrix::from_rows(normals, n)), n),
          mu1 * mu2 * index};
}

WeightedCell cell_product(const WeightedCell& a, const WeightedCell& b) {
  return {product(a.cell, b.cell), a.weight * b.weight};
}

namespace {
bool dim_key_less(const Polyhedron& a, const Polyhedron& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  return a.key() < b.key();
}
}  // namespace

Complex::Complex(std::size_t n, const std::vector<Polyhedron>& maximal) : n_(n) {
  std::map<std::string, Polyhedron> seen;
  for (const auto& p : maximal) {
    if (p.ambient() != n) throw std::invalid_argument("Complex: ambient dimension mismatch");
    for (auto& f : p.faces()) seen.emplace(f.key(), f);
  }
  for (auto& [k, f] : seen) cells_.push_back(f);
  std::sort(cells_.begin(), cells_.end(), dim_key_less);
}

std::vector<Polyhedron> Complex::maximal_cells() const {
  std::vector<Polyhedron> out;
  for (const auto& c : cells_) {
    bool covered = false;
    for (const auto& d : cells_)
      if (d.dim() > c.dim() && d.contains(c)) {
        covered = true;
        break;
      }
    if (!covered) out.push_back(c);
  }
  return out;
}

std::vector<Polyhedron> Complex::cells_of_dim(std::size_t d) const {
  std::vector<Polyhedron> out;
  for (const auto& c : cells_)
    if (c.dim() == d) out.push_back(c);
  return out;
}

bool Complex::is_valid() const {
  for (std::size_t i = 0; i < cells_.size(); ++i)
    for (std::size_t j = i + 1; j < cells_.size(); ++j) {
      auto m = intersect(cells_[i], cells_[j]);
      if (m && (!m->is_face_of(cells_[i]) || !m->is_face_of(cells_[j]))) return false;
    }
  return true;
}

Complex common_refinement(const Complex& a, const Complex& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("common_refinement: ambient dimension mismatch");
  std::vector<Polyhedron> pieces;
  for (const auto& p : a.maximal_cells())
    for (const auto& q : b.maximal_cells())
      if (auto m = intersect(p, q)) pieces.push_back(*m);
  return Complex(a.ambient(), pieces);
}

}  // namespace dforms
