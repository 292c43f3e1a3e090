#include <doctest.h>

#include "dforms/polyhedron.hpp"
#include "oracles.hpp"

using namespace dforms;

namespace {
RatVec rv(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}
Inequality le(std::initializer_list<long> a, long b) { return {rv(a), Rational(b)}; }

Polyhedron box(std::size_t n, long lo, long hi) {
  std::vector<Inequality> hs;
  for (std::size_t i = 0; i < n; ++i) {
    RatVec a(n);
    a[i] = 1;
    hs.push_back({a, Rational(hi)});
    a[i] = -1;
    hs.push_back({a, Rational(-lo)});
  }
  return Polyhedron::nonempty(n, hs);
}

Polyhedron ray(const RatVec& dir) { return Polyhedron::hull(dir.size(), {RatVec(dir.size())}, {dir}); }

std::size_t count_dim(const std::vector<Polyhedron>& cs, std::size_t d) {
  return static_cast<std::size_t>(std::count_if(cs.begin(), cs.end(), [&](auto& c) { return c.dim() == d; }));
}
}  // namespace

TEST_CASE("canonical form is syntactic") {
  auto a = Polyhedron::nonempty(2, {le({1, 0}, 1), le({-1, 0}, 0), le({0, 1}, 1), le({0, -1}, 0)});
  auto b = Polyhedron::nonempty(2, {le({2, 0}, 2), le({-1, 0}, 0), le({0, 3}, 3), le({0, -1}, 0),
                                    le({1, 1}, 5), le({1, 0}, 7)});
  CHECK(a == b);
  CHECK(a.inequalities().size() == 4);
  auto hullsq = Polyhedron::hull(2, {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1}), rv({1, 0})});
  CHECK(hullsq == a);
  // implicit equality: x <= 0 and -x <= 0
  auto line = Polyhedron::nonempty(2, {le({1, 0}, 0), le({-1, 0}, 0)});
  CHECK(line.dim() == 1);
  CHECK(line.equalities().size() == 1);
  CHECK_FALSE(Polyhedron::make(1, {le({1}, 1), le({-1}, -2)}).has_value());
}

TEST_CASE("faces") {
  auto sq = box(2, 0, 1);
  auto f = sq.faces();
  CHECK(count_dim(f, 2) == 1);
  CHECK(count_dim(f, 1) == 4);
  CHECK(count_dim(f, 0) == 4);
  CHECK(sq.vertices() == std::vector<RatVec>{rv({0, 0}), rv({0, 1}), rv({1, 0}), rv({1, 1})});
  auto r = Polyhedron::nonempty(1, {le({-1}, 0)});
  CHECK(r.faces().size() == 2);
  CHECK(r.faces()[0] == Polyhedron::point(rv({0})));
  auto diag = Polyhedron::hull(2, {rv({0, 0})}, {rv({1, 1}), rv({-1, -1})});
  CHECK(diag.faces().size() == 1);
  CHECK(diag.dim() == 1);
  // Euler characteristic of a bounded polytope is 1 (random 3D hulls)
  for (int t = 0; t < 10; ++t) {
    std::vector<RatVec> pts;
    for (int k = 0; k < 6; ++k) pts.push_back(rv({oracle::uniform(-3, 3), oracle::uniform(-3, 3), oracle::uniform(-3, 3)}));
    auto p = Polyhedron::hull(3, pts);
    long chi = 0;
    for (auto& face : p.faces()) chi += (face.dim() % 2) ? -1 : 1;
    CHECK(chi == 1);
    for (auto& v : pts) CHECK(p.contains(v));
  }
}

TEST_CASE("intersect") {
  auto xaxis = Polyhedron::nonempty(2, {}, {le({0, 1}, 0)});
  auto yaxis = Polyhedron::nonempty(2, {}, {le({1, 0}, 0)});
  CHECK(*intersect(xaxis, yaxis) == Polyhedron::point(rv({0, 0})));
  CHECK_FALSE(intersect(Polyhedron::nonempty(1, {le({1}, 0)}), Polyhedron::nonempty(1, {le({-1}, -1)})));
  auto diag = Polyhedron::nonempty(2, {}, {le({1, -1}, 0)});
  auto other = Polyhedron::hull(2, {rv({3, 1})}, {rv({1, 0}), rv({-1, 0})});
  CHECK(*intersect(diag, other) == Polyhedron::point(rv({1, 1})));
}

TEST_CASE("common refinement") {
  auto R = Polyhedron::whole_space(1);
  auto at = [](long c) {
    return Complex(1, {Polyhedron::nonempty(1, {le({1}, c)}), Polyhedron::nonempty(1, {le({-1}, -c)})});
  };
  auto r = common_refinement(at(0), at(1));
  CHECK(r.cells_of_dim(0).size() == 2);
  CHECK(r.cells_of_dim(1).size() == 3);
  auto c0 = at(0);
  CHECK(common_refinement(c0, c0).cells() == c0.cells());
  // fans of max{x,y} and max{x,0}
  Complex f1(2, {Polyhedron::nonempty(2, {le({1, -1}, 0)}), Polyhedron::nonempty(2, {le({-1, 1}, 0)})});
  Complex f2(2, {Polyhedron::nonempty(2, {le({1, 0}, 0)}), Polyhedron::nonempty(2, {le({-1, 0}, 0)})});
  auto ref = common_refinement(f1, f2);
  CHECK(ref.cells_of_dim(2).size() == 4);
  CHECK(ref.cells_of_dim(1).size() == 4);
  CHECK(ref.cells_of_dim(0).size() == 1);
  CHECK(ref.is_valid());
  (void)R;
}

TEST_CASE("normal vectors") {
  auto origin = Polyhedron::point(rv({0, 0}));
  auto r = ray(rv({1, 0}));
  CHECK(normal_vector({origin, 1}, {r, 1}) == rv({1, 0}));
  CHECK(normal_vector({origin, 1}, {r, 2}) == rv({2, 0}));
  auto diag = Polyhedron::nonempty(2, {}, {le({1, -1}, 0)});
  auto half = Polyhedron::nonempty(2, {le({1, -1}, 0)});
  CHECK(normal_vector({diag, 1}, {half, 1}) == rv({0, 1}));
  CHECK_THROWS(normal_vector({origin, 1}, {half, 1}));

  for (int t = 0; t < 40; ++t) {
    std::vector<RatVec> pts;
    for (int k = 0; k < 5; ++k) pts.push_back(rv({oracle::uniform(-4, 4), oracle::uniform(-4, 4), oracle::uniform(-4, 4)}));
    auto p = Polyhedron::hull(3, pts);
    if (p.dim() == 0) continue;
    Rational ls(oracle::uniform(1, 5), oracle::uniform(1, 3)), lt(oracle::uniform(1, 5), oracle::uniform(1, 3));
    ls.canonicalize();
    lt.canonicalize();
    for (auto& tau : p.facets()) {
      RatVec n = normal_vector({tau, lt}, {p, ls});
      // mu_sigma = mu_tau ∧ n
      CHECK(quotient_multiplier(tau.lattice(), p.lattice(), {n}) == ls / lt);
      CHECK(p.lattice().contains(scale(n, lt / ls)));
      CHECK(dot(p.facet_inequality(tau).a, n) < 0);
      CHECK(normal_vector({tau, lt}, {p, ls * 3}) == scale(n, Rational(3)));
      CHECK(normal_vector({tau, lt * 2}, {p, ls}) == scale(n, Rational(1, 2)));
    }
  }
}

TEST_CASE("weights") {
  auto L = [](std::vector<RatVec> g) { return span_lattice(g, g.front().size()); };
  auto xaxis = L({rv({1, 0})});
  auto plane = L({rv({1, 0}), rv({0, 1})});
  CHECK(weight_quotient(xaxis, 1, plane, 1) == 1);
  CHECK(weight_quotient(L({rv({1, 1})}), 1, plane, 1) == 1);
  CHECK(quotient_multiplier(L({rv({1, 1})}), plane, {rv({0, 1})}) == 1);
  CHECK(weight_wedge(xaxis, 2, plane, 1) == 2);
  CHECK_THROWS(weight_wedge(L({rv({0, 1})}), 1, xaxis, 1));

  auto [pt, w] = stable_weight(xaxis, 1, L({rv({0, 1})}), 1);
  CHECK(pt.rank() == 0);
  CHECK(w == 1);
  CHECK(stable_weight(xaxis, 1, L({rv({1, 2})}), 1).second == 2);
  CHECK(stable_weight(xaxis, 3, L({rv({1, 2})}), 5).second == 30);
  CHECK_THROWS(stable_weight(xaxis, 1, L({rv({2, 0})}), 1));

  for (int t = 0; t < 60; ++t) {
    auto rnd = [] { return rv({oracle::uniform(-3, 3), oracle::uniform(-3, 3), oracle::uniform(-3, 3)}); };
    std::vector<RatVec> g1{rnd(), rnd()}, g2{rnd()};
    if (t % 2) g2.push_back(rnd());
    if (rank(RatMatrix::from_rows(g1, 3)) != 2 || rank(RatMatrix::from_rows(g2, 3)) != g2.size()) continue;
    auto n1 = L(g1), n2 = L(g2);
    std::vector<RatVec> all = g1;
    all.insert(all.end(), g2.begin(), g2.end());
    if (rank(RatMatrix::from_rows(all, 3)) != 3) {
      CHECK_THROWS(stable_weight(n1, 1, n2, 1));
      continue;
    }
    auto [meet, m] = stable_weight(n1, 1, n2, 1);
    CHECK(stable_weight(n2, 1, n1, 1).second == m);
    CHECK(meet.rank() + 3 == n1.rank() + n2.rank());
    // oracle: index of L1 + L2 in Z^3 is the gcd of 3x3 minors of the stacked bases
    std::vector<IntVec> stacked = n1.basis();
    for (auto& v : n2.basis()) stacked.push_back(v);
    Integer g = 0;
    oracle::for_each_subset(stacked.size(), 3, [&](const std::vector<std::size_t>& rows) {
      std::vector<RatVec> sub;
      for (auto r : rows) sub.push_back(to_rational_vector(stacked[r]));
      Integer d = oracle::leibniz_det(sub).get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    });
    CHECK(m == Rational(g));
  }
}

TEST_CASE("cell product") {
  auto I = box(1, 0, 1);
  auto c = cell_product({I, 2}, {I, 3});
  CHECK(c.cell == box(2, 0, 1));
  CHECK(c.weight == 6);
  auto pt = cell_product({Polyhedron::point(rv({0})), 1}, {I, 5});
  CHECK(pt.cell.dim() == 1);
  CHECK(pt.weight == 5);
}

TEST_CASE("chart round trip") {
  for (int t = 0; t < 20; ++t) {
    std::vector<RatVec> pts;
    for (int k = 0; k < 3; ++k) pts.push_back(rv({oracle::uniform(-4, 4), oracle::uniform(-4, 4), oracle::uniform(-4, 4)}));
    auto p = Polyhedron::hull(3, pts);
    CHECK(Polyhedron::from_chart(p.chart(), p.chart_inequalities()) == p);
    for (auto& v : pts) CHECK(p.chart().to_ambient(p.chart().to_chart(v)) == v);
  }
}
