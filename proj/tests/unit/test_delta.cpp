#include <doctest.h>

#include "current_oracles.hpp"
#include "dforms/refine.hpp"

using namespace dforms;
using namespace fixture;

namespace {

Polynomial x(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }
Polynomial c(std::size_t n, long v) { return Polynomial::constant(n, Rational(v)); }
SuperForm dp(std::size_t n, std::size_t i) { return SuperForm::dprime_coordinate(n, i); }
SuperForm ds(std::size_t n, std::size_t i) { return SuperForm::dsecond_coordinate(n, i); }
SuperForm fn(const Polynomial& p) { return SuperForm::function(p); }

int parity(const Tridegree& t) { return (std::get<0>(t) + std::get<1>(t)) % 2; }

}  // namespace

TEST_CASE("canonical representation") {
  const Polyhedron r = ray(rv({0}), rv({1}));
  const SuperForm a = fn(x(1, 0));
  DeltaForm doubled(1, {{r, Rational(2), a}});
  DeltaForm folded(1, {{r, Rational(1), a * Rational(2)}});
  CHECK(doubled.canonical().terms().size() == 1);
  CHECK(doubled.canonical().terms()[0].weight == 1);
  CHECK(doubled.canonical().terms()[0].form == folded.terms()[0].form);

  DeltaForm zero(1, {{r, Rational(1), SuperForm(1)}});
  CHECK(zero.canonical().empty());

  DeltaForm two(1, {{r, Rational(1), a}, {r, Rational(3), fn(c(1, 1))}});
  auto can = two.canonical();
  REQUIRE(can.terms().size() == 1);
  CHECK(can.terms()[0].form == fn(x(1, 0) + c(1, 3)));
  CHECK(canonicalize(can).terms().size() == 1);
  CHECK(canonicalize(can).to_string() == can.to_string());
}

TEST_CASE("equality of currents") {
  const Polyhedron whole = Polyhedron::whole_space(1);
  DeltaForm t = DeltaForm::with_ambient_form(whole, 1, fn(x(1, 0)));
  DeltaForm sub = DeltaForm::with_ambient_form(ray(rv({0}), rv({1})), 1, fn(x(1, 0))) +
                  DeltaForm::with_ambient_form(ray(rv({0}), rv({-1})), 1, fn(x(1, 0)));
  CHECK(equals(t, sub));
  CHECK_FALSE(equals(t, DeltaForm::with_ambient_form(whole, 2, fn(x(1, 0)))));
  CHECK(equals(DeltaForm(2), DeltaForm(2, {})));
  CHECK(equals(tropical_line(rv({0, 0})), tropical_line(rv({0, 0})) + DeltaForm(2)));

  // Subdividing a 2-cell into four quadrants.
  DeltaForm sq = DeltaForm::with_ambient_form(box(2, -1, 1), 1, dp(2, 0));
  DeltaForm quads(2);
  for (long a : {-1, 0})
    for (long b : {-1, 0}) {
      auto q = Polyhedron::hull(2, {rv({a, b}), rv({a + 1, b}), rv({a, b + 1}), rv({a + 1, b + 1})});
      quads += DeltaForm::with_ambient_form(q, 1, dp(2, 0));
    }
  CHECK(equals(sq, quads));
  CHECK_FALSE(equals(sq, quads + DeltaForm::cell(Polyhedron::point(rv({0, 0})))));
}

TEST_CASE("tridegree decomposition") {
  const Polyhedron line = Polyhedron::hull(2, {rv({0, 0})}, {rv({1, 0}), rv({-1, 0})});
  DeltaForm t = DeltaForm::cell(line) + DeltaForm::with_ambient_form(line, 1, dp(2, 0).times(x(2, 1) + c(2, 1)));
  auto comps = tridegree_components(t);
  REQUIRE(comps.size() == 2);
  CHECK(comps.count({0, 0, 1}) == 1);
  CHECK(comps.count({1, 0, 1}) == 1);
  DeltaForm sum(2);
  for (const auto& [k, v] : comps) sum += v;
  CHECK(equals(sum, t));
  CHECK(tridegree_components(tropical_line(rv({0, 0}))).size() == 1);
  CHECK(tridegree_components(DeltaForm(3)).empty());
}

TEST_CASE("balancing") {
  CHECK(is_balanced(tropical_line(rv({0, 0}))).balanced);

  auto report = is_balanced(tropical_line(rv({0, 0}), {1, 1, 2}));
  CHECK_FALSE(report.balanced);
  REQUIRE(report.failures.size() == 1);
  const auto& f = report.failures[0];
  CHECK(f.tau == Polyhedron::point(rv({0, 0})));
  REQUIRE(f.residue.size() == 2);
  CHECK(f.residue[0] == SuperForm::constant(0, 1));
  CHECK(f.residue[1] == SuperForm::constant(0, 1));
  CHECK_FALSE(f.projected.empty());

  DeltaForm pm = DeltaForm::with_ambient_form(ray(rv({0}), rv({1})), 1, fn(x(1, 0) + c(1, 1))) +
                 DeltaForm::with_ambient_form(ray(rv({0}), rv({-1})), 1, fn(c(1, 1) - x(1, 0)));
  CHECK(is_balanced(pm).balanced);
  DeltaForm jump = DeltaForm::with_ambient_form(ray(rv({0}), rv({1})), 1, fn(x(1, 0) + c(1, 1))) +
                   DeltaForm::with_ambient_form(ray(rv({0}), rv({-1})), 1, fn(x(1, 0) - c(1, 1)));
  CHECK_FALSE(is_balanced(jump).balanced);

  try {
    boundary_prime(jump);
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    CHECK(e.kind() == "unbalanced");
    REQUIRE(e.balance().has_value());
    CHECK_FALSE(e.balance()->balanced);
  }
}

TEST_CASE("forms of top degree in one direction are balanced on any weights") {
  for (int trial = 0; trial < 20; ++trial) {
    // (n - r, q, r) on the tropical line and (p, n - r, r) on the unbalanced one alike.
    auto line = tropical_line(random_point(2), {1, 2, 3});
    auto q = static_cast<int>(oracle::uniform(0, 1));
    DeltaForm t(2);
    for (const auto& term : line.terms()) {
      SuperForm a(1);
      if (trial % 2) a.add_term(1, q ? 1 : 0, oracle::random_polynomial(1, 2));
      else a.add_term(q ? 1 : 0, 1, oracle::random_polynomial(1, 2));
      t += DeltaForm(2, {{term.cell, term.weight, a}});
    }
    CHECK(is_balanced(t).balanced);
  }
}

TEST_CASE("polyhedral derivatives") {
  const Polyhedron whole = Polyhedron::whole_space(1);
  DeltaForm t = DeltaForm::with_ambient_form(whole, 1, ds(1, 0).times(x(1, 0) * x(1, 0)));
  DeltaForm expected = DeltaForm::with_ambient_form(whole, 1, wedge(dp(1, 0), ds(1, 0)).times(x(1, 0) * Rational(2)));
  CHECK(equals(dP_prime(t), expected));
  CHECK(dP_prime(tropical_line(rv({0, 0}))).empty());
  for (int trial = 0; trial < 10; ++trial) {
    auto r = random_balanced(2);
    CHECK(dP_prime(dP_prime(r)).empty());
    CHECK(dP_second(dP_second(r)).empty());
    CHECK(is_balanced(dP_prime(r)).balanced);
    CHECK(is_balanced(dP_second(r)).balanced);
  }
}


TEST_CASE("boundary derivatives on half-lines") {
  const Polyhedron pos = ray(rv({0}), rv({1})), neg = ray(rv({0}), rv({-1}));
  const DeltaForm origin = DeltaForm::cell(Polyhedron::point(rv({0})));
  DeltaForm t = DeltaForm::with_ambient_form(pos, 1, ds(1, 0));
  CHECK(is_balanced(t).balanced);
  CHECK(equals(boundary_prime(t), -origin));
  CHECK(equals(d_prime(t), origin));
  CHECK(duality_holds(t, Side::prime));

  DeltaForm pair = t + DeltaForm::with_ambient_form(neg, 1, ds(1, 0));
  CHECK(boundary_prime(pair).empty());
  CHECK(duality_holds(pair, Side::prime));

  DeltaForm s = DeltaForm::with_ambient_form(pos, 1, dp(1, 0));
  CHECK(equals(boundary_second(s), origin));
  CHECK(duality_holds(s, Side::second));

  CHECK(boundary_prime(tropical_line(rv({1, 2}))).empty());
  CHECK(boundary_second(tropical_line(rv({1, 2}))).empty());
  CHECK(d_prime(tropical_line(rv({0, 0}))).empty());

  // Segment [0,1] with x^2 d''x: the boundary sits at both endpoints.
  DeltaForm seg = DeltaForm::with_ambient_form(segment(rv({0}), rv({1})), 1, ds(1, 0).times(x(1, 0) * x(1, 0)));
  CHECK(equals(boundary_prime(seg), DeltaForm::cell(Polyhedron::point(rv({1})))));
  CHECK(duality_holds(seg, Side::prime));
}

TEST_CASE("boundary derivatives in the plane") {
  // d''x1 on the strip 0 <= x1 <= 1: the boundary lives on the two vertical lines.
  const Polyhedron strip = Polyhedron::nonempty(2, {{rv({1, 0}), Rational(1)}, {rv({-1, 0}), Rational(0)}});
  DeltaForm sq = DeltaForm::with_ambient_form(strip, 1, ds(2, 0).times(x(2, 1) + c(2, 1)));
  CHECK(duality_holds(sq, Side::prime));
  CHECK(duality_holds(sq, Side::second));
  auto b = boundary_prime(sq);
  for (const auto& term : b.terms()) CHECK(term.cell.dim() == 1);
  CHECK(b.tridegree() == Tridegree{0, 0, 1});

  // Tropical line carrying d''-forms.
  DeltaForm tl = multiply(ds(2, 0).times(x(2, 1)) + ds(2, 1).times(x(2, 0)), tropical_line(rv({0, 0})));
  REQUIRE(is_balanced(tl).balanced);
  CHECK(duality_holds(tl, Side::prime));
  CHECK(duality_holds(tl, Side::second));
}

TEST_CASE("duality oracle on random balanced forms") {
  for (std::size_t n : {1u, 2u})
    for (int trial = 0; trial < 25; ++trial) {
      DeltaForm t = random_balanced(n);
      REQUIRE(is_balanced(t).balanced);
      CHECK_MESSAGE(duality_holds(t, Side::prime), t.to_string());
      CHECK_MESSAGE(duality_holds(t, Side::second), t.to_string());
    }
}

TEST_CASE("boundary identities") {
  for (std::size_t n : {1u, 2u})
    for (int trial = 0; trial < 15; ++trial) {
      DeltaForm t = random_balanced(n);
      auto bp = boundary_prime(t), bs = boundary_second(t);
      CHECK(is_balanced(bp).balanced);
      CHECK(is_balanced(bs).balanced);
      CHECK(boundary_prime(bp).empty());
      CHECK(boundary_second(bs).empty());
      CHECK(equals(boundary_prime(bs) + boundary_second(bp), DeltaForm(n)));
      CHECK(equals(boundary_prime(dP_prime(t)) + dP_prime(bp), DeltaForm(n)));
      CHECK(equals(boundary_second(dP_second(t)) + dP_second(bs), DeltaForm(n)));
      CHECK(equals(boundary_prime(dP_second(t)) + dP_second(bp) + boundary_second(dP_prime(t)) + dP_prime(bs), DeltaForm(n)));
      CHECK(d_prime(d_prime(t)).empty());
      CHECK(equals(d_prime(d_second(t)) + d_second(d_prime(t)), DeltaForm(n)));
    }
}

TEST_CASE("operators are trihomogeneous") {
  for (int trial = 0; trial < 20; ++trial) {
    DeltaForm t = random_balanced(2);
    auto td = t.tridegree();
    if (!td) continue;
    const auto [p, q, r] = *td;
    auto shifted = [](const DeltaForm& s, Tridegree want) {
      auto got = s.tridegree();
      return !got || *got == want;
    };
    CHECK(shifted(dP_prime(t), {p + 1, q, r}));
    CHECK(shifted(dP_second(t), {p, q + 1, r}));
    CHECK(shifted(boundary_prime(t), {p, q - 1, r + 1}));
    CHECK(shifted(boundary_second(t), {p - 1, q, r + 1}));
  }
}


TEST_CASE("boundary agrees with the contraction formula") {
  for (std::size_t n : {1u, 2u})
    for (int trial = 0; trial < 25; ++trial) {
      DeltaForm t = random_balanced(n);
      CHECK_MESSAGE(equals(boundary_prime(t), boundary_prime_by_contraction(t)), t.to_string());
    }
  DeltaForm tl = multiply(ds(2, 0).times(x(2, 1) * x(2, 0)) + ds(2, 1), tropical_line(rv({1, 0}), {2, 2, 2}));
  CHECK(equals(boundary_prime(tl), boundary_prime_by_contraction(tl)));
}

TEST_CASE("piecewise multiplication") {
  DeltaForm tl = tropical_line(rv({0, 0}));
  CHECK(equals(ps_multiply(PiecewiseForm::global(SuperForm::constant(2, 1)), tl), tl));
  DeltaForm pt = DeltaForm::cell(Polyhedron::point(rv({2})));
  CHECK(equals(multiply(fn(x(1, 0) * x(1, 0)), pt), Rational(4) * pt));

  // max{x, 0} on the line cuts the whole space at the origin.
  PLFunction f = PLFunction::max_of(1, {{rv({1}), Rational(0)}, {rv({0}), Rational(0)}});
  DeltaForm whole = DeltaForm::cell(Polyhedron::whole_space(1));
  DeltaForm prod = ps_multiply(PiecewiseForm::from_pl(f), whole);
  CHECK(equals(prod, DeltaForm::with_ambient_form(ray(rv({0}), rv({1})), 1, fn(x(1, 0)))));

  for (int trial = 0; trial < 15; ++trial) {
    DeltaForm t = random_balanced(2);
    DeltaForm s = ps_multiply(PiecewiseForm::from_pl(random_pl(2)), t);
    CHECK(is_balanced(s).balanced);
  }
}

TEST_CASE("exterior product") {
  const DeltaForm origin = DeltaForm::cell(Polyhedron::point(rv({0})));
  DeltaForm t = DeltaForm::with_ambient_form(ray(rv({0}), rv({1})), 1, ds(1, 0).times(x(1, 0)));
  DeltaForm prod = exterior_product(origin, t);
  DeltaForm embedded = DeltaForm::with_ambient_form(ray(rv({0, 0}), rv({0, 1})), 1, ds(2, 1).times(x(2, 1)));
  CHECK(equals(prod, embedded));

  for (int trial = 0; trial < 12; ++trial) {
    DeltaForm a = random_balanced(1), b = random_balanced(1);
    auto ta = a.tridegree(), tb = b.tridegree();
    DeltaForm ab = exterior_product(a, b);
    if (!ta || !tb) continue;
    if (auto tab = ab.tridegree()) {
      CHECK(std::get<0>(*tab) == std::get<0>(*ta) + std::get<0>(*tb));
      CHECK(std::get<1>(*tab) == std::get<1>(*ta) + std::get<1>(*tb));
      CHECK(std::get<2>(*tab) == std::get<2>(*ta) + std::get<2>(*tb));
    }
    CHECK(is_balanced(ab).balanced);
    const Rational sign = parity(*ta) ? -1 : 1;
    CHECK(equals(boundary_prime(ab), exterior_product(boundary_prime(a), b) + sign * exterior_product(a, boundary_prime(b))));
    CHECK(equals(d_second(ab), exterior_product(d_second(a), b) + sign * exterior_product(a, d_second(b))));

    // Fubini: (A × B)(p1*eta1 ∧ p2*eta2) = (-1)^{deg A deg B} A(eta1) B(eta2).
    const auto [pa, qa, ra] = *ta;
    const auto [pb, qb, rb] = *tb;
    SuperForm e1 = oracle::random_form(1, 1 - pa - ra, 1 - qa - ra, 2, 1);
    SuperForm e2 = oracle::random_form(1, 1 - pb - rb, 1 - qb - rb, 2, 1);
    Rational lhs = eval_pairing(ab, wedge(embed(e1, 2, 0), embed(e2, 2, 1)), box(2, -1, 1));
    Rational rhs = eval_pairing(a, e1, box(1, -1, 1)) * eval_pairing(b, e2, box(1, -1, 1));
    if (parity(*ta) && parity(*tb)) rhs = -rhs;
    CHECK(lhs == rhs);
  }
}

namespace {

AffineMap affine(std::vector<std::vector<long>> rows, RatVec offset) {
  std::vector<RatVec> rs;
  for (const auto& r : rows) {
    RatVec v;
    for (long e : r) v.emplace_back(e);
    rs.push_back(v);
  }
  return {RatMatrix::from_rows(rs, rs.empty() ? 0 : rs[0].size()), std::move(offset)};
}

AffineMap random_map(std::size_t m, std::size_t n) {
  RatMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(oracle::uniform(-2, 2));
  return {a, random_point(m)};
}

// Compactly supported delta-form inside [-1,1]^2.
DeltaForm random_compact(std::size_t n) {
  const auto [p, q] = random_bidegree(n);
  const SuperForm alpha = oracle::random_form(n, p, q, 2, 2);
  const Polyhedron cells[] = {box(n, -1, 1), Polyhedron::point(random_point(n)),
                              segment(random_point(n), random_point(n))};
  const Polyhedron& c = cells[oracle::uniform(0, 2)];
  return DeltaForm::with_ambient_form(c, Rational(oracle::uniform(1, 3)), alpha);
}

}  // namespace

TEST_CASE("push-forward") {
  const Polyhedron whole = Polyhedron::whole_space(1);
  CHECK(equals(pushforward(affine({{2}}, rv({0})), DeltaForm::with_ambient_form(whole, 1, fn(x(1, 0)))),
               DeltaForm::with_ambient_form(whole, 1, fn(x(1, 0)))));

  DeltaForm diag = pushforward(affine({{1}, {1}}, rv({0, 0})), DeltaForm::cell(whole));
  REQUIRE(diag.terms().size() == 1);
  CHECK(diag.terms()[0].weight == 1);
  CHECK(diag.terms()[0].form == SuperForm::constant(1, 1));
  CHECK(diag.terms()[0].cell == Polyhedron::hull(2, {rv({0, 0})}, {rv({1, 1}), rv({-1, -1})}));

  const Polyhedron vline = Polyhedron::hull(2, {rv({3, 0})}, {rv({0, 1}), rv({0, -1})});
  try {
    pushforward(affine({{1, 0}}, rv({0})), DeltaForm::cell(vline));
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    CHECK(e.kind() == "non_proper");
    CHECK(e.cells().at(0) == vline);
  }
  CHECK_THROWS_AS(pushforward(affine({{1, 0}}, rv({0})), DeltaForm::cell(segment(rv({0, 0}), rv({0, 1})))), PreconditionError);

  // (f_* T)(eta) = T(f^* eta) for compact T, and composites.
  for (int trial = 0; trial < 20; ++trial) {
    DeltaForm t = random_compact(2);
    AffineMap f = random_map(2, 2), g = random_map(2, 2);
    DeltaForm ft;
    try {
      ft = pushforward(f, t);
    } catch (const PreconditionError&) {
      continue;
    }
    auto td = t.tridegree();
    if (!td) continue;
    const auto [p, q, r] = *td;
    SuperForm eta = oracle::random_form(2, 2 - p - r, 2 - q - r, 2, 2);
    Rational lhs = eval_pairing(ft, eta, box(2, -20, 20));
    CHECK(lhs == eval_pairing(t, pullback_affine(f, eta), box(2, -1, 1)));
    std::optional<DeltaForm> gft;
    try {
      gft = pushforward(g, ft);
    } catch (const PreconditionError&) {
    }
    if (gft) CHECK(equals(*gft, pushforward(g.compose(f), t)));
    if (is_balanced(t).balanced) CHECK(is_balanced(ft).balanced);
  }
}

TEST_CASE("surjective pull-back") {
  const AffineMap p1 = affine({{1, 0}}, rv({0}));
  DeltaForm pre = pullback_surjective(p1, DeltaForm::cell(Polyhedron::point(rv({0}))));
  REQUIRE(pre.terms().size() == 1);
  CHECK(pre.terms()[0].cell == Polyhedron::hull(2, {rv({0, 0})}, {rv({0, 1}), rv({0, -1})}));
  CHECK(pre.terms()[0].weight == 1);
  CHECK(pre.terms()[0].form == SuperForm::constant(1, 1));

  const Polyhedron whole = Polyhedron::whole_space(2);
  AffineMap f = affine({{2, 1}, {1, 1}}, rv({1, 0}));
  SuperForm alpha = dp(2, 0).times(x(2, 1)) + ds(2, 1);
  CHECK(equals(pullback_surjective(f, DeltaForm::with_ambient_form(whole, 3, alpha)),
               DeltaForm::with_ambient_form(whole, 3, pullback_affine(f, alpha))));
  // The fiber weight makes the pull-back of the constant function 1 equal to 1.
  CHECK(equals(pullback_surjective(affine({{0, 2}}, rv({0})), DeltaForm::cell(Polyhedron::whole_space(1))),
               DeltaForm::cell(whole)));
  DeltaForm tl = tropical_line(rv({0, 0}));
  CHECK(equals(pullback_surjective(AffineMap::identity(2), tl), tl));
  CHECK_THROWS_AS(pullback_surjective(affine({{1}, {1}}, rv({0, 0})), tl), PreconditionError);

  for (int trial = 0; trial < 12; ++trial) {
    DeltaForm s = random_balanced(2);
    AffineMap g = random_map(2, 3);
    if (rank(g.matrix) != 2) continue;
    DeltaForm ps = pullback_surjective(g, s);
    CHECK(is_balanced(ps).balanced);
    CHECK(equals(d_prime(ps), pullback_surjective(g, d_prime(s))));
    CHECK(equals(d_second(ps), pullback_surjective(g, d_second(s))));
  }
}

TEST_CASE("pairing and piecewise forms") {
  const DeltaForm origin = DeltaForm::cell(Polyhedron::point(rv({0})));
  CHECK(eval_pairing(origin, fn(x(1, 0) * x(1, 0) + c(1, 3)), box(1, -1, 1)) == 3);
  const DeltaForm line = DeltaForm::cell(Polyhedron::whole_space(1));
  CHECK(eval_pairing(line, wedge(dp(1, 0), ds(1, 0)).times(x(1, 0)), box(1, 0, 1)) == Rational(1, 2));
  CHECK(eval_pairing(Rational(2) * origin, fn(c(1, 5)), box(1, -1, 1)) == 10);
  CHECK_THROWS_AS(eval_pairing(line, fn(c(1, 1)), box(1, -1, 1)), std::invalid_argument);

  PLFunction f = PLFunction::max_of(1, {{rv({1}), Rational(0)}, {rv({0}), Rational(0)}});
  PiecewiseForm pf = PiecewiseForm::from_pl(f);
  PiecewiseForm back = as_piecewise_form(from_piecewise(pf));
  REQUIRE(back.cells().size() == 2);
  CHECK(*back.form_on(Polyhedron::point(rv({3}))) == fn(x(1, 0)));
  CHECK(back.form_on(Polyhedron::point(rv({-3})))->is_zero());

  DeltaForm jump = DeltaForm::with_ambient_form(ray(rv({0}), rv({1})), 1, fn(x(1, 0) + c(1, 1))) +
                   DeltaForm::with_ambient_form(ray(rv({0}), rv({-1})), 1, fn(x(1, 0) - c(1, 1)));
  try {
    as_piecewise_form(jump);
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    CHECK(e.cells().at(0) == Polyhedron::point(rv({0})));
  }

  for (int trial = 0; trial < 10; ++trial) {
    PLFunction g = random_pl(2);
    DeltaForm t = from_piecewise(PiecewiseForm::from_pl(g));
    CHECK(equals(from_piecewise(as_piecewise_form(t)), t));
  }
}
