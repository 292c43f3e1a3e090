#include <array>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sys/wait.h>

#include "current_oracles.hpp"
#include "dforms/intersection.hpp"
#include "dforms/io.hpp"

using namespace dforms;
using namespace fixture;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records the first failed condition.
struct Tally {
  Outcome out;
  int checked = 0;
  void require(bool cond, const std::string& what) {
    ++checked;
    if (!cond && out.ok) {
      out.ok = false;
      out.detail = what;
    }
  }
};

DeltaForm whole(std::size_t n) { return DeltaForm::cell(Polyhedron::whole_space(n)); }
DeltaForm pt(const RatVec& p) { return DeltaForm::cell(Polyhedron::point(p)); }

RatVec unit(std::size_t n, std::size_t i) {
  RatVec e(n);
  e[i] = 1;
  return e;
}

DeltaForm curve(const std::vector<std::array<long, 3>>& monomials) {
  std::vector<AffineFunction> fs;
  for (const auto& [i, j, c] : monomials) fs.push_back({rv({i, j}), Rational(c)});
  return divisor_intersect(PLFunction::max_of(2, fs), whole(2));
}

Rational total_multiplicity(const DeltaForm& t) {
  return eval_pairing(t, SuperForm::constant(t.ambient(), Rational(1)), box(t.ambient(), -20, 20));
}

Outcome balancing() {
  Tally t;
  t.require(is_balanced(tropical_line(rv({0, 0}))).balanced, "standard tropical line");
  auto fan = PLFunction::max_of(2, {{unit(2, 0), Rational(0)}, {unit(2, 1), Rational(0)}, {RatVec(2), Rational(0)}});
  t.require(is_balanced(divisor_intersect(fan, whole(2))).balanced, "fan of max{x,y,0}");
  const BalanceReport bad = is_balanced(tropical_line(rv({0, 0}), {1, 1, 2}));
  t.require(!bad.balanced && bad.failures.size() == 1, "weighted line (1,1,2) must be rejected");
  if (!bad.balanced && bad.failures.size() == 1) {
    const auto& f = bad.failures[0];
    t.require(f.tau == Polyhedron::point(rv({0, 0})), "failure located at the origin");
    t.require(f.residue.size() == 2 && f.residue[0] == SuperForm::constant(0, Rational(1)) &&
                  f.residue[1] == SuperForm::constant(0, Rational(1)),
              "residue direction (1,1)");
  }
  return t.out;
}

// Random bounded cell of dimension d in Q^n: box, simplex or a lower-dimensional slice.
Polyhedron random_cell(std::size_t n) {
  switch (oracle::uniform(0, 2)) {
    case 0: {
      std::vector<Inequality> hs;
      for (std::size_t i = 0; i < n; ++i) {
        hs.push_back({unit(n, i), half(oracle::uniform(1, 3))});
        hs.push_back({scale(unit(n, i), Rational(-1)), half(oracle::uniform(0, 2))});
      }
      return Polyhedron::nonempty(n, hs);
    }
    case 1: {
      std::vector<RatVec> pts{RatVec(n)};
      for (std::size_t i = 0; i < n; ++i) {
        RatVec p = random_point(n);
        p[i] += 2;
        pts.push_back(p);
      }
      return Polyhedron::hull(n, pts);
    }
    default: {
      RatVec a = random_point(n), b = random_point(n);
      b[0] += 1;
      return Polyhedron::hull(n, {a, b});
    }
  }
}

Outcome stokes() {
  Tally t;
  const Polyhedron interval = Polyhedron::hull(1, {rv({0}), rv({1})});
  const SuperForm rho = wedge(SuperForm::function(Polynomial::variable(1, 0) * Polynomial::variable(1, 0)),
                              SuperForm::dsecond_coordinate(1, 0));
  const StokesResult ex = stokes_check(rho, {interval, 1}, Boundary::first);
  t.require(ex.equal && ex.lhs == 1, "x^2 d''x on [0,1] must give 1");
  oracle::rng().seed(101u);
  int instances = 0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (int k = 0; k < 20; ++k) {
      const Polyhedron cell = random_cell(n);
      const std::size_t d = cell.dim();
      if (d == 0) continue;
      const Boundary which = k % 2 ? Boundary::first : Boundary::second;
      const int p = which == Boundary::first ? static_cast<int>(d) - 1 : static_cast<int>(d);
      const int q = which == Boundary::first ? static_cast<int>(d) : static_cast<int>(d) - 1;
      // An ambient form whose restriction to the cell has the right bidegree.
      const SuperForm alpha = oracle::random_form(n, p, q, 3, 3);
      const StokesResult r = stokes_check(alpha, {cell, half(oracle::uniform(1, 4))}, which);
      t.require(r.equal, "Stokes on " + cell.to_string());
      ++instances;
    }
  t.require(instances >= 50, "at least 50 Stokes instances");
  return t.out;
}

Outcome operator_algebra() {
  Tally t;
  oracle::rng().seed(202u);
  int forms = 0;
  for (std::size_t n : {2u, 3u})
    for (int k = 0; k < 12; ++k) {
      const DeltaForm x = random_balanced(n);
      const std::string at = " on " + x.to_string();
      const DeltaForm z(n), bp = boundary_prime(x), bs = boundary_second(x);
      t.require(boundary_prime(bp).empty(), "bd' bd' = 0" + at);
      t.require(boundary_second(bs).empty(), "bd'' bd'' = 0" + at);
      t.require(equals(boundary_prime(bs) + boundary_second(bp), z), "bd' bd'' + bd'' bd' = 0" + at);
      t.require(equals(boundary_prime(dP_prime(x)) + dP_prime(bp), z), "bd' dP' + dP' bd' = 0" + at);
      t.require(equals(boundary_prime(dP_second(x)) + dP_second(bp) + boundary_second(dP_prime(x)) + dP_prime(bs), z),
                "mixed identity" + at);
      ++forms;
    }
  t.require(forms >= 20, "at least 20 random forms");
  return t.out;
}

Outcome boundary_formula() {
  Tally t;
  oracle::rng().seed(303u);
  for (std::size_t n : {1u, 2u})
    for (int k = 0; k < 15; ++k) {
      const DeltaForm x = random_balanced(n);
      t.require(equals(boundary_prime(x), boundary_prime_by_contraction(x)), "contraction oracle on " + x.to_string());
      if (n == 1) {
        t.require(duality_holds(x, Side::prime), "d' duality on " + x.to_string());
        t.require(duality_holds(x, Side::second), "d'' duality on " + x.to_string());
      }
    }
  return t.out;
}

Outcome divisor_commutativity() {
  Tally t;
  oracle::rng().seed(404u);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = k % 3 == 2 ? 1 : 2;
    const PLFunction a = random_pl(n), b = random_pl(n);
    const DeltaForm x = random_balanced(n);
    t.require(divisor_commutes_check(a, b, x), "orders differ on " + x.to_string());
  }
  return t.out;
}

Outcome corner_locus() {
  Tally t;
  oracle::rng().seed(505u);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = k % 3 == 2 ? 1 : 2;
    const PLFunction phi = random_pl(n);
    const DeltaForm x = random_balanced(n);
    t.require(corner_locus_identity_check(phi, x).agree, "three expressions differ on " + x.to_string());
  }
  const std::vector<DeltaForm> closed{tropical_line(rv({1, 0})), whole(2), pt(rv({1, 1})),
                                      curve({{0, 0, 0}, {1, 0, 1}, {0, 1, 1}, {2, 0, 0}, {1, 1, 1}, {0, 2, 0}})};
  for (int k = 0; k < 8; ++k) {
    const DeltaForm& x = closed[static_cast<std::size_t>(k) % closed.size()];
    const PLFunction phi = random_pl(2);
    const DeltaForm phit = ps_multiply(PiecewiseForm::from_pl(phi), x);
    t.require(equals(divisor_intersect(phi, x), d_prime(d_second(phit))), "d'd''(phi T) on " + x.to_string());
  }
  return t.out;
}

AffineMap linear(std::size_t rows, std::size_t cols, std::initializer_list<long> entries, RatVec offset = {}) {
  RatMatrix m(rows, cols);
  auto it = entries.begin();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(*it++);
  if (offset.empty()) offset = RatVec(rows);
  return {m, offset};
}

DeltaForm line(const RatVec& through, const RatVec& dir, const Rational& w = 1) {
  return DeltaForm::cell(Polyhedron::hull(through.size(), {through}, {dir, scale(dir, Rational(-1))}), w);
}

const DeltaForm& conic() {
  static const DeltaForm c = curve({{0, 0, 0}, {1, 0, 1}, {0, 1, 1}, {2, 0, 0}, {1, 1, 1}, {0, 2, 0}});
  return c;
}

Outcome flagship() {
  Tally t;
  const DeltaForm l = tropical_line(rv({0, 0}));
  const DeltaForm conic2 = curve({{0, 0, 1}, {1, 0, 3}, {0, 1, 0}, {2, 0, 2}, {1, 1, 2}, {0, 2, -2}});
  const DeltaForm cubic = curve({{0, 0, 0}, {1, 0, 2}, {0, 1, 2}, {2, 0, 3}, {1, 1, 4}, {0, 2, 3}, {3, 0, 3},
                                 {2, 1, 5}, {1, 2, 5}, {0, 3, 3}});
  const SuperForm poly = SuperForm::function(Polynomial::variable(2, 0) * Polynomial::variable(2, 1) +
                                             Polynomial::constant(2, Rational(2)));
  const DeltaForm a = multiply(wedge(poly, SuperForm::dprime_coordinate(2, 0)), whole(2));
  const std::vector<std::pair<DeltaForm, DeltaForm>> corpus{
      {l, l},
      {l, tropical_line(rv({3, 1}))},
      {2 * l, tropical_line(rv({1, -1}))},
      {conic(), l},
      {conic(), conic2},
      {cubic, l},
      {a, l},
      {multiply(SuperForm::dsecond_coordinate(2, 1), l), a},
      {ps_multiply(PiecewiseForm::from_pl(PLFunction::max_of(2, {{unit(2, 0), Rational(0)}, {unit(2, 1), Rational(0)}})),
                   whole(2)),
       conic()},
      {line(rv({0, 0}), rv({1, 2}), 3), line(rv({1, 0}), rv({1, -1}))},
      {tropical_fan3(rv({0, 0, 0}), 2), tropical_fan3(rv({1, 2, 0}), 2)},
      {tropical_fan3(rv({0, 0, 0}), 2), line(rv({0, 0, 0}), rv({1, 2, 3}))},
      {tropical_fan3(rv({0, 0, 0}), 2), tropical_fan3(rv({1, -1, 2}), 1)},
  };
  for (const auto& [s, u] : corpus) {
    const DeltaForm diag = wedge_diagonal(s, u);
    auto v = find_generic_vector(s, u);
    t.require(v.has_value(), "no generic vector for " + s.to_string());
    if (v) t.require(equals(diag, displacement_product(s, u, *v)), "mismatch on " + s.to_string() + " and " + u.to_string());
  }
  t.require(equals(wedge_diagonal(l, l), pt(rv({0, 0}))), "L ∧ L = [{0},1]");
  t.require(equals(wedge_diagonal(l, tropical_line(rv({3, 1}))), pt(rv({1, 1}))), "L ∧ ((3,1)+L) = [{(1,1)},1]");
  t.require(equals(displacement_product(l, tropical_line(rv({3, 1})), rv({1, 2})), pt(rv({1, 1}))),
            "displaced L ∧ ((3,1)+L)");
  t.require(total_multiplicity(wedge_diagonal(l, tropical_line(rv({2, -1})))) == 1, "Bezout (1,1)");
  t.require(total_multiplicity(wedge_diagonal(l, conic())) == 2, "Bezout (1,2)");
  t.require(total_multiplicity(wedge_diagonal(conic(), conic2)) == 4, "Bezout (2,2)");
  return t.out;
}

Outcome product_suite() {
  Tally t;
  const DeltaForm l = tropical_line(rv({0, 0}));
  const SuperForm poly = SuperForm::function(Polynomial::variable(2, 1) + Polynomial::constant(2, Rational(1)));
  struct Case {
    DeltaForm s, u, w;
    AffineMap f;
  };
  const std::vector<Case> cases{
      {l, l, pt(rv({0, 0})), linear(1, 2, {1, 0})},
      {l, tropical_line(rv({3, 1})), conic(), linear(1, 2, {1, -1}, rv({1}))},
      {multiply(poly, l), multiply(SuperForm::dsecond_coordinate(2, 0), whole(2)), tropical_line(rv({1, 1})),
       linear(2, 2, {1, 1, 0, 1})},
      {multiply(wedge(poly, SuperForm::dprime_coordinate(2, 1)), whole(2)), l, pt(rv({1, 0})), linear(1, 2, {0, 2})},
      {tropical_fan3(rv({0, 0, 0}), 2), tropical_fan3(rv({1, 0, 0}), 2), tropical_fan3(rv({0, 0, 1}), 1),
       linear(2, 3, {1, 0, 0, 0, 1, 0})},
  };
  std::map<std::string, int> passes;
  for (const auto& c : cases) {
    const SuiteReport r = product_property_suite(c.s, c.u, c.w, c.f);
    for (const auto& e : r.entries) {
      t.require(e.status != "fail", e.name + ": " + e.detail);
      if (e.status == "pass") ++passes[e.name];
    }
  }
  for (const char* name : {"graded commutativity", "associativity", "Leibniz d'", "Leibniz d''", "Leibniz dP'",
                           "Leibniz dP''", "Leibniz bd'", "Leibniz bd''", "projection formula", "pullback multiplicative",
                           "diagonal formula", "exterior product", "partial diagonal"})
    t.require(passes[name] > 0, std::string(name) + " never evaluated");
  return t.out;
}

Outcome piecewise_round_trip() {
  Tally t;
  oracle::rng().seed(909u);
  int tried = 0;
  for (int k = 0; k < 60 && tried < 15; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(k % 2);
    const DeltaForm x = random_balanced(n);
    auto td = x.tridegree();
    if (!td || std::get<2>(*td) != 0) continue;
    ++tried;
    t.require(equals(from_piecewise(as_piecewise_form(x)), x), "round trip on " + x.to_string());
  }
  t.require(tried >= 10, "at least 10 round trips");
  const Polyhedron right = Polyhedron::nonempty(2, {{rv({-1, 0}), Rational(0)}});
  const DeltaForm half_plane = DeltaForm::cell(right);
  try {
    as_piecewise_form(half_plane);
    t.require(false, "incompatible pieces must be reported");
  } catch (const PreconditionError& e) {
    t.require(!e.cells().empty(), "witness cells");
    t.require(e.cells().front() == Polyhedron::nonempty(2, {}, {{rv({1, 0}), Rational(0)}}), "witness face x = 0");
  }
  return t.out;
}

std::pair<int, std::string> run_cli(const std::string& args, int threads) {
  const std::string cmd = "cd '" DFORMS_CORPUS_DIR "' && DFORMS_THREADS=" + std::to_string(threads) + " '" DFORMS_CLI "' " +
                          args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome determinism() {
  Tally t;
  const io::Json manifest = io::read_file(DFORMS_CORPUS_DIR "/manifest.json");
  for (const auto& run : manifest.at("runs")) {
    std::string args;
    for (const auto& a : run) args += "'" + a.get<std::string>() + "' ";
    const auto first = run_cli(args, 1), again = run_cli(args, 1), parallel = run_cli(args, 4);
    t.require(first.first >= 0 && first.first <= 2 && !first.second.empty(), "no output from " + args);
    t.require(first == again, "repeated run differs: " + args);
    t.require(first == parallel, "thread count changes output: " + args);
  }
  const auto both = run_cli("wedge line.json line.json --method both", 1);
  t.require(both.first == 0 && io::Json::parse(both.second).at("verdict") == "match", "wedge both verdict");
  t.require(run_cli("check-balance line_unbalanced.json", 1).first == 2, "unbalanced input exits with 2");
  t.require(run_cli("apply --op nope line.json", 1).first == 1, "bad option exits with 1");
  return t.out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"balancing", balancing},
      {"Stokes suite", stokes},
      {"operator algebra", operator_algebra},
      {"boundary formula cross-check", boundary_formula},
      {"divisor commutativity", divisor_commutativity},
      {"corner-locus identities", corner_locus},
      {"diagonal product equals displacement product", flagship},
      {"product identities", product_suite},
      {"piecewise round trip", piecewise_round_trip},
      {"CLI determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first;
    if (!o.ok) std::cout << ": " << o.detail;
    std::cout << std::endl;
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
