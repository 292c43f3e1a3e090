#include <functional>

#include "dforms/intersection.hpp"

namespace dforms {

namespace {

using Check = std::function<std::optional<std::string>()>;

// Runs one identity; nullopt from the check means both sides agree.
SuiteEntry run(const std::string& name, const Check& check) {
  try {
    auto bad = check();
    if (!bad) return {name, "pass", ""};
    return {name, "fail", *bad};
  } catch (const PreconditionError& e) {
    return {name, "skipped", e.kind() + ": " + e.what()};
  } catch (const std::exception& e) {
    return {name, "fail", e.what()};
  }
}

std::optional<std::string> compare(const DeltaForm& lhs, const DeltaForm& rhs) {
  if (equals(lhs, rhs)) return std::nullopt;
  return "lhs " + lhs.canonical().to_string() + " != rhs " + rhs.canonical().to_string();
}

int parity(const Tridegree& d) { return (std::get<0>(d) + std::get<1>(d)) % 2; }

RatVec unit(std::size_t n, std::size_t i) {
  RatVec e(n);
  e[i] = 1;
  return e;
}

// max{x_1, ..., x_n, 0}
PLFunction corner(std::size_t n) {
  std::vector<AffineFunction> fs{{RatVec(n), Rational(0)}};
  for (std::size_t i = 0; i < n; ++i) fs.push_back({unit(n, i), Rational(0)});
  return PLFunction::max_of(n, fs);
}

// max{-x_1 - ... - x_n, 1}
PLFunction opposite_corner(std::size_t n) {
  RatVec a(n);
  for (auto& x : a) x = -1;
  return PLFunction::max_of(n, {{a, Rational(0)}, {RatVec(n), Rational(1)}});
}

DeltaForm whole(std::size_t n) { return DeltaForm::cell(Polyhedron::whole_space(n)); }

AffineMap projection(std::size_t n, std::size_t m, std::size_t offset) {
  RatMatrix p(n, n + m);
  for (std::size_t i = 0; i < n; ++i) p(i, offset + i) = 1;
  return {p, RatVec(n)};
}

// (-1)^{deg A} A, componentwise.
DeltaForm graded_sign(const DeltaForm& a) {
  DeltaForm out(a.ambient());
  for (const auto& [d, c] : tridegree_components(a)) out += parity(d) ? -c : c;
  return out;
}

DeltaForm commuted(const DeltaForm& s, const DeltaForm& t) {
  DeltaForm out(s.ambient());
  for (const auto& [ds, cs] : tridegree_components(s))
    for (const auto& [dt, ct] : tridegree_components(t)) {
      DeltaForm p = wedge_diagonal(ct, cs);
      out += (parity(ds) && parity(dt)) ? -p : p;
    }
  return out;
}

// First input whose push-forward along f is defined.
std::optional<DeltaForm> pushable(const AffineMap& f, const std::vector<DeltaForm>& cands) {
  for (const auto& c : cands) {
    try {
      pushforward(f, c);
      return c;
    } catch (const PreconditionError&) {
    }
  }
  return std::nullopt;
}

}  // namespace

bool SuiteReport::passed() const {
  for (const auto& e : entries)
    if (e.status == "fail") return false;
  return true;
}

SuiteReport product_property_suite(const DeltaForm& s, const DeltaForm& t, const DeltaForm& u, const AffineMap& f) {
  const std::size_t n = s.ambient(), m = f.matrix.rows();
  if (t.ambient() != n || u.ambient() != n || f.matrix.cols() != n)
    throw std::invalid_argument("product_property_suite: dimension mismatch");
  for (const auto* x : {&s, &t, &u}) require_balanced(*x, "product_property_suite");
  if (rank(f.matrix) != m) throw PreconditionError("not_surjective", "product_property_suite: map is not surjective");

  SuiteReport r;
  const DeltaForm st = wedge_diagonal(s, t);
  auto add = [&](const std::string& name, const Check& c) { r.entries.push_back(run(name, c)); };

  add("displacement", [&]() -> std::optional<std::string> {
    auto v = find_generic_vector(s, t);
    if (!v) throw PreconditionError("non_generic", "no generic vector in the search box");
    return compare(st, displacement_product(s, t, *v));
  });
  add("diagonal formula", [&]() -> std::optional<std::string> {
    RatMatrix g(2 * n, n);
    for (std::size_t i = 0; i < n; ++i) g(i, i) = g(n + i, i) = 1;
    const DeltaForm diag = pushforward({g, RatVec(2 * n)}, whole(n));
    const DeltaForm x = exterior_product(s, t);
    auto v = find_generic_vector(diag, x, 2);
    if (!v) throw PreconditionError("non_generic", "no generic vector for the diagonal");
    return compare(st, pushforward(projection(n, n, 0), displacement_product(diag, x, *v)));
  });
  add("exterior product", [&]() -> std::optional<std::string> {
    const DeltaForm p1s = pullback_surjective(projection(n, n, 0), s);
    const DeltaForm p2t = pullback_surjective(projection(n, n, n), t);
    return compare(exterior_product(s, t), transversal_product(p1s, p2t));
  });
  add("divisor as product", [&]() -> std::optional<std::string> {
    const DeltaForm c = divisor_intersect(corner(n), whole(n));
    return compare(wedge_diagonal(c, t), divisor_intersect(corner(n), t));
  });
  add("divisor and product", [&]() -> std::optional<std::string> {
    return compare(divisor_intersect(corner(n), st), wedge_diagonal(divisor_intersect(corner(n), s), t));
  });
  add("divisors commute", [&]() -> std::optional<std::string> {
    if (divisor_commutes_check(corner(n), opposite_corner(n), t)) return std::nullopt;
    return "orders differ";
  });
  add("partial diagonal", [&]() -> std::optional<std::string> {
    const DeltaForm lifted = exterior_product(whole(1), u);
    auto phi = PLFunction::max_of(n + 1, {{unit(n + 1, 0), Rational(0)}, {unit(n + 1, 1), Rational(0)}});
    RatMatrix g(n + 1, n);
    g(0, 0) = 1;
    for (std::size_t i = 0; i < n; ++i) g(i + 1, i) = 1;
    return compare(divisor_intersect(phi, lifted), pushforward({g, RatVec(n + 1)}, u));
  });
  add("divisor projection formula", [&]() -> std::optional<std::string> {
    auto x = pushable(f, {u, s, t});
    if (!x) throw PreconditionError("not_injective", "no input pushes forward along the map");
    return compare(divisor_intersect(corner(m), pushforward(f, *x)),
                   pushforward(f, divisor_intersect(pullback_pl(f, corner(m)), *x)));
  });
  add("pullback multiplicative", [&]() -> std::optional<std::string> {
    const DeltaForm a = divisor_intersect(corner(m), whole(m));
    const DeltaForm b = divisor_intersect(opposite_corner(m), whole(m));
    return compare(pullback_general(f, wedge_diagonal(a, b)),
                   wedge_diagonal(pullback_general(f, a), pullback_general(f, b)));
  });
  add("pullback agreement", [&]() -> std::optional<std::string> {
    const DeltaForm a = divisor_intersect(corner(m), whole(m));
    return compare(pullback_general(f, a), pullback_surjective(f, a));
  });
  add("projection formula", [&]() -> std::optional<std::string> {
    auto x = pushable(f, {s, t, u});
    if (!x) throw PreconditionError("not_injective", "no input pushes forward along the map");
    const DeltaForm a = divisor_intersect(corner(m), whole(m));
    return compare(pushforward(f, wedge_diagonal(*x, pullback_surjective(f, a))),
                   wedge_diagonal(pushforward(f, *x), a));
  });
  add("graded commutativity", [&]() { return compare(st, commuted(s, t)); });
  add("associativity", [&]() {
    return compare(wedge_diagonal(st, u), wedge_diagonal(s, wedge_diagonal(t, u)));
  });
  const std::vector<std::pair<std::string, DeltaForm (*)(const DeltaForm&)>> ops{
      {"d'", d_prime},        {"d''", d_second},        {"dP'", dP_prime},
      {"dP''", dP_second},    {"bd'", boundary_prime},  {"bd''", boundary_second}};
  for (const auto& [name, op] : ops)
    add("Leibniz " + name, [&, op]() {
      return compare(op(st), wedge_diagonal(op(s), t) + wedge_diagonal(graded_sign(s), op(t)));
    });
  return r;
}

}  // namespace dforms
