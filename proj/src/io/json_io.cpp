#include "dforms/io.hpp"

#include <fstream>
#include <sstream>

namespace dforms::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t index_from(const Json& j) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError("expected a nonnegative integer");
  return j.get<std::size_t>();
}

void expect_array(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
}

Inequality inequality_from(const Json& j, std::size_t n) {
  Inequality h{vector_from(field(j, "a")), rational_from(field(j, "b"))};
  if (h.a.size() != n) throw ParseError("inequality has the wrong dimension");
  return h;
}

Json inequality_json(const Inequality& h) { return Json{{"a", io::to_json(h.a)}, {"b", io::to_json(h.b)}}; }

IndexMask mask_from(const Json& j, std::size_t n) {
  expect_array(j, "differential index list");
  IndexMask m = 0;
  for (const auto& x : j) {
    const std::size_t i = index_from(x);
    if (i >= n) throw ParseError("differential index out of range");
    if (m & (IndexMask(1) << i)) throw ParseError("repeated differential index");
    m |= IndexMask(1) << i;
  }
  return m;
}

Json mask_to_json(IndexMask m) {
  Json out = Json::array();
  for (std::size_t i = 0; m; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

Json matrix_to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    RatVec r(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] = m(i, j);
    rows.push_back(io::to_json(r));
  }
  return rows;
}

// Rewrites a form given in the chart (base, basis) of `cell` into its canonical chart.
SuperForm to_canonical_chart(const SuperForm& a, const Polyhedron& cell, const Json& chart) {
  const RatVec base = vector_from(field(chart, "base"));
  const Json& jb = field(chart, "basis");
  expect_array(jb, "chart basis");
  std::vector<RatVec> basis;
  for (const auto& b : jb) basis.push_back(vector_from(b));
  const std::size_t n = cell.ambient(), d = cell.dim();
  if (base.size() != n || basis.size() != d) throw ParseError("chart does not match the cell dimension");
  for (const auto& b : basis)
    if (b.size() != n) throw ParseError("chart basis vector has the wrong dimension");
  const Chart& canon = cell.chart();
  if (base == canon.base && basis == canon.basis()) return a;
  if (!cell.affine_hull().contains(base)) throw ParseError("chart base lies outside the affine hull of its cell");
  const RatMatrix given = RatMatrix::from_columns(basis, n);
  if (d > 0 && rank(given) != d) throw ParseError("chart basis is degenerate");
  // u' = G^+ (canon.base - base + C u), exact since both span N_sigma.
  const std::vector<RatVec> cb = canon.basis();
  RatMatrix m(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    auto x = solve(given, cb[k]);
    if (!x) throw ParseError("chart basis does not span the cell");
    for (std::size_t i = 0; i < d; ++i) m(i, k) = (*x)[i];
  }
  RatVec off(d);
  if (d > 0) {
    auto x = solve(given, sub(canon.base, base));
    if (!x) throw ParseError("chart base lies outside the affine hull of its cell");
    off = *x;
  }
  if (d > 0 && rank(m) != d) throw ParseError("chart basis does not span the cell");
  return pullback_affine({m, off}, a);
}

}  // namespace

Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ParseError("rational must be a string \"p/q\"");
  const std::string s = j.get<std::string>();
  if (s.empty() || s.find_first_not_of("+-0123456789/") != std::string::npos)
    throw ParseError("malformed rational \"" + s + "\"");
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("malformed rational \"" + s + "\"");
  if (q.get_den() == 0) throw ParseError("zero denominator in \"" + s + "\"");
  q.canonicalize();
  return q;
}

Json to_json(const Rational& q) { return q.get_str(); }

RatVec vector_from(const Json& j) {
  expect_array(j, "vector");
  RatVec v;
  for (const auto& x : j) v.push_back(rational_from(x));
  return v;
}

Json to_json(const RatVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

RatVec parse_vector(const std::string& s) {
  RatVec v;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) v.push_back(rational_from(Json(item)));
  if (v.empty()) throw ParseError("empty vector");
  return v;
}

Polyhedron polyhedron_from(const Json& j) {
  const std::size_t n = index_from(field(j, "n"));
  std::vector<Inequality> ineqs, eqs;
  const Json& ji = field(j, "ineqs");
  expect_array(ji, "ineqs");
  for (const auto& h : ji) ineqs.push_back(inequality_from(h, n));
  if (j.contains("eqs")) {
    expect_array(j.at("eqs"), "eqs");
    for (const auto& h : j.at("eqs")) eqs.push_back(inequality_from(h, n));
  }
  auto p = Polyhedron::make(n, ineqs, eqs);
  if (!p) throw ParseError("empty polyhedron");
  return *p;
}

Json to_json(const Polyhedron& p) {
  Json ineqs = Json::array(), eqs = Json::array();
  for (const auto& h : p.inequalities()) ineqs.push_back(inequality_json(h));
  for (const auto& h : p.equalities()) eqs.push_back(inequality_json(h));
  return Json{{"n", p.ambient()}, {"ineqs", ineqs}, {"eqs", eqs}};
}

SuperForm superform_from(const Json& j, std::optional<std::size_t> nvars) {
  if (j.contains("n")) {
    const std::size_t n = index_from(j.at("n"));
    if (nvars && *nvars != n) throw ParseError("form has the wrong number of variables");
    nvars = n;
  }
  if (!nvars) throw ParseError("missing field \"n\"");
  const std::size_t n = *nvars;
  SuperForm out(n);
  const Json& terms = field(j, "terms");
  expect_array(terms, "terms");
  for (const auto& t : terms) {
    Polynomial phi(n);
    const Json& poly = field(t, "poly");
    expect_array(poly, "poly");
    for (const auto& m : poly) {
      const Json& je = field(m, "exps");
      expect_array(je, "exps");
      Exponent e;
      for (const auto& x : je) e.push_back(static_cast<int>(index_from(x)));
      if (e.size() != n) throw ParseError("exponent vector has the wrong length");
      phi.add_term(e, rational_from(field(m, "c")));
    }
    out.add_term(mask_from(field(t, "dp"), n), mask_from(field(t, "ds"), n), phi);
  }
  return out;
}

Json to_json(const SuperForm& a, bool with_n) {
  Json terms = Json::array();
  for (const auto& [key, phi] : a.terms()) {
    Json poly = Json::array();
    for (const auto& [e, c] : phi.terms()) poly.push_back(Json{{"exps", e}, {"c", to_json(c)}});
    terms.push_back(Json{{"poly", poly}, {"dp", mask_to_json(key.first)}, {"ds", mask_to_json(key.second)}});
  }
  Json out{{"terms", terms}};
  if (with_n) out["n"] = a.nvars();
  return out;
}

PLFunction pl_function_from(const Json& j) {
  const Json& jc = field(field(j, "complex"), "cells");
  expect_array(jc, "complex cells");
  std::vector<Polyhedron> cells;
  for (const auto& c : jc) cells.push_back(polyhedron_from(c));
  if (cells.empty()) throw ParseError("PL function without cells");
  const std::size_t n = cells.front().ambient();
  std::vector<std::optional<AffineFunction>> pieces(cells.size());
  const Json& jp = field(j, "pieces");
  expect_array(jp, "pieces");
  for (const auto& p : jp) {
    const std::size_t k = index_from(field(p, "cell"));
    if (k >= cells.size()) throw ParseError("piece refers to a missing cell");
    if (pieces[k]) throw ParseError("cell has two pieces");
    AffineFunction f{vector_from(field(p, "linear")), rational_from(field(p, "const"))};
    if (f.linear.size() != n) throw ParseError("piece has the wrong dimension");
    pieces[k] = f;
  }
  std::vector<AffineFunction> fs;
  for (auto& p : pieces) {
    if (!p) throw ParseError("cell without a piece");
    fs.push_back(*p);
  }
  try {
    return PLFunction(n, std::move(cells), std::move(fs));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid PL function: ") + e.what());
  }
}

Json to_json(const PLFunction& f) {
  Json cells = Json::array(), pieces = Json::array();
  for (std::size_t k = 0; k < f.cells().size(); ++k) {
    cells.push_back(to_json(f.cells()[k]));
    pieces.push_back(Json{{"cell", k}, {"linear", to_json(f.pieces()[k].linear)}, {"const", to_json(f.pieces()[k].constant)}});
  }
  return Json{{"complex", Json{{"cells", cells}}}, {"pieces", pieces}};
}

DeltaForm delta_form_from(const Json& j) {
  const std::size_t n = index_from(field(j, "n"));
  const Json& jt = field(j, "terms");
  expect_array(jt, "terms");
  std::vector<Term> terms;
  for (const auto& t : jt) {
    Polyhedron cell = polyhedron_from(field(t, "cell"));
    if (cell.ambient() != n) throw ParseError("cell has the wrong ambient dimension");
    Rational w = t.contains("weight") ? rational_from(t.at("weight")) : Rational(1);
    if (sgn(w) <= 0) throw ParseError("weights must be positive");
    SuperForm form = superform_from(field(t, "form"), cell.dim());
    if (t.contains("chart")) form = to_canonical_chart(form, cell, t.at("chart"));
    terms.push_back({cell, w, form});
  }
  return DeltaForm(n, std::move(terms));
}

Json to_json(const DeltaForm& t) {
  Json terms = Json::array();
  const DeltaForm c0 = t.canonical();
  for (const auto& term : c0.terms()) {
    const Chart& c = term.cell.chart();
    Json basis = Json::array();
    for (const auto& b : c.basis()) basis.push_back(to_json(b));
    terms.push_back(Json{{"cell", to_json(term.cell)},
                         {"weight", to_json(term.weight)},
                         {"form", to_json(term.form, false)},
                         {"chart", Json{{"base", to_json(c.base)}, {"basis", basis}}}});
  }
  return Json{{"n", t.ambient()}, {"terms", terms}};
}

AffineMap affine_map_from(const Json& j) {
  const Json& jm = field(j, "matrix");
  expect_array(jm, "matrix");
  std::vector<RatVec> rows;
  for (const auto& r : jm) rows.push_back(vector_from(r));
  if (rows.empty()) throw ParseError("map with an empty matrix");
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) throw ParseError("ragged matrix");
  RatVec off = j.contains("offset") ? vector_from(j.at("offset")) : RatVec(rows.size());
  if (off.size() != rows.size()) throw ParseError("offset has the wrong dimension");
  return {RatMatrix::from_rows(rows, cols), off};
}

Json to_json(const AffineMap& f) { return Json{{"matrix", matrix_to_json(f.matrix)}, {"offset", to_json(f.offset)}}; }

Json to_json(const BalanceReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    Json residue = Json::array(), projected = Json::array();
    for (const auto& a : f.residue) residue.push_back(to_json(a));
    for (const auto& [c, a] : f.projected) projected.push_back(Json{{"coordinate", c}, {"form", to_json(a)}});
    failures.push_back(Json{{"tau", to_json(f.tau)}, {"residue", residue}, {"projected", projected}});
  }
  return Json{{"balanced", r.balanced}, {"checked", r.checked}, {"failures", failures}};
}

Json to_json(const GenericityReport& r) {
  Json out{{"generic", r.generic}, {"reason", r.reason}};
  if (r.failing) out["failing"] = Json::array({to_json(r.failing->first), to_json(r.failing->second)});
  return out;
}

Json to_json(const SuiteReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) entries.push_back(Json{{"name", e.name}, {"status", e.status}, {"detail", e.detail}});
  return Json{{"passed", r.passed()}, {"entries", entries}};
}

Json to_json(const PreconditionError& e) {
  Json cells = Json::array();
  for (const auto& c : e.cells()) cells.push_back(to_json(c));
  Json err{{"kind", e.kind()}, {"message", e.what()}, {"cells", cells}};
  if (e.balance()) err["balance"] = to_json(*e.balance());
  return Json{{"error", err}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace dforms::io
