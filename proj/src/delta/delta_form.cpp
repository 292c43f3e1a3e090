#include "dforms/delta_form.hpp"

#include <algorithm>
#include <sstream>

#include "dforms/refine.hpp"

namespace dforms {

DeltaForm::DeltaForm(std::size_t n, std::vector<Term> terms) : n_(n), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.cell.ambient() != n) throw std::invalid_argument("DeltaForm: cell dimension mismatch");
    if (t.form.nvars() != t.cell.dim()) throw std::invalid_argument("DeltaForm: coefficient is not in chart coordinates");
    if (t.weight <= 0) throw std::invalid_argument("DeltaForm: weights must be positive");
  }
}

DeltaForm DeltaForm::cell(const Polyhedron& c, const Rational& weight) {
  return DeltaForm(c.ambient(), {{c, weight, SuperForm::constant(c.dim(), Rational(1))}});
}

DeltaForm DeltaForm::with_ambient_form(const Polyhedron& c, const Rational& weight, const SuperForm& alpha) {
  return DeltaForm(c.ambient(), {{c, weight, restrict(alpha, c)}});
}

DeltaForm DeltaForm::canonical() const {
  std::map<std::string, Term> merged;
  for (const auto& t : terms_) {
    SuperForm f = t.form * t.weight;
    auto it = merged.find(t.cell.key());
    if (it == merged.end()) merged.emplace(t.cell.key(), Term{t.cell, Rational(1), f});
    else it->second.form += f;
  }
  DeltaForm out(n_);
  for (auto& [k, t] : merged)
    if (!t.form.is_zero()) out.terms_.push_back(std::move(t));
  return out;
}

DeltaForm canonicalize(const DeltaForm& t) { return t.canonical(); }

std::vector<Tridegree> DeltaForm::tridegrees() const {
  std::vector<Tridegree> out;
  for (const auto& t : terms_)
    for (auto [p, q] : t.form.bidegrees()) out.emplace_back(p, q, static_cast<int>(t.cell.codim()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Tridegree> DeltaForm::tridegree() const {
  auto ts = canonical().tridegrees();
  if (ts.empty()) return std::nullopt;
  if (ts.size() > 1) throw std::invalid_argument("DeltaForm: not trihomogeneous");
  return ts.front();
}

DeltaForm DeltaForm::operator-() const {
  DeltaForm out = *this;
  for (auto& t : out.terms_) t.form = -t.form;
  return out;
}

DeltaForm& DeltaForm::operator+=(const DeltaForm& o) {
  if (o.n_ != n_) throw std::invalid_argument("DeltaForm: ambient dimension mismatch");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  *this = canonical();
  return *this;
}

DeltaForm& DeltaForm::operator-=(const DeltaForm& o) { return *this += -o; }

DeltaForm operator*(const Rational& s, const DeltaForm& a) {
  DeltaForm out = a;
  for (auto& t : out.terms_) t.form *= s;
  return out.canonical();
}

std::string DeltaForm::to_string() const {
  std::ostringstream os;
  if (terms_.empty()) return "0";
  for (const auto& t : terms_)
    os << "(" << t.form.to_string() << ") ∧ [" << t.cell.to_string() << ", " << format_rational(t.weight) << "]\n";
  return os.str();
}

SuperForm restrict_term(const Term& term, const Polyhedron& sub) {
  return restrict_chart(term.form, term.cell, sub) * term.weight;
}

bool equals(const DeltaForm& s, const DeltaForm& t) {
  if (s.ambient() != t.ambient()) throw std::invalid_argument("equals: ambient dimension mismatch");
  DeltaForm diff = (s - t).canonical();
  // Terms on different affine hulls are independent; within a hull all
  // cells share one chart, so coefficients add directly on aligned pieces.
  std::map<std::string, std::vector<const Term*>> groups;
  for (const auto& term : diff.terms()) groups[hull_key(term.cell)].push_back(&term);
  for (auto& [key, group] : groups) {
    std::vector<Polyhedron> cells;
    for (auto* term : group) cells.push_back(term->cell);
    if (cells.size() == 1) return false;
    for (const auto& piece : align(cells)) {
      RatVec r = piece.relative_interior_point();
      SuperForm sum(piece.dim());
      for (auto* term : group)
        if (term->cell.contains(r)) sum += term->form;
      if (!sum.is_zero()) return false;
    }
  }
  return true;
}

std::map<Tridegree, DeltaForm> tridegree_components(const DeltaForm& t) {
  std::map<Tridegree, DeltaForm> out;
  const DeltaForm c = t.canonical();
  for (const auto& term : c.terms())
    for (auto [p, q] : term.form.bidegrees()) {
      Tridegree key{p, q, static_cast<int>(term.cell.codim())};
      auto [it, fresh] = out.emplace(key, DeltaForm(t.ambient()));
      it->second += DeltaForm(t.ambient(), {{term.cell, Rational(1), term.form.component(p, q)}});
    }
  return out;
}

}  // namespace dforms
