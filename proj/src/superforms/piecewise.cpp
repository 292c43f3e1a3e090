#include "dforms/piecewise.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "dforms/integration.hpp"

namespace dforms {

PLFunction::PLFunction(std::size_t n, std::vector<Polyhedron> cells, std::vector<AffineFunction> pieces)
    : n_(n), cells_(std::move(cells)), pieces_(std::move(pieces)) {
  if (cells_.size() != pieces_.size()) throw std::invalid_argument("PLFunction: one affine piece per cell required");
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].ambient() != n || pieces_[i].linear.size() != n)
      throw std::invalid_argument("PLFunction: dimension mismatch");
  }
  for (std::size_t i = 0; i < cells_.size(); ++i)
    for (std::size_t j = i + 1; j < cells_.size(); ++j) {
      auto m = intersect(cells_[i], cells_[j]);
      if (!m) continue;
      std::vector<RatVec> probes{m->chart().base};
      for (const auto& b : m->chart().basis()) probes.push_back(add(m->chart().base, b));
      for (const auto& x : probes)
        if (pieces_[i](x) != pieces_[j](x))
          throw std::invalid_argument("PLFunction: pieces disagree on a shared face");
    }
}

PLFunction PLFunction::affine(const AffineFunction& f) {
  return PLFunction(f.linear.size(), {Polyhedron::whole_space(f.linear.size())}, {f});
}

PLFunction PLFunction::max_of(std::size_t n, const std::vector<AffineFunction>& fs_in) {
  std::vector<AffineFunction> fs;
  for (const auto& f : fs_in)
    if (std::find(fs.begin(), fs.end(), f) == fs.end()) fs.push_back(f);
  std::vector<Polyhedron> cells;
  std::vector<AffineFunction> pieces;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    std::vector<Inequality> hs;
    for (std::size_t j = 0; j < fs.size(); ++j)
      if (j != i) hs.push_back({sub(fs[j].linear, fs[i].linear), fs[i].constant - fs[j].constant});
    auto region = Polyhedron::make(n, hs);
    if (region && region->dim() == n) {
      cells.push_back(*region);
      pieces.push_back(fs[i]);
    }
  }
  return PLFunction(n, cells, pieces);
}

std::optional<AffineFunction> PLFunction::piece_on(const Polyhedron& cell) const {
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i].contains(cell)) return pieces_[i];
  return std::nullopt;
}

Rational PLFunction::operator()(std::span<const Rational> x) const {
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i].contains(x)) return pieces_[i](x);
  throw std::invalid_argument("PLFunction: point outside the domain");
}

std::vector<Inequality> PLFunction::breaking_hyperplanes() const {
  std::set<std::pair<RatVec, Rational>> seen;
  std::vector<Inequality> out;
  auto push = [&](const Inequality& h) {
    RatVec a = h.a;
    Rational b = h.b;
    std::size_t j = 0;
    while (sgn(a[j]) == 0) ++j;
    if (a[j] < 0) {
      a = scale(a, Rational(-1));
      b = -b;
    }
    if (seen.emplace(a, b).second) out.push_back({a, b});
  };
  for (const auto& c : cells_) {
    for (const auto& h : c.inequalities()) push(h);
    for (const auto& h : c.equalities()) {
      RatVec a = primitive_integer(h.a);
      std::size_t j = 0;
      while (sgn(h.a[j]) == 0) ++j;
      push({a, h.b * (a[j] / h.a[j])});
    }
  }
  std::sort(out.begin(), out.end(), [](const Inequality& x, const Inequality& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  return out;
}

std::optional<CompatibilityWitness> find_incompatibility(const std::vector<Polyhedron>& cells,
                                                         const std::vector<SuperForm>& forms) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      auto m = intersect(cells[i], cells[j]);
      if (!m) continue;
      SuperForm a = restrict(forms[i], *m), b = restrict(forms[j], *m);
      if (a != b) return CompatibilityWitness{*m, i, j, a, b};
    }
  return std::nullopt;
}

PiecewiseForm::PiecewiseForm(std::size_t n, std::vector<Polyhedron> cells, std::vector<SuperForm> forms)
    : n_(n), cells_(std::move(cells)), forms_(std::move(forms)) {
  if (cells_.size() != forms_.size()) throw std::invalid_argument("PiecewiseForm: one form per cell required");
  std::optional<std::pair<int, int>> bideg;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].ambient() != n || forms_[i].nvars() != n)
      throw std::invalid_argument("PiecewiseForm: dimension mismatch");
    if (forms_[i].is_zero()) continue;
    auto b = forms_[i].bidegree();
    if (bideg && *bideg != b) throw std::invalid_argument("PiecewiseForm: bidegree not uniform");
    bideg = b;
  }
  if (auto w = find_incompatibility(cells_, forms_))
    throw std::invalid_argument("PiecewiseForm: forms disagree on shared face " + w->face.to_string());
}

PiecewiseForm PiecewiseForm::global(const SuperForm& a) {
  return PiecewiseForm(a.nvars(), {Polyhedron::whole_space(a.nvars())}, {a});
}

PiecewiseForm PiecewiseForm::from_pl(const PLFunction& f) {
  std::vector<SuperForm> forms;
  for (const auto& p : f.pieces()) forms.push_back(SuperForm::function(p.polynomial()));
  return PiecewiseForm(f.ambient(), f.cells(), forms);
}

std::optional<SuperForm> PiecewiseForm::form_on(const Polyhedron& cell) const {
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i].contains(cell)) return forms_[i];
  return std::nullopt;
}

std::optional<std::string> PiecewiseForm::compatibility_failure() const {
  if (auto w = find_incompatibility(cells_, forms_)) return w->face.to_string();
  return std::nullopt;
}

}  // namespace dforms
