#include "dforms/superform.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace dforms {

namespace {

int popcount(IndexMask m) { return std::popcount(m); }

// Sign of reordering (sorted A) followed by (sorted B) into sorted order:
// (-1)^{#{(a, b) : a > b}}; zero when A and B overlap.
int merge_sign(IndexMask a, IndexMask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (IndexMask rest = b; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    inversions += popcount(a >> (j + 1));
  }
  return inversions % 2 ? -1 : 1;
}

IndexMask bit(std::size_t i) {
  if (i >= 32) throw std::invalid_argument("SuperForm: at most 32 coordinates");
  return IndexMask(1) << i;
}

}  // namespace

RatVec AffineMap::operator()(std::span<const Rational> x) const { return add(matrix * x, offset); }

AffineMap AffineMap::identity(std::size_t n) { return {RatMatrix::identity(n), RatVec(n)}; }

AffineMap AffineMap::compose(const AffineMap& g) const {
  return {matrix * g.matrix, add(matrix * std::span<const Rational>(g.offset), offset)};
}

SuperForm::SuperForm(std::size_t nvars) : nvars_(nvars) {
  if (nvars > 32) throw std::invalid_argument("SuperForm: at most 32 coordinates");
}

SuperForm SuperForm::function(const Polynomial& p) {
  SuperForm f(p.nvars());
  f.add_term(0, 0, p);
  return f;
}

SuperForm SuperForm::constant(std::size_t nvars, const Rational& c) {
  return function(Polynomial::constant(nvars, c));
}

SuperForm SuperForm::term(const Polynomial& phi, const std::vector<std::size_t>& I,
                          const std::vector<std::size_t>& J) {
  SuperForm f = function(phi);
  for (auto i : I) f = wedge(f, dprime_coordinate(phi.nvars(), i));
  for (auto j : J) f = wedge(f, dsecond_coordinate(phi.nvars(), j));
  return f;
}

SuperForm SuperForm::dprime_coordinate(std::size_t nvars, std::size_t i) {
  SuperForm f(nvars);
  if (i >= nvars) throw std::invalid_argument("SuperForm: coordinate out of range");
  f.add_term(bit(i), 0, Polynomial::constant(nvars, Rational(1)));
  return f;
}

SuperForm SuperForm::dsecond_coordinate(std::size_t nvars, std::size_t i) {
  SuperForm f(nvars);
  if (i >= nvars) throw std::invalid_argument("SuperForm: coordinate out of range");
  f.add_term(0, bit(i), Polynomial::constant(nvars, Rational(1)));
  return f;
}

Polynomial SuperForm::coefficient(IndexMask I, IndexMask J) const {
  auto it = terms_.find({I, J});
  return it == terms_.end() ? Polynomial(nvars_) : it->second;
}

void SuperForm::add_term(IndexMask I, IndexMask J, const Polynomial& phi) {
  if (phi.nvars() != nvars_) throw std::invalid_argument("SuperForm: coefficient variable count mismatch");
  if ((I | J) >> nvars_ && nvars_ < 32) throw std::invalid_argument("SuperForm: index out of range");
  if (phi.is_zero()) return;
  auto [it, fresh] = terms_.emplace(Key{I, J}, phi);
  if (!fresh) {
    it->second += phi;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::vector<std::pair<int, int>> SuperForm::bidegrees() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& [k, phi] : terms_) out.emplace_back(popcount(k.first), popcount(k.second));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SuperForm SuperForm::component(int p, int q) const {
  SuperForm f(nvars_);
  for (const auto& [k, phi] : terms_)
    if (popcount(k.first) == p && popcount(k.second) == q) f.terms_.emplace(k, phi);
  return f;
}

std::pair<int, int> SuperForm::bidegree() const {
  auto b = bidegrees();
  if (b.empty()) return {0, 0};
  if (b.size() > 1) throw std::invalid_argument("SuperForm: not bihomogeneous");
  return b.front();
}

SuperForm SuperForm::operator-() const {
  SuperForm f = *this;
  for (auto& [k, phi] : f.terms_) phi = -phi;
  return f;
}

SuperForm& SuperForm::operator+=(const SuperForm& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("SuperForm: dimension mismatch");
  for (const auto& [k, phi] : o.terms_) add_term(k.first, k.second, phi);
  return *this;
}

SuperForm& SuperForm::operator-=(const SuperForm& o) { return *this += -o; }

SuperForm& SuperForm::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, phi] : terms_) phi *= s;
  return *this;
}

SuperForm SuperForm::times(const Polynomial& p) const {
  SuperForm f(nvars_);
  for (const auto& [k, phi] : terms_) f.add_term(k.first, k.second, phi * p);
  return f;
}

std::string SuperForm::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, phi] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << phi.to_string() << ")";
    for (std::size_t i = 0; i < nvars_; ++i)
      if (k.first & bit(i)) os << " d'x" << i;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (k.second & bit(i)) os << " d''x" << i;
  }
  return os.str();
}

SuperForm wedge(const SuperForm& a, const SuperForm& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("wedge: dimension mismatch");
  SuperForm out(a.nvars());
  for (const auto& [ka, pa] : a.terms())
    for (const auto& [kb, pb] : b.terms()) {
      int s = merge_sign(ka.first, kb.first) * merge_sign(ka.second, kb.second);
      if (s == 0) continue;
      // move d'x_{I2} past d''x_{J1}
      if ((popcount(ka.second) * popcount(kb.first)) % 2) s = -s;
      Polynomial p = pa * pb;
      if (s < 0) p = -p;
      out.add_term(ka.first | kb.first, ka.second | kb.second, p);
    }
  return out;
}

SuperForm dprime(const SuperForm& a) {
  SuperForm out(a.nvars());
  for (const auto& [k, phi] : a.terms())
    for (std::size_t i = 0; i < a.nvars(); ++i) {
      if (k.first & bit(i)) continue;
      Polynomial d = phi.derivative(i);
      if (d.is_zero()) continue;
      if (popcount(k.first & (bit(i) - 1)) % 2) d = -d;
      out.add_term(k.first | bit(i), k.second, d);
    }
  return out;
}

SuperForm dsecond(const SuperForm& a) {
  SuperForm out(a.nvars());
  for (const auto& [k, phi] : a.terms())
    for (std::size_t i = 0; i < a.nvars(); ++i) {
      if (k.second & bit(i)) continue;
      Polynomial d = phi.derivative(i);
      if (d.is_zero()) continue;
      if ((popcount(k.first) + popcount(k.second & (bit(i) - 1))) % 2) d = -d;
      out.add_term(k.first, k.second | bit(i), d);
    }
  return out;
}

SuperForm contract(const SuperForm& a, const RatVec& v, Slot slot) {
  if (v.size() != a.nvars()) throw std::invalid_argument("contract: dimension mismatch");
  SuperForm out(a.nvars());
  for (const auto& [k, phi] : a.terms()) {
    const IndexMask set = slot == Slot::prime ? k.first : k.second;
    const int before = slot == Slot::prime ? 0 : popcount(k.first);
    int pos = 0;
    for (std::size_t i = 0; i < a.nvars(); ++i) {
      if (!(set & bit(i))) continue;
      if (sgn(v[i]) != 0) {
        Polynomial c = phi * v[i];
        if ((before + pos) % 2) c = -c;
        if (slot == Slot::prime) out.add_term(k.first & ~bit(i), k.second, c);
        else out.add_term(k.first, k.second & ~bit(i), c);
      }
      ++pos;
    }
  }
  return out;
}

SuperForm pullback_affine(const AffineMap& f, const SuperForm& a) {
  const std::size_t n = f.source_dim(), m = f.target_dim();
  if (a.nvars() != m) throw std::invalid_argument("pullback_affine: form lives on the wrong space");
  std::vector<Polynomial> subs;
  std::vector<SuperForm> dp, ds;
  for (std::size_t k = 0; k < m; ++k) {
    RatVec row = f.matrix.row(k);
    subs.push_back(Polynomial::affine(row, f.offset[k]));
    SuperForm p(n), s(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(row[j]) == 0) continue;
      p.add_term(bit(j), 0, Polynomial::constant(n, row[j]));
      s.add_term(0, bit(j), Polynomial::constant(n, row[j]));
    }
    dp.push_back(p);
    ds.push_back(s);
  }
  SuperForm out(n);
  for (const auto& [k, phi] : a.terms()) {
    SuperForm t = SuperForm::function(phi.substitute(subs));
    if (subs.empty()) t = SuperForm::function(Polynomial::constant(n, phi.constant_term()));
    for (std::size_t i = 0; i < m && !t.is_zero(); ++i)
      if (k.first & bit(i)) t = wedge(t, dp[i]);
    for (std::size_t j = 0; j < m && !t.is_zero(); ++j)
      if (k.second & bit(j)) t = wedge(t, ds[j]);
    out += t;
  }
  return out;
}

SuperForm embed(const SuperForm& a, std::size_t total, std::size_t offset) {
  SuperForm out(total);
  for (const auto& [k, phi] : a.terms())
    out.add_term(static_cast<IndexMask>(k.first << offset), static_cast<IndexMask>(k.second << offset),
                 phi.embed(total, offset));
  return out;
}

}  // namespace dforms
