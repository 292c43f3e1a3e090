#include "dforms/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace dforms {

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  Exponent e(nvars, 0);
  e.at(i) = 1;
  return monomial(e, Rational(1));
}

Polynomial Polynomial::affine(const RatVec& a, const Rational& c) {
  Polynomial p = constant(a.size(), c);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Exponent e(a.size(), 0);
    e[i] = 1;
    p.add_term(e, a[i]);
  }
  return p;
}

Polynomial Polynomial::monomial(const Exponent& e, const Rational& c) {
  Polynomial p(e.size());
  p.add_term(e, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent(nvars_, 0));
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

Rational Polynomial::constant_term() const { return coefficient(Exponent(nvars_, 0)); }

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != nvars_) throw std::invalid_argument("Polynomial: exponent length mismatch");
  if (sgn(c) == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("Polynomial: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("Polynomial: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("Polynomial: variable count mismatch");
  Polynomial p(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      p.add_term(e, ca * cb);
    }
  return p;
}

Polynomial Polynomial::derivative(std::size_t i) const {
  Polynomial p(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent f = e;
    --f[i];
    p.add_term(f, c * e[i]);
  }
  return p;
}

Rational Polynomial::evaluate(std::span<const Rational> x) const {
  if (x.size() != nvars_) throw std::invalid_argument("Polynomial::evaluate: dimension mismatch");
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) m *= x[i];
    total += m;
  }
  return total;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& subs) const {
  if (subs.size() != nvars_) throw std::invalid_argument("Polynomial::substitute: arity mismatch");
  const std::size_t m = subs.empty() ? 0 : subs.front().nvars();
  std::vector<std::vector<Polynomial>> powers(nvars_);
  Polynomial out(m);
  for (const auto& [e, c] : terms_) {
    Polynomial t = constant(m, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(m, Rational(1)));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * subs[i]);
      t = t * pw[e[i]];
    }
    out += t;
  }
  return out;
}

Polynomial Polynomial::embed(std::size_t total, std::size_t offset) const {
  if (offset + nvars_ > total) throw std::invalid_argument("Polynomial::embed: out of range");
  Polynomial p(total);
  for (const auto& [e, c] : terms_) {
    Exponent f(total, 0);
    for (std::size_t i = 0; i < nvars_; ++i) f[offset + i] = e[i];
    p.add_term(f, c);
  }
  return p;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << format_rational(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) os << "*x" << i << (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
  }
  return os.str();
}

}  // namespace dforms
