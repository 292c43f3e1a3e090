#include "dforms/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace dforms {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational: '" + s + "'");
  Integer n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

EpsRational::EpsRational(const Rational& c) {
  if (c != 0) coeffs_.push_back(c);
}

EpsRational::EpsRational(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

EpsRational EpsRational::eps() { return EpsRational(std::vector<Rational>{0, 1}); }

void EpsRational::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

int EpsRational::sign() const {
  for (const auto& c : coeffs_)
    if (c != 0) return sgn(c);
  return 0;
}

Rational EpsRational::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

Rational EpsRational::evaluate(const Rational& at) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

EpsRational EpsRational::operator-() const {
  EpsRational r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

EpsRational& EpsRational::operator+=(const EpsRational& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

EpsRational& EpsRational::operator-=(const EpsRational& o) { return *this += -o; }

EpsRational& EpsRational::operator*=(const EpsRational& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  coeffs_ = std::move(out);
  trim();
  return *this;
}

EpsRational& EpsRational::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

EpsRational& EpsRational::operator/=(const Rational& s) {
  if (s == 0) throw std::domain_error("EpsRational division by zero");
  for (auto& c : coeffs_) c /= s;
  return *this;
}

std::strong_ordering operator<=>(const EpsRational& a, const EpsRational& b) {
  int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string EpsRational::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    if (!out.empty()) out += " + ";
    out += "(" + coeffs_[k].get_str() + ")";
    if (k == 1) out += "e";
    if (k > 1) out += "e^" + std::to_string(k);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const EpsRational& e) { return os << e.to_string(); }

Integer gcd_of(const IntVec& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

Integer lcm_of_denominators(const RatVec& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, x.get_den());
  return l;
}

}  // namespace dforms
