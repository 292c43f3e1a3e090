#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "dforms/integration.hpp"
#include "dforms/piecewise.hpp"
#include "dforms/polyhedron.hpp"
#include "dforms/superform.hpp"

namespace dforms {

/// alpha ∧ [cell, weight * mu0] with alpha written in the chart coordinates of the cell.
struct Term {
  Polyhedron cell;
  Rational weight;
  SuperForm form;
};

using Tridegree = std::tuple<int, int, int>;

/// Finite polyhedral current sum_i alpha_i ∧ [sigma_i, mu_i] on Q^n.
class DeltaForm {
 public:
  DeltaForm() = default;
  explicit DeltaForm(std::size_t n) : n_(n) {}
  DeltaForm(std::size_t n, std::vector<Term> terms);

  /// [cell, weight * mu0] with coefficient 1.
  static DeltaForm cell(const Polyhedron& c, const Rational& weight = 1);
  /// alpha ∧ [cell, weight * mu0] for an ambient form alpha.
  static DeltaForm with_ambient_form(const Polyhedron& c, const Rational& weight, const SuperForm& alpha);

  std::size_t ambient() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Weights folded into coefficients, identical cells merged, zero terms
  /// dropped, terms sorted by canonical cell key.
  DeltaForm canonical() const;

  std::vector<Tridegree> tridegrees() const;
  /// The unique tridegree; throws unless trihomogeneous. Zero gives nullopt.
  std::optional<Tridegree> tridegree() const;

  DeltaForm operator-() const;
  DeltaForm& operator+=(const DeltaForm& o);
  DeltaForm& operator-=(const DeltaForm& o);
  friend DeltaForm operator+(DeltaForm a, const DeltaForm& b) { return a += b; }
  friend DeltaForm operator-(DeltaForm a, const DeltaForm& b) { return a -= b; }
  friend DeltaForm operator*(const Rational& s, const DeltaForm& a);

  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  std::vector<Term> terms_;
};

DeltaForm canonicalize(const DeltaForm& t);

/// Equality as currents: subdivisions, weight/coefficient trades and zero
/// terms are invisible.
bool equals(const DeltaForm& s, const DeltaForm& t);

std::map<Tridegree, DeltaForm> tridegree_components(const DeltaForm& t);

/// Balancing failure at a codimension-(r+1) piece.
struct BalanceFailure {
  Polyhedron tau;
  /// sum_sigma alpha_sigma|tau * n_{sigma,tau}[j] for each ambient coordinate j (tau chart forms).
  std::vector<SuperForm> residue;
  /// Components along the canonical complement of N_tau: (coordinate index, form).
  std::vector<std::pair<std::size_t, SuperForm>> projected;
};

struct BalanceReport {
  bool balanced = true;
  std::vector<BalanceFailure> failures;
  std::size_t checked = 0;  // number of pieces examined
};

/// Raised by operations whose mathematical precondition fails. Carries the
/// offending cells and, for unbalanced inputs, the balancing report.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(std::string kind, const std::string& what, std::vector<Polyhedron> cells = {},
                    std::optional<BalanceReport> balance = std::nullopt)
      : std::runtime_error(what), kind_(std::move(kind)), cells_(std::move(cells)), balance_(std::move(balance)) {}
  const std::string& kind() const { return kind_; }
  const std::vector<Polyhedron>& cells() const { return cells_; }
  const std::optional<BalanceReport>& balance() const { return balance_; }

 private:
  std::string kind_;
  std::vector<Polyhedron> cells_;
  std::optional<BalanceReport> balance_;
};

BalanceReport is_balanced(const DeltaForm& t);
/// Throws PreconditionError with the certificate when unbalanced.
void require_balanced(const DeltaForm& t, const std::string& operation);

DeltaForm dP_prime(const DeltaForm& t);
DeltaForm dP_second(const DeltaForm& t);
DeltaForm boundary_prime(const DeltaForm& t);
DeltaForm boundary_second(const DeltaForm& t);
DeltaForm d_prime(const DeltaForm& t);
DeltaForm d_second(const DeltaForm& t);

/// alpha T for a piecewise form whose cells cover the support of T.
DeltaForm ps_multiply(const PiecewiseForm& alpha, const DeltaForm& t);
/// alpha T for a global form.
DeltaForm multiply(const SuperForm& alpha, const DeltaForm& t);

/// S × T on Q^{n+m}.
DeltaForm exterior_product(const DeltaForm& s, const DeltaForm& t);

DeltaForm pushforward(const AffineMap& f, const DeltaForm& t);
DeltaForm pullback_surjective(const AffineMap& f, const DeltaForm& s);

/// T(eta) restricted to a bounded window.
Rational eval_pairing(const DeltaForm& t, const SuperForm& eta, const Polyhedron& window);

/// T = alpha ∧ [Q^n, mu_std] for a piecewise form alpha.
DeltaForm from_piecewise(const PiecewiseForm& alpha);
PiecewiseForm as_piecewise_form(const DeltaForm& t);

/// Coefficient of a term (weight included) restricted to the chart of a sub-cell.
SuperForm restrict_term(const Term& term, const Polyhedron& sub);

}  // namespace dforms
