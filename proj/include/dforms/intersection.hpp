#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dforms/delta_form.hpp"

namespace dforms {

/// Worker threads for pair enumeration in products (default 1). Results do
/// not depend on the setting.
void set_thread_count(std::size_t n);
std::size_t thread_count();

/// PL function phi ∘ f for an affine map f.
PLFunction pullback_pl(const AffineMap& f, const PLFunction& phi);

/// d'd''phi · T, computed cell by cell from slopes along normal vectors.
DeltaForm divisor_intersect(const PLFunction& phi, const DeltaForm& t);

/// D1 · (D2 · T) == D2 · (D1 · T).
bool divisor_commutes_check(const PLFunction& phi1, const PLFunction& phi2, const DeltaForm& t);

struct CornerLocusCheck {
  DeltaForm direct;    // cellwise formula
  DeltaForm via_d;     // d'(d''phi ∧ T) + d''phi ∧ d'T
  DeltaForm via_bd;    // -∂'(d''phi ∧ T) - d''phi ∧ ∂'T
  bool agree = false;
};
CornerLocusCheck corner_locus_identity_check(const PLFunction& phi, const DeltaForm& t);

/// d''phi as a piecewise form on the cells of phi.
PiecewiseForm dsecond_pl(const PLFunction& phi);
PiecewiseForm dprime_pl(const PLFunction& phi);

/// S ∧ T = p1_*(D_1 ⋯ D_n · (S × T)) with D_i the corner locus of max{x_i, y_i}.
DeltaForm wedge_diagonal(const DeltaForm& s, const DeltaForm& t);

/// Outcome of the transversality test for eps*v + T against S.
struct GenericityReport {
  bool generic = true;
  std::optional<std::pair<Polyhedron, Polyhedron>> failing;
  std::string reason;
};
GenericityReport is_generic(const RatVec& v, const DeltaForm& s, const DeltaForm& t);

/// Sum over pairs of transversally intersecting cells; throws
/// PreconditionError("non_transversal") naming the first offending pair.
DeltaForm transversal_product(const DeltaForm& s, const DeltaForm& t);

/// Fan displacement product; throws PreconditionError("non_generic") for non-generic v.
DeltaForm displacement_product(const DeltaForm& s, const DeltaForm& t, const RatVec& v);

/// First vector of a deterministic search over small integer vectors that is
/// generic for (S, T); nullopt if none within the search box.
std::optional<RatVec> find_generic_vector(const DeltaForm& s, const DeltaForm& t, long radius = 3);

/// f^*S = p1_*(Gamma_f ∧ p2^*S) for any affine f.
DeltaForm pullback_general(const AffineMap& f, const DeltaForm& s);

struct SuiteEntry {
  std::string name;
  std::string status;  // "pass", "fail" or "skipped"
  std::string detail;
};
struct SuiteReport {
  std::vector<SuiteEntry> entries;
  bool passed() const;
};
/// Product identities on S, T, U in Q^n and a surjective affine f: Q^n -> Q^m.
SuiteReport product_property_suite(const DeltaForm& s, const DeltaForm& t, const DeltaForm& u, const AffineMap& f);

}  // namespace dforms
