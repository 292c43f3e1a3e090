#include <atomic>
#include <exception>
#include <thread>

#include "dforms/intersection.hpp"
#include "dforms/lp.hpp"

namespace dforms {

namespace {

std::atomic<std::size_t> workers{1};

enum class PairStatus { empty, transversal, span_deficient, boundary };

RatVec with_slack(const RatVec& a, long s) {
  RatVec r = a;
  r.push_back(Rational(s));
  return r;
}

// Decides sigma1 ∩ (eps v + sigma2) for infinitesimal eps > 0; v = 0 is the
// undisplaced case. A nonempty intersection is transversal when the spans
// add up to Q^n and the relative interiors meet (max slack 0 <= s <= 1 positive).
PairStatus classify(const Polyhedron& s1, const Polyhedron& s2, const RatVec& v) {
  const std::size_t n = s1.ambient();
  LinearSystem<EpsRational> sys(n + 1);
  auto shifted = [&](const Inequality& h) {
    EpsRational rhs = EpsRational::eps();
    rhs *= dot(h.a, v);
    return rhs + EpsRational(h.b);
  };
  for (const auto& h : s1.inequalities()) sys.add_inequality(with_slack(h.a, 1), h.b);
  for (const auto& h : s1.equalities()) sys.add_equality(with_slack(h.a, 0), h.b);
  for (const auto& h : s2.inequalities()) sys.add_inequality(with_slack(h.a, 1), shifted(h));
  for (const auto& h : s2.equalities()) sys.add_equality(with_slack(h.a, 0), shifted(h));
  RatVec slack(n + 1);
  slack[n] = 1;
  sys.add_inequality(slack, Rational(1));
  sys.add_inequality(scale(slack, Rational(-1)), Rational(0));
  auto r = lp_extremum(slack, sys, Sense::maximize);
  if (r.status == LpStatus::infeasible) return PairStatus::empty;
  std::vector<RatVec> span = s1.lattice().rational_basis();
  for (const auto& b : s2.lattice().rational_basis()) span.push_back(b);
  if (span.empty() ? n != 0 : rank(RatMatrix::from_columns(span, n)) != n) return PairStatus::span_deficient;
  if (r.value.sign() <= 0) return PairStatus::boundary;
  return PairStatus::transversal;
}

struct PairFailure {
  Polyhedron first, second;
  std::string reason;
};

std::optional<PairFailure> first_failure(const DeltaForm& s, const DeltaForm& t, const RatVec& v) {
  const DeltaForm cs = s.canonical(), ct = t.canonical();
  for (const auto& a : cs.terms())
    for (const auto& b : ct.terms()) {
      switch (classify(a.cell, b.cell, v)) {
        case PairStatus::empty:
        case PairStatus::transversal:
          break;
        case PairStatus::span_deficient:
          return PairFailure{a.cell, b.cell, "spans do not add up to the ambient space"};
        case PairStatus::boundary:
          return PairFailure{a.cell, b.cell, "intersection lies in the relative boundary"};
      }
    }
  return std::nullopt;
}

DeltaForm pair_sum(const DeltaForm& s, const DeltaForm& t, const RatVec& v, const std::string& kind) {
  if (s.ambient() != t.ambient() || v.size() != s.ambient())
    throw std::invalid_argument(kind + ": dimension mismatch");
  const std::size_t n = s.ambient();
  const DeltaForm cs = s.canonical(), ct = t.canonical();
  const std::size_t nt = ct.terms().size(), total = cs.terms().size() * nt;
  std::vector<std::optional<Term>> found(total);
  std::vector<std::exception_ptr> errors(total);
  auto work = [&](std::size_t k) {
    const Term& a = cs.terms()[k / nt];
    const Term& b = ct.terms()[k % nt];
    const PairStatus st = classify(a.cell, b.cell, v);
    if (st == PairStatus::empty) return;
    if (st != PairStatus::transversal)
      throw PreconditionError(kind, kind + ": cells " + a.cell.to_string() + " and " + b.cell.to_string() +
                                        " do not meet transversally", {a.cell, b.cell});
    auto cell = intersect(a.cell, b.cell);
    // A displaced pair whose limit cell drops dimension has vanishing weak limit.
    if (!cell || cell->dim() + n != a.cell.dim() + b.cell.dim()) return;
    auto [lat, mult] = stable_weight(a.cell.lattice(), a.weight, b.cell.lattice(), b.weight);
    SuperForm form = wedge(restrict_chart(a.form, a.cell, *cell), restrict_chart(b.form, b.cell, *cell));
    found[k] = Term{*cell, mult, form};
  };
  auto strand = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < total; k += stride) {
      try {
        work(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const std::size_t w = std::max<std::size_t>(1, std::min(workers.load(), total));
  if (w == 1) {
    strand(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < w; ++i) pool.emplace_back(strand, i, w);
    for (auto& th : pool) th.join();
  }
  // The first failing pair in enumeration order wins, independent of scheduling.
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Term> out;
  for (auto& f : found)
    if (f) out.push_back(std::move(*f));
  return DeltaForm(n, std::move(out)).canonical();
}

}  // namespace

void set_thread_count(std::size_t n) { workers = std::max<std::size_t>(1, n); }
std::size_t thread_count() { return workers.load(); }

GenericityReport is_generic(const RatVec& v, const DeltaForm& s, const DeltaForm& t) {
  GenericityReport r;
  if (auto f = first_failure(s, t, v)) {
    r.generic = false;
    r.failing = std::make_pair(f->first, f->second);
    r.reason = f->reason;
  }
  return r;
}

DeltaForm transversal_product(const DeltaForm& s, const DeltaForm& t) {
  return pair_sum(s, t, RatVec(s.ambient()), "non_transversal");
}

DeltaForm displacement_product(const DeltaForm& s, const DeltaForm& t, const RatVec& v) {
  return pair_sum(s, t, v, "non_generic");
}

std::optional<RatVec> find_generic_vector(const DeltaForm& s, const DeltaForm& t, long radius) {
  const std::size_t n = s.ambient();
  for (long r = 1; r <= radius; ++r) {
    // Vectors of max-norm r, in lexicographic order of their entries.
    std::vector<long> c(n, -r);
    while (true) {
      long m = 0;
      for (long x : c) m = std::max(m, std::labs(x));
      if (m == r) {
        RatVec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = Rational(c[i]);
        if (is_generic(v, s, t).generic) return v;
      }
      std::size_t i = n;
      while (i > 0 && c[i - 1] == r) c[--i] = -r;
      if (i == 0) break;
      ++c[i - 1];
    }
  }
  return std::nullopt;
}

}  // namespace dforms
