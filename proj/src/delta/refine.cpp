#include "dforms/refine.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dforms {

std::vector<Polyhedron> cut_by(const Polyhedron& cell, const std::vector<Inequality>& hyperplanes) {
  std::vector<Polyhedron> pieces{cell};
  for (const auto& h : hyperplanes) {
    std::vector<Polyhedron> next;
    for (const auto& p : pieces)
      for (auto& q : split(p, h.a, h.b)) next.push_back(std::move(q));
    pieces = std::move(next);
  }
  return pieces;
}

std::vector<Polyhedron> align(const std::vector<Polyhedron>& cells) {
  std::set<std::pair<RatVec, Rational>> seen;
  std::vector<Inequality> hyperplanes;
  for (const auto& c : cells)
    for (const auto& h : c.inequalities())
      if (seen.emplace(h.a, h.b).second) hyperplanes.push_back(h);
  std::map<std::string, Polyhedron> pieces;
  for (const auto& c : cells)
    for (auto& p : cut_by(c, hyperplanes)) pieces.emplace(p.key(), p);
  std::vector<Polyhedron> out;
  for (auto& [k, p] : pieces) out.push_back(p);
  return out;
}

std::string hull_key(const Polyhedron& p) { return p.affine_hull().key(); }

std::vector<BoundaryPiece> boundary_pieces(const std::vector<Term>& terms) {
  std::map<std::string, std::vector<Incidence>> groups;
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (auto& tau : terms[i].cell.facets()) groups[hull_key(tau)].push_back({i, tau});
  std::vector<BoundaryPiece> out;
  for (auto& [key, incs] : groups) {
    std::vector<Polyhedron> taus;
    for (const auto& inc : incs) taus.push_back(inc.tau);
    for (auto& rho : align(taus)) {
      RatVec r = rho.relative_interior_point();
      BoundaryPiece piece{rho, {}};
      for (const auto& inc : incs)
        if (inc.tau.contains(r)) piece.incidences.push_back(inc);
      out.push_back(std::move(piece));
    }
  }
  std::sort(out.begin(), out.end(), [](const BoundaryPiece& a, const BoundaryPiece& b) { return a.rho < b.rho; });
  return out;
}

}  // namespace dforms
