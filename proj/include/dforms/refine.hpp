#pragma once

#include <vector>

#include "dforms/delta_form.hpp"

namespace dforms {

/// Pieces of `cell` cut by every hyperplane a·x = b that crosses its relative interior.
std::vector<Polyhedron> cut_by(const Polyhedron& cell, const std::vector<Inequality>& hyperplanes);

/// Cells of the arrangement generated by the facet hyperplanes of cells that
/// share one affine hull, restricted to their union. Any two returned pieces
/// are equal or meet in a proper face; each input cell is a union of pieces.
std::vector<Polyhedron> align(const std::vector<Polyhedron>& cells);

/// Canonical key of the affine hull.
std::string hull_key(const Polyhedron& p);

struct Incidence {
  std::size_t term;  // index into the term list
  Polyhedron tau;    // facet of that term's cell containing the piece
};

/// Codimension-one pieces of the boundary of a term list: facets of all
/// cells grouped by affine hull and aligned; each piece lists the cells
/// having it inside a facet.
struct BoundaryPiece {
  Polyhedron rho;
  std::vector<Incidence> incidences;
};
std::vector<BoundaryPiece> boundary_pieces(const std::vector<Term>& terms);

}  // namespace dforms
