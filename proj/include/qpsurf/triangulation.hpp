#ifndef QPSURF_TRIANGULATION_HPP
#define QPSURF_TRIANGULATION_HPP

#include <array>
#include <string>
#include <vector>

namespace qpsurf {

// A closed oriented surface of the given genus with a finite set of marked
// points (punctures).  Ideal triangulations whose triangles have pairwise
// distinct sides exist exactly when the surface is "triangulable" below:
// positive genus needs at least one puncture, the sphere needs at least four.
struct MarkedSurface {
  int genus = 0;
  int punctures = 0;

  bool triangulable() const {
    if (genus < 0 || punctures < 0) return false;
    if (genus == 0) return punctures >= 4;
    return punctures >= 1;
  }
};

// An ideal triangulation of a closed oriented marked surface, encoded purely
// combinatorially.  Arcs are numbered 0..A-1 and each triangle lists its
// three sides in clockwise order (traversing the boundary with the interior
// of the triangle on the right).  Every arc appears exactly twice across the
// list; gluing the two occurrences so that their directions disagree yields
// a closed oriented surface.  Cyclic rotations of a triple encode the same
// triangle.
//
// Slot/corner bookkeeping used throughout the library: slot k of triangle t
// (k = 0,1,2) has the integer id 3*t + k and stands for the corner of t
// crossed when passing from side k to side (k+1) mod 3.  Each slot is also
// identified with the directed side k of t, which runs *towards* that
// corner.  The permutation that advances a slot inside its triangle is
//   next(3t + k) = 3t + (k+1) mod 3,
// and mate(c) is the unique other slot carrying the same arc as c.  The
// counterclockwise rotation around the corner at slot c's head is
//   rot(c) = mate(next(c)),
// whose orbits are exactly the corners sharing one puncture; the length of
// the orbit of puncture p is its valence n_p (the number of arc ends at p).
struct Triangulation {
  std::vector<std::array<int, 3>> triangles;

  int triangle_count() const { return static_cast<int>(triangles.size()); }
  // One more than the largest arc id mentioned (0 for an empty list).
  int arc_count() const;
};

// Outcome of validate(): empty problem list means the value is a genuine
// ideal triangulation (every arc twice, no self-folded triangle, connected
// gluing, every puncture of valence >= 3).
struct ValidationReport {
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
};

struct EulerData {
  int punctures = 0;
  int arcs = 0;
  int triangles = 0;
  int genus = 0;
};

// The cyclic sequence of arc ends seen when walking counterclockwise around
// one puncture.  arcs[i] is the arc whose end is crossed at step i; an arc
// with both ends at the puncture appears twice.  length() is the valence.
struct PunctureCycle {
  int puncture = 0;
  std::vector<int> arcs;

  int length() const { return static_cast<int>(arcs.size()); }
  // multiplicities()[a] counts how many ends of arc a lie at this puncture
  // (0, 1 or 2); summed over all punctures every arc contributes 2.
  std::vector<int> multiplicities(int arc_count) const;
};

// Valence conditions on a triangulation, each strictly stronger than the
// previous one:
//   t3     every puncture has valence >= 3 (part of validity);
//   t3half every arc has at least one endpoint of valence >= 4;
//   t4     every puncture has valence >= 4.
struct ConditionReport {
  bool t3 = false;
  bool t3half = false;
  bool t4 = false;
};

// --- parsing and serialization ---------------------------------------------

// Parses {"triangles": [[a,b,c], ...]} with at least one triangle and
// nonnegative integer arc ids forming a contiguous range 0..A-1.  Throws
// ParseError (with a description of the offending location) otherwise.
// Validation is *not* applied; the result may still fail validate().
Triangulation parse_triangulation(const std::string& text);

std::string triangulation_to_json(const Triangulation& t);

// --- queries ----------------------------------------------------------------

ValidationReport validate(const Triangulation& t);

// Punctures, arcs, triangles and the genus from the Euler characteristic.
// Requires a valid triangulation; also checks A = 6*genus - 6 + 3*punctures.
EulerData euler_data(const Triangulation& t);

// All puncture cycles, ordered by the smallest slot id in the orbit, which
// also fixes each cycle's starting arc.  Requires a valid triangulation.
std::vector<PunctureCycle> puncture_cycles(const Triangulation& t);

ConditionReport condition_report(const Triangulation& t);

// --- constructions ----------------------------------------------------------

// Triangulations of the sphere with 4, 5 or 6 punctures: the boundary
// complexes of the tetrahedron, the triangular bipyramid and the octahedron.
Triangulation sphere_base(int punctures);

// The once-punctured genus-g surface (g >= 1) triangulated by the fan of a
// 4g-gon with the standard a b a^- b^- ... boundary identification:
// 6g-3 arcs, 4g-2 triangles, one puncture of valence 12g-6.
Triangulation once_punctured_genus(int genus);

// Replaces arc `arc` by a star of four new arcs around one new puncture
// placed on top of it: the two triangles adjacent to `arc` become four, the
// puncture count grows by one, the arc count by three.  The new puncture has
// valence 4, the former endpoints of `arc` keep their valence, and the other
// corners of the two old triangles each gain 1.  Surviving arcs are
// renumbered downwards to close the gap left by `arc` and the four new arcs
// take the top ids in the order they wind around the new puncture.
// Requires a valid triangulation and a valid arc id.
Triangulation add_puncture(const Triangulation& t, int arc);

// A canonical triangulation of the given surface: sphere_base for spheres
// with 4..6 punctures, otherwise a base case (octahedron resp.
// once_punctured_genus) extended by add_puncture steps, each applied to the
// smallest arc id.  Throws PreconditionError for non-triangulable surfaces.
Triangulation nice_triangulation(const MarkedSurface& s);

}  // namespace qpsurf

#endif
