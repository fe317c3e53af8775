#ifndef QPSURF_QUIVER_HPP
#define QPSURF_QUIVER_HPP

#include "qpsurf/triangulation.hpp"

#include <array>
#include <string>
#include <vector>

namespace qpsurf {

// The adjacency quiver of an ideal triangulation.  Vertices are the arcs;
// there is one arrow i -> j for every corner at which arc j immediately
// follows arc i counterclockwise around a puncture.  Two permutations of the
// arrow set are carried along:
//
//   f  rotates an arrow inside its triangle (every f-orbit has size 3 and
//      corresponds to a triangle);
//   g  rotates an arrow counterclockwise around the puncture its corner
//      lies at (g-orbits correspond to punctures; the orbit of alpha has
//      size n_alpha, the valence of that puncture, always >= 3).
//
// Every vertex has exactly two outgoing and two incoming arrows; bar(alpha)
// is the other arrow sharing alpha's source.  The structural identities
//   bar(f(alpha)) = g(alpha)   and   bar(g(alpha)) = f(alpha)
// hold for all arrows, hence f and g determine bar and each other up to the
// pairing of parallel arrows.
//
// In quivers produced by adjacency_quiver(), arrow ids equal the slot ids of
// the triangulation (arrow 3t+k sits in triangle t), so f(3t+k) = 3t+(k+1)%3.
struct Quiver {
  int vertices = 0;               // vertex ids 0..vertices-1
  std::vector<int> source;        // arrow id -> source vertex
  std::vector<int> target;        // arrow id -> target vertex
  std::vector<int> f;             // triangle rotation
  std::vector<int> g;             // puncture rotation

  int arrow_count() const { return static_cast<int>(source.size()); }

  // The other arrow with the same source.  Requires a valid quiver.
  int bar(int arrow) const;

  // Index of the g-orbit of an arrow, and the orbit size n_alpha.  Orbits
  // are numbered 0,1,2,... by their smallest arrow id.  Cached on first use
  // by the factory functions; on hand-built quivers call finalize() first.
  int g_orbit(int arrow) const { return g_orbit_index_[arrow]; }
  int orbit_size(int arrow) const { return g_orbit_size_[g_orbit_index_[arrow]]; }
  int g_orbit_count() const { return g_orbit_total_; }
  // Smallest arrow id in the given g-orbit.
  int g_orbit_representative(int orbit) const { return g_orbit_rep_[orbit]; }

  // Recomputes the cached g-orbit tables; required after editing the raw
  // permutation vectors directly.
  void finalize();

  // Out-arrows of a vertex in increasing arrow id order (exactly two for
  // valid quivers).
  const std::array<int, 2>& out_arrows(int vertex) const { return out_[vertex]; }

private:
  std::vector<int> g_orbit_index_;
  std::vector<int> g_orbit_size_;
  std::vector<int> g_orbit_rep_;
  std::vector<std::array<int, 2>> out_;
  int g_orbit_total_ = 0;
};

// Checks the defining invariants of an adjacency quiver: permutation
// vectors of consistent size, two out- and two in-arrows per vertex, no
// loops, f of order 3 pairing arrows head-to-tail inside triangles, g
// following arrows (target(alpha) = source(g(alpha))), the bar identities
// and all g-orbits of size >= 3.  Returns a list of problems (empty = ok).
std::vector<std::string> quiver_problems(const Quiver& q);

// Builds the adjacency quiver of a valid triangulation.  Throws
// PreconditionError if validate(t) fails.
Quiver adjacency_quiver(const Triangulation& t);

enum class OrbitKind { f, g, h };

// Orbit partition of the arrow set under f, g, or h(beta) = g^-3(bar(beta)).
// Orbits are listed by their smallest member and traversed from it, so the
// output is deterministic.
struct OrbitPartition {
  OrbitKind kind = OrbitKind::f;
  std::vector<std::vector<int>> orbits;
};

OrbitPartition orbit_partition(const Quiver& q, OrbitKind kind);

// star:    every arrow alpha has n_alpha >= 4 or n_f(alpha) >= 4; holds
//          exactly when every arc of the triangulation has an endpoint of
//          valence >= 4.
// diamond: every arrow has n_alpha = 3; holds exactly for the quiver of the
//          four-punctured sphere.
struct QuiverConditions {
  bool star = false;
  bool diamond = false;
};

QuiverConditions quiver_conditions(const Quiver& q);

// Whether the group generated by x = bar and y = g acts transitively on the
// arrow set.  True for every adjacency quiver of a (connected) valid
// triangulation.
bool xy_transitive(const Quiver& q);

// For a quiver satisfying the diamond condition, verifies the rigid shape
// forced by it: 6 vertices, 12 arrows, 4 g-orbits of size 3, the four
// arrows alpha, bar(alpha), f(alpha), f(bar(alpha)) lie in four distinct
// g-orbits for every alpha, and the quiver is isomorphic (as a quiver with
// the permutations f and g) to the adjacency quiver of sphere_base(4).
// Throws PreconditionError when the diamond condition fails.
bool diamond_structure_check(const Quiver& q);

// JSON interchange: {"vertices":[0,...], "arrows":[{"id":..,"src":..,
// "tgt":..,"f":..,"g":..}, ...]}, arrows sorted by id.
std::string quiver_to_json(const Quiver& q);

// Parses the interchange format; the result is finalized but *not* checked
// against quiver_problems().
Quiver quiver_from_json(const std::string& text);

}  // namespace qpsurf

#endif
