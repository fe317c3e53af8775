#ifndef QPSURF_TESTS_FIXTURES_HPP
#define QPSURF_TESTS_FIXTURES_HPP

#include "qpsurf/invariants.hpp"
#include "qpsurf/path_algebra.hpp"
#include "qpsurf/quiver.hpp"
#include "qpsurf/triangulation.hpp"

#include <random>
#include <string>
#include <vector>

namespace fixtures {

// Once-punctured torus: two triangles glued along all three arcs with the
// same orientation; one puncture of valence 6.
inline qpsurf::Triangulation torus() {
  qpsurf::Triangulation t;
  t.triangles = {{0, 1, 2}, {0, 1, 2}};
  return t;
}

inline qpsurf::Triangulation tetrahedron() { return qpsurf::sphere_base(4); }
inline qpsurf::Triangulation bipyramid() { return qpsurf::sphere_base(5); }
inline qpsurf::Triangulation octahedron() { return qpsurf::sphere_base(6); }

struct NamedCase {
  std::string name;
  qpsurf::Triangulation triangulation;
  long long dimension;  // sum over punctures of n_p^2
};

inline std::vector<NamedCase> named_cases() {
  return {
      {"torus", torus(), 36},
      {"tetrahedron", tetrahedron(), 36},
      {"bipyramid", bipyramid(), 66},
      {"octahedron", octahedron(), 96},
  };
}

// Deterministic add_puncture chains from the three sphere bases and the
// once-punctured surfaces of genus 1..3, capped at `max_arcs` arcs.
inline std::vector<qpsurf::Triangulation> random_chains(int count, unsigned seed,
                                                        int max_arcs = 18) {
  std::mt19937 rng(seed);
  std::vector<qpsurf::Triangulation> out;
  for (int i = 0; i < count; ++i) {
    qpsurf::Triangulation t;
    switch (rng() % 6) {
      case 0: t = qpsurf::sphere_base(4); break;
      case 1: t = qpsurf::sphere_base(5); break;
      case 2: t = qpsurf::sphere_base(6); break;
      case 3: t = qpsurf::once_punctured_genus(1); break;
      case 4: t = qpsurf::once_punctured_genus(2); break;
      default: t = qpsurf::once_punctured_genus(3); break;
    }
    const int room = (max_arcs - t.arc_count()) / 3;
    const int adds = room > 0 ? static_cast<int>(rng() % (room + 1)) : 0;
    for (int k = 0; k < adds; ++k)
      t = qpsurf::add_puncture(t, static_cast<int>(rng() % t.arc_count()));
    out.push_back(std::move(t));
  }
  return out;
}

// Quiver, default scalars and default-truncation algebra for a triangulation.
struct Instance {
  qpsurf::Quiver quiver;
  qpsurf::ScalarAssignment scalars;
  qpsurf::TruncatedAlgebra algebra;
};

inline Instance make_instance(const qpsurf::Triangulation& t,
                              qpsurf::QuotientEngine engine =
                                  qpsurf::QuotientEngine::automatic) {
  qpsurf::Quiver q = qpsurf::adjacency_quiver(t);
  qpsurf::ScalarAssignment c = qpsurf::ScalarAssignment::default_scalars(q);
  qpsurf::TruncatedAlgebra a(q, c, qpsurf::default_truncation(q), engine);
  return {std::move(q), std::move(c), std::move(a)};
}

}  // namespace fixtures

#endif
