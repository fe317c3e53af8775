#include "qpsurf/quiver.hpp"

#include "qpsurf/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace qpsurf {

namespace {

// Orbits of a permutation, listed by smallest member and traversed from it.
std::vector<std::vector<int>> permutation_orbits(const std::vector<int>& perm) {
  std::vector<std::vector<int>> orbits;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> orbit;
    for (int a = static_cast<int>(start); !seen[a]; a = perm[a]) {
      seen[a] = true;
      orbit.push_back(a);
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

bool is_permutation(const std::vector<int>& v, int n) {
  if (static_cast<int>(v.size()) != n) return false;
  std::vector<bool> hit(n, false);
  for (int x : v) {
    if (x < 0 || x >= n || hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

}  // namespace

int Quiver::bar(int arrow) const {
  const auto& pair = out_[source[arrow]];
  return pair[0] == arrow ? pair[1] : pair[0];
}

void Quiver::finalize() {
  const int arrows = arrow_count();
  out_.assign(vertices, {-1, -1});
  for (int a = 0; a < arrows; ++a) {
    auto& slot = out_[source[a]];
    if (slot[0] == -1)
      slot[0] = a;
    else if (slot[1] == -1)
      slot[1] = a;
    // Vertices with more than two out-arrows are reported by
    // quiver_problems; the extra arrows are simply not indexed here.
  }

  g_orbit_index_.assign(arrows, -1);
  g_orbit_size_.clear();
  g_orbit_rep_.clear();
  const auto orbits = permutation_orbits(g);
  g_orbit_total_ = static_cast<int>(orbits.size());
  for (int o = 0; o < g_orbit_total_; ++o) {
    g_orbit_size_.push_back(static_cast<int>(orbits[o].size()));
    g_orbit_rep_.push_back(orbits[o].front());
    for (int a : orbits[o]) g_orbit_index_[a] = o;
  }
}

std::vector<std::string> quiver_problems(const Quiver& q) {
  std::vector<std::string> problems;
  const int arrows = q.arrow_count();
  if (q.vertices <= 0) problems.push_back("no vertices");
  if (static_cast<int>(q.target.size()) != arrows)
    problems.push_back("source/target size mismatch");
  if (!is_permutation(q.f, arrows)) problems.push_back("f is not a permutation");
  if (!is_permutation(q.g, arrows)) problems.push_back("g is not a permutation");
  if (!problems.empty()) return problems;

  for (int a = 0; a < arrows; ++a) {
    if (q.source[a] < 0 || q.source[a] >= q.vertices || q.target[a] < 0 ||
        q.target[a] >= q.vertices) {
      problems.push_back("arrow " + std::to_string(a) + " has an out-of-range endpoint");
      return problems;
    }
    if (q.source[a] == q.target[a])
      problems.push_back("arrow " + std::to_string(a) + " is a loop");
  }

  std::vector<int> out_deg(q.vertices, 0), in_deg(q.vertices, 0);
  for (int a = 0; a < arrows; ++a) {
    ++out_deg[q.source[a]];
    ++in_deg[q.target[a]];
  }
  for (int v = 0; v < q.vertices; ++v) {
    if (out_deg[v] != 2)
      problems.push_back("vertex " + std::to_string(v) + " has out-degree " +
                         std::to_string(out_deg[v]) + " (expected 2)");
    if (in_deg[v] != 2)
      problems.push_back("vertex " + std::to_string(v) + " has in-degree " +
                         std::to_string(in_deg[v]) + " (expected 2)");
  }
  if (!problems.empty()) return problems;

  for (int a = 0; a < arrows; ++a) {
    // f and g both continue at the target, and together they exhaust the
    // two arrows leaving it.
    if (q.source[q.f[a]] != q.target[a])
      problems.push_back("f(" + std::to_string(a) + ") does not start at the target");
    if (q.source[q.g[a]] != q.target[a])
      problems.push_back("g(" + std::to_string(a) + ") does not start at the target");
    if (q.f[a] == q.g[a])
      problems.push_back("f and g agree on arrow " + std::to_string(a));
    if (q.f[q.f[q.f[a]]] != a)
      problems.push_back("f^3 is not the identity at arrow " + std::to_string(a));
    if (q.f[a] == a)
      problems.push_back("f fixes arrow " + std::to_string(a));
  }
  if (!problems.empty()) return problems;

  // bar is well-defined (degrees are 2) and satisfies bar(f(a)) = g(a).
  // Work on a finalized copy so hand-built values are accepted too.
  Quiver qq = q;
  qq.finalize();
  for (int a = 0; a < arrows; ++a) {
    if (qq.bar(qq.f[a]) != qq.g[a])
      problems.push_back("bar(f(a)) != g(a) at arrow " + std::to_string(a));
    if (qq.bar(qq.g[a]) != qq.f[a])
      problems.push_back("bar(g(a)) != f(a) at arrow " + std::to_string(a));
  }

  for (const auto& orbit : permutation_orbits(q.g))
    if (orbit.size() < 3)
      problems.push_back("g-orbit of arrow " + std::to_string(orbit.front()) +
                         " has size " + std::to_string(orbit.size()) + " (< 3)");

  // No 2-cycles: the two arrows between any ordered vertex pair never come
  // back.  (Parallel arrows in the same direction are allowed.)
  for (int a = 0; a < arrows; ++a)
    for (int b = 0; b < arrows; ++b)
      if (q.source[b] == q.target[a] && q.target[b] == q.source[a]) {
        problems.push_back("arrows " + std::to_string(a) + " and " + std::to_string(b) +
                           " form a 2-cycle");
        return problems;
      }
  return problems;
}

Quiver adjacency_quiver(const Triangulation& t) {
  const auto report = validate(t);
  if (!report.ok())
    throw PreconditionError("adjacency_quiver: invalid triangulation: " +
                            report.problems.front());

  const int slots = 3 * t.triangle_count();
  std::vector<std::vector<int>> occ(t.arc_count());
  for (int c = 0; c < slots; ++c) occ[t.triangles[c / 3][c % 3]].push_back(c);
  std::vector<int> mate(slots);
  for (const auto& pair : occ) {
    mate[pair[0]] = pair[1];
    mate[pair[1]] = pair[0];
  }
  const auto next = [](int c) { return c - c % 3 + (c % 3 + 1) % 3; };

  // Arrow ids are slot ids: the arrow at slot c runs from the arc at c to
  // the arc following it counterclockwise around the puncture at c's head.
  Quiver q;
  q.vertices = t.arc_count();
  q.source.resize(slots);
  q.target.resize(slots);
  q.f.resize(slots);
  q.g.resize(slots);
  for (int c = 0; c < slots; ++c) {
    q.source[c] = t.triangles[c / 3][c % 3];
    q.f[c] = next(c);
    q.g[c] = mate[next(c)];
    q.target[c] = t.triangles[q.f[c] / 3][q.f[c] % 3];
  }
  q.finalize();
  return q;
}

OrbitPartition orbit_partition(const Quiver& q, OrbitKind kind) {
  OrbitPartition partition;
  partition.kind = kind;
  std::vector<int> perm;
  switch (kind) {
    case OrbitKind::f:
      perm = q.f;
      break;
    case OrbitKind::g:
      perm = q.g;
      break;
    case OrbitKind::h: {
      // h(beta) = g^-3(bar(beta)).
      const int arrows = q.arrow_count();
      std::vector<int> g_inv(arrows);
      for (int a = 0; a < arrows; ++a) g_inv[q.g[a]] = a;
      perm.resize(arrows);
      for (int a = 0; a < arrows; ++a)
        perm[a] = g_inv[g_inv[g_inv[q.bar(a)]]];
      break;
    }
  }
  partition.orbits = permutation_orbits(perm);
  return partition;
}

QuiverConditions quiver_conditions(const Quiver& q) {
  QuiverConditions cond;
  cond.star = true;
  cond.diamond = true;
  for (int a = 0; a < q.arrow_count(); ++a) {
    if (q.orbit_size(a) < 4 && q.orbit_size(q.f[a]) < 4) cond.star = false;
    if (q.orbit_size(a) != 3) cond.diamond = false;
  }
  return cond;
}

bool xy_transitive(const Quiver& q) {
  const int arrows = q.arrow_count();
  if (arrows == 0) return false;
  std::vector<bool> seen(arrows, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    for (int b : {q.bar(a), q.g[a]}) {
      if (!seen[b]) {
        seen[b] = true;
        ++reached;
        stack.push_back(b);
      }
    }
  }
  return reached == arrows;
}

namespace {

// Isomorphism of quivers with permutations: a bijection of arrows commuting
// with f and g whose induced vertex map is well-defined and bijective.
// Since <f,g> acts transitively on the arrows of an adjacency quiver, the
// image of arrow 0 determines the whole map.
bool permutation_quiver_isomorphic(const Quiver& a, const Quiver& b) {
  const int arrows = a.arrow_count();
  if (arrows != b.arrow_count() || a.vertices != b.vertices) return false;
  for (int image0 = 0; image0 < arrows; ++image0) {
    std::vector<int> image(arrows, -1);
    image[0] = image0;
    std::vector<int> stack{0};
    bool ok = true;
    while (ok && !stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      const std::pair<int, int> steps[] = {{a.f[x], b.f[image[x]]},
                                           {a.g[x], b.g[image[x]]}};
      for (const auto& [nx, ny] : steps) {
        if (image[nx] == -1) {
          image[nx] = ny;
          stack.push_back(nx);
        } else if (image[nx] != ny) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    if (std::count(image.begin(), image.end(), -1) > 0) continue;  // not transitive
    // Arrow bijectivity.
    std::vector<bool> hit(arrows, false);
    for (int y : image) {
      if (hit[y]) {
        ok = false;
        break;
      }
      hit[y] = true;
    }
    if (!ok) continue;
    // Induced vertex map: well-defined and bijective.
    std::vector<int> vmap(a.vertices, -1);
    for (int x = 0; x < arrows && ok; ++x) {
      const int v = a.source[x], w = b.source[image[x]];
      if (vmap[v] == -1)
        vmap[v] = w;
      else if (vmap[v] != w)
        ok = false;
    }
    if (!ok) continue;
    std::set<int> targets(vmap.begin(), vmap.end());
    if (static_cast<int>(targets.size()) == a.vertices && targets.count(-1) == 0)
      return true;
  }
  return false;
}

}  // namespace

bool diamond_structure_check(const Quiver& q) {
  if (!quiver_conditions(q).diamond)
    throw PreconditionError("diamond_structure_check: not all g-orbits have size 3");

  if (q.vertices != 6 || q.arrow_count() != 12 || q.g_orbit_count() != 4) return false;

  // alpha, bar(alpha), f(alpha) and f(bar(alpha)) meet all four g-orbits.
  for (int a = 0; a < q.arrow_count(); ++a) {
    const std::set<int> orbits{q.g_orbit(a), q.g_orbit(q.bar(a)), q.g_orbit(q.f[a]),
                               q.g_orbit(q.f[q.bar(a)])};
    if (orbits.size() != 4) return false;
  }

  return permutation_quiver_isomorphic(q, adjacency_quiver(sphere_base(4)));
}

std::string quiver_to_json(const Quiver& q) {
  nlohmann::ordered_json doc;
  doc["vertices"] = nlohmann::ordered_json::array();
  for (int v = 0; v < q.vertices; ++v) doc["vertices"].push_back(v);
  doc["arrows"] = nlohmann::ordered_json::array();
  for (int a = 0; a < q.arrow_count(); ++a) {
    nlohmann::ordered_json arrow;
    arrow["id"] = a;
    arrow["src"] = q.source[a];
    arrow["tgt"] = q.target[a];
    arrow["f"] = q.f[a];
    arrow["g"] = q.g[a];
    doc["arrows"].push_back(arrow);
  }
  return doc.dump();
}

Quiver quiver_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("quiver document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("arrows"))
    throw ParseError("quiver document: expected 'vertices' and 'arrows' keys");
  const auto& vertices = doc["vertices"];
  const auto& arrows = doc["arrows"];
  if (!vertices.is_array() || !arrows.is_array())
    throw ParseError("quiver document: 'vertices' and 'arrows' must be arrays");

  Quiver q;
  q.vertices = static_cast<int>(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (!vertices[i].is_number_integer() || vertices[i].get<long long>() != static_cast<long long>(i))
      throw ParseError("quiver document: vertices must be the list 0..V-1");

  const int n = static_cast<int>(arrows.size());
  q.source.assign(n, 0);
  q.target.assign(n, 0);
  q.f.assign(n, 0);
  q.g.assign(n, 0);
  std::vector<bool> seen(n, false);
  for (const auto& arrow : arrows) {
    if (!arrow.is_object())
      throw ParseError("quiver document: arrows must be objects");
    for (const char* key : {"id", "src", "tgt", "f", "g"})
      if (!arrow.contains(key) || !arrow[key].is_number_integer())
        throw ParseError(std::string("quiver document: arrow missing integer '") + key + "'");
    const int id = arrow["id"].get<int>();
    if (id < 0 || id >= n || seen[id])
      throw ParseError("quiver document: arrow ids must be 0..E-1 without repeats");
    seen[id] = true;
    const auto in_range = [&](const char* key, int bound) {
      const int v = arrow[key].get<int>();
      if (v < 0 || v >= bound)
        throw ParseError(std::string("quiver document: arrow field '") + key +
                         "' out of range");
      return v;
    };
    q.source[id] = in_range("src", q.vertices);
    q.target[id] = in_range("tgt", q.vertices);
    q.f[id] = in_range("f", n);
    q.g[id] = in_range("g", n);
  }
  q.finalize();
  return q;
}

}  // namespace qpsurf
