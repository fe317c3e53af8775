#include "qpsurf/triangulation.hpp"

#include "qpsurf/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace qpsurf {

namespace {

// Slot ids are 3*t + k; see the Triangulation documentation.
int slot_next(int c) { return c - c % 3 + (c % 3 + 1) % 3; }

int slot_arc(const Triangulation& t, int c) { return t.triangles[c / 3][c % 3]; }

// occurrences[a] = slots carrying arc a, in increasing slot order.
std::vector<std::vector<int>> arc_occurrences(const Triangulation& t) {
  std::vector<std::vector<int>> occ(t.arc_count());
  for (int c = 0; c < 3 * t.triangle_count(); ++c) occ[slot_arc(t, c)].push_back(c);
  return occ;
}

// mate[c] = the other slot with the same arc.  Requires every arc to occur
// exactly twice.
std::vector<int> mate_map(const Triangulation& t) {
  const auto occ = arc_occurrences(t);
  std::vector<int> mate(3 * t.triangle_count(), -1);
  for (const auto& slots : occ) {
    mate[slots[0]] = slots[1];
    mate[slots[1]] = slots[0];
  }
  return mate;
}

// Orbits of the counterclockwise corner rotation c -> mate[next(c)], listed
// by smallest slot and traversed from it.  One orbit per puncture; the
// orbit length is the puncture's valence.
std::vector<std::vector<int>> rotation_orbits(const Triangulation& t,
                                              const std::vector<int>& mate) {
  const int slots = 3 * t.triangle_count();
  std::vector<std::vector<int>> orbits;
  std::vector<bool> seen(slots, false);
  for (int start = 0; start < slots; ++start) {
    if (seen[start]) continue;
    std::vector<int> orbit;
    for (int c = start; !seen[c]; c = mate[slot_next(c)]) {
      seen[c] = true;
      orbit.push_back(c);
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

// Structural problems that must be absent before any orbit computation
// makes sense: nonnegative ids, every arc exactly twice, no self-folded
// triangle.
std::vector<std::string> structural_problems(const Triangulation& t) {
  std::vector<std::string> problems;
  if (t.triangles.empty()) {
    problems.push_back("triangulation has no triangles");
    return problems;
  }
  for (int i = 0; i < t.triangle_count(); ++i)
    for (int arc : t.triangles[i])
      if (arc < 0) {
        problems.push_back("negative arc id in triangle " + std::to_string(i));
        return problems;
      }
  for (int i = 0; i < t.triangle_count(); ++i) {
    const auto& tri = t.triangles[i];
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      problems.push_back("self-folded triangle at index " + std::to_string(i));
  }
  std::vector<int> count(t.arc_count(), 0);
  for (const auto& tri : t.triangles)
    for (int arc : tri) ++count[arc];
  for (int a = 0; a < t.arc_count(); ++a)
    if (count[a] != 2)
      problems.push_back("arc " + std::to_string(a) + " occurs " +
                         std::to_string(count[a]) + " times (expected 2)");
  return problems;
}

void require_valid(const Triangulation& t, const char* op) {
  const auto report = validate(t);
  if (!report.ok())
    throw PreconditionError(std::string(op) + ": invalid triangulation: " +
                            report.problems.front());
}

}  // namespace

int Triangulation::arc_count() const {
  int max_id = -1;
  for (const auto& tri : triangles)
    max_id = std::max({max_id, tri[0], tri[1], tri[2]});
  return max_id + 1;
}

std::vector<int> PunctureCycle::multiplicities(int arc_count) const {
  std::vector<int> v(arc_count, 0);
  for (int arc : arcs) ++v[arc];
  return v;
}

Triangulation parse_triangulation(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("triangulation document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("triangles"))
    throw ParseError("triangulation document: expected an object with a 'triangles' key");
  const auto& arr = doc["triangles"];
  if (!arr.is_array())
    throw ParseError("triangulation document: 'triangles' must be an array");
  if (arr.empty())
    throw ParseError("triangulation document: 'triangles' is empty");

  Triangulation t;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& tri = arr[i];
    if (!tri.is_array() || tri.size() != 3)
      throw ParseError("triangles[" + std::to_string(i) + "]: expected three arc ids");
    std::array<int, 3> ids{};
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& entry = tri[k];
      if (!entry.is_number_integer() || entry.get<long long>() < 0)
        throw ParseError("triangles[" + std::to_string(i) + "][" + std::to_string(k) +
                         "]: expected a nonnegative integer arc id");
      const long long v = entry.get<long long>();
      if (v > 1'000'000)
        throw ParseError("triangles[" + std::to_string(i) + "][" + std::to_string(k) +
                         "]: arc id out of supported range");
      ids[k] = static_cast<int>(v);
    }
    t.triangles.push_back(ids);
  }

  std::vector<bool> used(t.arc_count(), false);
  for (const auto& tri : t.triangles)
    for (int arc : tri) used[arc] = true;
  for (int a = 0; a < t.arc_count(); ++a)
    if (!used[a])
      throw ParseError("arc ids are not contiguous: id " + std::to_string(a) +
                       " is missing while larger ids are present");
  return t;
}

std::string triangulation_to_json(const Triangulation& t) {
  nlohmann::ordered_json doc;
  doc["triangles"] = nlohmann::ordered_json::array();
  for (const auto& tri : t.triangles) doc["triangles"].push_back({tri[0], tri[1], tri[2]});
  return doc.dump();
}

ValidationReport validate(const Triangulation& t) {
  ValidationReport report;
  report.problems = structural_problems(t);
  if (!report.problems.empty()) return report;

  // Connectivity of the gluing graph (triangles joined along shared arcs).
  const auto occ = arc_occurrences(t);
  std::vector<bool> visited(t.triangle_count(), false);
  std::queue<int> queue;
  queue.push(0);
  visited[0] = true;
  int reached = 1;
  while (!queue.empty()) {
    const int tri = queue.front();
    queue.pop();
    for (int k = 0; k < 3; ++k)
      for (int other_slot : occ[t.triangles[tri][k]]) {
        const int other = other_slot / 3;
        if (!visited[other]) {
          visited[other] = true;
          ++reached;
          queue.push(other);
        }
      }
  }
  if (reached != t.triangle_count())
    report.problems.push_back("gluing graph is disconnected");

  const auto mate = mate_map(t);
  const auto orbits = rotation_orbits(t, mate);
  for (std::size_t p = 0; p < orbits.size(); ++p)
    if (orbits[p].size() < 3)
      report.problems.push_back("(T3) violated at puncture " + std::to_string(p) +
                                " (valence " + std::to_string(orbits[p].size()) + ")");
  return report;
}

EulerData euler_data(const Triangulation& t) {
  require_valid(t, "euler_data");
  const auto orbits = rotation_orbits(t, mate_map(t));
  EulerData data;
  data.punctures = static_cast<int>(orbits.size());
  data.arcs = t.arc_count();
  data.triangles = t.triangle_count();
  const int chi = data.punctures - data.arcs + data.triangles;
  if ((2 - chi) % 2 != 0 || chi > 2)
    throw PreconditionError("euler_data: Euler characteristic " + std::to_string(chi) +
                            " does not arise from a closed oriented surface");
  data.genus = (2 - chi) / 2;
  if (data.arcs != 6 * data.genus - 6 + 3 * data.punctures)
    throw PreconditionError("euler_data: arc count inconsistent with genus and punctures");
  return data;
}

std::vector<PunctureCycle> puncture_cycles(const Triangulation& t) {
  require_valid(t, "puncture_cycles");
  const auto orbits = rotation_orbits(t, mate_map(t));
  std::vector<PunctureCycle> cycles;
  for (std::size_t p = 0; p < orbits.size(); ++p) {
    PunctureCycle cycle;
    cycle.puncture = static_cast<int>(p);
    for (int slot : orbits[p]) cycle.arcs.push_back(slot_arc(t, slot));
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

ConditionReport condition_report(const Triangulation& t) {
  const auto problems = structural_problems(t);
  if (!problems.empty())
    throw PreconditionError("condition_report: " + problems.front());

  const auto mate = mate_map(t);
  const auto orbits = rotation_orbits(t, mate);
  const int slots = 3 * t.triangle_count();
  std::vector<int> orbit_of(slots, -1);
  for (std::size_t p = 0; p < orbits.size(); ++p)
    for (int slot : orbits[p]) orbit_of[slot] = static_cast<int>(p);

  std::vector<std::size_t> valence(orbits.size());
  for (std::size_t p = 0; p < orbits.size(); ++p) valence[p] = orbits[p].size();

  ConditionReport report;
  report.t3 = std::all_of(valence.begin(), valence.end(),
                          [](std::size_t v) { return v >= 3; });
  report.t4 = std::all_of(valence.begin(), valence.end(),
                          [](std::size_t v) { return v >= 4; });

  // (T3 1/2): every arc has an endpoint of valence >= 4.  The endpoints of
  // an arc are the rotation orbits of its two slots (each directed side
  // points at one endpoint).
  report.t3half = true;
  const auto occ = arc_occurrences(t);
  for (const auto& slots_of_arc : occ) {
    const std::size_t v0 = valence[orbit_of[slots_of_arc[0]]];
    const std::size_t v1 = valence[orbit_of[slots_of_arc[1]]];
    if (v0 < 4 && v1 < 4) {
      report.t3half = false;
      break;
    }
  }
  return report;
}

Triangulation sphere_base(int punctures) {
  Triangulation t;
  switch (punctures) {
    case 4:
      // Tetrahedron on vertices A,B,C,D with arcs AB=0, AC=1, AD=2, BC=3,
      // BD=4, CD=5; faces listed clockwise as seen from outside.
      t.triangles = {{3, 5, 4}, {1, 3, 0}, {2, 5, 1}, {0, 4, 2}};
      return t;
    case 5: {
      // Triangular bipyramid: equator arcs q_i = i (i mod 3), upper arcs
      // u_i = 3+i to the top apex, lower arcs l_i = 6+i to the bottom apex.
      for (int i = 0; i < 3; ++i) t.triangles.push_back({3 + (i + 1) % 3, i, 3 + i});
      for (int i = 0; i < 3; ++i) t.triangles.push_back({6 + i, i, 6 + (i + 1) % 3});
      return t;
    }
    case 6: {
      // Octahedron: equator arcs q_i = i (i mod 4), upper arcs u_i = 4+i,
      // lower arcs l_i = 8+i.
      for (int i = 0; i < 4; ++i) t.triangles.push_back({4 + (i + 1) % 4, i, 4 + i});
      for (int i = 0; i < 4; ++i) t.triangles.push_back({8 + i, i, 8 + (i + 1) % 4});
      return t;
    }
    default:
      throw PreconditionError("sphere_base: puncture count must be 4, 5 or 6");
  }
}

Triangulation once_punctured_genus(int genus) {
  if (genus < 1) throw PreconditionError("once_punctured_genus: genus must be >= 1");
  const int n = 4 * genus;  // polygon size

  // Boundary edge m of the n-gon (running from vertex m to m+1) is glued to
  // edge m+2 within its group of four, realizing the identification word
  // a_0 b_0 a_0^- b_0^- ... ; fan diagonals d_k join vertex 0 to vertex k.
  // Arc ids: a_i = 2i, b_i = 2i+1, d_k = 2*genus + (k-2) for 2 <= k <= n-2.
  const auto edge_arc = [&](int m) {
    const int group = m / 4;
    return (m % 2 == 0) ? 2 * group : 2 * group + 1;
  };
  const auto diagonal_arc = [&](int k) {
    if (k == 1) return edge_arc(0);
    if (k == n - 1) return edge_arc(n - 1);
    return 2 * genus + (k - 2);
  };

  Triangulation t;
  for (int k = 1; k <= n - 2; ++k)
    t.triangles.push_back({diagonal_arc(k + 1), edge_arc(k), diagonal_arc(k)});
  return t;
}

Triangulation add_puncture(const Triangulation& t, int arc) {
  require_valid(t, "add_puncture");
  if (arc < 0 || arc >= t.arc_count())
    throw PreconditionError("add_puncture: invalid arc id " + std::to_string(arc));

  // Locate the two triangles adjacent to the arc (distinct: no self-folds).
  const auto occ = arc_occurrences(t);
  const int slot1 = occ[arc][0];
  const int slot2 = occ[arc][1];

  // Rotate each triple so the chosen arc comes first: (arc, a, b) and
  // (arc, c, d).
  const auto rotated = [&](int slot) {
    const auto& tri = t.triangles[slot / 3];
    const int k = slot % 3;
    return std::array<int, 3>{tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]};
  };
  const auto t1 = rotated(slot1);
  const auto t2 = rotated(slot2);

  // Surviving arcs close ranks; the four new star arcs w,x,y,z take the top
  // ids in the order they wind around the new puncture.
  const int a_count = t.arc_count();
  const auto relabel = [&](int old) { return old > arc ? old - 1 : old; };
  const int w = a_count - 1, x = a_count, y = a_count + 1, z = a_count + 2;

  Triangulation result;
  for (int i = 0; i < t.triangle_count(); ++i) {
    if (i == slot1 / 3 || i == slot2 / 3) continue;
    const auto& tri = t.triangles[i];
    result.triangles.push_back({relabel(tri[0]), relabel(tri[1]), relabel(tri[2])});
  }
  const int a = relabel(t1[1]), b = relabel(t1[2]);
  const int c = relabel(t2[1]), d = relabel(t2[2]);
  result.triangles.push_back({w, a, x});
  result.triangles.push_back({x, b, y});
  result.triangles.push_back({y, c, z});
  result.triangles.push_back({z, d, w});
  return result;
}

Triangulation nice_triangulation(const MarkedSurface& s) {
  if (!s.triangulable())
    throw PreconditionError("nice_triangulation: surface (genus " +
                            std::to_string(s.genus) + ", punctures " +
                            std::to_string(s.punctures) + ") is not triangulable");
  Triangulation t;
  int extra = 0;
  if (s.genus == 0) {
    t = sphere_base(std::min(s.punctures, 6));
    extra = s.punctures - std::min(s.punctures, 6);
  } else {
    t = once_punctured_genus(s.genus);
    extra = s.punctures - 1;
  }
  for (int i = 0; i < extra; ++i) t = add_puncture(t, 0);
  return t;
}

}  // namespace qpsurf
