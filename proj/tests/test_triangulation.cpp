#include "qpsurf/errors.hpp"
#include "qpsurf/triangulation.hpp"

#include <doctest.h>

#include "fixtures.hpp"

#include <algorithm>
#include <set>

using namespace qpsurf;

TEST_CASE("parsing accepts well-formed documents and round-trips") {
  const std::string text = R"({"triangles": [[0, 1, 2], [0, 2, 1]]})";
  const Triangulation t = parse_triangulation(text);
  CHECK(t.triangle_count() == 2);
  CHECK(t.arc_count() == 3);

  const Triangulation again = parse_triangulation(triangulation_to_json(t));
  CHECK(again.triangles == t.triangles);
}

TEST_CASE("parsing rejects malformed documents") {
  CHECK_THROWS_AS(parse_triangulation("not json"), ParseError);
  CHECK_THROWS_AS(parse_triangulation("[]"), ParseError);
  CHECK_THROWS_AS(parse_triangulation(R"({"triangles": []})"), ParseError);
  CHECK_THROWS_AS(parse_triangulation(R"({"triangles": [[0, 1]]})"), ParseError);
  CHECK_THROWS_AS(parse_triangulation(R"({"triangles": [[0, 1, -2]]})"), ParseError);
  CHECK_THROWS_AS(parse_triangulation(R"({"triangles": [[0, 1, 2.5]]})"), ParseError);
  // arc 1 missing: ids must be contiguous
  CHECK_THROWS_AS(parse_triangulation(R"({"triangles": [[0, 2, 3], [0, 2, 3]]})"),
                  ParseError);
}

TEST_CASE("validation of the named triangulations") {
  for (const auto& named : fixtures::named_cases()) {
    CAPTURE(named.name);
    const ValidationReport report = validate(named.triangulation);
    CHECK(report.ok());
    CHECK(report.problems.empty());
  }
}

TEST_CASE("validation reports structural problems") {
  SUBCASE("self-folded triangle") {
    Triangulation t;
    t.triangles = {{0, 0, 1}, {1, 2, 2}};
    const auto report = validate(t);
    REQUIRE_FALSE(report.ok());
    CHECK(report.problems[0].find("self-folded") != std::string::npos);
  }
  SUBCASE("arc with wrong multiplicity") {
    Triangulation t;
    t.triangles = {{0, 1, 2}, {0, 1, 0}};
    const auto report = validate(t);
    REQUIRE_FALSE(report.ok());
    bool mentioned = false;
    for (const auto& p : report.problems)
      if (p.find("occurs") != std::string::npos) mentioned = true;
    CHECK(mentioned);
  }
  SUBCASE("disconnected gluing graph") {
    Triangulation t;  // two disjoint once-punctured tori
    t.triangles = {{0, 1, 2}, {0, 1, 2}, {3, 4, 5}, {3, 4, 5}};
    const auto report = validate(t);
    REQUIRE_FALSE(report.ok());
    bool mentioned = false;
    for (const auto& p : report.problems)
      if (p.find("disconnected") != std::string::npos) mentioned = true;
    CHECK(mentioned);
  }
  SUBCASE("puncture of valence two") {
    Triangulation t;  // three-arc sphere pillow: every puncture has valence 2
    t.triangles = {{0, 1, 2}, {0, 2, 1}};
    const auto report = validate(t);
    REQUIRE_FALSE(report.ok());
    bool mentioned = false;
    for (const auto& p : report.problems)
      if (p.find("valence") != std::string::npos) mentioned = true;
    CHECK(mentioned);
  }
}

TEST_CASE("Euler data recovers genus and puncture counts") {
  const auto check = [](const Triangulation& t, int genus, int punctures) {
    const EulerData euler = euler_data(t);
    CHECK(euler.genus == genus);
    CHECK(euler.punctures == punctures);
    CHECK(euler.arcs == 6 * genus - 6 + 3 * punctures);
    CHECK(3 * euler.triangles == 2 * euler.arcs);
  };
  check(fixtures::torus(), 1, 1);
  check(fixtures::tetrahedron(), 0, 4);
  check(fixtures::bipyramid(), 0, 5);
  check(fixtures::octahedron(), 0, 6);
  check(once_punctured_genus(2), 2, 1);
  check(once_punctured_genus(3), 3, 1);
}

TEST_CASE("puncture cycles cover every arc end exactly once") {
  for (const auto& named : fixtures::named_cases()) {
    CAPTURE(named.name);
    const auto cycles = puncture_cycles(named.triangulation);
    int total = 0;
    for (const auto& cycle : cycles) total += cycle.length();
    CHECK(total == 2 * named.triangulation.arc_count());

    std::vector<int> ends(named.triangulation.arc_count(), 0);
    for (const auto& cycle : cycles)
      for (int arc : cycle.arcs) ++ends[arc];
    for (int arc = 0; arc < named.triangulation.arc_count(); ++arc)
      CHECK(ends[arc] == 2);
  }
}

TEST_CASE("torus has one valence-six puncture") {
  const auto cycles = puncture_cycles(fixtures::torus());
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].length() == 6);
  const auto v = cycles[0].multiplicities(3);
  CHECK(v == std::vector<int>{2, 2, 2});
}

TEST_CASE("valence conditions for the named triangulations") {
  SUBCASE("tetrahedron: minimal condition only") {
    const ConditionReport c = condition_report(fixtures::tetrahedron());
    CHECK(c.t3);
    CHECK_FALSE(c.t3half);
    CHECK_FALSE(c.t4);
  }
  SUBCASE("bipyramid: intermediate condition") {
    const ConditionReport c = condition_report(fixtures::bipyramid());
    CHECK(c.t3);
    CHECK(c.t3half);
    CHECK_FALSE(c.t4);
  }
  SUBCASE("octahedron: all valences at least four") {
    const ConditionReport c = condition_report(fixtures::octahedron());
    CHECK(c.t3);
    CHECK(c.t3half);
    CHECK(c.t4);
  }
  SUBCASE("once-punctured torus") {
    const ConditionReport c = condition_report(fixtures::torus());
    CHECK(c.t4);
  }
}

TEST_CASE("sphere_base accepts only 4, 5, 6") {
  CHECK_THROWS_AS(sphere_base(3), PreconditionError);
  CHECK_THROWS_AS(sphere_base(7), PreconditionError);
  for (int p = 4; p <= 6; ++p) CHECK(validate(sphere_base(p)).ok());
}

TEST_CASE("once_punctured_genus builds fans with one big puncture") {
  CHECK_THROWS_AS(once_punctured_genus(0), PreconditionError);
  for (int g = 1; g <= 3; ++g) {
    CAPTURE(g);
    const Triangulation t = once_punctured_genus(g);
    REQUIRE(validate(t).ok());
    CHECK(t.arc_count() == 6 * g - 3);
    CHECK(t.triangle_count() == 4 * g - 2);
    const auto cycles = puncture_cycles(t);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0].length() == 12 * g - 6);
  }
}

TEST_CASE("add_puncture grows the triangulation by one puncture") {
  const Triangulation base = fixtures::octahedron();
  for (int arc = 0; arc < base.arc_count(); ++arc) {
    CAPTURE(arc);
    const Triangulation grown = add_puncture(base, arc);
    REQUIRE(validate(grown).ok());
    CHECK(grown.arc_count() == base.arc_count() + 3);
    CHECK(grown.triangle_count() == base.triangle_count() + 2);
    const EulerData euler = euler_data(grown);
    CHECK(euler.genus == 0);
    CHECK(euler.punctures == 7);
  }
  CHECK_THROWS_AS(add_puncture(base, -1), PreconditionError);
  CHECK_THROWS_AS(add_puncture(base, base.arc_count()), PreconditionError);
}

TEST_CASE("add_puncture preserves the valence conditions along chains") {
  for (const auto& t : fixtures::random_chains(12, 7)) {
    REQUIRE(validate(t).ok());
    const ConditionReport c = condition_report(t);
    CHECK(c.t3);
    // Chains that added at least one puncture always reach the intermediate
    // condition; pristine bases are checked separately above.
    const EulerData euler = euler_data(t);
    if (euler.genus == 0 && euler.punctures == 4) continue;
    CHECK(c.t3half);
  }
}

TEST_CASE("nice_triangulation handles representative surfaces") {
  CHECK_THROWS_AS(nice_triangulation({0, 3}), PreconditionError);
  CHECK_THROWS_AS(nice_triangulation({-1, 2}), PreconditionError);
  CHECK_THROWS_AS(nice_triangulation({1, 0}), PreconditionError);

  const auto check = [](int genus, int punctures) {
    const Triangulation t = nice_triangulation({genus, punctures});
    REQUIRE(validate(t).ok());
    const EulerData euler = euler_data(t);
    CHECK(euler.genus == genus);
    CHECK(euler.punctures == punctures);
  };
  for (int p = 4; p <= 8; ++p) check(0, p);
  for (int g = 1; g <= 3; ++g)
    for (int p = 1; p <= 4; ++p) check(g, p);
}

TEST_CASE("triangulable marks exactly the admissible surfaces") {
  CHECK(MarkedSurface{0, 4}.triangulable());
  CHECK(MarkedSurface{0, 5}.triangulable());
  CHECK_FALSE(MarkedSurface{0, 3}.triangulable());
  CHECK_FALSE(MarkedSurface{0, 0}.triangulable());
  CHECK(MarkedSurface{1, 1}.triangulable());
  CHECK(MarkedSurface{3, 8}.triangulable());
  CHECK_FALSE(MarkedSurface{1, 0}.triangulable());
  CHECK_FALSE(MarkedSurface{-1, 5}.triangulable());
}
