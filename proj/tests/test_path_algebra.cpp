#include "qpsurf/errors.hpp"
#include "qpsurf/path_algebra.hpp"

#include <doctest.h>

#include "fixtures.hpp"

#include <random>

using namespace qpsurf;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-10/4") == Rational(-5, 2));
  CHECK(rational_to_string(Rational(-5, 2)) == "-5/2");
  CHECK(rational_to_string(Rational(4)) == "4");
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("a/b"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
}

TEST_CASE("degree-lexicographic path order") {
  const Path e0{0, {}};
  const Path e2{2, {}};
  const Path a0{0, {0}};
  const Path a1{1, {1}};
  const Path long0{0, {0, 2}};

  CHECK(deglex_compare(e0, e2) == std::strong_ordering::less);
  CHECK(deglex_compare(e2, a0) == std::strong_ordering::less);
  CHECK(deglex_compare(a0, a1) == std::strong_ordering::less);
  CHECK(deglex_compare(a1, long0) == std::strong_ordering::less);
  CHECK(deglex_compare(long0, long0) == std::strong_ordering::equal);
}

TEST_CASE("path vectors cancel and concatenate") {
  const Quiver q = adjacency_quiver(fixtures::torus());
  const Path p{q.source[0], {0}};
  PathVector v(p, Rational(2));
  v.add_term(p, Rational(-2));
  CHECK(v.is_zero());

  const PathVector a(Path{q.source[0], {0}});
  const PathVector b(Path{q.source[q.f[0]], {q.f[0]}});
  const PathVector ab = PathVector::concat(a, b, q);
  REQUIRE(ab.term_count() == 1);
  CHECK(ab.degree() == 2);

  // Concatenation with a mismatched idempotent gives zero.
  int other = 0;
  while (other == q.target[0]) ++other;
  CHECK(PathVector::concat(a, PathVector(Path{other, {}}), q).is_zero());
}

TEST_CASE("path vector JSON round trip") {
  const Quiver q = adjacency_quiver(fixtures::torus());
  PathVector v(Path{q.source[0], {0, q.g[0]}}, Rational(3, 7));
  v.add_term(Path{1, {}}, Rational(-2));
  const PathVector parsed = path_vector_from_json(path_vector_to_json(v), q);
  CHECK(parsed == v);

  CHECK_THROWS_AS(path_vector_from_json("{}", q), ParseError);
  CHECK_THROWS_AS(path_vector_from_json(R"([{"coefficient": "1"}])", q), ParseError);
  // arrows that do not compose
  const std::string bad = R"([{"coefficient": "1", "source": 0, "arrows": [0, 0]}])";
  CHECK_THROWS_AS(path_vector_from_json(bad, q), ParseError);
}

TEST_CASE("scalar assignments") {
  const Quiver q = adjacency_quiver(fixtures::tetrahedron());
  const ScalarAssignment c = ScalarAssignment::default_scalars(q);
  REQUIRE(c.orbit_count() == 4);
  CHECK(c.for_orbit(0) == 2);
  CHECK(c.for_orbit(1) == 3);
  CHECK(c.for_orbit(2) == 5);
  CHECK(c.for_orbit(3) == 7);
  CHECK(c.product() == 210);

  const ScalarAssignment parsed = ScalarAssignment::parse(q, "1,1,1,2/3");
  CHECK(parsed.product() == Rational(2, 3));
  CHECK_THROWS_AS(ScalarAssignment::parse(q, "1,2,3"), ParseError);
  CHECK_THROWS_AS(ScalarAssignment::parse(q, "1,2,3,0"), ParseError);
  CHECK_THROWS_AS(ScalarAssignment::parse(q, "1,2,3,x"), ParseError);

  const Quiver torus_q = adjacency_quiver(fixtures::torus());
  CHECK(ScalarAssignment::default_scalars(torus_q).orbit_count() == 1);
}

TEST_CASE("potential and cyclic derivatives") {
  const Quiver q = adjacency_quiver(fixtures::torus());
  const ScalarAssignment c = ScalarAssignment::default_scalars(q);
  const PathVector w = potential(q, c);
  // two triangles plus one g-orbit
  CHECK(w.term_count() == 3);
  int cycles3 = 0, cycles6 = 0;
  for (const auto& [path, coeff] : w.terms()) {
    if (path.length() == 3) {
      CHECK(coeff == 1);
      ++cycles3;
    } else {
      CHECK(path.length() == 6);
      CHECK(coeff == -c.for_orbit(0));
      ++cycles6;
    }
  }
  CHECK(cycles3 == 2);
  CHECK(cycles6 == 1);

  // Cyclic derivative of a single 3-cycle.
  const Path cycle{q.source[0], {0, q.f[0], q.f[q.f[0]]}};
  const PathVector derived = cyclic_derivative(PathVector(cycle), 0, q);
  REQUIRE(derived.term_count() == 1);
  const auto& [dp, dc] = *derived.terms().begin();
  CHECK(dc == 1);
  CHECK(dp.arrows == std::vector<int>{q.f[0], q.f[q.f[0]]});

  // Non-cycles are rejected.
  CHECK_THROWS_AS(cyclic_derivative(PathVector(Path{q.source[0], {0}}), 0, q),
                  PreconditionError);
}

TEST_CASE("Jacobian relations have the expected two-term shape") {
  for (const auto& named : fixtures::named_cases()) {
    CAPTURE(named.name);
    const Quiver q = adjacency_quiver(named.triangulation);
    const ScalarAssignment c = ScalarAssignment::default_scalars(q);
    const auto relations = jacobian_relations(q, c);
    REQUIRE(static_cast<int>(relations.size()) == q.arrow_count());
    const PathVector w = potential(q, c);
    for (int a = 0; a < q.arrow_count(); ++a) {
      CHECK(relations[a].term_count() == 2);
      CHECK(relations[a] == cyclic_derivative(w, a, q));
      // When the g-orbit has size 3 both terms have length two, so terms are
      // told apart by their first arrow.
      bool has_pair = false, has_run = false;
      for (const auto& [path, coeff] : relations[a].terms()) {
        REQUIRE_FALSE(path.arrows.empty());
        if (path.arrows[0] == q.f[a]) {
          has_pair = true;
          CHECK(path.arrows == std::vector<int>{q.f[a], q.f[q.f[a]]});
          CHECK(coeff == 1);
        } else {
          has_run = true;
          CHECK(path.arrows[0] == q.g[a]);
          CHECK(path.length() == q.orbit_size(a) - 1);
          CHECK(coeff == -c.for_arrow(q, a));
        }
      }
      CHECK(has_pair);
      CHECK(has_run);
    }
  }
}

TEST_CASE("frozen dimension tables at the default truncation") {
  const auto check = [](const Triangulation& t, const std::vector<int>& leading) {
    const auto instance = fixtures::make_instance(t);
    const auto by_degree = instance.algebra.dimension_by_degree();
    REQUIRE(static_cast<int>(by_degree.size()) == instance.algebra.truncation() + 1);
    for (std::size_t d = 0; d < by_degree.size(); ++d) {
      const int expected = d < leading.size() ? leading[d] : 0;
      CHECK(by_degree[d] == expected);
    }
  };
  // torus: N = 14
  check(fixtures::torus(), {3, 6, 12, 9, 6, 0});
  // tetrahedron: N = 8
  check(fixtures::tetrahedron(), {6, 12, 12, 6});
  // bipyramid: N = 10
  check(fixtures::bipyramid(), {9, 18, 30, 9});
  // octahedron: N = 10
  check(fixtures::octahedron(), {12, 24, 48, 12});
}

TEST_CASE("default truncation bound") {
  CHECK(default_truncation(adjacency_quiver(fixtures::torus())) == 14);
  CHECK(default_truncation(adjacency_quiver(fixtures::tetrahedron())) == 8);
  CHECK(default_truncation(adjacency_quiver(fixtures::bipyramid())) == 10);
  CHECK(default_truncation(adjacency_quiver(fixtures::octahedron())) == 10);
}

TEST_CASE("dense and rewriting engines agree") {
  for (const Triangulation& t :
       {fixtures::torus(), fixtures::tetrahedron(), fixtures::bipyramid()}) {
    const auto dense = fixtures::make_instance(t, QuotientEngine::dense);
    const auto rewriting = fixtures::make_instance(t, QuotientEngine::rewriting);
    CHECK(dense.algebra.engine_used() == QuotientEngine::dense);
    CHECK(rewriting.algebra.engine_used() == QuotientEngine::rewriting);
    REQUIRE(dense.algebra.basis() == rewriting.algebra.basis());

    // Reduction agrees on random paths of moderate degree.
    std::mt19937 rng(5);
    const Quiver& q = dense.quiver;
    for (int trial = 0; trial < 200; ++trial) {
      Path p;
      int arrow = static_cast<int>(rng() % q.arrow_count());
      p.src = q.source[arrow];
      const int len = 1 + static_cast<int>(rng() % 6);
      for (int i = 0; i < len; ++i) {
        p.arrows.push_back(arrow);
        arrow = rng() % 2 == 0 ? q.f[arrow] : q.g[arrow];
      }
      CHECK(dense.algebra.reduce(p) == rewriting.algebra.reduce(p));
    }
  }
}

TEST_CASE("reduction implements the defining relations") {
  for (const auto& named : fixtures::named_cases()) {
    CAPTURE(named.name);
    const auto instance = fixtures::make_instance(named.triangulation);
    const Quiver& q = instance.quiver;
    const TruncatedAlgebra& a = instance.algebra;
    for (const PathVector& r : jacobian_relations(q, instance.scalars))
      CHECK(a.reduce(r).is_zero());
  }
}

TEST_CASE("reduction is idempotent and respects deglex") {
  const auto instance = fixtures::make_instance(fixtures::bipyramid());
  const Quiver& q = instance.quiver;
  const TruncatedAlgebra& a = instance.algebra;
  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    Path p;
    int arrow = static_cast<int>(rng() % q.arrow_count());
    p.src = q.source[arrow];
    const int len = 1 + static_cast<int>(rng() % 7);
    for (int i = 0; i < len; ++i) {
      p.arrows.push_back(arrow);
      arrow = rng() % 2 == 0 ? q.f[arrow] : q.g[arrow];
    }
    const PathVector reduced = a.reduce(p);
    CHECK(a.reduce(reduced) == reduced);
    for (const auto& [m, coeff] : reduced.terms()) {
      CHECK(a.basis_index(m).has_value());
      CHECK(deglex_compare(m, p) != std::strong_ordering::greater);
    }
  }
}

TEST_CASE("normal_form matches generic reduction and multiply is associative") {
  for (const auto& named : fixtures::named_cases()) {
    CAPTURE(named.name);
    const auto instance = fixtures::make_instance(named.triangulation);
    const Quiver& q = instance.quiver;
    const TruncatedAlgebra& a = instance.algebra;

    std::mt19937 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
      Path p;
      int arrow = static_cast<int>(rng() % q.arrow_count());
      p.src = q.source[arrow];
      const int len = 1 + static_cast<int>(rng() % (q.orbit_size(arrow) + 2));
      for (int i = 0; i < len; ++i) {
        p.arrows.push_back(arrow);
        arrow = rng() % 2 == 0 ? q.f[arrow] : q.g[arrow];
      }
      CHECK(normal_form(PathVector(p), a) == a.reduce(p));
    }

    for (int trial = 0; trial < 50; ++trial) {
      const auto random_arrow_vector = [&] {
        const int arrow = static_cast<int>(rng() % q.arrow_count());
        return PathVector(Path{q.source[arrow], {arrow}});
      };
      const PathVector x = random_arrow_vector();
      const PathVector y = random_arrow_vector();
      const PathVector z = random_arrow_vector();
      CHECK(multiply(multiply(x, y, a), z, a) == multiply(x, multiply(y, z, a), a));
    }
  }
}

TEST_CASE("structural identities of the reduction") {
  const auto instance = fixtures::make_instance(fixtures::octahedron());
  const Quiver& q = instance.quiver;
  const ScalarAssignment& c = instance.scalars;
  const TruncatedAlgebra& a = instance.algebra;

  for (int b = 0; b < q.arrow_count(); ++b) {
    // b f(b) equals the scaled bar-segment.
    Path pair{q.source[b], {b, q.f[b]}};
    Path segment{q.source[b], {}};
    int run = q.bar(b);
    for (int i = 0; i < q.orbit_size(q.bar(b)) - 1; ++i) {
      segment.arrows.push_back(run);
      run = q.g[run];
    }
    CHECK(a.reduce(pair) ==
          a.reduce(PathVector(segment, c.for_arrow(q, q.bar(b)))));

    // x g(x) f(g(x)) dies.
    const Path mixed{q.source[b], {b, q.g[b], q.f[q.g[b]]}};
    CHECK(a.reduce(mixed).is_zero());

    // The full scaled g-cycle is the socle cycle: both triangles at the
    // source give the same class.
    Path full{q.source[b], {}};
    int around = b;
    for (int i = 0; i < q.orbit_size(b); ++i) {
      full.arrows.push_back(around);
      around = q.g[around];
    }
    const PathVector z = a.reduce(PathVector(full, c.for_arrow(q, b)));
    CHECK_FALSE(z.is_zero());
    const Path cycle{q.source[b], {b, q.f[b], q.f[q.f[b]]}};
    CHECK(a.reduce(cycle) == z);

    // The socle cycle kills every arrow.
    const PathVector za = PathVector::concat(z, PathVector(Path{q.source[b], {b}}), q);
    // z ends where it starts, so concatenation with the original arrow is the
    // only composable product; it must reduce to zero.
    CHECK(a.reduce(za).is_zero());
  }
}

TEST_CASE("degree overflow is rejected") {
  const auto instance = fixtures::make_instance(fixtures::tetrahedron());
  const Quiver& q = instance.quiver;
  const TruncatedAlgebra& a = instance.algebra;
  Path p{q.source[0], {}};
  int arrow = 0;
  for (int i = 0; i <= a.truncation(); ++i) {
    p.arrows.push_back(arrow);
    arrow = q.f[arrow];
  }
  CHECK(p.length() > a.truncation());
  CHECK_THROWS_AS(a.reduce(p), PreconditionError);
  CHECK_THROWS_AS(normal_form(PathVector(p), a), PreconditionError);

  // multiply refuses when the concatenation overflows
  PathVector long_vector(p);
  CHECK_THROWS_AS(multiply(long_vector, PathVector(Path{q.source[arrow], {}}), a),
                  PreconditionError);
}

TEST_CASE("truncation below the stable bound still yields a quotient") {
  const Quiver q = adjacency_quiver(fixtures::torus());
  const ScalarAssignment c = ScalarAssignment::default_scalars(q);
  const TruncatedAlgebra a(q, c, 4);
  CHECK(a.truncation() == 4);
  // All degree-<=4 standard monomials of the stable quotient survive, and
  // nothing of higher degree exists.
  const auto by_degree = a.dimension_by_degree();
  REQUIRE(by_degree.size() == 5);
  CHECK(by_degree[0] == 3);
  CHECK(by_degree[1] == 6);
  CHECK_THROWS_AS(TruncatedAlgebra(q, c, 1), PreconditionError);
}
