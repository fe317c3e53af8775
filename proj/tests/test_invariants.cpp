#include "qpsurf/errors.hpp"
#include "qpsurf/invariants.hpp"

#include <doctest.h>

#include "fixtures.hpp"

using namespace qpsurf;

TEST_CASE("hypothesis reports") {
  SUBCASE("torus, bipyramid and octahedron satisfy the star condition") {
    for (const Triangulation& t :
         {fixtures::torus(), fixtures::bipyramid(), fixtures::octahedron()}) {
      const Quiver q = adjacency_quiver(t);
      const HypothesisReport h =
          hypothesis_report(q, ScalarAssignment::default_scalars(q));
      CHECK(h.star);
      CHECK_FALSE(h.diamond);
      CHECK(h.theorems_apply);
    }
  }
  SUBCASE("tetrahedron needs the scalar product") {
    const Quiver q = adjacency_quiver(fixtures::tetrahedron());
    const HypothesisReport good =
        hypothesis_report(q, ScalarAssignment::default_scalars(q));
    CHECK_FALSE(good.star);
    CHECK(good.diamond);
    CHECK(good.scalar_product_ok);
    CHECK(good.theorems_apply);

    const HypothesisReport bad =
        hypothesis_report(q, ScalarAssignment::parse(q, "1,1,1,1"));
    CHECK_FALSE(bad.scalar_product_ok);
    CHECK_FALSE(bad.theorems_apply);

    // product 1 reached with non-trivial scalars
    const HypothesisReport sneaky =
        hypothesis_report(q, ScalarAssignment::parse(q, "2,3,1/6,1"));
    CHECK_FALSE(sneaky.scalar_product_ok);
    CHECK_FALSE(sneaky.theorems_apply);
  }
}

TEST_CASE("theorem operations refuse inapplicable inputs") {
  const Quiver q = adjacency_quiver(fixtures::tetrahedron());
  const ScalarAssignment ones = ScalarAssignment::parse(q, "1,1,1,1");
  const TruncatedAlgebra a(q, ones, default_truncation(q));
  CHECK_THROWS_AS(jacobian_basis(q, ones, a), PreconditionError);
  CHECK_THROWS_AS(symmetry_check(q, ones, a), PreconditionError);
  CHECK_THROWS_AS(center_basis(q, ones, a), PreconditionError);
  CHECK_THROWS_AS(nonrigidity_check(q, ones, a), PreconditionError);
}

TEST_CASE("algebra dimension formula") {
  CHECK(algebra_dimension(fixtures::torus()) == 36);
  CHECK(algebra_dimension(fixtures::tetrahedron()) == 36);
  CHECK(algebra_dimension(fixtures::bipyramid()) == 66);
  CHECK(algebra_dimension(fixtures::octahedron()) == 96);
  CHECK(algebra_dimension(once_punctured_genus(2)) == 18 * 18);
}

TEST_CASE("explicit basis certifies against the oracle") {
  for (const auto& named : fixtures::named_cases()) {
    CAPTURE(named.name);
    const auto instance = fixtures::make_instance(named.triangulation);
    const JacobianBasis basis =
        jacobian_basis(instance.quiver, instance.scalars, instance.algebra);
    CHECK(basis.independent);
    CHECK(basis.spans);
    CHECK(basis.count() == named.dimension);
    CHECK(basis.count() == instance.algebra.dimension());

    int idempotents = 0, segments = 0, socles = 0;
    for (const auto& e : basis.elements) {
      switch (e.kind) {
        case JacobianBasisElement::Kind::idempotent: ++idempotents; break;
        case JacobianBasisElement::Kind::segment: ++segments; break;
        case JacobianBasisElement::Kind::socle: ++socles; break;
      }
      CHECK_FALSE(e.reduced.is_zero());
    }
    CHECK(idempotents == instance.quiver.vertices);
    CHECK(socles == instance.quiver.vertices);
    CHECK(segments == basis.count() - 2 * instance.quiver.vertices);
  }
}

TEST_CASE("basis count identity on random chains") {
  for (const auto& t : fixtures::random_chains(8, 3)) {
    const Quiver q = adjacency_quiver(t);
    long long by_arrows = 2LL * q.vertices;
    for (int a = 0; a < q.arrow_count(); ++a) by_arrows += q.orbit_size(a) - 1;
    CHECK(by_arrows == algebra_dimension(t));
  }
}

TEST_CASE("Cartan matrix of the torus") {
  const CartanMatrix cartan = cartan_matrix(fixtures::torus());
  REQUIRE(cartan.size() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(cartan.entries[i][j] == 4);
  CHECK(cartan.rank == 1);
  CHECK(cartan.determinant == 0);
  CHECK(cartan.entry_ranges_ok);
}

TEST_CASE("Cartan matrix of the tetrahedron") {
  const CartanMatrix cartan = cartan_matrix(fixtures::tetrahedron());
  REQUIRE(cartan.size() == 6);
  int diagonal2 = 0, ones = 0, zeros = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      if (i == j) {
        CHECK(cartan.entries[i][j] == 2);
        ++diagonal2;
      } else if (cartan.entries[i][j] == 1) {
        ++ones;
      } else {
        CHECK(cartan.entries[i][j] == 0);
        ++zeros;
      }
    }
  // every arc meets four of the other five arcs at a puncture
  CHECK(diagonal2 == 6);
  CHECK(ones == 24);
  CHECK(zeros == 6);
  CHECK(cartan.determinant == 0);
}

TEST_CASE("Cartan matches the path counts of the quotient") {
  for (const auto& named : fixtures::named_cases()) {
    CAPTURE(named.name);
    const auto instance = fixtures::make_instance(named.triangulation);
    CHECK(cartan_vs_algebra(named.triangulation, instance.algebra));
    const CartanMatrix cartan = cartan_matrix(named.triangulation);
    CHECK(cartan.entry_ranges_ok);
    CHECK(cartan.determinant == 0);
    CHECK(cartan.rank <= euler_data(named.triangulation).punctures);
  }
}

TEST_CASE("symmetry certificate for the named cases") {
  for (const auto& named : fixtures::named_cases()) {
    CAPTURE(named.name);
    const auto instance = fixtures::make_instance(named.triangulation);
    const SymmetryCertificate certificate =
        symmetry_check(instance.quiver, instance.scalars, instance.algebra);
    CHECK(certificate.pass());
    CHECK(certificate.failures.empty());
    const int dim = instance.algebra.dimension();
    CHECK(certificate.bimodule_checks == 2 * dim * instance.quiver.arrow_count());
    CHECK(certificate.idempotent_checks == 2 * dim * instance.quiver.vertices);
    CHECK(certificate.product_spot_checks == 32);
  }
}

TEST_CASE("center description for the named cases") {
  for (const auto& named : fixtures::named_cases()) {
    CAPTURE(named.name);
    const auto instance = fixtures::make_instance(named.triangulation);
    const CenterDescription center =
        center_basis(instance.quiver, instance.scalars, instance.algebra);
    CHECK(center.dimension == instance.quiver.vertices + 1);
    CHECK(center.dimension == center.expected);
    CHECK(center.spanned_by_unit_and_socles);
    CHECK(center.products_vanish);
    CHECK(center.pass());
  }
}

TEST_CASE("non-rigidity witness for the named cases") {
  for (const auto& named : fixtures::named_cases()) {
    CAPTURE(named.name);
    const auto instance = fixtures::make_instance(named.triangulation);
    CHECK(nonrigidity_check(instance.quiver, instance.scalars, instance.algebra));
  }
}

TEST_CASE("scalars only rescale the basis, not the dimensions") {
  const Quiver q = adjacency_quiver(fixtures::bipyramid());
  const ScalarAssignment other = ScalarAssignment::parse(q, "1/2,4,-3,1,5/7");
  const TruncatedAlgebra a(q, other, default_truncation(q));
  CHECK(a.dimension() == 66);
  const JacobianBasis basis = jacobian_basis(q, other, a);
  CHECK(basis.independent);
  CHECK(basis.spans);
  CHECK(symmetry_check(q, other, a).pass());
  CHECK(center_basis(q, other, a).pass());
  CHECK(nonrigidity_check(q, other, a));
}
