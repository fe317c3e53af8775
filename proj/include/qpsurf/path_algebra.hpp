#ifndef QPSURF_PATH_ALGEBRA_HPP
#define QPSURF_PATH_ALGEBRA_HPP

#include "qpsurf/paths.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qpsurf {

// One nonzero rational scalar c per g-orbit (equivalently, per puncture).
// Orbits are indexed as in Quiver::g_orbit, i.e. by smallest arrow id.
class ScalarAssignment {
public:
  ScalarAssignment() = default;
  // Throws PreconditionError when a scalar is zero or the count is wrong.
  ScalarAssignment(const Quiver& q, std::vector<Rational> by_orbit);

  // Default assignment: consecutive primes 2, 3, 5, ... per g-orbit.
  static ScalarAssignment default_scalars(const Quiver& q);
  // Parses a comma-separated list "2,3,5/2,..." in g-orbit order.
  static ScalarAssignment parse(const Quiver& q, const std::string& text);

  const Rational& for_orbit(int orbit) const { return by_orbit_[orbit]; }
  const Rational& for_arrow(const Quiver& q, int arrow) const {
    return by_orbit_[q.g_orbit(arrow)];
  }
  int orbit_count() const { return static_cast<int>(by_orbit_.size()); }
  // Product of all scalars (the obstruction value tested by the diamond
  // hypothesis is this product being different from 1).
  Rational product() const;

private:
  std::vector<Rational> by_orbit_;
};

// The cyclic potential
//   W = sum over triangles of its 3-cycle  -  sum over g-orbits O of
//       c_O * (full counterclockwise cycle of O),
// each cycle starting at the smallest arrow id of its orbit.
PathVector potential(const Quiver& q, const ScalarAssignment& c);

// Cyclic derivative with respect to one arrow: each term a_1...a_d of w
// (which must be a cycle) contributes a_{i+1}...a_d a_1...a_{i-1} for every
// position i with a_i = arrow.
PathVector cyclic_derivative(const PathVector& w, int arrow, const Quiver& q);

// The Jacobian relation attached to arrow alpha,
//   r_alpha = f(alpha) f^2(alpha) - c_alpha g(alpha) g^2(alpha) ... g^{n_alpha - 1}(alpha),
// i.e. the cyclic derivative of the potential with respect to alpha.
// Returned in arrow id order, one relation per arrow.
std::vector<PathVector> jacobian_relations(const Quiver& q, const ScalarAssignment& c);

// How the truncated quotient is computed.  Both engines implement the same
// specification; `automatic` picks dense enumeration when the number of
// paths up to the truncation bound is small enough and the rewriting engine
// otherwise.  Exposed so tests can run both and compare.
enum class QuotientEngine { automatic, dense, rewriting };

// The finite-dimensional algebra  KQ / (J + m^{N+1})  where J is the
// two-sided ideal generated by the Jacobian relations and m is the arrow
// ideal; N is the truncation bound.  The basis consists of the standard
// monomials: paths of degree <= N that are the deglex-smallest nonzero
// representative of their residue class.  Every path of degree <= N reduces
// to a rational multiple of a standard monomial or to zero, and reduce() is
// the corresponding (idempotent, order-decreasing) map.
class TruncatedAlgebra {
public:
  // Performs the quotient construction.  Requires a valid quiver (throws
  // PreconditionError otherwise) and truncation >= 2.
  TruncatedAlgebra(Quiver q, ScalarAssignment c, int truncation,
                   QuotientEngine engine = QuotientEngine::automatic);

  const Quiver& quiver() const { return quiver_; }
  const ScalarAssignment& scalars() const { return scalars_; }
  int truncation() const { return truncation_; }
  QuotientEngine engine_used() const { return engine_used_; }

  // Standard monomials in deglex order.
  const std::vector<Path>& basis() const { return basis_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  // dimension_by_degree()[d] = number of standard monomials of degree d,
  // for d = 0..truncation.
  std::vector<int> dimension_by_degree() const;
  // Position of a standard monomial in basis(); nullopt for non-basis paths.
  std::optional<int> basis_index(const Path& p) const;

  // Reduction to the standard-monomial basis.  Inputs of degree greater
  // than the truncation bound raise PreconditionError.
  PathVector reduce(const Path& p) const;
  PathVector reduce(const PathVector& v) const;

  ~TruncatedAlgebra();
  TruncatedAlgebra(TruncatedAlgebra&&) noexcept;
  TruncatedAlgebra& operator=(TruncatedAlgebra&&) noexcept;

private:
  Quiver quiver_;
  ScalarAssignment scalars_;
  int truncation_ = 0;
  QuotientEngine engine_used_ = QuotientEngine::automatic;
  std::vector<Path> basis_;
  std::map<Path, int, DeglexLess> basis_position_;

  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// The default truncation bound used by the command line driver and the
// verification reports: 2 * max_p n_p + 2, beyond which the quotient has no
// standard monomials left whenever the structure theorems apply.
int default_truncation(const Quiver& q);

// Normal form of a path vector modulo the Jacobian relations and the
// truncation.  When the algebra satisfies the applicability hypotheses
// (see invariants.hpp) this uses the structural rewrite rules of the
// algebra (segment absorption, vanishing patterns, socle identification)
// and is checked against TruncatedAlgebra::reduce by the test suite; on
// other inputs it falls back to the generic reduction.  The result is
// idempotent and agrees with a.reduce() on every input of degree <= N.
PathVector normal_form(const PathVector& x, const TruncatedAlgebra& a);

// Product in the truncated algebra: concatenation followed by normal_form.
// Throws PreconditionError when the combined degree of any nonzero
// concatenated term exceeds the truncation bound.
PathVector multiply(const PathVector& x, const PathVector& y, const TruncatedAlgebra& a);

}  // namespace qpsurf

#endif
