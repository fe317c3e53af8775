#ifndef QPSURF_INVARIANTS_HPP
#define QPSURF_INVARIANTS_HPP

#include "qpsurf/path_algebra.hpp"
#include "qpsurf/triangulation.hpp"

#include <string>
#include <vector>

namespace qpsurf {

// Applicability hypotheses for the structure theorems on the truncated
// Jacobian algebra.  They hold when either every arrow sits in a g-orbit of
// size >= 4 or is followed by one (star), or all g-orbits have size 3
// (diamond, the four-punctured sphere) and the product of the scalars
// differs from 1.
struct HypothesisReport {
  bool star = false;
  bool diamond = false;
  bool scalar_product_ok = false;  // product of all scalars != 1
  bool theorems_apply = false;     // star || (diamond && scalar_product_ok)
};

HypothesisReport hypothesis_report(const Quiver& q, const ScalarAssignment& c);

// The explicit basis of the truncated Jacobian algebra: the idempotents
// e_i, the segments alpha g(alpha) ... g^r(alpha) for 0 <= r < n_alpha - 1,
// and one socle cycle z_i per vertex, stored as the c_alpha-scaled full
// g-cycle at i with alpha the smallest-id arrow leaving i.
struct JacobianBasisElement {
  enum class Kind { idempotent, segment, socle };

  Kind kind = Kind::idempotent;
  int vertex = -1;          // for idempotents and socles
  int arrow = -1;           // for segments: the starting arrow
  int segment_length = 0;   // for segments: r + 1
  PathVector value;         // the element itself
  PathVector reduced;       // its normal form: a scalar times a standard monomial
};

struct JacobianBasis {
  std::vector<JacobianBasisElement> elements;  // idempotents, segments, socles
  bool independent = false;
  bool spans = false;

  int count() const { return static_cast<int>(elements.size()); }
};

// Builds the three families, reduces each via normal_form and certifies that
// the reduced forms are linearly independent and span the standard-monomial
// basis of a.  Throws PreconditionError when the hypotheses fail and
// logic_error when the certification fails (which would indicate a bug, not
// bad data).  The element count always equals sum over punctures of n_p^2.
JacobianBasis jacobian_basis(const Quiver& q, const ScalarAssignment& c,
                             const TruncatedAlgebra& a);

// dim Lambda = sum over punctures of n_p^2, computed from puncture valences
// alone.  Requires a valid triangulation.
long long algebra_dimension(const Triangulation& t);

// C = sum over punctures p of v_p v_p^T where v_p(i) counts the ends of arc
// i at p.  Diagonal entries lie in {2,4} and all entries in {0,1,2,4}; the
// rank is at most the number of punctures and the determinant is 0.  Rank
// and determinant are computed by exact fraction-free elimination.
struct CartanMatrix {
  std::vector<std::vector<long long>> entries;
  int rank = 0;
  Integer determinant;
  bool entry_ranges_ok = false;

  int size() const { return static_cast<int>(entries.size()); }
};

CartanMatrix cartan_matrix(const Triangulation& t);

// True iff for every vertex pair (i,j) the number of standard monomials of
// a from i to j equals the Cartan entry C_ij.
bool cartan_vs_algebra(const Triangulation& t, const TruncatedAlgebra& a);

// Certificate for the symmetry of the algebra: the linear isomorphism Phi
// from the dual onto the algebra defined on the dual basis by
//   Phi(e_i^dual) = z_i,
//   Phi((alpha g(alpha) ... g^{r-1}(alpha))^dual)
//       = c_alpha g^r(alpha) ... g^{n_alpha - 1}(alpha),
//   Phi(z_i^dual) = e_i,
// is checked to commute with both one-sided actions: for every basis
// element p and arrow beta, Phi(p^dual . beta) = Phi(p^dual) . beta and
// Phi(beta . p^dual) = beta . Phi(p^dual), all products computed in the
// truncated algebra.  Dual vectors of scaled basis elements follow the
// convention (c y)^dual = c^{-1} y^dual.
struct SymmetryFailure {
  int basis_element = -1;  // index into the jacobian_basis element list
  int arrow = -1;
  char side = 'R';         // 'R': p^dual . beta, 'L': beta . p^dual
};

struct SymmetryCertificate {
  int bimodule_checks = 0;    // basis x arrows x 2
  int idempotent_checks = 0;  // same equations with idempotents in place of beta
  int product_spot_checks = 0;  // randomized Phi(x^dual y) = Phi(x^dual) y probes
  std::vector<SymmetryFailure> failures;

  bool pass() const { return failures.empty(); }
};

// Throws PreconditionError when the hypotheses fail.
SymmetryCertificate symmetry_check(const Quiver& q, const ScalarAssignment& c,
                                   const TruncatedAlgebra& a);

// The center of the truncated algebra, computed as the exact nullspace of
// the commutator constraints x a = a x for all arrows and idempotents a.
struct CenterDescription {
  int dimension = 0;                  // computed nullspace dimension
  int expected = 0;                   // |Q_0| + 1
  bool spanned_by_unit_and_socles = false;
  bool products_vanish = false;       // z_i z_j = 0 for all i, j

  bool pass() const {
    return dimension == expected && spanned_by_unit_and_socles && products_vanish;
  }
};

// Throws PreconditionError when the hypotheses fail.
CenterDescription center_basis(const Quiver& q, const ScalarAssignment& c,
                               const TruncatedAlgebra& a);

// True iff every 3-cycle alpha f(alpha) f^2(alpha) has a nonzero normal
// form equal to the socle cycle z at its source vertex — the witness that
// the potential is not rigid.  Throws PreconditionError when the
// hypotheses fail.
bool nonrigidity_check(const Quiver& q, const ScalarAssignment& c,
                       const TruncatedAlgebra& a);

}  // namespace qpsurf

#endif
