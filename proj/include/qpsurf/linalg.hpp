#ifndef QPSURF_LINALG_HPP
#define QPSURF_LINALG_HPP

#include "qpsurf/rational.hpp"

#include <vector>

namespace qpsurf {

// Small exact linear algebra helpers over the rationals.  All routines are
// deterministic: pivots are chosen as the first nonzero entry in row-major
// scan order.

// Rank via Gaussian elimination (the argument is consumed).
int rational_rank(std::vector<std::vector<Rational>> m);

// Determinant of a square integer matrix by fraction-free Bareiss
// elimination; exact for any size.
Integer integer_determinant(std::vector<std::vector<Integer>> m);

// Basis of the right nullspace {x : m x = 0}, one vector per free column,
// in increasing free-column order with the free coordinate set to 1.
std::vector<std::vector<Rational>> rational_nullspace(
    const std::vector<std::vector<Rational>>& m);

}  // namespace qpsurf

#endif
