#ifndef QPSURF_PATHS_HPP
#define QPSURF_PATHS_HPP

#include "qpsurf/quiver.hpp"
#include "qpsurf/rational.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace qpsurf {

// A directed path in a quiver: a source vertex plus a (possibly empty)
// composable sequence of arrow ids.  The empty path at vertex i is the
// lazy idempotent e_i.  Paths are written left to right: the path
// {src, {a,b}} traverses a first, then b, and multiplication below is
// concatenation in that order.
struct Path {
  int src = 0;
  std::vector<int> arrows;

  int length() const { return static_cast<int>(arrows.size()); }
  bool is_idempotent() const { return arrows.empty(); }
  int target(const Quiver& q) const {
    return arrows.empty() ? src : q.target[arrows.back()];
  }

  bool operator==(const Path& other) const = default;
};

// Degree-lexicographic order: shorter paths first; same length compares the
// arrow id sequences lexicographically; idempotents compare by vertex.
// This is the term order used to pick standard monomials, so everything
// downstream (bases, normal forms, serialized output) is deterministic.
std::strong_ordering deglex_compare(const Path& a, const Path& b);

struct DeglexLess {
  bool operator()(const Path& a, const Path& b) const {
    return deglex_compare(a, b) == std::strong_ordering::less;
  }
};

// A finite K-linear combination of paths with exact rational coefficients.
// Terms are kept in a map ordered by deglex and zero coefficients are
// dropped eagerly, so equal vectors have equal representations.
class PathVector {
public:
  PathVector() = default;
  explicit PathVector(Path p, Rational coefficient = 1);

  static PathVector zero() { return PathVector(); }

  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }
  const std::map<Path, Rational, DeglexLess>& terms() const { return terms_; }

  // Largest path degree among the terms; -1 for the zero vector.
  int degree() const;

  void add_term(const Path& p, const Rational& coefficient);
  PathVector& operator+=(const PathVector& other);
  PathVector& operator-=(const PathVector& other);
  PathVector& operator*=(const Rational& scalar);

  friend PathVector operator+(PathVector a, const PathVector& b) { return a += b; }
  friend PathVector operator-(PathVector a, const PathVector& b) { return a -= b; }
  friend PathVector operator*(const Rational& s, PathVector v) { return v *= s; }

  bool operator==(const PathVector& other) const { return terms_ == other.terms_; }

  // Formal concatenation product in the path algebra of q (no relations
  // applied): concatenates composable term pairs, drops the rest.
  static PathVector concat(const PathVector& a, const PathVector& b, const Quiver& q);

private:
  std::map<Path, Rational, DeglexLess> terms_;
};

// JSON interchange: a list of {"coefficient":"p/q","source":v,
// "arrows":[ids]} entries in deglex order.
std::string path_vector_to_json(const PathVector& v);

// Parses the interchange format and checks composability of every term
// against q (ParseError otherwise).
PathVector path_vector_from_json(const std::string& text, const Quiver& q);

}  // namespace qpsurf

#endif
