#include "qpsurf/path_algebra.hpp"

#include "qpsurf/errors.hpp"
#include "qpsurf/invariants.hpp"

#include <algorithm>
#include <sstream>

namespace qpsurf {

// --- scalar assignments -----------------------------------------------------

ScalarAssignment::ScalarAssignment(const Quiver& q, std::vector<Rational> by_orbit) {
  if (static_cast<int>(by_orbit.size()) != q.g_orbit_count())
    throw PreconditionError("scalar assignment: expected " +
                            std::to_string(q.g_orbit_count()) + " scalars, got " +
                            std::to_string(by_orbit.size()));
  for (const auto& c : by_orbit)
    if (c == 0) throw PreconditionError("scalar assignment: scalars must be nonzero");
  by_orbit_ = std::move(by_orbit);
}

ScalarAssignment ScalarAssignment::default_scalars(const Quiver& q) {
  std::vector<Rational> scalars;
  long long candidate = 1;
  const auto is_prime = [](long long n) {
    for (long long d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return n >= 2;
  };
  while (static_cast<int>(scalars.size()) < q.g_orbit_count()) {
    ++candidate;
    if (is_prime(candidate)) scalars.emplace_back(candidate);
  }
  return ScalarAssignment(q, std::move(scalars));
}

ScalarAssignment ScalarAssignment::parse(const Quiver& q, const std::string& text) {
  std::vector<Rational> scalars;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) throw ParseError("scalar list: empty entry");
    scalars.push_back(parse_rational(item));
  }
  if (static_cast<int>(scalars.size()) != q.g_orbit_count())
    throw ParseError("scalar list: expected " + std::to_string(q.g_orbit_count()) +
                     " scalars (one per puncture), got " + std::to_string(scalars.size()));
  for (const auto& c : scalars)
    if (c == 0) throw ParseError("scalar list: scalars must be nonzero");
  return ScalarAssignment(q, std::move(scalars));
}

Rational ScalarAssignment::product() const {
  Rational result = 1;
  for (const auto& c : by_orbit_) result *= c;
  return result;
}

// --- potential and relations ------------------------------------------------

namespace {

Path triangle_cycle(const Quiver& q, int arrow) {
  return Path{q.source[arrow], {arrow, q.f[arrow], q.f[q.f[arrow]]}};
}

Path puncture_cycle_path(const Quiver& q, int arrow) {
  Path p{q.source[arrow], {}};
  int a = arrow;
  for (int i = 0; i < q.orbit_size(arrow); ++i, a = q.g[a]) p.arrows.push_back(a);
  return p;
}

}  // namespace

PathVector potential(const Quiver& q, const ScalarAssignment& c) {
  PathVector w;
  for (const auto& orbit : orbit_partition(q, OrbitKind::f).orbits)
    w.add_term(triangle_cycle(q, orbit.front()), 1);
  for (int o = 0; o < q.g_orbit_count(); ++o)
    w.add_term(puncture_cycle_path(q, q.g_orbit_representative(o)), -c.for_orbit(o));
  return w;
}

PathVector cyclic_derivative(const PathVector& w, int arrow, const Quiver& q) {
  PathVector result;
  for (const auto& [path, coeff] : w.terms()) {
    if (path.target(q) != path.src)
      throw PreconditionError("cyclic_derivative: term is not a cycle");
    for (int i = 0; i < path.length(); ++i) {
      if (path.arrows[i] != arrow) continue;
      Path rotated{q.target[arrow], {}};
      rotated.arrows.insert(rotated.arrows.end(), path.arrows.begin() + i + 1,
                            path.arrows.end());
      rotated.arrows.insert(rotated.arrows.end(), path.arrows.begin(),
                            path.arrows.begin() + i);
      result.add_term(rotated, coeff);
    }
  }
  return result;
}

std::vector<PathVector> jacobian_relations(const Quiver& q, const ScalarAssignment& c) {
  std::vector<PathVector> relations;
  for (int a = 0; a < q.arrow_count(); ++a) {
    PathVector r(Path{q.target[a], {q.f[a], q.f[q.f[a]]}}, 1);
    Path g_path{q.target[a], {}};
    int b = q.g[a];
    for (int i = 0; i < q.orbit_size(a) - 1; ++i, b = q.g[b]) g_path.arrows.push_back(b);
    r.add_term(g_path, -c.for_arrow(q, a));
    relations.push_back(std::move(r));
  }
  return relations;
}

int default_truncation(const Quiver& q) {
  int max_n = 0;
  for (int o = 0; o < q.g_orbit_count(); ++o)
    max_n = std::max(max_n, q.orbit_size(q.g_orbit_representative(o)));
  return 2 * max_n + 2;
}

// --- structural normal form -------------------------------------------------

namespace {

// A path as scalar * monomial; the zero element is {0, {}}.
struct ScaledPath {
  Rational scalar;
  Path path;
};

// The socle cycle z_i expressed over the deglex-smallest monomial of its
// residue class.  The class consists of the two 3-cycles at i and the two
// full g-cycles at i, the latter entering z_i with their scalars c.
ScaledPath socle_canonical(const Quiver& q, const ScalarAssignment& c, int vertex) {
  const int a0 = q.out_arrows(vertex)[0];
  const int a1 = q.out_arrows(vertex)[1];
  ScaledPath best{0, {}};
  const auto offer = [&](const Rational& scalar, const Path& p) {
    if (best.scalar == 0 || deglex_compare(p, best.path) == std::strong_ordering::less)
      best = {scalar, p};
  };
  for (int a : {a0, a1}) {
    offer(1, triangle_cycle(q, a));
    offer(c.for_arrow(q, a), puncture_cycle_path(q, a));
  }
  return best;
}

// The full segment alpha g(alpha) ... g^{n-2}(alpha) expressed over the
// deglex-smallest member of its two-element class {segment, pair}, where
// pair = bar(alpha) f(bar(alpha)) equals c_alpha times the segment.
ScaledPath full_segment_canonical(const Quiver& q, const ScalarAssignment& c, int alpha) {
  Path segment{q.source[alpha], {}};
  int a = alpha;
  for (int i = 0; i < q.orbit_size(alpha) - 1; ++i, a = q.g[a]) segment.arrows.push_back(a);
  const int bar = q.bar(alpha);
  const Path pair{q.source[alpha], {bar, q.f[bar]}};
  if (deglex_compare(pair, segment) == std::strong_ordering::less)
    return {Rational(1) / c.for_arrow(q, alpha), pair};
  return {1, segment};
}

// Normal form of a single path under the applicability hypotheses: the
// rewrite rules are segment absorption beta f(beta) -> c * segment, the
// vanishing patterns x g(x) f(g(x)) = x f(x) g(f(x)) = 0, socle
// identification of 3-cycles and full g-cycles, and the vanishing of every
// longer product through the socle.  Returns the oracle-canonical form
// (deglex-smallest class representative with its scalar).
ScaledPath reduce_path_structural(const Quiver& q, const ScalarAssignment& c,
                                  const Path& w) {
  const int len = w.length();
  if (len <= 1) return {1, w};

  const int n0 = q.orbit_size(w.arrows[0]);
  int first_f = -1;  // position i >= 1 with w[i] = f(w[i-1])
  for (int i = 1; i < len; ++i) {
    if (w.arrows[i] == q.f[w.arrows[i - 1]]) {
      first_f = i;
      break;
    }
  }

  if (first_f == -1) {
    // Pure g-run starting at alpha = w[0].
    if (len <= n0 - 2) return {1, w};  // standard segment
    if (len == n0 - 1) return full_segment_canonical(q, c, w.arrows[0]);
    if (len == n0) {
      // Full g-cycle = c_alpha^-1 z at the source vertex.
      auto z = socle_canonical(q, c, w.src);
      z.scalar /= c.for_arrow(q, w.arrows[0]);
      return z;
    }
    return {0, {}};  // runs longer than the valence die through the socle
  }

  if (first_f >= 2) return {0, {}};  // contains x g(x) f(g(x))

  // w starts with beta f(beta).
  if (len == 2) {
    const int beta = w.arrows[0];
    const int alpha = q.bar(beta);
    auto seg = full_segment_canonical(q, c, alpha);
    seg.scalar *= c.for_arrow(q, alpha);
    return seg;
  }
  if (w.arrows[2] == q.g[w.arrows[1]]) return {0, {}};  // x f(x) g(f(x))
  // w starts with the 3-cycle beta f(beta) f^2(beta).
  if (len == 3) return socle_canonical(q, c, w.src);
  return {0, {}};  // socle times anything
}

bool structural_route_applicable(const TruncatedAlgebra& a) {
  return hypothesis_report(a.quiver(), a.scalars()).theorems_apply &&
         a.truncation() >= default_truncation(a.quiver());
}

}  // namespace

PathVector normal_form(const PathVector& x, const TruncatedAlgebra& a) {
  if (x.degree() > a.truncation())
    throw PreconditionError("normal_form: degree overflow beyond the truncation bound");
  if (!structural_route_applicable(a)) return a.reduce(x);

  PathVector result;
  for (const auto& [path, coeff] : x.terms()) {
    const auto reduced = reduce_path_structural(a.quiver(), a.scalars(), path);
    if (reduced.scalar != 0) result.add_term(reduced.path, coeff * reduced.scalar);
  }
  return result;
}

PathVector multiply(const PathVector& x, const PathVector& y, const TruncatedAlgebra& a) {
  const PathVector product = PathVector::concat(x, y, a.quiver());
  if (product.degree() > a.truncation())
    throw PreconditionError("multiply: degree overflow beyond the truncation bound");
  return normal_form(product, a);
}

}  // namespace qpsurf
