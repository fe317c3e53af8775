#include "qpsurf/path_algebra.hpp"

#include "qpsurf/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <unordered_set>

namespace qpsurf {

namespace {

// ===========================================================================
// Shared helpers
// ===========================================================================

// Every composable step out of an arrow continues with f or g of it, so a
// path is determined by its first arrow plus one binary choice per step.
// pick(a, bit) returns the successor with the smaller id for bit 0.
int pick_successor(const Quiver& q, int arrow, int bit) {
  const int lo = std::min(q.f[arrow], q.g[arrow]);
  const int hi = std::max(q.f[arrow], q.g[arrow]);
  return bit == 0 ? lo : hi;
}

Path word_to_path(const Quiver& q, const std::vector<int>& word, int src_if_empty = 0) {
  Path p;
  p.src = word.empty() ? src_if_empty : q.source[word.front()];
  p.arrows = word;
  return p;
}

// ===========================================================================
// Dense engine: explicit enumeration of all paths of degree <= N with a
// scalar-weighted union-find.  Path ids are chosen so that id order equals
// deglex order: degree blocks first, then (first arrow, high-to-low choice
// bits).  Rows p * r * s of the relation modules merge classes; union always
// keeps the smallest id as representative, so roots are exactly the
// standard monomials.
// ===========================================================================

class DenseEngine {
public:
  static constexpr long long kHardPathCap = 8'000'000;

  DenseEngine(const Quiver& q, const ScalarAssignment& c, int truncation)
      : q_(q), truncation_(truncation) {
    offsets_.resize(truncation + 2);
    offsets_[0] = 0;
    long long total = q.vertices;
    long long block = q.arrow_count();
    for (int len = 1; len <= truncation; ++len) {
      offsets_[len] = total;
      total += block;
      block *= 2;
      if (total > kHardPathCap)
        throw PreconditionError(
            "truncated_quotient: path space too large for the dense engine");
    }
    offsets_[truncation + 1] = total;
    total_ = total;

    parent_.resize(total);
    for (long long i = 0; i < total; ++i) parent_[i] = i;
    weight_.assign(total, Rational(1));
    zero_.assign(total, 0);

    in_arrows_.assign(q.vertices, {});
    for (int a = 0; a < q.arrow_count(); ++a) in_arrows_[q.target[a]].push_back(a);

    process_relations(c);
  }

  long long encode(const Path& p) const {
    if (p.arrows.empty()) return p.src;
    const int len = p.length();
    long long index = p.arrows.front();
    for (int i = 1; i < len; ++i) {
      const int prev = p.arrows[i - 1];
      const int bit = p.arrows[i] == pick_successor(q_, prev, 0) ? 0 : 1;
      index = index * 2 + bit;
    }
    return offsets_[len] + index;
  }

  Path decode(long long id) const {
    const int len = static_cast<int>(
        std::upper_bound(offsets_.begin(), offsets_.end(), id) - offsets_.begin() - 1);
    if (len == 0) return Path{static_cast<int>(id), {}};
    long long index = id - offsets_[len];
    std::vector<int> bits(len - 1);
    for (int i = len - 2; i >= 0; --i) {
      bits[i] = static_cast<int>(index % 2);
      index /= 2;
    }
    Path p;
    p.arrows.push_back(static_cast<int>(index));
    for (int i = 0; i < len - 1; ++i)
      p.arrows.push_back(pick_successor(q_, p.arrows.back(), bits[i]));
    p.src = q_.source[p.arrows.front()];
    return p;
  }

  // find with path compression; returns (root, w) with path_id = w * path_root.
  std::pair<long long, Rational> find(long long id) {
    std::vector<long long> chain;
    long long r = id;
    while (parent_[r] != r) {
      chain.push_back(r);
      r = parent_[r];
    }
    Rational acc = 1;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      acc *= weight_[*it];
      parent_[*it] = r;
      weight_[*it] = acc;
    }
    return {r, id == r ? Rational(1) : weight_[id]};
  }

  bool is_zero_class(long long root) const { return zero_[root] != 0; }

  std::vector<Path> standard_monomials() {
    std::vector<Path> basis;
    for (long long id = 0; id < total_; ++id) {
      const auto [root, w] = find(id);
      if (root == id && !zero_[root]) basis.push_back(decode(id));
    }
    return basis;  // id order is deglex order
  }

  PathVector reduce(const Path& p) {
    const auto [root, w] = find(encode(p));
    if (zero_[root]) return PathVector::zero();
    return PathVector(decode(root), w);
  }

private:
  // path_i = lambda * path_j.
  void relate(long long i, long long j, const Rational& lambda) {
    auto [ri, wi] = find(i);
    auto [rj, wj] = find(j);
    if (ri == rj) {
      if (wi != lambda * wj) zero_[ri] = 1;
      return;
    }
    const bool either_zero = zero_[ri] || zero_[rj];
    if (ri < rj) {
      parent_[rj] = ri;
      weight_[rj] = wi / (lambda * wj);
      zero_[ri] = either_zero || zero_[ri];
    } else {
      parent_[ri] = rj;
      weight_[ri] = lambda * wj / wi;
      zero_[rj] = either_zero || zero_[rj];
    }
  }

  void mark_zero(long long i) {
    auto [r, w] = find(i);
    zero_[r] = 1;
  }

  void process_relations(const ScalarAssignment& c) {
    for (int a = 0; a < q_.arrow_count(); ++a) {
      // r_a: f(a) f^2(a) = c_a * g(a) ... g^{n-1}(a), both from target(a)
      // to source(a).
      const std::vector<int> f_word{q_.f[a], q_.f[q_.f[a]]};
      std::vector<int> g_word;
      int b = q_.g[a];
      for (int i = 0; i < q_.orbit_size(a) - 1; ++i, b = q_.g[b]) g_word.push_back(b);
      const Rational& ca = c.for_arrow(q_, a);

      // Enumerate contexts p (ending at target(a)) and s (starting at
      // source(a)) with |p| + 2 + |s| <= N.
      std::vector<int> prefix, suffix;
      enumerate_prefixes(q_.target[a], truncation_ - 2, prefix, [&](const std::vector<int>& p) {
        const int room = truncation_ - 2 - static_cast<int>(p.size());
        enumerate_suffixes(q_.source[a], room, suffix, [&](const std::vector<int>& s) {
          apply_row(p, f_word, g_word, ca, s);
        });
      });
    }
  }

  void apply_row(const std::vector<int>& p, const std::vector<int>& f_word,
                 const std::vector<int>& g_word, const Rational& ca,
                 const std::vector<int>& s) {
    std::vector<int> lhs;
    lhs.reserve(p.size() + f_word.size() + s.size());
    lhs.insert(lhs.end(), p.begin(), p.end());
    lhs.insert(lhs.end(), f_word.begin(), f_word.end());
    lhs.insert(lhs.end(), s.begin(), s.end());
    const long long lhs_id = encode(word_to_path(q_, lhs));

    if (p.size() + g_word.size() + s.size() > static_cast<std::size_t>(truncation_)) {
      mark_zero(lhs_id);  // the g-side falls beyond the truncation
      return;
    }
    std::vector<int> rhs;
    rhs.reserve(p.size() + g_word.size() + s.size());
    rhs.insert(rhs.end(), p.begin(), p.end());
    rhs.insert(rhs.end(), g_word.begin(), g_word.end());
    rhs.insert(rhs.end(), s.begin(), s.end());
    relate(lhs_id, encode(word_to_path(q_, rhs)), ca);
  }

  // All paths of length <= room ending at `vertex`, built by prepending.
  template <typename Fn>
  void enumerate_prefixes(int vertex, int room, std::vector<int>& word, const Fn& fn) {
    fn(word);
    if (room == 0) return;
    const int at = word.empty() ? vertex : q_.source[word.front()];
    for (int a : in_arrows_[at]) {
      word.insert(word.begin(), a);
      enumerate_prefixes(vertex, room - 1, word, fn);
      word.erase(word.begin());
    }
  }

  // All paths of length <= room starting at `vertex`, built by appending.
  template <typename Fn>
  void enumerate_suffixes(int vertex, int room, std::vector<int>& word, const Fn& fn) {
    fn(word);
    if (room == 0) return;
    const int at = word.empty() ? vertex : q_.target[word.back()];
    for (int a : q_.out_arrows(at)) {
      word.push_back(a);
      enumerate_suffixes(vertex, room - 1, word, fn);
      word.pop_back();
    }
  }

  const Quiver q_;  // by value: the engine may outlive the caller's copy
  int truncation_;
  std::vector<long long> offsets_;
  long long total_ = 0;
  std::vector<long long> parent_;
  std::vector<Rational> weight_;
  std::vector<std::uint8_t> zero_;
  std::vector<std::vector<int>> in_arrows_;
};

// ===========================================================================
// Rewriting engine: completion of the relation set into a confluent
// deglex-decreasing rewrite system on words of degree <= N, then standard
// monomials as the factor-free words.  Scales to truncation bounds far
// beyond explicit path enumeration.
// ===========================================================================

struct Rule {
  std::vector<int> lhs;   // length >= 2
  Rational coef;          // lhs == coef * rhs as algebra elements; 0 for lhs == 0
  std::vector<int> rhs;

  bool zero() const { return coef == 0; }
};

// deglex on words.
std::strong_ordering word_compare(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size())
    return a.size() < b.size() ? std::strong_ordering::less : std::strong_ordering::greater;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

struct WordHash {
  std::size_t operator()(const std::vector<int>& w) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : w) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

class RewriteEngine {
public:
  RewriteEngine(const Quiver& q, const ScalarAssignment& c, int truncation)
      : q_(q), truncation_(truncation), by_first_(q.arrow_count()) {
    complete(c);
  }

  // value(word) = scalar * value(result); scalar 0 encodes the zero class.
  std::pair<Rational, std::vector<int>> normalize(std::vector<int> word) const {
    if (word.size() > static_cast<std::size_t>(truncation_)) return {0, {}};
    Rational scalar = 1;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t pos = 0; pos < word.size() && !changed; ++pos) {
        for (int rid : by_first_[word[pos]]) {
          if (!active_[rid]) continue;
          const auto& rule = rules_[rid];
          if (rule.lhs.size() > word.size() - pos) continue;
          if (!std::equal(rule.lhs.begin(), rule.lhs.end(), word.begin() + pos)) continue;
          if (rule.zero()) return {0, {}};
          std::vector<int> next;
          next.reserve(word.size() - rule.lhs.size() + rule.rhs.size());
          next.insert(next.end(), word.begin(), word.begin() + pos);
          next.insert(next.end(), rule.rhs.begin(), rule.rhs.end());
          next.insert(next.end(), word.begin() + pos + rule.lhs.size(), word.end());
          scalar *= rule.coef;
          word = std::move(next);
          changed = true;
          break;
        }
      }
    }
    return {scalar, std::move(word)};
  }

  std::vector<Path> standard_monomials() const {
    std::vector<Path> basis;
    std::size_t max_lhs = 2;
    for (std::size_t rid = 0; rid < rules_.size(); ++rid)
      if (active_[rid]) max_lhs = std::max(max_lhs, rules_[rid].lhs.size());

    std::unordered_set<std::vector<int>, WordHash> lhs_set;
    for (std::size_t rid = 0; rid < rules_.size(); ++rid)
      if (active_[rid]) lhs_set.insert(rules_[rid].lhs);

    // Factor-free words, grown arrow by arrow; only suffixes ending at the
    // new position need checking.
    std::vector<int> word;
    long long visited = 0;
    const auto blocked = [&](const std::vector<int>& w) {
      const std::size_t limit = std::min(max_lhs, w.size());
      for (std::size_t len = 2; len <= limit; ++len)
        if (lhs_set.count(std::vector<int>(w.end() - len, w.end()))) return true;
      return false;
    };
    std::vector<std::vector<Path>> by_degree(truncation_ + 1);
    const std::function<void(int)> grow = [&](int vertex) {
      if (++visited > 4'000'000)
        throw PreconditionError(
            "truncated_quotient: standard monomial enumeration exceeded the resource cap");
      by_degree[word.size()].push_back(word_to_path(q_, word, vertex));
      if (word.size() == static_cast<std::size_t>(truncation_)) return;
      const int at = word.empty() ? vertex : q_.target[word.back()];
      for (int a : q_.out_arrows(at)) {
        word.push_back(a);
        if (!blocked(word)) grow(vertex);
        word.pop_back();
      }
    };
    for (int v = 0; v < q_.vertices; ++v) grow(v);

    for (auto& bucket : by_degree) {
      std::sort(bucket.begin(), bucket.end(),
                [](const Path& a, const Path& b) { return DeglexLess()(a, b); });
      basis.insert(basis.end(), bucket.begin(), bucket.end());
    }
    return basis;
  }

  PathVector reduce(const Path& p) const {
    const auto [scalar, word] = normalize(p.arrows);
    if (scalar == 0) return PathVector::zero();
    return PathVector(word_to_path(q_, word, p.src), scalar);
  }

private:
  // Pending assertion  ca * value(wa) == cb * value(wb); a scalar of zero
  // marks that side as the zero element.
  struct Equation {
    Rational ca;
    std::vector<int> wa;
    Rational cb;
    std::vector<int> wb;
  };

  // Shortest-equation-first ordering.  Short equations orient into short
  // rules, and short rules subsume the long ones through the antichain
  // maintenance; processing in FIFO order instead lets long critical pairs
  // breed quadratically before any subsuming short rule exists.
  struct EquationQueue {
    std::map<std::size_t, std::deque<Equation>> buckets;
    std::size_t count = 0;

    static std::size_t key(const Equation& eq) {
      return std::max(eq.wa.size(), eq.wb.size());
    }
    void push(Equation eq) {
      ++count;
      buckets[key(eq)].push_back(std::move(eq));
    }
    bool empty() const { return count == 0; }
    Equation pop() {
      auto it = buckets.begin();
      Equation eq = std::move(it->second.front());
      it->second.pop_front();
      if (it->second.empty()) buckets.erase(it);
      --count;
      return eq;
    }
  };

  void complete(const ScalarAssignment& c) {
    EquationQueue queue;
    for (int a = 0; a < q_.arrow_count(); ++a) {
      Equation eq;
      eq.ca = 1;
      eq.wa = {q_.f[a], q_.f[q_.f[a]]};
      eq.cb = c.for_arrow(q_, a);
      int b = q_.g[a];
      for (int i = 0; i < q_.orbit_size(a) - 1; ++i, b = q_.g[b]) eq.wb.push_back(b);
      if (eq.wb.size() > static_cast<std::size_t>(truncation_)) {
        eq.cb = 0;
        eq.wb.clear();
      }
      queue.push(std::move(eq));
    }

    long long processed = 0;
    while (!queue.empty()) {
      if (++processed > 500'000)
        throw PreconditionError("truncated_quotient: completion exceeded the resource cap");
      Equation eq = queue.pop();

      auto [sa, na] = eq.ca == 0 ? std::make_pair(Rational(0), std::vector<int>{})
                                 : normalize(std::move(eq.wa));
      auto [sb, nb] = eq.cb == 0 ? std::make_pair(Rational(0), std::vector<int>{})
                                 : normalize(std::move(eq.wb));
      const Rational u = eq.ca * sa;
      const Rational v = eq.cb * sb;

      if (u == 0 && v == 0) continue;
      if (u == 0) {
        add_rule({std::move(nb), 0, {}}, queue);
        continue;
      }
      if (v == 0) {
        add_rule({std::move(na), 0, {}}, queue);
        continue;
      }
      const auto order = word_compare(na, nb);
      if (order == std::strong_ordering::equal) {
        if (u != v) add_rule({std::move(na), 0, {}}, queue);
        continue;
      }
      if (order == std::strong_ordering::greater)
        add_rule({std::move(na), v / u, std::move(nb)}, queue);
      else
        add_rule({std::move(nb), u / v, std::move(na)}, queue);
    }
  }

  void add_rule(Rule rule, EquationQueue& queue) {
    // Words of length <= 1 can never equal anything but themselves in these
    // quotients (the ideal sits inside the square of the arrow ideal).
    if (rule.lhs.size() < 2)
      throw PreconditionError("truncated_quotient: completion produced a degree-" +
                              std::to_string(rule.lhs.size()) + " rule");
    const int rid = static_cast<int>(rules_.size());
    by_first_[rule.lhs.front()].push_back(rid);
    rules_.push_back(std::move(rule));
    active_.push_back(1);
    const auto& added = rules_[rid];

    // Rules whose left side contains the new one become redundant: requeue
    // their content as equations so the active left sides stay an antichain
    // under the factor order.
    for (int other = 0; other < rid; ++other) {
      if (!active_[other]) continue;
      if (contains_factor(rules_[other].lhs, added.lhs)) {
        active_[other] = 0;
        Equation eq;
        eq.ca = 1;
        eq.wa = rules_[other].lhs;
        eq.cb = rules_[other].coef;
        eq.wb = rules_[other].rhs;
        queue.push(std::move(eq));
      }
    }

    // Critical pairs from proper overlaps with every active rule.
    for (int other = 0; other <= rid; ++other) {
      if (!active_[other]) continue;
      queue_overlaps(rules_[rid], rules_[other], queue);
      if (other != rid) queue_overlaps(rules_[other], rules_[rid], queue);
    }
  }

  static bool contains_factor(const std::vector<int>& word, const std::vector<int>& factor) {
    if (factor.size() > word.size()) return false;
    for (std::size_t pos = 0; pos + factor.size() <= word.size(); ++pos)
      if (std::equal(factor.begin(), factor.end(), word.begin() + pos)) return true;
    return false;
  }

  // Superpositions where a suffix of x.lhs equals a prefix of y.lhs.  A
  // superposition longer than the truncation bound lies in the discarded
  // power of the arrow ideal, so both routes through it are zero classes;
  // that case is encoded by zeroing the overflowing side(s) instead of
  // skipping the pair (skipping would lose exactly the truncation-driven
  // vanishing).
  void queue_overlaps(const Rule& x, const Rule& y, EquationQueue& queue) {
    const std::size_t bound = static_cast<std::size_t>(truncation_);
    const std::size_t max_overlap = std::min(x.lhs.size(), y.lhs.size()) - 1;
    for (std::size_t o = 1; o <= max_overlap; ++o) {
      if (!std::equal(y.lhs.begin(), y.lhs.begin() + o, x.lhs.end() - o)) continue;
      const std::size_t super_len = x.lhs.size() + y.lhs.size() - o;
      const bool vanishes = super_len > bound;

      Equation eq;
      // Route through x: x.coef * (x.rhs ++ y.lhs[o..]).
      eq.ca = x.coef;
      if (!x.zero()) {
        eq.wa = x.rhs;
        eq.wa.insert(eq.wa.end(), y.lhs.begin() + o, y.lhs.end());
        if (eq.wa.size() > bound) {
          eq.ca = 0;
          eq.wa.clear();
        } else if (vanishes) {
          eq.cb = 0;
          queue.push(eq);
        }
      }
      // Route through y: y.coef * (x.lhs[..-o] ++ y.rhs).
      eq.cb = y.coef;
      if (!y.zero()) {
        eq.wb.assign(x.lhs.begin(), x.lhs.end() - o);
        eq.wb.insert(eq.wb.end(), y.rhs.begin(), y.rhs.end());
        if (eq.wb.size() > bound) {
          eq.cb = 0;
          eq.wb.clear();
        }
      }
      if (vanishes) {
        // The two routes are separately zero; the second is queued here (the
        // first was queued above when it stayed within the bound).
        if (eq.cb != 0) {
          Equation zero;
          zero.ca = 0;
          zero.cb = eq.cb;
          zero.wb = std::move(eq.wb);
          queue.push(std::move(zero));
        }
        continue;
      }
      queue.push(std::move(eq));
    }
  }

  const Quiver q_;  // by value: the engine may outlive the caller's copy
  int truncation_;
  std::vector<Rule> rules_;
  std::vector<char> active_;
  std::vector<std::vector<int>> by_first_;
};

constexpr long long kDensePathLimit = 400'000;

long long path_count_up_to(const Quiver& q, int truncation) {
  long long total = q.vertices;
  long long block = q.arrow_count();
  for (int len = 1; len <= truncation; ++len) {
    total += block;
    block *= 2;
    if (total > kDensePathLimit) return total;  // only the comparison matters
  }
  return total;
}

}  // namespace

// ===========================================================================
// TruncatedAlgebra
// ===========================================================================

struct TruncatedAlgebra::Impl {
  std::unique_ptr<DenseEngine> dense;
  std::unique_ptr<RewriteEngine> rewrite;

  PathVector reduce(const Path& p) const {
    return dense ? dense->reduce(p) : rewrite->reduce(p);
  }
};

TruncatedAlgebra::TruncatedAlgebra(Quiver q, ScalarAssignment c, int truncation,
                                   QuotientEngine engine)
    : quiver_(std::move(q)), scalars_(std::move(c)), truncation_(truncation) {
  const auto problems = quiver_problems(quiver_);
  if (!problems.empty())
    throw PreconditionError("truncated_quotient: invalid quiver: " + problems.front());
  quiver_.finalize();
  if (truncation_ < 2)
    throw PreconditionError("truncated_quotient: truncation bound must be >= 2");

  if (engine == QuotientEngine::automatic)
    engine = path_count_up_to(quiver_, truncation_) <= kDensePathLimit
                 ? QuotientEngine::dense
                 : QuotientEngine::rewriting;
  engine_used_ = engine;

  impl_ = std::make_unique<Impl>();
  if (engine == QuotientEngine::dense) {
    impl_->dense = std::make_unique<DenseEngine>(quiver_, scalars_, truncation_);
    basis_ = impl_->dense->standard_monomials();
  } else {
    impl_->rewrite = std::make_unique<RewriteEngine>(quiver_, scalars_, truncation_);
    basis_ = impl_->rewrite->standard_monomials();
  }
  for (int i = 0; i < static_cast<int>(basis_.size()); ++i) basis_position_[basis_[i]] = i;
}

TruncatedAlgebra::~TruncatedAlgebra() = default;
TruncatedAlgebra::TruncatedAlgebra(TruncatedAlgebra&&) noexcept = default;
TruncatedAlgebra& TruncatedAlgebra::operator=(TruncatedAlgebra&&) noexcept = default;

std::vector<int> TruncatedAlgebra::dimension_by_degree() const {
  std::vector<int> dims(truncation_ + 1, 0);
  for (const auto& p : basis_) ++dims[p.length()];
  return dims;
}

std::optional<int> TruncatedAlgebra::basis_index(const Path& p) const {
  const auto it = basis_position_.find(p);
  if (it == basis_position_.end()) return std::nullopt;
  return it->second;
}

PathVector TruncatedAlgebra::reduce(const Path& p) const {
  if (p.length() > truncation_)
    throw PreconditionError("reduce: path degree exceeds the truncation bound");
  return impl_->reduce(p);
}

PathVector TruncatedAlgebra::reduce(const PathVector& v) const {
  PathVector result;
  for (const auto& [path, coeff] : v.terms()) result += coeff * reduce(path);
  return result;
}

}  // namespace qpsurf
