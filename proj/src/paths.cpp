#include "qpsurf/paths.hpp"

#include "qpsurf/errors.hpp"

#include <json.hpp>

namespace qpsurf {

std::strong_ordering deglex_compare(const Path& a, const Path& b) {
  if (a.length() != b.length())
    return a.length() < b.length() ? std::strong_ordering::less
                                   : std::strong_ordering::greater;
  if (a.arrows.empty()) return a.src <=> b.src;
  for (int i = 0; i < a.length(); ++i)
    if (a.arrows[i] != b.arrows[i]) return a.arrows[i] <=> b.arrows[i];
  return std::strong_ordering::equal;
}

PathVector::PathVector(Path p, Rational coefficient) {
  add_term(p, coefficient);
}

int PathVector::degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.length();
}

void PathVector::add_term(const Path& p, const Rational& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.emplace(p, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

PathVector& PathVector::operator+=(const PathVector& other) {
  for (const auto& [path, coeff] : other.terms_) add_term(path, coeff);
  return *this;
}

PathVector& PathVector::operator-=(const PathVector& other) {
  for (const auto& [path, coeff] : other.terms_) add_term(path, -coeff);
  return *this;
}

PathVector& PathVector::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [path, coeff] : terms_) coeff *= scalar;
  return *this;
}

PathVector PathVector::concat(const PathVector& a, const PathVector& b, const Quiver& q) {
  PathVector result;
  for (const auto& [pa, ca] : a.terms()) {
    for (const auto& [pb, cb] : b.terms()) {
      if (pa.target(q) != pb.src) continue;
      Path joined;
      joined.src = pa.src;
      joined.arrows = pa.arrows;
      joined.arrows.insert(joined.arrows.end(), pb.arrows.begin(), pb.arrows.end());
      result.add_term(joined, ca * cb);
    }
  }
  return result;
}

std::string path_vector_to_json(const PathVector& v) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& [path, coeff] : v.terms()) {
    nlohmann::ordered_json term;
    term["coefficient"] = rational_to_string(coeff);
    term["source"] = path.src;
    term["arrows"] = path.arrows;
    doc.push_back(term);
  }
  return doc.dump();
}

PathVector path_vector_from_json(const std::string& text, const Quiver& q) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("path vector document: ") + e.what());
  }
  if (!doc.is_array())
    throw ParseError("path vector document: expected a list of terms");

  PathVector v;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& term = doc[i];
    const std::string at = "term " + std::to_string(i);
    if (!term.is_object() || !term.contains("coefficient") || !term.contains("source") ||
        !term.contains("arrows"))
      throw ParseError("path vector document: " + at +
                       " needs 'coefficient', 'source' and 'arrows'");
    if (!term["coefficient"].is_string())
      throw ParseError("path vector document: " + at + ": coefficient must be a string");
    const Rational coeff = parse_rational(term["coefficient"].get<std::string>());
    if (!term["source"].is_number_integer())
      throw ParseError("path vector document: " + at + ": source must be an integer");
    Path p;
    p.src = term["source"].get<int>();
    if (p.src < 0 || p.src >= q.vertices)
      throw ParseError("path vector document: " + at + ": source out of range");
    if (!term["arrows"].is_array())
      throw ParseError("path vector document: " + at + ": arrows must be a list");
    int at_vertex = p.src;
    for (const auto& entry : term["arrows"]) {
      if (!entry.is_number_integer())
        throw ParseError("path vector document: " + at + ": arrow ids must be integers");
      const int arrow = entry.get<int>();
      if (arrow < 0 || arrow >= q.arrow_count())
        throw ParseError("path vector document: " + at + ": arrow id out of range");
      if (q.source[arrow] != at_vertex)
        throw ParseError("path vector document: " + at + ": arrows do not compose");
      at_vertex = q.target[arrow];
      p.arrows.push_back(arrow);
    }
    v.add_term(p, coeff);
  }
  return v;
}

}  // namespace qpsurf
