#ifndef QPSURF_ERRORS_HPP
#define QPSURF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qpsurf {

// Raised when an input document (JSON triangulation, quiver, path vector,
// scalar list) is malformed or violates its schema.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an operation is invoked on a value that violates the
// operation's preconditions (e.g. asking for the adjacency quiver of an
// invalid triangulation, or multiplying beyond the truncation bound).
class PreconditionError : public std::logic_error {
public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qpsurf

#endif
