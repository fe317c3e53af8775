#ifndef QPSURF_RATIONAL_HPP
#define QPSURF_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace qpsurf {

// All coefficient arithmetic is exact.  cpp_rational keeps numerator and
// denominator as arbitrary-precision integers and normalizes on every
// operation, so equality tests are decidable and there is no rounding
// anywhere in the library.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p", "-p" or "p/q" with q > 0 after normalization.
// Throws ParseError on malformed text or a zero denominator.
Rational parse_rational(const std::string& text);

// Prints "p" for integers and "p/q" otherwise (the inverse of parse_rational).
std::string rational_to_string(const Rational& value);

}  // namespace qpsurf

#endif
