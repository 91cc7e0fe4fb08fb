#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tipsy {

using Rational = mpq_class;

// Accepts "p/q", integers and plain decimals ("0.25", "1e-3" is rejected).
// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

std::string to_string(const Rational& q);

// GMP expects reduced operands; Rational(2, 4) is not reduced until asked.
inline Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}
inline double canonical(double x) { return x; }

}  // namespace tipsy
