// rational.hpp -- exact rational arithmetic for the modules that must keep
// constraint values and probabilities with zero error.

#pragma once

#include <gmpxx.h>

#include <string>

namespace dmax {

using Rational = mpq_class;

inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

inline Rational rational(long num, long den = 1) { return Rational(num, den); }

}  // namespace dmax
