#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dgw {

using Rational = mpq_class;

/// Parses "p/q" or "p" (optional sign). Throws StructuralError on a zero
/// denominator or malformed text. The result is canonical.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& q);

inline int sign_of_parity(long long n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace dgw
