#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace grpvol {

using Integer = mpz_class;
using Rational = mpq_class;

/// Lowest-terms text form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// Accepts "p", "p/q" and "-p/q"; throws ParseError otherwise.
Rational parse_rational(std::string_view text);

Rational abs(const Rational& value);

}  // namespace grpvol
