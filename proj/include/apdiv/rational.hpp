#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace apdiv {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q"
/// with q > 0 and gcd(p, q) = 1.
std::string rat_to_string(const Rat& r);

/// Strict parser for the canonical form (optional sign, digits, optional
/// "/digits").  Rejects anything else, including floats.
std::optional<Rat> parse_rational(std::string_view text);

double rat_to_double(const Rat& r);

}  // namespace apdiv
