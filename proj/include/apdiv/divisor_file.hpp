#pragma once

#include "apdiv/divisor.hpp"

#include <string>
#include <string_view>

namespace apdiv {

/// Parses the plain-text divisor format:
///
///   # comment
///   field { minpoly = [-2, 0, 1], interval = [1, 3/2] }
///   m = 2
///   pair mult=1 lambda=[1, 0] mu=[0, [0, 1]]
///
/// Scalars are either a bare rational or a bracketed coefficient list in
/// the power basis of the field; rationals only, no floats.  The field
/// block may be omitted, in which case the divisor is over Q.  A field of
/// degree >= 4 additionally needs `assert_irreducible = true`.
///
/// Throws ParseError (with a line number) on malformed input; field
/// validation failures propagate as their own error types.
Divisor parse_divisor(std::string_view text);

/// Reads and parses a file; IO failures become ParseError.
Divisor load_divisor_file(const std::string& path);

}  // namespace apdiv
