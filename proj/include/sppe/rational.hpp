#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace sppe {

// Exact rational in lowest terms with positive denominator. GMP keeps
// every arithmetic result canonical; parse_rat canonicalizes input.
using Rat = mpq_class;
using RatVector = std::vector<Rat>;
using RatMatrix = std::vector<RatVector>;

// Accepts integers ("7", "-3"), plain decimals ("0.125") and fractions
// ("3/4", "-6/8"). Exponent notation is not accepted. Throws
// Error(Parse) on malformed input or a zero denominator.
Rat parse_rat(std::string_view text);

// Lowest-terms "p/q", or "p" when the denominator is 1.
std::string to_string(const Rat& value);

inline int sign(const Rat& value) { return sgn(value); }

RatMatrix zero_matrix(std::size_t rows, std::size_t cols);

}  // namespace sppe
