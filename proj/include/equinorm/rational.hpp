#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace equinorm {

/// Exact rational scalar with arbitrary-precision numerator/denominator.
/// Always stored in canonical form (reduced, positive denominator).
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "3", "-3", "3/4", "-3/4". Throws std::invalid_argument on junk.
Rat rat_parse(const std::string& s);

/// Decimal string of the numerator / denominator.
std::string rat_num_str(const Rat& q);
std::string rat_den_str(const Rat& q);

/// "n" or "n/d" rendering.
std::string rat_str(const Rat& q);

double rat_to_double(const Rat& q);

/// Exact square root if q is the square of a rational, nullopt otherwise.
std::optional<Rat> rat_exact_sqrt(const Rat& q);

} // namespace equinorm
