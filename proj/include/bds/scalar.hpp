#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <string>
#include <string_view>

namespace bds {

using Integer = boost::multiprecision::mpz_int;

/// Exact rational scalar. Kept canonical (reduced, positive denominator) by the
/// backend, so equality is decidable. A binary-float view (to_double) exists only
/// for operations that need roots.
using Scalar = boost::multiprecision::mpq_rational;

double to_double(const Scalar& x);

/// Canonical text form: "p/q", or just "p" when the denominator is 1.
std::string to_string(const Scalar& x);

/// Parses "p", "p/q" or a decimal "d.ddd" (read exactly as p/10^n).
Scalar parse_rational(std::string_view text);

/// base^exp by repeated squaring, exact.
Scalar rational_pow(const Scalar& base, std::size_t exp);

/// Fixed 12-significant-digit float formatting used by reports.
std::string format_double12(double x);

} // namespace bds
