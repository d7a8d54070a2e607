#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace ltlsn {

/// Exact rational number, always held in lowest terms with a positive
/// denominator. Comparisons never round.
using Rational = boost::rational<std::int64_t>;

/// Parses `p/q`, an integer, or a finite decimal such as `0.25`.
/// Decimals are converted exactly (`0.25` becomes 1/4).
/// Throws std::invalid_argument on malformed input or overflow.
Rational parse_rational(std::string_view text);

/// Canonical text form: `p/q`, or just `p` when the denominator is 1.
std::string to_string(const Rational& r);

} // namespace ltlsn
