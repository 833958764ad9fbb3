#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace peg {

/// Arbitrary-precision signed integer used for energies, belief values and
/// fast-growing function values.
using Int = boost::multiprecision::cpp_int;

inline std::string to_string(const Int& v) { return v.str(); }

/// Parses an optionally signed decimal literal. Throws std::invalid_argument.
Int parse_int(std::string_view text);

inline std::size_t bit_length(const Int& v)
{
    if (v == 0) return 0;
    return boost::multiprecision::msb(abs(v)) + 1;
}

inline bool fits_int64(const Int& v)
{
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace peg
