#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace ctlab {

// Unbounded naturals. Codes, term values and valuations all use this type.
using Natural = boost::multiprecision::mpz_int;

inline std::string to_string(const Natural& n) { return n.str(); }

// Throws std::invalid_argument on anything but a plain decimal.
Natural parse_natural(const std::string& text);

std::size_t hash_value(const Natural& n);

}  // namespace ctlab
