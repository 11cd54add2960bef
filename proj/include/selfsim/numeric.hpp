#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace selfsim {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q" (surrounding whitespace allowed). Throws Error(Parse).
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

inline bool is_integral(const Rational& value) { return value.get_den() == 1; }

/// Joins values with ',' and no spaces, e.g. "1,0,-2".
std::string join_coords(const std::vector<Integer>& coords);
std::string join_coords(const std::vector<Rational>& coords);

/// Parses a comma separated list of integers ("1,0,-2"). Throws Error(Parse).
std::vector<Integer> parse_coords(std::string_view text);

std::size_t hash_integer(const Integer& value) noexcept;

}  // namespace selfsim
