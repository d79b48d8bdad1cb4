// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace npforge {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_decimal(const Integer& v) { return v.str(); }

/// Parses an optionally signed decimal integer. Throws InputError on junk.
Integer parse_integer(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_fraction_string(const Rational& v);

inline double to_double(const Integer& v) { return v.convert_to<double>(); }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

/// Checked narrowing; throws ArithmeticOverflow when `v` does not fit.
std::int64_t to_int64(const Integer& v);

}  // namespace npforge
