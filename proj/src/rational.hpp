/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace snipkit {

// All score arithmetic runs on exact rationals so that algebraically equal
// quantities compare equal, independent of evaluation order.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& value) {
    return static_cast<double>(value);
}

// Parses a plain decimal literal ("0.20", "-1.5", "3") into the exact
// rational it denotes. Throws Error(parse) on anything else.
Rational parse_decimal(std::string_view text);

// Fixed-point decimal rendering with round-half-even at `places` digits,
// computed on the exact rational (no double round-trip).
std::string format_decimal(const Rational& value, int places);

} // namespace snipkit
