/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "rational.hpp"

#include "error.hpp"

#include <cctype>

namespace snipkit {

Rational parse_decimal(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    BigInt mantissa = 0;
    BigInt scale = 1;
    std::size_t digits = 0;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (seen_point) fail(ErrorKind::parse, "bad decimal literal: '" + std::string(text) + "'");
            seen_point = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c)))
            fail(ErrorKind::parse, "bad decimal literal: '" + std::string(text) + "'");
        mantissa = mantissa * 10 + (c - '0');
        if (seen_point) scale *= 10;
        ++digits;
    }
    if (digits == 0) fail(ErrorKind::parse, "bad decimal literal: '" + std::string(text) + "'");
    Rational value(mantissa, scale);
    return negative ? -value : value;
}

std::string format_decimal(const Rational& value, int places) {
    BigInt num = boost::multiprecision::numerator(value);
    BigInt den = boost::multiprecision::denominator(value);
    bool negative = num < 0;
    if (negative) num = -num;

    BigInt scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;

    BigInt scaled = num * scale;
    BigInt q = scaled / den;
    BigInt rem = scaled % den;
    // round half to even
    BigInt twice = rem * 2;
    if (twice > den || (twice == den && (q % 2) != 0)) ++q;

    BigInt whole = q / scale;
    BigInt frac = q % scale;
    std::string out = negative && q != 0 ? "-" : "";
    out += whole.str();
    if (places > 0) {
        std::string f = frac.str();
        out += '.';
        out += std::string(static_cast<std::size_t>(places) - f.size(), '0');
        out += f;
    }
    return out;
}

} // namespace snipkit
