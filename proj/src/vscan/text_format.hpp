// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

namespace vscan {

// Locale-independent number formatting. Negative zero prints as zero.
std::string format_shortest(double value);                 // round-trip exact
std::string format_significant(double value, int digits);  // like %.<digits>g
std::string format_fixed(double value, int decimals);      // like %.<decimals>f

// Strict full-token parse; throws ParseError mentioning `context`.
double parse_double(std::string_view text, const std::string& context);

}  // namespace vscan
