// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include "vscan/text_format.hpp"

#include <array>
#include <charconv>

#include "vscan/error.hpp"

namespace vscan {

namespace {

template <class... Args>
std::string to_chars_string(double value, Args... args) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  std::array<char, 128> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, args...);
  if (ec != std::errc()) fail(ErrorCode::InvalidArgument, "number formatting failed");
  return std::string(buf.data(), ptr);
}

}  // namespace

std::string format_shortest(double value) { return to_chars_string(value); }

std::string format_significant(double value, int digits) {
  return to_chars_string(value, std::chars_format::general, digits);
}

std::string format_fixed(double value, int decimals) {
  std::string s = to_chars_string(value, std::chars_format::fixed, decimals);
  // A negative value that rounds to zero must not print as "-0.000000".
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

double parse_double(std::string_view text, const std::string& context) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end) {
    fail(ErrorCode::ParseError, context + ": invalid number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace vscan
