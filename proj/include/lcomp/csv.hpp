#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

#include <charconv>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace lcomp::csv {

/// RFC 4180 quoting: wrap in quotes when the field holds a comma, quote or newline.
inline std::string field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Shortest representation that round-trips, e.g. 0.1 -> "0.1", 10 -> "10".
inline std::string number(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

inline void row(std::ostream& out, std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (auto f : fields) {
    if (!first) out << ',';
    out << field(f);
    first = false;
  }
  out << '\n';
}

}  // namespace lcomp::csv
