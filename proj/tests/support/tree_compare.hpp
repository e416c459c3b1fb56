// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "support/test_support.hpp"

namespace vscan::test {

// Relative path -> contents of every regular file under `root`.
inline std::map<std::string, std::string> read_tree(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[std::filesystem::relative(e.path(), root).generic_string()] = slurp(e.path());
  }
  return out;
}

// Empty when identical, otherwise the first differing relative path.
inline std::string first_tree_difference(const std::filesystem::path& a, const std::filesystem::path& b) {
  const auto ta = read_tree(a), tb = read_tree(b);
  for (const auto& [k, v] : ta) {
    auto it = tb.find(k);
    if (it == tb.end() || it->second != v) return k;
  }
  for (const auto& [k, v] : tb) {
    if (!ta.count(k)) return k;
  }
  return {};
}

}  // namespace vscan::test
