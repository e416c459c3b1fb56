// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "vscan/scanner.hpp"

namespace vscan {

// Scanner configuration file: an optional base "preset" plus field
// overrides. "distance_error" accepts a number (fraction) or a string with a
// "%" or "ppm" suffix. "seed" is optional. "origin" is optional; without it the pipeline places
// the scanner automatically.
struct ResolvedConfig {
  std::string preset;  // base preset name, empty when none was given
  ScannerConfig config;
  bool has_origin = false;
};

ResolvedConfig parse_scanner_config(std::string_view text);
ResolvedConfig load_scanner_config(const std::filesystem::path& path);

// Canonical JSON object with every field of `config` (no trailing newline).
std::string serialize_scanner_config(const ScannerConfig& config);

}  // namespace vscan
