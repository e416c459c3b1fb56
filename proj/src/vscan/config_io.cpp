// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include "vscan/config_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vscan/error.hpp"

namespace vscan {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& what) { fail(ErrorCode::ParseError, "scanner config: " + what); }

double number_field(const json& v, const std::string& key) {
  if (!v.is_number()) config_error("'" + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

ResolvedConfig parse_scanner_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    config_error(e.what());
  }
  if (!doc.is_object()) config_error("expected an object");

  ResolvedConfig out;
  if (auto it = doc.find("preset"); it != doc.end()) {
    if (!it->is_string()) config_error("'preset' must be a string");
    out.preset = it->get<std::string>();
    out.config = find_preset(out.preset).config;
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "preset") continue;
    if (key == "density_mm_per_10m") {
      out.config.density_mm_per_10m = number_field(value, key);
    } else if (key == "max_range_m") {
      out.config.max_range_m = number_field(value, key);
    } else if (key == "vertical_fov_deg") {
      out.config.vertical_fov_deg = number_field(value, key);
    } else if (key == "system_error_mm") {
      out.config.system_error_mm = number_field(value, key);
    } else if (key == "distance_error") {
      if (value.is_string()) {
        out.config.distance_error_fraction = parse_distance_error(value.get<std::string>());
      } else {
        out.config.distance_error_fraction = number_field(value, key);
      }
    } else if (key == "origin") {
      if (!value.is_array() || value.size() != 3) config_error("'origin' must be [x, y, z]");
      out.config.origin = {number_field(value[0], key), number_field(value[1], key), number_field(value[2], key)};
      out.has_origin = true;
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) config_error("'seed' must be a non-negative integer");
      out.config.seed = value.get<std::uint64_t>();
    } else {
      config_error("unknown field '" + key + "'");
    }
  }
  out.config.validate();
  return out;
}

ResolvedConfig load_scanner_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scanner_config(buffer.str());
}

std::string serialize_scanner_config(const ScannerConfig& c) {
  json doc;
  doc["density_mm_per_10m"] = c.density_mm_per_10m;
  doc["max_range_m"] = c.max_range_m;
  doc["vertical_fov_deg"] = c.vertical_fov_deg;
  doc["system_error_mm"] = c.system_error_mm;
  doc["distance_error"] = c.distance_error_fraction;
  doc["origin"] = json::array({c.origin.x, c.origin.y, c.origin.z});
  doc["seed"] = c.seed;
  return doc.dump();
}

}  // namespace vscan
