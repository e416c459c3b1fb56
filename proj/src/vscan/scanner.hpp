// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vscan/geometry.hpp"
#include "vscan/rng.hpp"
#include "vscan/scene_geometry.hpp"

namespace vscan {

struct ScannerConfig {
  double density_mm_per_10m = 6.0;     // point spacing at 10 m
  double max_range_m = 45.0;
  double vertical_fov_deg = 300.0;     // total vertical coverage
  double system_error_mm = 0.0;        // Gaussian range std-dev
  double distance_error_fraction = 0.0;  // proportional range bias
  Vec3 origin;
  std::uint64_t seed = 0;

  // Throws InvalidArgument naming the offending field.
  void validate() const;

  double system_error_m() const { return system_error_mm * 1e-3; }
  // Lowest elevation (radians): 90 degrees minus half the vertical coverage.
  double min_elevation() const;
  double angular_step() const;
};

// Device presets. Range and accuracy follow published device datasheets;
// vertical coverage and density defaults are engineering choices.
struct ScanPreset {
  std::string name;
  std::string description;
  ScannerConfig config;
};

const std::vector<ScanPreset>& scanner_presets();
// Throws UnknownPreset listing the valid names.
const ScanPreset& find_preset(std::string_view name);

// Adjacent rays land d_s mm apart at 10 m: d_s / 10000 radians.
double angular_step_from_density(double density_mm_per_10m);

// Parses a distance error given as a fraction ("0.01"), percent ("1%") or
// parts per million ("10ppm").
double parse_distance_error(std::string_view text);

struct ScanVector {
  std::uint32_t ring = 0;
  std::uint32_t azimuth = 0;
  double elevation = 0.0;      // radians
  double azimuth_angle = 0.0;  // radians in [0, 2pi)
  Vec3 direction;
};

// Ring table of the horizontal-disk scan pattern. Vectors are addressed by
// (ring, azimuth) and materialized on demand so that dense presets do not
// need one record per ray in memory.
class ScanPattern {
 public:
  struct Ring {
    double elevation;
    double cos_elevation;
    double sin_elevation;
    std::uint32_t azimuth_count;
    std::uint64_t first_vector;  // running offset in (ring, azimuth) order
  };

  static constexpr std::uint64_t kDefaultVectorBudget = std::uint64_t{1} << 31;

  // Throws VectorBudgetExceeded when the pattern holds more than `budget` rays.
  explicit ScanPattern(const ScannerConfig& config, std::uint64_t budget = kDefaultVectorBudget);

  double min_elevation() const { return min_elevation_; }
  double step() const { return step_; }
  std::uint64_t vector_count() const { return total_; }
  const std::vector<Ring>& rings() const { return rings_; }

  double azimuth_angle(std::uint32_t ring, std::uint32_t azimuth) const;
  ScanVector vector(std::uint32_t ring, std::uint32_t azimuth) const;

 private:
  double min_elevation_;
  double step_;
  std::uint64_t total_ = 0;
  std::vector<Ring> rings_;
};

std::vector<ScanVector> generate_scan_vectors(
    const ScannerConfig& config, std::uint64_t budget = ScanPattern::kDefaultVectorBudget);

// r' = r + N(0, eps_s) + r * eps_d, clamped to stay in front of the scanner.
double apply_noise(double range, const ScannerConfig& config, RngStream& stream);

struct Vec3f {
  float x = 0.0f;
  float y = 0.0f;
  float z = 0.0f;
  bool operator==(const Vec3f&) const = default;
};

struct ScanPoint {
  Vec3 position;
  Vec3f normal;
  double true_range = 0.0;
  double noisy_range = 0.0;
  std::uint32_t ring = 0;
  std::uint32_t azimuth = 0;
  std::uint32_t object_id = 0;
  Rgb colour;
  bool has_colour = false;
};

struct PointCloud {
  std::vector<ScanPoint> points;
  Vec3 origin;
  ScannerConfig config;
};

struct ScanOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
  std::uint64_t vector_budget = ScanPattern::kDefaultVectorBudget;
};

// Casts every scan vector of `config` into the scene. Points come out in
// (ring, azimuth) order whatever the thread count.
PointCloud scan(const SceneGeometry& scene, const ScannerConfig& config,
                const ScanOptions& options = {});

}  // namespace vscan
