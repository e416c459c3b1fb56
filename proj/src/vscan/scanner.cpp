// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include "vscan/scanner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <utility>
#include <numbers>
#include <sstream>

#include "vscan/error.hpp"
#include "vscan/parallel.hpp"

namespace vscan {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegToRad = kPi / 180.0;
// Noisy ranges are clamped to at least this distance.
constexpr double kMinNoisyRange = 1e-6;

ScannerConfig make_config(double range, double fov, double density, double sys_mm, double dist) {
  ScannerConfig c;
  c.max_range_m = range;
  c.vertical_fov_deg = fov;
  c.density_mm_per_10m = density;
  c.system_error_mm = sys_mm;
  c.distance_error_fraction = dist;
  return c;
}

// cos and sin with exact 0 / +-1 at multiples of a quarter turn, so that axis
// aligned scan vectors come out exactly on the axes.
std::pair<double, double> cos_sin(double angle) {
  const double quarters = std::round(angle / (kPi / 2.0));
  if (std::abs(angle - quarters * (kPi / 2.0)) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(angle))) {
    switch (((static_cast<long long>(quarters) % 4) + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

void ScannerConfig::validate() const {
  auto bad = [](const std::string& what) { fail(ErrorCode::InvalidArgument, "scanner config: " + what); };
  if (!(density_mm_per_10m > 0.0) || !std::isfinite(density_mm_per_10m)) bad("density must be > 0");
  if (!(max_range_m > 0.0) || !std::isfinite(max_range_m)) bad("max_range must be > 0");
  if (!(vertical_fov_deg > 0.0 && vertical_fov_deg <= 360.0)) bad("vertical_fov must be in (0, 360]");
  if (!(system_error_mm >= 0.0) || !std::isfinite(system_error_mm)) bad("system_error must be >= 0");
  if (!(distance_error_fraction >= 0.0) || !std::isfinite(distance_error_fraction)) {
    bad("distance_error must be >= 0");
  }
  if (!std::isfinite(origin.x) || !std::isfinite(origin.y) || !std::isfinite(origin.z)) {
    bad("origin must be finite");
  }
}

double ScannerConfig::min_elevation() const { return (90.0 - vertical_fov_deg / 2.0) * kDegToRad; }

double ScannerConfig::angular_step() const { return angular_step_from_density(density_mm_per_10m); }

const std::vector<ScanPreset>& scanner_presets() {
  static const std::vector<ScanPreset> presets = {
      {"leica_p30", "Leica ScanStation P30 (TLS): up to 270 m, 1.2 mm + 10 ppm",
       make_config(270.0, 290.0, 6.0, 1.2, 10e-6)},
      {"navvis_vlx", "NavVis VLX (mobile SLAM LiDAR): up to 50 m, 6 mm",
       make_config(50.0, 360.0, 10.0, 6.0, 0.0)},
      {"blk360", "Leica BLK360 (compact terrestrial): up to 45 m, 4 mm @ 10 m",
       make_config(45.0, 300.0, 6.0, 4.0, 0.0)},
      {"iphone_lidar", "iPhone Pro LiDAR (mobile ToF): ~5 m, ~1-2 cm",
       make_config(5.0, 120.0, 40.0, 15.0, 0.0)},
  };
  return presets;
}

const ScanPreset& find_preset(std::string_view name) {
  for (const auto& p : scanner_presets()) {
    if (p.name == name) return p;
  }
  std::string valid;
  for (const auto& p : scanner_presets()) valid += (valid.empty() ? "" : ", ") + p.name;
  fail(ErrorCode::UnknownPreset, "unknown preset '" + std::string(name) + "' (valid: " + valid + ")");
}

double angular_step_from_density(double density_mm_per_10m) {
  if (!(density_mm_per_10m > 0.0)) fail(ErrorCode::InvalidArgument, "density must be > 0");
  return density_mm_per_10m / 10000.0;
}

double parse_distance_error(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  double scale = 1.0;
  if (s.ends_with("ppm")) {
    scale = 1e-6;
    s = trim(s.substr(0, s.size() - 3));
  } else if (s.ends_with('%')) {
    scale = 1e-2;
    s = trim(s.substr(0, s.size() - 1));
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    fail(ErrorCode::ParseError, "distance error: cannot parse '" + std::string(text) + "'");
  }
  return value * scale;
}

ScanPattern::ScanPattern(const ScannerConfig& config, std::uint64_t budget) {
  config.validate();
  min_elevation_ = config.min_elevation();
  step_ = config.angular_step();
  // Tolerance keeps exact multiples (e.g. pi / (pi/2)) from flooring down.
  const double span = (kPi / 2.0 - min_elevation_) / step_;
  const double ring_limit = std::floor(span + 1e-9);
  if (ring_limit + 1.0 > static_cast<double>(budget)) {
    fail(ErrorCode::VectorBudgetExceeded, "scan pattern exceeds the vector budget");
  }
  const auto ring_count = static_cast<std::uint64_t>(ring_limit) + 1;
  rings_.reserve(ring_count);
  for (std::uint64_t i = 0; i < ring_count; ++i) {
    const double theta = std::min(min_elevation_ + static_cast<double>(i) * step_, kPi / 2.0);
    const auto [c, sn] = cos_sin(theta);
    const double n = std::max(1.0, std::round(2.0 * kPi * c / step_));
    if (static_cast<double>(total_) + n > static_cast<double>(budget)) {
      fail(ErrorCode::VectorBudgetExceeded, "scan pattern exceeds the vector budget");
    }
    rings_.push_back({theta, c, sn, static_cast<std::uint32_t>(n), total_});
    total_ += static_cast<std::uint64_t>(n);
  }
}

double ScanPattern::azimuth_angle(std::uint32_t ring, std::uint32_t azimuth) const {
  return static_cast<double>(azimuth) * (2.0 * kPi / rings_[ring].azimuth_count);
}

ScanVector ScanPattern::vector(std::uint32_t ring, std::uint32_t azimuth) const {
  const Ring& r = rings_[ring];
  const double phi = azimuth_angle(ring, azimuth);
  const auto [cp, sp] = cos_sin(phi);
  return {ring, azimuth, r.elevation, phi, {r.cos_elevation * cp, r.cos_elevation * sp, r.sin_elevation}};
}

std::vector<ScanVector> generate_scan_vectors(const ScannerConfig& config, std::uint64_t budget) {
  const ScanPattern pattern(config, budget);
  std::vector<ScanVector> out;
  out.reserve(pattern.vector_count());
  for (std::uint32_t i = 0; i < pattern.rings().size(); ++i) {
    for (std::uint32_t j = 0; j < pattern.rings()[i].azimuth_count; ++j) out.push_back(pattern.vector(i, j));
  }
  return out;
}

double apply_noise(double range, const ScannerConfig& config, RngStream& stream) {
  double noisy = range;
  if (config.system_error_mm > 0.0) noisy += stream.next_gaussian() * config.system_error_m();
  noisy += range * config.distance_error_fraction;
  return std::max(noisy, kMinNoisyRange);
}

PointCloud scan(const SceneGeometry& scene, const ScannerConfig& config, const ScanOptions& options) {
  const ScanPattern pattern(config, options.vector_budget);
  PointCloud cloud;
  cloud.origin = config.origin;
  cloud.config = config;
  if (scene.empty()) return cloud;

  // Dense presets produce tens of millions of points; reserve once so the
  // final vector is never reallocated while full.
  constexpr std::uint64_t kReserveCap = std::uint64_t{48} << 20;
  cloud.points.reserve(static_cast<std::size_t>(std::min(pattern.vector_count(), kReserveCap)));

  const auto& rings = pattern.rings();
  const unsigned threads = resolve_threads(options.threads);
  constexpr std::uint64_t kBatchRays = std::uint64_t{1} << 20;

  std::size_t ring_begin = 0;
  while (ring_begin < rings.size()) {
    std::size_t ring_end = ring_begin;
    std::uint64_t rays = 0;
    while (ring_end < rings.size() && (rays == 0 || rays < kBatchRays)) rays += rings[ring_end++].azimuth_count;

    std::vector<std::vector<ScanPoint>> per_ring(ring_end - ring_begin);
    parallel_for(per_ring.size(), threads, [&](std::size_t local) {
      const auto ring = static_cast<std::uint32_t>(ring_begin + local);
      const ScanPattern::Ring& r = rings[ring];
      auto& out = per_ring[local];
      for (std::uint32_t j = 0; j < r.azimuth_count; ++j) {
        const Vec3 dir = pattern.vector(ring, j).direction;
        const auto hit = scene.raycast({config.origin, dir, config.max_range_m});
        if (!hit) continue;
        RngStream stream(ray_stream_seed(config.seed, ring, j));
        ScanPoint p;
        p.true_range = hit->t;
        p.noisy_range = apply_noise(hit->t, config, stream);
        p.position = config.origin + dir * p.noisy_range;
        p.normal = {static_cast<float>(hit->normal.x), static_cast<float>(hit->normal.y),
                    static_cast<float>(hit->normal.z)};
        p.ring = ring;
        p.azimuth = j;
        p.object_id = hit->object_id;
        out.push_back(p);
      }
    });
    for (auto& chunk : per_ring) {
      cloud.points.insert(cloud.points.end(), chunk.begin(), chunk.end());
      std::vector<ScanPoint>().swap(chunk);
    }
    ring_begin = ring_end;
  }
  return cloud;
}

}  // namespace vscan
