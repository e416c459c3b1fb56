// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include "vscan/panorama.hpp"

#include <algorithm>
#include <cmath>

#include "vscan/error.hpp"
#include "vscan/parallel.hpp"

namespace vscan {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint8_t shade_channel(std::uint8_t albedo, double factor) {
  const double v = std::floor(albedo * factor + 0.5);
  return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
}
}  // namespace

Rgb PanoramaImage::at(int column, int row) const {
  const auto i = (static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(column)) * 3;
  return {pixels[i], pixels[i + 1], pixels[i + 2]};
}

void PanoramaImage::set(int column, int row, Rgb c) {
  const auto i = (static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(column)) * 3;
  pixels[i] = c.r;
  pixels[i + 1] = c.g;
  pixels[i + 2] = c.b;
}

Vec3 ShadingConfig::default_light_direction() {
  const double tilt = 30.0 * std::numbers::pi / 180.0;
  return {std::sin(tilt), 0.0, -std::cos(tilt)};
}

void ShadingConfig::validate() const {
  if (!(ambient >= 0.0 && ambient <= 1.0) || !(light_intensity >= 0.0 && light_intensity <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "shading: ambient and intensity must lie in [0, 1]");
  }
  if (ambient + light_intensity > 1.0 + 1e-12) {
    fail(ErrorCode::InvalidArgument, "shading: ambient + intensity must not exceed 1");
  }
  if (std::abs(norm(light_direction) - 1.0) > 1e-9) {
    fail(ErrorCode::InvalidArgument, "shading: light direction must be unit length");
  }
}

PanoramaImage render_panorama(const SceneGeometry& scene, const Vec3& origin, const ShadingConfig& shading,
                              int width, const RenderOptions& options) {
  shading.validate();
  if (width < 8 || width % 2 != 0) fail(ErrorCode::InvalidArgument, "panorama width must be even and >= 8");
  if (!(options.theta_max > options.theta_min)) fail(ErrorCode::InvalidArgument, "panorama theta range is empty");
  PanoramaImage img;
  img.width = width;
  img.theta_min = options.theta_min;
  img.theta_max = options.theta_max;
  img.height = std::max(
      1, static_cast<int>(std::lround(width / 2.0 * (options.theta_max - options.theta_min) / std::numbers::pi)));
  img.origin = origin;
  img.pixels.resize(static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height) * 3);

  const Vec3 to_light = -shading.light_direction;
  parallel_for(static_cast<std::size_t>(img.height), options.threads, [&](std::size_t row_index) {
    const int row = static_cast<int>(row_index);
    const double v = 1.0 - (row + 0.5) / img.height;
    const double theta = img.theta_min + v * (img.theta_max - img.theta_min);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    for (int col = 0; col < img.width; ++col) {
      const double phi = kTwoPi * (col + 0.5) / img.width;
      const Vec3 dir{ct * std::cos(phi), ct * std::sin(phi), st};
      const auto hit = scene.raycast({origin, dir, 1e30});
      if (!hit) {
        img.set(col, row, options.background);
        continue;
      }
      const double factor = shading.ambient + shading.light_intensity * std::max(0.0, dot(hit->normal, to_light));
      const Rgb a = scene.albedo(hit->object_id);
      img.set(col, row, {shade_channel(a.r, factor), shade_channel(a.g, factor), shade_channel(a.b, factor)});
    }
  });
  return img;
}

std::pair<double, double> direction_to_uv(double phi, double theta, double theta_min, double theta_max) {
  constexpr double kTolerance = 1e-12;
  if (theta < theta_min - kTolerance || theta > theta_max + kTolerance) {
    fail(ErrorCode::OutOfVerticalRange, "elevation outside the panorama's vertical range");
  }
  double u = phi / kTwoPi;
  u -= std::floor(u);
  if (u >= 1.0) u -= 1.0;
  const double v = std::clamp((theta - theta_min) / (theta_max - theta_min), 0.0, 1.0);
  return {u, v};
}

std::pair<int, int> uv_to_pixel(double u, double v, int width, int height) {
  const int col = std::clamp(static_cast<int>(std::floor(u * width)), 0, width - 1);
  const int row = std::clamp(static_cast<int>(std::floor((1.0 - v) * height)), 0, height - 1);
  return {col, row};
}

PointCloud colour_points(const PointCloud& cloud, const PanoramaImage& pano, unsigned threads) {
  PointCloud out = cloud;
  colour_points_in_place(out, pano, threads);
  return out;
}

void colour_points_in_place(PointCloud& out, const PanoramaImage& pano, unsigned threads) {
  if (norm(pano.origin - out.origin) > 1e-9) {
    fail(ErrorCode::MismatchedOrigin, "panorama origin differs from the scan origin");
  }
  if (out.points.empty()) return;
  const ScanPattern pattern(out.config, ~std::uint64_t{0});
  parallel_for(
      out.points.size(), threads,
      [&](std::size_t i) {
        ScanPoint& p = out.points[i];
        const double phi = pattern.azimuth_angle(p.ring, p.azimuth);
        const double theta = pattern.rings()[p.ring].elevation;
        const auto [u, v] = direction_to_uv(phi, theta, pano.theta_min, pano.theta_max);
        const auto [col, row] = uv_to_pixel(u, v, pano.width, pano.height);
        p.colour = pano.at(col, row);
        p.has_colour = true;
      },
      4096);
}

}  // namespace vscan
