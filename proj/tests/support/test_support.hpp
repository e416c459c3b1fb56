// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
//
// Reference implementations used as test oracles. Deliberately naive and
// written independently of the library kernels they check.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "vscan/geometry.hpp"
#include "vscan/scene.hpp"

namespace vscan::test {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("vscan_" + tag + "_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Plucker-coordinate ray/triangle test in long double. Returns t of the hit
// in (eps, t_max], or nothing. `margin` receives the smallest normalized side
// value so callers can skip ambiguous near-edge samples.
inline std::optional<double> plucker_hit(const Vec3& o, const Vec3& d, const Vec3& a, const Vec3& b, const Vec3& c,
                                         double t_max, double* margin = nullptr) {
  using LD = long double;
  struct V {
    LD x, y, z;
  };
  auto sub = [](V p, V q) { return V{p.x - q.x, p.y - q.y, p.z - q.z}; };
  auto crs = [](V p, V q) { return V{p.y * q.z - p.z * q.y, p.z * q.x - p.x * q.z, p.x * q.y - p.y * q.x}; };
  auto dt = [](V p, V q) { return p.x * q.x + p.y * q.y + p.z * q.z; };
  auto len = [&](V p) { return std::sqrt(dt(p, p)); };
  const V O{o.x, o.y, o.z}, D{d.x, d.y, d.z};
  const V A{a.x, a.y, a.z}, B{b.x, b.y, b.z}, C{c.x, c.y, c.z};
  // Ray line as Plucker pair (D, O x D); edge p->q as (q - p, p x q).
  const V ray_m = crs(O, D);
  auto side = [&](V p, V q) {
    const V e = sub(q, p);
    const V m = crs(p, q);
    const LD s = dt(D, m) + dt(e, ray_m);
    return s / (len(e) * len(D) * std::max<LD>(1, len(sub(p, O))));
  };
  const LD s0 = side(A, B), s1 = side(B, C), s2 = side(C, A);
  if (margin) *margin = static_cast<double>(std::min({std::fabs(s0), std::fabs(s1), std::fabs(s2)}));
  const bool all_pos = s0 >= 0 && s1 >= 0 && s2 >= 0;
  const bool all_neg = s0 <= 0 && s1 <= 0 && s2 <= 0;
  if (!all_pos && !all_neg) return std::nullopt;
  const V n = crs(sub(B, A), sub(C, A));
  const LD denom = dt(n, D);
  if (denom == 0) return std::nullopt;
  const LD t = dt(n, sub(A, O)) / denom;
  if (!(t > 1e-6L) || t > t_max) return std::nullopt;
  return static_cast<double>(t);
}

// Exact slab test: does the closed segment p->q touch the closed box?
inline bool segment_touches_box(const Vec3& p, const Vec3& q, const Aabb& box) {
  double t0 = 0.0, t1 = 1.0;
  for (int a = 0; a < 3; ++a) {
    const double s = p[a], e = q[a] - p[a];
    if (e == 0.0) {
      if (s < box.min[a] || s > box.max[a]) return false;
      continue;
    }
    double ta = (box.min[a] - s) / e, tb = (box.max[a] - s) / e;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

inline bool point_in_box(const Vec3& p, const Aabb& b) {
  return p.x >= b.min.x && p.x <= b.max.x && p.y >= b.min.y && p.y <= b.max.y && p.z >= b.min.z && p.z <= b.max.z;
}

inline SceneObject make_box_object(std::uint32_t id, const Vec3& lo, const Vec3& hi, bool is_static = true,
                                   std::string category = "wall", Rgb albedo = {200, 200, 200}) {
  SceneObject o;
  o.id = id;
  o.name = category + "_" + std::to_string(id);
  o.category = std::move(category);
  o.is_static = is_static;
  o.albedo = albedo;
  o.mesh = std::make_shared<const TriangleMesh>(make_box_mesh(lo, hi));
  return o;
}

// Closed cube room: six slabs of thickness `t` around [lo, hi].
inline Scene make_box_room(const Vec3& lo, const Vec3& hi, double t = 0.1) {
  Scene s;
  std::uint32_t id = 1;
  s.objects.push_back(make_box_object(id++, {lo.x - t, lo.y - t, lo.z - t}, {hi.x + t, hi.y + t, lo.z}, true, "floor"));
  s.objects.push_back(make_box_object(id++, {lo.x - t, lo.y - t, hi.z}, {hi.x + t, hi.y + t, hi.z + t}, true, "ceiling"));
  s.objects.push_back(make_box_object(id++, {lo.x - t, lo.y - t, lo.z}, {lo.x, hi.y + t, hi.z}, true, "wall", {200, 0, 0}));
  s.objects.push_back(make_box_object(id++, {hi.x, lo.y - t, lo.z}, {hi.x + t, hi.y + t, hi.z}, true, "wall", {0, 200, 0}));
  s.objects.push_back(make_box_object(id++, {lo.x, lo.y - t, lo.z}, {hi.x, lo.y, hi.z}, true, "wall", {0, 0, 200}));
  s.objects.push_back(make_box_object(id++, {lo.x, hi.y, lo.z}, {hi.x, hi.y + t, hi.z}, true, "wall", {200, 200, 0}));
  return s;
}

// Two-triangle quad object.
inline SceneObject make_quad_object(std::uint32_t id, const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  SceneObject o;
  o.id = id;
  o.name = "quad_" + std::to_string(id);
  o.category = "wall";
  o.is_static = true;
  TriangleMesh m;
  m.vertices = {a, b, c, d};
  m.triangles = {{0, 1, 2}, {0, 2, 3}};
  o.mesh = std::make_shared<const TriangleMesh>(std::move(m));
  return o;
}

// Nearest-neighbour distance of every 2-D point, using a uniform hash grid.
inline std::vector<double> nearest_neighbour_distances(const std::vector<std::array<double, 2>>& pts, double cell) {
  std::unordered_map<std::int64_t, std::vector<std::size_t>> grid;
  auto key = [](std::int64_t i, std::int64_t j) { return i * 2654435761LL + j; };
  for (std::size_t n = 0; n < pts.size(); ++n) {
    grid[key(static_cast<std::int64_t>(std::floor(pts[n][0] / cell)), static_cast<std::int64_t>(std::floor(pts[n][1] / cell)))]
        .push_back(n);
  }
  std::vector<double> out(pts.size(), INFINITY);
  for (std::size_t n = 0; n < pts.size(); ++n) {
    const auto ci = static_cast<std::int64_t>(std::floor(pts[n][0] / cell));
    const auto cj = static_cast<std::int64_t>(std::floor(pts[n][1] / cell));
    for (std::int64_t di = -1; di <= 1; ++di) {
      for (std::int64_t dj = -1; dj <= 1; ++dj) {
        auto it = grid.find(key(ci + di, cj + dj));
        if (it == grid.end()) continue;
        for (std::size_t m : it->second) {
          if (m == n) continue;
          out[n] = std::min(out[n], std::hypot(pts[n][0] - pts[m][0], pts[n][1] - pts[m][1]));
        }
      }
    }
  }
  return out;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace vscan::test
