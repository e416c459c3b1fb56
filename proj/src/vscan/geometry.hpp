// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace vscan {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(const Vec3& v) { return v / norm(v); }
constexpr Vec3 cwise_min(const Vec3& a, const Vec3& b) {
  return {a.x < b.x ? a.x : b.x, a.y < b.y ? a.y : b.y, a.z < b.z ? a.z : b.z};
}
constexpr Vec3 cwise_max(const Vec3& a, const Vec3& b) {
  return {a.x > b.x ? a.x : b.x, a.y > b.y ? a.y : b.y, a.z > b.z ? a.z : b.z};
}

// Row-major 3x3 matrix.
struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  static constexpr Mat3 identity() { return Mat3{}; }
  static Mat3 rotation_z(double radians);
  // Exact rotation about z by quarter_turns * 90 degrees (entries in {-1,0,1}).
  static Mat3 rotation_z_quarter(int quarter_turns);

  constexpr double operator()(int r, int c) const { return m[static_cast<std::size_t>(r * 3 + c)]; }
  constexpr double& operator()(int r, int c) { return m[static_cast<std::size_t>(r * 3 + c)]; }
  constexpr Vec3 column(int c) const { return {(*this)(0, c), (*this)(1, c), (*this)(2, c)}; }

  Vec3 operator*(const Vec3& v) const;
  Mat3 operator*(const Mat3& o) const;
  Mat3 transposed() const;
  bool operator==(const Mat3&) const = default;
};

bool is_orthonormal(const Mat3& r, double tolerance = 1e-9);

// Rigid transform: world = rotation * local + translation.
struct Pose {
  Mat3 rotation;
  Vec3 translation;

  Vec3 apply(const Vec3& local) const { return rotation * local + translation; }
  Vec3 apply_direction(const Vec3& local) const { return rotation * local; }
  Pose compose(const Pose& inner) const;  // this ∘ inner
  bool operator==(const Pose&) const = default;
};

struct Ray {
  Vec3 origin;
  Vec3 direction;  // unit length
  double t_max = 1e30;
};

// Hits closer than this are rejected to avoid self-intersection.
inline constexpr double kRayEpsilon = 1e-6;

struct Aabb {
  Vec3 min;
  Vec3 max;

  static Aabb empty();
  bool is_empty() const { return min.x > max.x || min.y > max.y || min.z > max.z; }
  void expand(const Vec3& p);
  void expand(const Aabb& b);
  Vec3 center() const { return (min + max) * 0.5; }
  Vec3 extent() const { return max - min; }
  bool contains(const Vec3& p) const;
  bool operator==(const Aabb&) const = default;
};

struct Obb {
  Vec3 center;
  std::array<Vec3, 3> axes{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
  Vec3 half_extents;

  // Corner k has sign (+/-) on axis a from bit a of k.
  std::array<Vec3, 8> corners() const;
};

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
  std::optional<std::vector<Vec3>> normals;  // per-vertex

  bool empty() const { return triangles.empty(); }
};

// Builds an axis-aligned box spanning [min, max] as 8 vertices / 12 outward
// wound triangles.
TriangleMesh make_box_mesh(const Vec3& min, const Vec3& max);

// Appends `other` to `mesh` with indices rebased.
void append_mesh(TriangleMesh& mesh, const TriangleMesh& other);

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

// Removes triangles with area below `min_area` (and any with out-of-range
// indices). Returns the number removed.
std::size_t drop_degenerate_triangles(TriangleMesh& mesh, double min_area = 1e-12);

struct TriangleHit {
  double t = 0.0;
  double b1 = 0.0;  // barycentric weight of v1
  double b2 = 0.0;  // barycentric weight of v2
  Vec3 geometric_normal;  // unnormalized (v1-v0)x(v2-v0)
};

// Watertight ray/triangle test. Returns the hit when t lies in
// (kRayEpsilon, ray.t_max]. Both faces are hit. A ray passing exactly through
// a shared edge is attributed to the single triangle whose opposite vertex lies
// on the left of the edge after ordering the edge endpoints lexicographically
// in the ray's projected frame.
std::optional<TriangleHit> ray_triangle_intersect(const Ray& ray, const Vec3& v0, const Vec3& v1,
                                                  const Vec3& v2);

// Per-ray shear/permutation state for the watertight test, computed once and
// reused against many triangles.
struct PreparedRay {
  explicit PreparedRay(const Ray& ray);

  Vec3 origin;
  double t_max;
  int kx;
  int ky;
  int kz;
  double sx;
  double sy;
  double sz;
};

std::optional<TriangleHit> intersect_triangle(const PreparedRay& ray, const Vec3& v0,
                                              const Vec3& v1, const Vec3& v2);

struct RayHit {
  double t = 0.0;
  Vec3 point;
  Vec3 normal;  // unit, normal . direction <= 0
  std::uint32_t object_id = 0;
  std::uint32_t triangle_id = 0;
};

Aabb compute_aabb(std::span<const Vec3> points, const Pose& pose = {});
Aabb compute_aabb(const TriangleMesh& mesh, const Pose& pose = {});

// Local-frame AABB carried through the pose.
Obb compute_obb(const TriangleMesh& mesh, const Pose& pose);

bool obb_contains(const Obb& obb, const Vec3& p, double offset = 0.0);

// Closed-interval overlap; touching boxes intersect.
bool aabb_intersects(const Aabb& a, const Aabb& b);

// World-space AABB of an OBB grown by `offset` on every face.
Aabb obb_bounds(const Obb& obb, double offset = 0.0);

}  // namespace vscan
