// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include "vscan/geometry.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "vscan/error.hpp"

namespace vscan {

Mat3 Mat3::rotation_z(double radians) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  Mat3 r;
  r.m = {c, -s, 0, s, c, 0, 0, 0, 1};
  return r;
}

Mat3 Mat3::rotation_z_quarter(int quarter_turns) {
  static constexpr int kCos[4] = {1, 0, -1, 0};
  static constexpr int kSin[4] = {0, 1, 0, -1};
  const int q = ((quarter_turns % 4) + 4) % 4;
  const double c = kCos[q];
  const double s = kSin[q];
  Mat3 r;
  r.m = {c, -s, 0, s, c, 0, 0, 0, 1};
  return r;
}

Vec3 Mat3::operator*(const Vec3& v) const {
  return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
          m[6] * v.x + m[7] * v.y + m[8] * v.z};
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j) + (*this)(i, 2) * o(2, j);
    }
  }
  return r;
}

Mat3 Mat3::transposed() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
  }
  return r;
}

bool is_orthonormal(const Mat3& r, double tolerance) {
  const Mat3 g = r.transposed() * r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (std::abs(g(i, j) - (i == j ? 1.0 : 0.0)) > tolerance) return false;
    }
  }
  return true;
}

Pose Pose::compose(const Pose& inner) const {
  return {rotation * inner.rotation, rotation * inner.translation + translation};
}

Aabb Aabb::empty() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {{inf, inf, inf}, {-inf, -inf, -inf}};
}

void Aabb::expand(const Vec3& p) {
  min = cwise_min(min, p);
  max = cwise_max(max, p);
}

void Aabb::expand(const Aabb& b) {
  min = cwise_min(min, b.min);
  max = cwise_max(max, b.max);
}

bool Aabb::contains(const Vec3& p) const {
  return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y && p.z >= min.z &&
         p.z <= max.z;
}

std::array<Vec3, 8> Obb::corners() const {
  std::array<Vec3, 8> out;
  for (int k = 0; k < 8; ++k) {
    Vec3 p = center;
    for (int a = 0; a < 3; ++a) {
      const double s = (k >> a) & 1 ? 1.0 : -1.0;
      p += axes[static_cast<std::size_t>(a)] * (s * half_extents[a]);
    }
    out[static_cast<std::size_t>(k)] = p;
  }
  return out;
}

TriangleMesh make_box_mesh(const Vec3& lo, const Vec3& hi) {
  TriangleMesh mesh;
  for (int k = 0; k < 8; ++k) {
    mesh.vertices.push_back({k & 1 ? hi.x : lo.x, k & 2 ? hi.y : lo.y, k & 4 ? hi.z : lo.z});
  }
  // Counter-clockwise seen from outside.
  mesh.triangles = {{0, 2, 1}, {1, 2, 3},   // -z
                    {4, 5, 6}, {5, 7, 6},   // +z
                    {0, 1, 4}, {1, 5, 4},   // -y
                    {2, 6, 3}, {3, 6, 7},   // +y
                    {0, 4, 2}, {2, 4, 6},   // -x
                    {1, 3, 5}, {3, 7, 5}};  // +x
  return mesh;
}

void append_mesh(TriangleMesh& mesh, const TriangleMesh& other) {
  const auto base = static_cast<std::uint32_t>(mesh.vertices.size());
  mesh.vertices.insert(mesh.vertices.end(), other.vertices.begin(), other.vertices.end());
  for (const auto& t : other.triangles) mesh.triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
  if (mesh.normals && other.normals) {
    mesh.normals->insert(mesh.normals->end(), other.normals->begin(), other.normals->end());
  } else {
    mesh.normals.reset();
  }
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * norm(cross(b - a, c - a));
}

std::size_t drop_degenerate_triangles(TriangleMesh& mesh, double min_area) {
  const auto n = mesh.vertices.size();
  const auto before = mesh.triangles.size();
  std::erase_if(mesh.triangles, [&](const std::array<std::uint32_t, 3>& t) {
    if (t[0] >= n || t[1] >= n || t[2] >= n) return true;
    return triangle_area(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]) < min_area;
  });
  return before - mesh.triangles.size();
}

namespace {

struct P2 {
  double x;
  double y;
};

// Edge (p, q) with opposite vertex r belongs to this triangle when r lies left
// of the lexicographically ordered edge. Neighbours across the edge see r on
// opposite sides, so exactly one of them owns it.
bool owns_edge(P2 p, P2 q, P2 r) {
  if (q.x < p.x || (q.x == p.x && q.y < p.y)) std::swap(p, q);
  const double side = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  return side > 0.0;
}

}  // namespace

PreparedRay::PreparedRay(const Ray& ray) : origin(ray.origin), t_max(ray.t_max) {
  const Vec3& d = ray.direction;
  kz = 0;
  if (std::abs(d.y) > std::abs(d.x)) kz = 1;
  if (std::abs(d.z) > std::abs(d[kz])) kz = 2;
  kx = (kz + 1) % 3;
  ky = (kx + 1) % 3;
  if (d[kz] < 0.0) std::swap(kx, ky);
  sx = d[kx] / d[kz];
  sy = d[ky] / d[kz];
  sz = 1.0 / d[kz];
}

std::optional<TriangleHit> ray_triangle_intersect(const Ray& ray, const Vec3& v0, const Vec3& v1,
                                                  const Vec3& v2) {
  return intersect_triangle(PreparedRay(ray), v0, v1, v2);
}

std::optional<TriangleHit> intersect_triangle(const PreparedRay& ray, const Vec3& v0,
                                              const Vec3& v1, const Vec3& v2) {
  const int kx = ray.kx;
  const int ky = ray.ky;
  const int kz = ray.kz;
  const double sx = ray.sx;
  const double sy = ray.sy;
  const double sz = ray.sz;

  const Vec3 a = v0 - ray.origin;
  const Vec3 b = v1 - ray.origin;
  const Vec3 c = v2 - ray.origin;

  const P2 pa{a[kx] - sx * a[kz], a[ky] - sy * a[kz]};
  const P2 pb{b[kx] - sx * b[kz], b[ky] - sy * b[kz]};
  const P2 pc{c[kx] - sx * c[kz], c[ky] - sy * c[kz]};

  const double u = pc.x * pb.y - pc.y * pb.x;
  const double v = pa.x * pc.y - pa.y * pc.x;
  const double w = pb.x * pa.y - pb.y * pa.x;

  if ((u < 0.0 || v < 0.0 || w < 0.0) && (u > 0.0 || v > 0.0 || w > 0.0)) return std::nullopt;
  const double det = u + v + w;
  if (det == 0.0) return std::nullopt;

  if (u == 0.0 && !owns_edge(pb, pc, pa)) return std::nullopt;
  if (v == 0.0 && !owns_edge(pc, pa, pb)) return std::nullopt;
  if (w == 0.0 && !owns_edge(pa, pb, pc)) return std::nullopt;

  const double az = sz * a[kz];
  const double bz = sz * b[kz];
  const double cz = sz * c[kz];
  const double t = (u * az + v * bz + w * cz) / det;
  if (!(t > kRayEpsilon && t <= ray.t_max)) return std::nullopt;

  TriangleHit hit;
  hit.t = t;
  hit.b1 = v / det;
  hit.b2 = w / det;
  hit.geometric_normal = cross(v1 - v0, v2 - v0);
  return hit;
}

Aabb compute_aabb(std::span<const Vec3> points, const Pose& pose) {
  if (points.empty()) fail(ErrorCode::EmptyInput, "compute_aabb: no points");
  Aabb box = Aabb::empty();
  for (const auto& p : points) box.expand(pose.apply(p));
  return box;
}

Aabb compute_aabb(const TriangleMesh& mesh, const Pose& pose) {
  return compute_aabb(std::span<const Vec3>(mesh.vertices), pose);
}

Obb compute_obb(const TriangleMesh& mesh, const Pose& pose) {
  if (mesh.vertices.empty()) fail(ErrorCode::EmptyInput, "compute_obb: object has no geometry");
  const Aabb local = compute_aabb(std::span<const Vec3>(mesh.vertices));
  Obb obb;
  obb.center = pose.apply(local.center());
  for (int k = 0; k < 3; ++k) obb.axes[static_cast<std::size_t>(k)] = pose.rotation.column(k);
  obb.half_extents = local.extent() * 0.5;
  return obb;
}

bool obb_contains(const Obb& obb, const Vec3& p, double offset) {
  const Vec3 rel = p - obb.center;
  for (int k = 0; k < 3; ++k) {
    if (std::abs(dot(rel, obb.axes[static_cast<std::size_t>(k)])) > obb.half_extents[k] + offset) {
      return false;
    }
  }
  return true;
}

bool aabb_intersects(const Aabb& a, const Aabb& b) {
  return a.min.x <= b.max.x && b.min.x <= a.max.x && a.min.y <= b.max.y && b.min.y <= a.max.y &&
         a.min.z <= b.max.z && b.min.z <= a.max.z;
}

Aabb obb_bounds(const Obb& obb, double offset) {
  Vec3 r;
  for (int k = 0; k < 3; ++k) {
    const Vec3& axis = obb.axes[static_cast<std::size_t>(k)];
    const double h = std::max(0.0, obb.half_extents[k] + offset);
    r.x += std::abs(axis.x) * h;
    r.y += std::abs(axis.y) * h;
    r.z += std::abs(axis.z) * h;
  }
  return {obb.center - r, obb.center + r};
}

}  // namespace vscan
