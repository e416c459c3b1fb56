// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "vscan/bvh.hpp"

namespace vscan {

struct Rgb {
  std::uint8_t r = 255;
  std::uint8_t g = 255;
  std::uint8_t b = 255;
  bool operator==(const Rgb&) const = default;
};

// Ray-query view of a scene: the acceleration structure plus per-object
// albedo. A default-constructed instance is the empty scene, which every
// query misses.
class SceneGeometry {
 public:
  SceneGeometry() = default;
  SceneGeometry(Bvh bvh, std::unordered_map<std::uint32_t, Rgb> albedo)
      : bvh_(std::move(bvh)), albedo_(std::move(albedo)) {}

  bool empty() const { return !bvh_.has_value(); }
  const Bvh* bvh() const { return bvh_ ? &*bvh_ : nullptr; }

  std::optional<RayHit> raycast(const Ray& ray) const {
    return bvh_ ? bvh_->raycast(ray) : std::nullopt;
  }
  bool any_hit(const Ray& ray) const { return bvh_ && bvh_->any_hit(ray); }

  Rgb albedo(std::uint32_t object_id) const {
    auto it = albedo_.find(object_id);
    return it == albedo_.end() ? Rgb{} : it->second;
  }

 private:
  std::optional<Bvh> bvh_;
  std::unordered_map<std::uint32_t, Rgb> albedo_;
};

}  // namespace vscan
