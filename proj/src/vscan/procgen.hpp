// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vscan/geometry.hpp"
#include "vscan/rng.hpp"
#include "vscan/scene.hpp"

namespace vscan {

enum class MountKind { Wall, Floor };
enum class AssetShape { Box, Table };

struct AssetDef {
  std::string name;
  std::string category;
  Vec3 dimensions;  // width (along the wall), depth, height in metres
  Rgb albedo;
  bool is_static = false;
  MountKind mount = MountKind::Floor;
  AssetShape shape = AssetShape::Box;
};

struct StyleConfig {
  std::string name;
  double tile_size = 1.0;
  double ceiling_height = 2.8;
  std::array<int, 2> room_width_range{4, 8};
  std::array<int, 2> room_length_range{4, 8};
  double p_window = 0.15;
  double p_door = 0.05;
  double p_wall_furniture = 0.3;
  std::array<int, 2> free_furniture_count_range{2, 6};
  std::vector<AssetDef> asset_defs;
  int max_placement_attempts = 50;

  // Structural appearance; optional in style files.
  double wall_thickness = 0.1;
  double slab_thickness = 0.05;
  double door_height = 2.1;
  double window_sill = 0.9;
  double window_head = 2.2;
  Rgb floor_albedo{150, 130, 110};
  Rgb wall_albedo{220, 220, 215};
  Rgb ceiling_albedo{240, 240, 240};
  Rgb door_albedo{120, 80, 50};
  Rgb frame_albedo{90, 90, 90};

  // Throws StyleError.
  void validate() const;
};

StyleConfig parse_style(std::string_view text);
StyleConfig load_style(const std::filesystem::path& path);
std::string serialize_style(const StyleConfig& style);

enum class WallSide { South, East, North, West };  // y = 0, x = W, y = L, x = 0
enum class SegmentKind { Wall, Window, Door };

const char* segment_kind_name(SegmentKind kind);

struct WallSegment {
  WallSide side = WallSide::South;
  int tile = 0;
  SegmentKind kind = SegmentKind::Wall;
  bool operator==(const WallSegment&) const = default;
};

struct Placement {
  std::size_t asset_index = 0;
  Pose pose;
  Aabb box;
  bool wall_mounted = false;
  bool operator==(const Placement&) const = default;
};

struct RoomLayout {
  int width = 0;   // tiles
  int length = 0;  // tiles
  std::vector<WallSegment> wall_segments;
  std::vector<Placement> placements;
  std::vector<std::string> skipped;  // generation report
};

std::array<int, 2> sample_dimensions(const StyleConfig& style, RngStream& rng);

// One segment per perimeter tile edge, in south, east, north, west order.
std::vector<WallSegment> place_boundary(int width, int length, const StyleConfig& style, RngStream& rng);

// Wall-mounted pass draws from `wall_rng`, free-standing pass from `free_rng`.
void place_furniture(RoomLayout& layout, const StyleConfig& style, RngStream& wall_rng, RngStream& free_rng);

RoomLayout generate_layout(const StyleConfig& style, std::uint64_t master_seed);

// Scene objects: floor tiles, boundary segments, ceiling tiles, furniture.
Scene build_room_scene(const RoomLayout& layout, const StyleConfig& style, std::uint64_t master_seed);

Scene generate_room(const StyleConfig& style, std::uint64_t master_seed);

// Centre of the scene bounds, lifted above any non-static object containing
// it. Throws NoFreePosition when no height below the ceiling is free.
Vec3 auto_scan_setup(const Scene& scene);

// Local-space mesh of an asset; footprint centred on the origin, base at z=0,
// front facing +y.
TriangleMesh asset_mesh(const AssetDef& asset);

}  // namespace vscan
