// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include "vscan/procgen.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vscan/error.hpp"

namespace vscan {

using nlohmann::json;

namespace {

// Clearance above a furniture top when the scanner has to be lifted.
constexpr double kLiftClearance = 1e-3;
// Width of the jambs framing door and window openings.
constexpr double kJambWidth = 0.1;

[[noreturn]] void style_error(const std::string& what) { fail(ErrorCode::StyleError, "style: " + what); }

bool in_unit(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void StyleConfig::validate() const {
  if (name.empty()) style_error("name must not be empty");
  if (!(tile_size > 2.0 * kJambWidth)) style_error("tile_size must exceed 0.2 m");
  if (!(ceiling_height > 0.0)) style_error("ceiling_height must be > 0");
  if (!in_unit(p_window) || !in_unit(p_door) || !in_unit(p_wall_furniture)) {
    style_error("probabilities must lie in [0, 1]");
  }
  if (p_window + p_door > 1.0) style_error("p_window + p_door must not exceed 1");
  auto check_range = [](const std::array<int, 2>& r, int lowest, const char* what) {
    if (r[0] < lowest || r[1] < r[0]) style_error(std::string(what) + " must be a non-empty range >= " + std::to_string(lowest));
  };
  check_range(room_width_range, 1, "room_width_range");
  check_range(room_length_range, 1, "room_length_range");
  check_range(free_furniture_count_range, 0, "free_furniture_count_range");
  if (max_placement_attempts < 1) style_error("max_placement_attempts must be >= 1");
  if (!(wall_thickness > 0.0) || !(slab_thickness > 0.0)) style_error("wall and slab thickness must be > 0");
  if (!(door_height > 0.0 && door_height < ceiling_height)) style_error("door_height must lie below the ceiling");
  if (!(window_sill > 0.0 && window_sill < window_head && window_head < ceiling_height)) {
    style_error("window must satisfy 0 < sill < head < ceiling_height");
  }
  for (const auto& a : asset_defs) {
    if (a.category.empty()) style_error("asset category must not be empty");
    if (is_structural_category(a.category)) style_error("asset category '" + a.category + "' is structural");
    if (!(a.dimensions.x > 0.0 && a.dimensions.y > 0.0 && a.dimensions.z > 0.0)) {
      style_error("asset '" + a.name + "' dimensions must be > 0");
    }
  }
}

namespace {

Rgb rgb_from(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 3) style_error(field + " must be [r, g, b]");
  Rgb c;
  std::uint8_t* out[3] = {&c.r, &c.g, &c.b};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!v[i].is_number_integer() || v[i].get<int>() < 0 || v[i].get<int>() > 255) {
      style_error(field + " channels must be integers in [0, 255]");
    }
    *out[i] = static_cast<std::uint8_t>(v[i].get<int>());
  }
  return c;
}

std::array<int, 2> range_from(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
    style_error(field + " must be [min, max] integers");
  }
  return {v[0].get<int>(), v[1].get<int>()};
}

double number_from(const json& doc, const char* key, double fallback, bool required) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    if (required) style_error(std::string("missing field '") + key + "'");
    return fallback;
  }
  if (!it->is_number()) style_error(std::string("field '") + key + "' must be a number");
  return it->get<double>();
}

json rgb_json(Rgb c) { return json::array({c.r, c.g, c.b}); }

}  // namespace

StyleConfig parse_style(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    style_error(std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) style_error("expected an object");
  StyleConfig s;
  auto name = doc.find("name");
  if (name == doc.end() || !name->is_string()) style_error("missing string field 'name'");
  s.name = name->get<std::string>();
  s.tile_size = number_from(doc, "tile_size", 0, true);
  s.ceiling_height = number_from(doc, "ceiling_height", 0, true);
  for (const char* key : {"room_width_range", "room_length_range", "free_furniture_count_range", "asset_defs",
                          "p_window", "p_door", "p_wall_furniture", "max_placement_attempts"}) {
    if (!doc.contains(key)) style_error(std::string("missing field '") + key + "'");
  }
  s.room_width_range = range_from(doc["room_width_range"], "room_width_range");
  s.room_length_range = range_from(doc["room_length_range"], "room_length_range");
  s.free_furniture_count_range = range_from(doc["free_furniture_count_range"], "free_furniture_count_range");
  s.p_window = number_from(doc, "p_window", 0, true);
  s.p_door = number_from(doc, "p_door", 0, true);
  s.p_wall_furniture = number_from(doc, "p_wall_furniture", 0, true);
  if (!doc["max_placement_attempts"].is_number_integer()) style_error("max_placement_attempts must be an integer");
  s.max_placement_attempts = doc["max_placement_attempts"].get<int>();
  s.wall_thickness = number_from(doc, "wall_thickness", s.wall_thickness, false);
  s.slab_thickness = number_from(doc, "slab_thickness", s.slab_thickness, false);
  s.door_height = number_from(doc, "door_height", s.door_height, false);
  s.window_sill = number_from(doc, "window_sill", s.window_sill, false);
  s.window_head = number_from(doc, "window_head", s.window_head, false);
  const std::pair<const char*, Rgb*> colours[] = {{"floor_albedo", &s.floor_albedo},
                                                  {"wall_albedo", &s.wall_albedo},
                                                  {"ceiling_albedo", &s.ceiling_albedo},
                                                  {"door_albedo", &s.door_albedo},
                                                  {"frame_albedo", &s.frame_albedo}};
  for (const auto& [key, dst] : colours) {
    if (doc.contains(key)) *dst = rgb_from(doc[key], key);
  }

  const json& assets = doc["asset_defs"];
  if (!assets.is_array()) style_error("asset_defs must be an array");
  for (std::size_t i = 0; i < assets.size(); ++i) {
    const json& a = assets[i];
    const std::string at = "asset_defs[" + std::to_string(i) + "]";
    if (!a.is_object()) style_error(at + " must be an object");
    AssetDef def;
    def.category = a.value("category", "");
    def.name = a.value("name", def.category);
    if (!a.contains("dimensions") || !a["dimensions"].is_array() || a["dimensions"].size() != 3) {
      style_error(at + ".dimensions must be [w, d, h]");
    }
    for (int k = 0; k < 3; ++k) {
      const json& d = a["dimensions"][static_cast<std::size_t>(k)];
      if (!d.is_number()) style_error(at + ".dimensions must be numbers");
      def.dimensions[k] = d.get<double>();
    }
    if (!a.contains("albedo")) style_error(at + ".albedo missing");
    def.albedo = rgb_from(a["albedo"], at + ".albedo");
    if (!a.contains("is_static") || !a["is_static"].is_boolean()) style_error(at + ".is_static must be a boolean");
    def.is_static = a["is_static"].get<bool>();
    const std::string mount = a.value("mount", "");
    if (mount == "wall") {
      def.mount = MountKind::Wall;
    } else if (mount == "floor") {
      def.mount = MountKind::Floor;
    } else {
      style_error(at + ".mount must be 'wall' or 'floor'");
    }
    const std::string shape = a.value("shape", "box");
    if (shape == "box") {
      def.shape = AssetShape::Box;
    } else if (shape == "table") {
      def.shape = AssetShape::Table;
    } else {
      style_error(at + ".shape must be 'box' or 'table'");
    }
    s.asset_defs.push_back(std::move(def));
  }
  s.validate();
  return s;
}

StyleConfig load_style(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open style file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_style(buffer.str());
}

std::string serialize_style(const StyleConfig& s) {
  json doc;
  doc["name"] = s.name;
  doc["tile_size"] = s.tile_size;
  doc["ceiling_height"] = s.ceiling_height;
  doc["room_width_range"] = s.room_width_range;
  doc["room_length_range"] = s.room_length_range;
  doc["p_window"] = s.p_window;
  doc["p_door"] = s.p_door;
  doc["p_wall_furniture"] = s.p_wall_furniture;
  doc["free_furniture_count_range"] = s.free_furniture_count_range;
  doc["max_placement_attempts"] = s.max_placement_attempts;
  doc["wall_thickness"] = s.wall_thickness;
  doc["slab_thickness"] = s.slab_thickness;
  doc["door_height"] = s.door_height;
  doc["window_sill"] = s.window_sill;
  doc["window_head"] = s.window_head;
  doc["floor_albedo"] = rgb_json(s.floor_albedo);
  doc["wall_albedo"] = rgb_json(s.wall_albedo);
  doc["ceiling_albedo"] = rgb_json(s.ceiling_albedo);
  doc["door_albedo"] = rgb_json(s.door_albedo);
  doc["frame_albedo"] = rgb_json(s.frame_albedo);
  json assets = json::array();
  for (const auto& a : s.asset_defs) {
    assets.push_back({{"name", a.name},
                      {"category", a.category},
                      {"dimensions", json::array({a.dimensions.x, a.dimensions.y, a.dimensions.z})},
                      {"albedo", rgb_json(a.albedo)},
                      {"is_static", a.is_static},
                      {"mount", a.mount == MountKind::Wall ? "wall" : "floor"},
                      {"shape", a.shape == AssetShape::Table ? "table" : "box"}});
  }
  doc["asset_defs"] = std::move(assets);
  return doc.dump(2) + "\n";
}

const char* segment_kind_name(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::Wall: return "wall";
    case SegmentKind::Window: return "window";
    case SegmentKind::Door: return "door";
  }
  return "wall";
}

std::array<int, 2> sample_dimensions(const StyleConfig& style, RngStream& rng) {
  const auto w = rng.uniform_int(style.room_width_range[0], style.room_width_range[1]);
  const auto l = rng.uniform_int(style.room_length_range[0], style.room_length_range[1]);
  return {static_cast<int>(w), static_cast<int>(l)};
}

std::vector<WallSegment> place_boundary(int width, int length, const StyleConfig& style, RngStream& rng) {
  if (width < 1 || length < 1) fail(ErrorCode::InvalidArgument, "room must be at least 1x1 tiles");
  std::vector<WallSegment> segments;
  const std::pair<WallSide, int> sides[] = {
      {WallSide::South, width}, {WallSide::East, length}, {WallSide::North, width}, {WallSide::West, length}};
  bool has_door = false;
  for (const auto& [side, count] : sides) {
    for (int t = 0; t < count; ++t) {
      const double u = rng.next_double();
      SegmentKind kind = SegmentKind::Wall;
      if (u < style.p_door) {
        kind = SegmentKind::Door;
        has_door = true;
      } else if (u < style.p_door + style.p_window) {
        kind = SegmentKind::Window;
      }
      segments.push_back({side, t, kind});
    }
  }
  if (!has_door) {
    const auto forced = rng.uniform_int(0, static_cast<std::int64_t>(segments.size()) - 1);
    segments[static_cast<std::size_t>(forced)].kind = SegmentKind::Door;
  }
  return segments;
}

TriangleMesh asset_mesh(const AssetDef& asset) {
  const double w = asset.dimensions.x / 2.0;
  const double d = asset.dimensions.y / 2.0;
  const double h = asset.dimensions.z;
  if (asset.shape == AssetShape::Box) return make_box_mesh({-w, -d, 0.0}, {w, d, h});
  // Table: top slab on four square legs.
  const double top = std::min(0.05, h / 4.0);
  const double leg = std::min({0.06, w / 3.0, d / 3.0});
  TriangleMesh mesh = make_box_mesh({-w, -d, h - top}, {w, d, h});
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      const double x0 = sx < 0 ? -w : w - leg;
      const double y0 = sy < 0 ? -d : d - leg;
      append_mesh(mesh, make_box_mesh({x0, y0, 0.0}, {x0 + leg, y0 + leg, h - top}));
    }
  }
  return mesh;
}

namespace {

int side_quarter_turns(WallSide side) {
  switch (side) {
    case WallSide::South: return 0;
    case WallSide::East: return 1;
    case WallSide::North: return 2;
    case WallSide::West: return 3;
  }
  return 0;
}

// Point on the inner wall face at the middle of the segment, plus `inset`
// metres toward the room.
Vec3 segment_anchor(const WallSegment& seg, int width, int length, double tile, double inset) {
  const double along = (seg.tile + 0.5) * tile;
  switch (seg.side) {
    case WallSide::South: return {along, inset, 0.0};
    case WallSide::East: return {width * tile - inset, along, 0.0};
    case WallSide::North: return {along, length * tile - inset, 0.0};
    case WallSide::West: return {inset, along, 0.0};
  }
  return {};
}

Aabb room_interior(const RoomLayout& layout, const StyleConfig& style) {
  return {{0.0, 0.0, 0.0}, {layout.width * style.tile_size, layout.length * style.tile_size, style.ceiling_height}};
}

bool inside(const Aabb& inner, const Aabb& outer) {
  return inner.min.x >= outer.min.x && inner.min.y >= outer.min.y && inner.min.z >= outer.min.z &&
         inner.max.x <= outer.max.x && inner.max.y <= outer.max.y && inner.max.z <= outer.max.z;
}

bool collides(const Aabb& box, const std::vector<Placement>& placed) {
  return std::any_of(placed.begin(), placed.end(), [&](const Placement& p) { return aabb_intersects(box, p.box); });
}

std::vector<std::size_t> assets_with_mount(const StyleConfig& style, MountKind mount) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < style.asset_defs.size(); ++i) {
    if (style.asset_defs[i].mount == mount) out.push_back(i);
  }
  return out;
}

}  // namespace

void place_furniture(RoomLayout& layout, const StyleConfig& style, RngStream& wall_rng, RngStream& free_rng) {
  const Aabb room = room_interior(layout, style);

  const auto wall_assets = assets_with_mount(style, MountKind::Wall);
  for (const auto& seg : layout.wall_segments) {
    if (seg.kind != SegmentKind::Wall) continue;
    if (!wall_rng.bernoulli(style.p_wall_furniture)) continue;
    if (wall_assets.empty()) {
      layout.skipped.push_back("wall furniture skipped: style has no wall-mounted assets");
      continue;
    }
    const std::size_t asset_index =
        wall_assets[static_cast<std::size_t>(wall_rng.uniform_int(0, static_cast<std::int64_t>(wall_assets.size()) - 1))];
    const AssetDef& asset = style.asset_defs[asset_index];
    Placement p;
    p.asset_index = asset_index;
    p.wall_mounted = true;
    p.pose.rotation = Mat3::rotation_z_quarter(side_quarter_turns(seg.side));
    p.pose.translation = segment_anchor(seg, layout.width, layout.length, style.tile_size, asset.dimensions.y / 2.0);
    p.box = compute_aabb(asset_mesh(asset), p.pose);
    if (!inside(p.box, room) || collides(p.box, layout.placements)) {
      layout.skipped.push_back("wall furniture '" + asset.name + "' at " + segment_kind_name(seg.kind) + " tile " +
                               std::to_string(seg.tile) + " does not fit");
      continue;
    }
    layout.placements.push_back(p);
  }

  const auto floor_assets = assets_with_mount(style, MountKind::Floor);
  const auto count = free_rng.uniform_int(style.free_furniture_count_range[0], style.free_furniture_count_range[1]);
  for (std::int64_t item = 0; item < count; ++item) {
    if (floor_assets.empty()) {
      layout.skipped.push_back("free furniture skipped: style has no floor assets");
      continue;
    }
    const std::size_t asset_index =
        floor_assets[static_cast<std::size_t>(free_rng.uniform_int(0, static_cast<std::int64_t>(floor_assets.size()) - 1))];
    const AssetDef& asset = style.asset_defs[asset_index];
    const TriangleMesh mesh = asset_mesh(asset);
    bool placed = false;
    for (int attempt = 0; attempt < style.max_placement_attempts && !placed; ++attempt) {
      Placement p;
      p.asset_index = asset_index;
      p.pose.rotation = Mat3::rotation_z_quarter(static_cast<int>(free_rng.uniform_int(0, 3)));
      const double x = free_rng.next_double() * room.max.x;
      const double y = free_rng.next_double() * room.max.y;
      p.pose.translation = {x, y, 0.0};
      p.box = compute_aabb(mesh, p.pose);
      if (inside(p.box, room) && !collides(p.box, layout.placements)) {
        layout.placements.push_back(p);
        placed = true;
      }
    }
    if (!placed) {
      layout.skipped.push_back("free furniture '" + asset.name + "' (item " + std::to_string(item) + ") found no free spot after " +
                               std::to_string(style.max_placement_attempts) + " attempts");
    }
  }
}

RoomLayout generate_layout(const StyleConfig& style, std::uint64_t master_seed) {
  style.validate();
  RoomLayout layout;
  RngStream dims_rng = derive_stream(master_seed, "dimensions", 0);
  const auto [w, l] = sample_dimensions(style, dims_rng);
  layout.width = w;
  layout.length = l;
  RngStream boundary_rng = derive_stream(master_seed, "boundary", 0);
  layout.wall_segments = place_boundary(w, l, style, boundary_rng);
  RngStream wall_rng = derive_stream(master_seed, "wall_furniture", 0);
  RngStream free_rng = derive_stream(master_seed, "free_furniture", 0);
  place_furniture(layout, style, wall_rng, free_rng);
  return layout;
}

namespace {

const char* side_name(WallSide side) {
  switch (side) {
    case WallSide::South: return "south";
    case WallSide::East: return "east";
    case WallSide::North: return "north";
    case WallSide::West: return "west";
  }
  return "south";
}

// Segment mesh in its local frame: x along the wall centred on the tile,
// y in [-thickness, 0] (outside the room), z up from the floor.
TriangleMesh segment_mesh(SegmentKind kind, const StyleConfig& s) {
  const double hw = s.tile_size / 2.0;
  const double t = s.wall_thickness;
  const double h = s.ceiling_height;
  if (kind == SegmentKind::Wall) return make_box_mesh({-hw, -t, 0.0}, {hw, 0.0, h});
  const double bottom = kind == SegmentKind::Window ? s.window_sill : 0.0;
  const double top = kind == SegmentKind::Window ? s.window_head : s.door_height;
  TriangleMesh mesh = make_box_mesh({-hw, -t, top}, {hw, 0.0, h});  // lintel
  append_mesh(mesh, make_box_mesh({-hw, -t, bottom}, {-hw + kJambWidth, 0.0, top}));
  append_mesh(mesh, make_box_mesh({hw - kJambWidth, -t, bottom}, {hw, 0.0, top}));
  if (kind == SegmentKind::Window) {
    append_mesh(mesh, make_box_mesh({-hw, -t, 0.0}, {hw, 0.0, bottom}));  // sill wall
  } else {
    // Closed door leaf centred in the wall thickness.
    append_mesh(mesh, make_box_mesh({-hw + kJambWidth, -t / 2.0 - 0.02, 0.0}, {hw - kJambWidth, -t / 2.0 + 0.02, top}));
  }
  return mesh;
}

}  // namespace

Scene build_room_scene(const RoomLayout& layout, const StyleConfig& style, std::uint64_t master_seed) {
  Scene scene;
  scene.generation_seed = master_seed;
  scene.style_name = style.name;
  std::uint32_t next_id = 1;
  const double ts = style.tile_size;
  const double slab = style.slab_thickness;

  auto add = [&](std::string name, std::string category, bool is_static, Rgb albedo, Pose pose,
                 std::shared_ptr<const TriangleMesh> mesh) {
    SceneObject o;
    o.id = next_id++;
    o.name = std::move(name);
    o.category = std::move(category);
    o.is_static = is_static;
    o.albedo = albedo;
    o.pose = pose;
    o.mesh = std::move(mesh);
    scene.objects.push_back(std::move(o));
  };

  auto floor_mesh = std::make_shared<const TriangleMesh>(make_box_mesh({-ts / 2, -ts / 2, -slab}, {ts / 2, ts / 2, 0.0}));
  auto ceiling_mesh = std::make_shared<const TriangleMesh>(
      make_box_mesh({-ts / 2, -ts / 2, style.ceiling_height}, {ts / 2, ts / 2, style.ceiling_height + slab}));
  auto tile_pose = [&](int x, int y) {
    Pose p;
    p.translation = {(x + 0.5) * ts, (y + 0.5) * ts, 0.0};
    return p;
  };

  for (int y = 0; y < layout.length; ++y) {
    for (int x = 0; x < layout.width; ++x) {
      add("floor_" + std::to_string(x) + "_" + std::to_string(y), "floor", true, style.floor_albedo, tile_pose(x, y),
          floor_mesh);
    }
  }

  std::shared_ptr<const TriangleMesh> kind_mesh[3] = {
      std::make_shared<const TriangleMesh>(segment_mesh(SegmentKind::Wall, style)),
      std::make_shared<const TriangleMesh>(segment_mesh(SegmentKind::Window, style)),
      std::make_shared<const TriangleMesh>(segment_mesh(SegmentKind::Door, style))};
  for (const auto& seg : layout.wall_segments) {
    Pose pose;
    pose.rotation = Mat3::rotation_z_quarter(side_quarter_turns(seg.side));
    pose.translation = segment_anchor(seg, layout.width, layout.length, ts, 0.0);
    const char* kind = segment_kind_name(seg.kind);
    const Rgb albedo = seg.kind == SegmentKind::Door ? style.door_albedo
                       : seg.kind == SegmentKind::Window ? style.frame_albedo
                                                          : style.wall_albedo;
    add(std::string(kind) + "_" + side_name(seg.side) + "_" + std::to_string(seg.tile), kind, true, albedo, pose,
        kind_mesh[static_cast<int>(seg.kind)]);
  }

  for (int y = 0; y < layout.length; ++y) {
    for (int x = 0; x < layout.width; ++x) {
      add("ceiling_" + std::to_string(x) + "_" + std::to_string(y), "ceiling", true, style.ceiling_albedo,
          tile_pose(x, y), ceiling_mesh);
    }
  }

  for (std::size_t i = 0; i < layout.placements.size(); ++i) {
    const Placement& p = layout.placements[i];
    const AssetDef& asset = style.asset_defs[p.asset_index];
    add(asset.name + "_" + std::to_string(i), asset.category, asset.is_static, asset.albedo, p.pose,
        std::make_shared<const TriangleMesh>(asset_mesh(asset)));
  }
  return scene;
}

Scene generate_room(const StyleConfig& style, std::uint64_t master_seed) {
  return build_room_scene(generate_layout(style, master_seed), style, master_seed);
}

Vec3 auto_scan_setup(const Scene& scene) {
  if (scene.objects.empty()) fail(ErrorCode::EmptyScene, "cannot place a scanner in an empty scene");
  const Aabb bounds = scene.bounds();
  Vec3 origin = bounds.center();
  double ceiling = bounds.max.z;
  std::vector<Aabb> obstacles;
  for (const auto& o : scene.objects) {
    if (o.category == "ceiling") ceiling = std::min(ceiling, o.world_aabb().min.z);
    if (!o.is_static) obstacles.push_back(o.world_aabb());
  }
  for (bool moved = true; moved;) {
    moved = false;
    for (const auto& box : obstacles) {
      if (box.contains(origin)) {
        origin.z = box.max.z + kLiftClearance;
        moved = true;
      }
    }
    if (origin.z >= ceiling) fail(ErrorCode::NoFreePosition, "no collision-free scanner height below the ceiling");
  }
  return origin;
}

}  // namespace vscan
