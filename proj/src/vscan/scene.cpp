// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include "vscan/scene.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "vscan/error.hpp"
#include "vscan/obj_io.hpp"

namespace vscan {

using nlohmann::json;

bool is_structural_category(std::string_view category) {
  return category == "wall" || category == "floor" || category == "ceiling" || category == "door" ||
         category == "window";
}

const SceneObject* Scene::find(std::uint32_t id) const {
  for (const auto& o : objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

Aabb Scene::bounds() const {
  Aabb box = Aabb::empty();
  for (const auto& o : objects) {
    if (o.mesh && !o.mesh->vertices.empty()) box.expand(o.world_aabb());
  }
  if (box.is_empty()) fail(ErrorCode::EmptyScene, "scene has no geometry");
  return box;
}

namespace {

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  fail(ErrorCode::ParseError, "scene field '" + field + "': " + what);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) field_error(path + "." + key, "missing");
  return *it;
}

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) field_error(path, "expected a number");
  return v.get<double>();
}

Vec3 vec3_at(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) field_error(path, "expected [x, y, z]");
  return {number_at(v[0], path + "[0]"), number_at(v[1], path + "[1]"), number_at(v[2], path + "[2]")};
}

Mat3 rotation_at(const json& v, const std::string& path) {
  Mat3 r;
  if (v.is_array() && v.size() == 3 && v[0].is_array()) {
    for (int i = 0; i < 3; ++i) {
      const Vec3 row = vec3_at(v[static_cast<std::size_t>(i)], path + "[" + std::to_string(i) + "]");
      r(i, 0) = row.x;
      r(i, 1) = row.y;
      r(i, 2) = row.z;
    }
  } else if (v.is_array() && v.size() == 9) {
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = number_at(v[i], path + "[" + std::to_string(i) + "]");
  } else {
    field_error(path, "expected a 3x3 row-major matrix");
  }
  if (!is_orthonormal(r, 1e-9)) field_error(path, "rotation is not orthonormal");
  return r;
}

Rgb rgb_at(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) field_error(path, "expected [r, g, b]");
  Rgb c;
  std::uint8_t* out[3] = {&c.r, &c.g, &c.b};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!v[i].is_number_integer() || v[i].get<std::int64_t>() < 0 || v[i].get<std::int64_t>() > 255) {
      field_error(path, "colour channels must be integers in [0, 255]");
    }
    *out[i] = static_cast<std::uint8_t>(v[i].get<int>());
  }
  return c;
}

TriangleMesh inline_mesh_at(const json& v, const std::string& path) {
  TriangleMesh mesh;
  const json& verts = require(v, "vertices", path);
  const json& tris = require(v, "triangles", path);
  if (!verts.is_array()) field_error(path + ".vertices", "expected an array");
  if (!tris.is_array()) field_error(path + ".triangles", "expected an array");
  for (std::size_t i = 0; i < verts.size(); ++i) {
    mesh.vertices.push_back(vec3_at(verts[i], path + ".vertices[" + std::to_string(i) + "]"));
  }
  for (std::size_t i = 0; i < tris.size(); ++i) {
    const std::string tp = path + ".triangles[" + std::to_string(i) + "]";
    if (!tris[i].is_array() || tris[i].size() != 3) field_error(tp, "expected [a, b, c]");
    std::array<std::uint32_t, 3> t{};
    for (std::size_t k = 0; k < 3; ++k) {
      if (!tris[i][k].is_number_unsigned() || tris[i][k].get<std::uint64_t>() >= mesh.vertices.size()) {
        field_error(tp, "vertex index out of range");
      }
      t[k] = tris[i][k].get<std::uint32_t>();
    }
    mesh.triangles.push_back(t);
  }
  return mesh;
}

json vec3_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

}  // namespace

Scene parse_scene(std::string_view text, const std::filesystem::path& base_dir, SceneLoadReport* report) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, "scene parse error at line " + std::to_string(line_of_offset(text, e.byte)) +
                                    ": " + e.what());
  }
  if (!doc.is_object()) field_error("<root>", "expected an object");
  const json& version = require(doc, "version", "<root>");
  if (!version.is_number_integer() || version.get<int>() != kSceneFormatVersion) {
    field_error("version", "unsupported version");
  }
  Scene scene;
  if (auto it = doc.find("seed"); it != doc.end() && !it->is_null()) {
    if (!it->is_number_unsigned()) field_error("seed", "expected an unsigned integer");
    scene.generation_seed = it->get<std::uint64_t>();
  }
  if (auto it = doc.find("style"); it != doc.end() && !it->is_null()) {
    if (!it->is_string()) field_error("style", "expected a string");
    scene.style_name = it->get<std::string>();
  }
  const json& objects = require(doc, "objects", "<root>");
  if (!objects.is_array()) field_error("objects", "expected an array");

  std::set<std::uint32_t> seen;
  std::unordered_map<std::string, std::shared_ptr<const TriangleMesh>> file_cache;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const std::string path = "objects[" + std::to_string(i) + "]";
    const json& o = objects[i];
    if (!o.is_object()) field_error(path, "expected an object");
    SceneObject obj;
    const json& id = require(o, "id", path);
    if (!id.is_number_unsigned() || id.get<std::uint64_t>() > 0xffffffffULL) {
      field_error(path + ".id", "expected an unsigned 32-bit integer");
    }
    obj.id = id.get<std::uint32_t>();
    if (!seen.insert(obj.id).second) {
      fail(ErrorCode::DuplicateId, "duplicate object id " + std::to_string(obj.id) + " at " + path);
    }
    const json& name = require(o, "name", path);
    if (!name.is_string()) field_error(path + ".name", "expected a string");
    obj.name = name.get<std::string>();
    const json& category = require(o, "category", path);
    if (!category.is_string()) field_error(path + ".category", "expected a string");
    obj.category = category.get<std::string>();
    const json& is_static = require(o, "is_static", path);
    if (!is_static.is_boolean()) field_error(path + ".is_static", "expected a boolean");
    obj.is_static = is_static.get<bool>();
    if (is_structural_category(obj.category) && !obj.is_static) {
      field_error(path + ".is_static", "structural category '" + obj.category + "' must be static");
    }
    obj.albedo = rgb_at(require(o, "albedo", path), path + ".albedo");
    const json& pose = require(o, "pose", path);
    obj.pose.rotation = rotation_at(require(pose, "rotation", path + ".pose"), path + ".pose.rotation");
    obj.pose.translation = vec3_at(require(pose, "translation", path + ".pose"), path + ".pose.translation");

    const json& mesh = require(o, "mesh", path);
    if (mesh.is_string()) {
      obj.mesh_file = mesh.get<std::string>();
      auto& cached = file_cache[obj.mesh_file];
      if (!cached) {
        const auto file = base_dir / obj.mesh_file;
        if (!std::filesystem::exists(file)) {
          fail(ErrorCode::MissingMesh, "mesh file '" + obj.mesh_file + "' for " + path + " not found");
        }
        auto loaded = load_obj(file);
        if (report) report->dropped_degenerate += loaded.dropped_degenerate;
        cached = std::make_shared<const TriangleMesh>(std::move(loaded.mesh));
      }
      obj.mesh = cached;
    } else if (mesh.is_object()) {
      TriangleMesh m = inline_mesh_at(mesh, path + ".mesh");
      const std::size_t dropped = drop_degenerate_triangles(m);
      if (report) report->dropped_degenerate += dropped;
      obj.mesh = std::make_shared<const TriangleMesh>(std::move(m));
    } else {
      field_error(path + ".mesh", "expected a file name or {vertices, triangles}");
    }
    scene.objects.push_back(std::move(obj));
  }
  return scene;
}

Scene load_scene(const std::filesystem::path& path, SceneLoadReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open scene file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scene(buffer.str(), path.parent_path(), report);
}

std::string serialize_scene(const Scene& scene, bool keep_mesh_refs) {
  json doc;
  doc["version"] = kSceneFormatVersion;
  if (scene.generation_seed) doc["seed"] = *scene.generation_seed;
  if (scene.style_name) doc["style"] = *scene.style_name;
  json objects = json::array();
  for (const auto& o : scene.objects) {
    json j;
    j["id"] = o.id;
    j["name"] = o.name;
    j["category"] = o.category;
    j["is_static"] = o.is_static;
    j["albedo"] = json::array({o.albedo.r, o.albedo.g, o.albedo.b});
    json rot = json::array();
    for (int r = 0; r < 3; ++r) rot.push_back(json::array({o.pose.rotation(r, 0), o.pose.rotation(r, 1), o.pose.rotation(r, 2)}));
    j["pose"] = {{"rotation", rot}, {"translation", vec3_json(o.pose.translation)}};
    if (keep_mesh_refs && !o.mesh_file.empty()) {
      j["mesh"] = o.mesh_file;
    } else {
      json verts = json::array();
      for (const auto& v : o.mesh->vertices) verts.push_back(vec3_json(v));
      json tris = json::array();
      for (const auto& t : o.mesh->triangles) tris.push_back(json::array({t[0], t[1], t[2]}));
      j["mesh"] = {{"vertices", verts}, {"triangles", tris}};
    }
    objects.push_back(std::move(j));
  }
  doc["objects"] = std::move(objects);
  return doc.dump(1) + "\n";
}

void save_scene(const Scene& scene, const std::filesystem::path& path, bool keep_mesh_refs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write scene file " + path.string());
  out << serialize_scene(scene, keep_mesh_refs);
  if (!out) fail(ErrorCode::IoError, "write failed for " + path.string());
}

bool scenes_equal(const Scene& a, const Scene& b) {
  if (a.generation_seed != b.generation_seed || a.style_name != b.style_name) return false;
  if (a.objects.size() != b.objects.size()) return false;
  for (std::size_t i = 0; i < a.objects.size(); ++i) {
    const SceneObject& x = a.objects[i];
    const SceneObject& y = b.objects[i];
    if (x.id != y.id || x.name != y.name || x.category != y.category || x.is_static != y.is_static ||
        !(x.albedo == y.albedo) || !(x.pose == y.pose)) {
      return false;
    }
    if (x.mesh->vertices != y.mesh->vertices || x.mesh->triangles != y.mesh->triangles) return false;
  }
  return true;
}

SceneGeometry build_scene_geometry(const Scene& scene) {
  std::vector<MeshInstance> instances;
  std::unordered_map<std::uint32_t, Rgb> albedo;
  for (const auto& o : scene.objects) {
    instances.push_back({o.mesh.get(), o.pose, o.id});
    albedo[o.id] = o.albedo;
  }
  auto triangles = flatten_instances(instances);
  if (triangles.empty()) return SceneGeometry{};
  return SceneGeometry(Bvh::build(std::move(triangles)), std::move(albedo));
}

PointCloud isolate_object_points(const PointCloud& cloud, const SceneObject& object, double offset) {
  PointCloud out;
  out.origin = cloud.origin;
  out.config = cloud.config;
  const Obb obb = object.obb();
  if (offset < 0.0 && -offset > std::min({obb.half_extents.x, obb.half_extents.y, obb.half_extents.z})) {
    return out;  // contracted past the centre on some axis
  }
  const Aabb coarse = obb_bounds(obb, offset);
  for (const auto& p : cloud.points) {
    if (coarse.contains(p.position) && obb_contains(obb, p.position, offset)) out.points.push_back(p);
  }
  return out;
}

Scene strip_non_static(const Scene& scene) {
  Scene out;
  out.generation_seed = scene.generation_seed;
  out.style_name = scene.style_name;
  for (const auto& o : scene.objects) {
    if (o.is_static) out.objects.push_back(o);
  }
  return out;
}

TriangleMesh posed_mesh(const SceneObject& object) {
  TriangleMesh m;
  m.triangles = object.mesh->triangles;
  m.vertices.reserve(object.mesh->vertices.size());
  for (const auto& v : object.mesh->vertices) m.vertices.push_back(object.pose.apply(v));
  return m;
}

GroundTruthRecord export_ground_truth(const SceneObject& object, const std::filesystem::path& path) {
  save_obj(path, posed_mesh(object));
  return {path, object.obb().corners()};
}

}  // namespace vscan
