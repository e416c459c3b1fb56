// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include "vscan/obj_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vscan/error.hpp"
#include "vscan/text_format.hpp"

namespace vscan {

namespace {

std::string where(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line);
}

// Resolves a 1-based or negative OBJ index against `count` elements.
std::int64_t resolve_index(std::string_view token, std::size_t count, const std::string& at) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value == 0) {
    fail(ErrorCode::ParseError, at + ": bad index '" + std::string(token) + "'");
  }
  const std::int64_t resolved = value > 0 ? value - 1 : static_cast<std::int64_t>(count) + value;
  if (resolved < 0 || resolved >= static_cast<std::int64_t>(count)) {
    fail(ErrorCode::ParseError, at + ": index " + std::string(token) + " out of range");
  }
  return resolved;
}

}  // namespace

ObjLoadResult parse_obj(std::istream& in, const std::string& source_name) {
  std::vector<Vec3> normals_in;
  std::vector<Vec3> vertex_normals;
  std::vector<bool> has_normal;
  bool all_corners_have_normals = true;
  TriangleMesh mesh;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v" || tag == "vn") {
      Vec3 p;
      std::string a, b, c;
      if (!(ls >> a >> b >> c)) fail(ErrorCode::ParseError, where(source_name, line_no) + ": expected 3 coordinates");
      p.x = parse_double(a, where(source_name, line_no));
      p.y = parse_double(b, where(source_name, line_no));
      p.z = parse_double(c, where(source_name, line_no));
      if (tag == "v") {
        mesh.vertices.push_back(p);
      } else {
        normals_in.push_back(p);
      }
    } else if (tag == "f") {
      std::vector<std::uint32_t> corners;
      std::vector<std::int64_t> corner_normals;
      std::string token;
      while (ls >> token) {
        const auto slash = token.find('/');
        const std::string_view vtok = std::string_view(token).substr(0, slash);
        corners.push_back(static_cast<std::uint32_t>(
            resolve_index(vtok, mesh.vertices.size(), where(source_name, line_no))));
        std::int64_t n = -1;
        if (slash != std::string::npos) {
          const auto slash2 = token.find('/', slash + 1);
          if (slash2 != std::string::npos && slash2 + 1 < token.size()) {
            n = resolve_index(std::string_view(token).substr(slash2 + 1), normals_in.size(),
                              where(source_name, line_no));
          }
        }
        corner_normals.push_back(n);
      }
      if (corners.size() < 3) fail(ErrorCode::ParseError, where(source_name, line_no) + ": face needs 3+ corners");
      if (vertex_normals.size() < mesh.vertices.size()) {
        vertex_normals.resize(mesh.vertices.size());
        has_normal.resize(mesh.vertices.size(), false);
      }
      for (std::size_t k = 0; k < corners.size(); ++k) {
        if (corner_normals[k] < 0) {
          all_corners_have_normals = false;
        } else {
          vertex_normals[corners[k]] = normals_in[static_cast<std::size_t>(corner_normals[k])];
          has_normal[corners[k]] = true;
        }
      }
      for (std::size_t k = 1; k + 1 < corners.size(); ++k) {
        mesh.triangles.push_back({corners[0], corners[k], corners[k + 1]});
      }
    }
  }
  ObjLoadResult result;
  if (all_corners_have_normals && !mesh.triangles.empty() && !normals_in.empty()) {
    vertex_normals.resize(mesh.vertices.size());
    mesh.normals = std::move(vertex_normals);
  }
  result.dropped_degenerate = drop_degenerate_triangles(mesh);
  result.mesh = std::move(mesh);
  return result;
}

ObjLoadResult load_obj(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::MissingMesh, "cannot open mesh file " + path.string());
  return parse_obj(in, path.string());
}

void write_obj(std::ostream& out, const TriangleMesh& mesh) {
  for (const auto& v : mesh.vertices) {
    out << "v " << format_shortest(v.x) << ' ' << format_shortest(v.y) << ' ' << format_shortest(v.z) << '\n';
  }
  for (const auto& t : mesh.triangles) out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

void save_obj(const std::filesystem::path& path, const TriangleMesh& mesh) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
  write_obj(out, mesh);
  if (!out) fail(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace vscan
