// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "vscan/geometry.hpp"

namespace vscan {

struct ObjLoadResult {
  TriangleMesh mesh;
  std::size_t dropped_degenerate = 0;
};

// ASCII OBJ subset: `v`, `vn` and `f` records (1-based or negative relative
// indices, `v`, `v/vt`, `v//vn`, `v/vt/vn` corner forms). Polygons are fan
// triangulated. Other records are ignored.
ObjLoadResult parse_obj(std::istream& in, const std::string& source_name = "<obj>");
ObjLoadResult load_obj(const std::filesystem::path& path);

// Writes vertices and 1-based faces; coordinates use the shortest decimal form
// that round-trips exactly.
void write_obj(std::ostream& out, const TriangleMesh& mesh);
void save_obj(const std::filesystem::path& path, const TriangleMesh& mesh);

}  // namespace vscan
