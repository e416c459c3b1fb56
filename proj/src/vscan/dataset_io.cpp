// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include "vscan/dataset_io.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vscan/config_io.hpp"
#include "vscan/error.hpp"
#include "vscan/text_format.hpp"

namespace vscan {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) fail(ErrorCode::IoError, "cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  return out;
}

void close_output(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) fail(ErrorCode::IoError, "write failed: " + path.string());
  out.close();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

constexpr const char* kPlyProperties[] = {"x", "y", "z", "nx", "ny", "nz"};
constexpr const char* kPlyColours[] = {"red", "green", "blue"};

void write_ply_header(std::ostream& out, std::size_t count, PlyFormat format) {
  out << "ply\nformat " << (format == PlyFormat::Ascii ? "ascii" : "binary_little_endian") << " 1.0\n";
  out << "element vertex " << count << "\n";
  for (const char* p : kPlyProperties) out << "property float " << p << "\n";
  for (const char* p : kPlyColours) out << "property uchar " << p << "\n";
  out << "end_header\n";
}

constexpr std::size_t kBinaryRecord = 6 * 4 + 3;

void put_float(char* dst, float v) {
  const auto bits = std::bit_cast<std::uint32_t>(v);
  for (int b = 0; b < 4; ++b) dst[b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
}

float get_float(const char* src) {
  std::uint32_t bits = 0;
  for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(src[b])) << (8 * b);
  return std::bit_cast<float>(bits);
}

// Shared body writer over any record source: fn(i) -> {values[6], Rgb}.
template <class Source>
void write_ply_body(std::ostream& out, std::size_t count, PlyFormat format, Source&& source) {
  constexpr std::size_t kChunk = 1 << 16;
  std::string buffer;
  if (format == PlyFormat::BinaryLittleEndian) {
    buffer.resize(kChunk * kBinaryRecord);
    for (std::size_t start = 0; start < count; start += kChunk) {
      const std::size_t n = std::min(kChunk, count - start);
      char* dst = buffer.data();
      for (std::size_t i = 0; i < n; ++i) {
        const auto [values, colour] = source(start + i);
        for (int k = 0; k < 6; ++k) put_float(dst + 4 * k, static_cast<float>(values[static_cast<std::size_t>(k)]));
        dst[24] = static_cast<char>(colour.r);
        dst[25] = static_cast<char>(colour.g);
        dst[26] = static_cast<char>(colour.b);
        dst += kBinaryRecord;
      }
      out.write(buffer.data(), static_cast<std::streamsize>(n * kBinaryRecord));
    }
    return;
  }
  for (std::size_t start = 0; start < count; start += kChunk) {
    const std::size_t n = std::min(kChunk, count - start);
    buffer.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const auto [values, colour] = source(start + i);
      for (int k = 0; k < 6; ++k) {
        buffer += format_fixed(values[static_cast<std::size_t>(k)], 6);
        buffer += ' ';
      }
      buffer += std::to_string(colour.r) + ' ' + std::to_string(colour.g) + ' ' + std::to_string(colour.b) + '\n';
    }
    out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  }
}

struct PlyRecord {
  std::array<double, 6> values;
  Rgb colour;
};

}  // namespace

void write_ply(const PointCloud& cloud, std::ostream& out, PlyFormat format) {
  write_ply_header(out, cloud.points.size(), format);
  write_ply_body(out, cloud.points.size(), format, [&](std::size_t i) {
    const ScanPoint& p = cloud.points[i];
    // Positions are narrowed to float first so both formats carry the same
    // values.
    PlyRecord r{{static_cast<float>(p.position.x), static_cast<float>(p.position.y), static_cast<float>(p.position.z),
                 p.normal.x, p.normal.y, p.normal.z},
                p.has_colour ? p.colour : Rgb{255, 255, 255}};
    return r;
  });
}

void write_ply(const PointCloud& cloud, const fs::path& path, PlyFormat format) {
  auto out = open_output(path);
  write_ply(cloud, out, format);
  close_output(out, path);
}

void write_ply(const PlyCloud& cloud, std::ostream& out) {
  write_ply_header(out, cloud.vertices.size(), cloud.format);
  write_ply_body(out, cloud.vertices.size(), cloud.format, [&](std::size_t i) {
    const PlyVertex& v = cloud.vertices[i];
    return PlyRecord{{v.position.x, v.position.y, v.position.z, v.normal.x, v.normal.y, v.normal.z}, v.colour};
  });
}

void write_ply(const PlyCloud& cloud, const fs::path& path) {
  auto out = open_output(path);
  write_ply(cloud, out);
  close_output(out, path);
}

namespace {

class PlyReader {
 public:
  explicit PlyReader(std::string_view bytes) : bytes_(bytes) {}

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError, "ply: " + what + " at byte " + std::to_string(pos_));
  }

  std::string_view line() {
    const std::size_t end = bytes_.find('\n', pos_);
    if (end == std::string_view::npos) error("unterminated header line");
    std::string_view l = bytes_.substr(pos_, end - pos_);
    if (!l.empty() && l.back() == '\r') error("CR line endings are not supported");
    return l;
  }
  void advance_line() { pos_ = bytes_.find('\n', pos_) + 1; }

  void expect_line(std::string_view want) {
    if (line() != want) error("expected '" + std::string(want) + "'");
    advance_line();
  }

  PlyCloud parse() {
    PlyCloud cloud;
    expect_line("ply");
    const std::string_view fmt = line();
    if (fmt == "format ascii 1.0") {
      cloud.format = PlyFormat::Ascii;
    } else if (fmt == "format binary_little_endian 1.0") {
      cloud.format = PlyFormat::BinaryLittleEndian;
    } else {
      error("unsupported format line");
    }
    advance_line();
    while (line().starts_with("comment")) advance_line();
    std::string_view element = line();
    constexpr std::string_view kElement = "element vertex ";
    if (!element.starts_with(kElement)) error("expected 'element vertex N'");
    element.remove_prefix(kElement.size());
    std::size_t count = 0;
    auto [ptr, ec] = std::from_chars(element.data(), element.data() + element.size(), count);
    if (ec != std::errc() || ptr != element.data() + element.size() || element.empty()) error("bad vertex count");
    advance_line();
    for (const char* p : kPlyProperties) expect_line(std::string("property float ") + p);
    for (const char* p : kPlyColours) expect_line(std::string("property uchar ") + p);
    expect_line("end_header");

    cloud.vertices.reserve(std::min<std::size_t>(count, bytes_.size()));
    if (cloud.format == PlyFormat::BinaryLittleEndian) {
      if ((bytes_.size() - pos_) / kBinaryRecord < count) error("truncated binary body");
      if (bytes_.size() - pos_ != count * kBinaryRecord) {
        pos_ += count * kBinaryRecord;
        error("trailing bytes after body");
      }
      for (std::size_t i = 0; i < count; ++i, pos_ += kBinaryRecord) {
        const char* src = bytes_.data() + pos_;
        PlyVertex v;
        v.position = {get_float(src), get_float(src + 4), get_float(src + 8)};
        v.normal = {get_float(src + 12), get_float(src + 16), get_float(src + 20)};
        v.colour = {static_cast<std::uint8_t>(src[24]), static_cast<std::uint8_t>(src[25]),
                    static_cast<std::uint8_t>(src[26])};
        cloud.vertices.push_back(v);
      }
      return cloud;
    }
    for (std::size_t i = 0; i < count; ++i) {
      PlyVertex v;
      double values[6];
      for (double& value : values) value = parse_double(token(' '), "ply");
      std::uint8_t* channels[3] = {&v.colour.r, &v.colour.g, &v.colour.b};
      for (int c = 0; c < 3; ++c) {
        const std::string_view t = token(c == 2 ? '\n' : ' ');
        int value = -1;
        auto [p, e] = std::from_chars(t.data(), t.data() + t.size(), value);
        if (e != std::errc() || p != t.data() + t.size() || value < 0 || value > 255) error("bad colour value");
        *channels[c] = static_cast<std::uint8_t>(value);
      }
      v.position = {values[0], values[1], values[2]};
      v.normal = {values[3], values[4], values[5]};
      cloud.vertices.push_back(v);
    }
    if (pos_ != bytes_.size()) error("trailing data after body");
    return cloud;
  }

 private:
  // Token ending at `sep`; consumes the separator.
  std::string_view token(char sep) {
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && bytes_[pos_] != ' ' && bytes_[pos_] != '\n') ++pos_;
    if (pos_ == bytes_.size() || bytes_[pos_] != sep || pos_ == start) {
      pos_ = std::min(pos_, bytes_.size());
      error("malformed vertex record");
    }
    ++pos_;
    return bytes_.substr(start, pos_ - 1 - start);
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

PlyCloud parse_ply(std::string_view bytes) { return PlyReader(bytes).parse(); }

PlyCloud read_ply_minimal(const fs::path& path) { return parse_ply(read_file(path)); }

void write_ppm(const PanoramaImage& image, const fs::path& path) {
  if (image.width <= 0 || image.height <= 0 ||
      image.pixels.size() != static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height) * 3) {
    fail(ErrorCode::InvalidArgument, "panorama has inconsistent dimensions");
  }
  auto out = open_output(path);
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
  close_output(out, path);
}

PanoramaImage read_ppm(const fs::path& path) {
  const std::string bytes = read_file(path);
  std::size_t pos = 0;
  auto token = [&]() {
    while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    return std::string_view(bytes).substr(start, pos - start);
  };
  auto number = [&]() {
    const std::string_view t = token();
    int v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty()) {
      fail(ErrorCode::ParseError, "ppm: bad header number at byte " + std::to_string(pos));
    }
    return v;
  };
  if (token() != "P6") fail(ErrorCode::ParseError, "ppm: expected P6 magic");
  PanoramaImage image;
  image.width = number();
  image.height = number();
  if (number() != 255) fail(ErrorCode::ParseError, "ppm: maxval must be 255");
  ++pos;  // single whitespace byte before the raster
  const std::size_t size = static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height) * 3;
  if (image.width <= 0 || image.height <= 0 || bytes.size() != pos + size) {
    fail(ErrorCode::ParseError, "ppm: raster size mismatch at byte " + std::to_string(pos));
  }
  image.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  return image;
}

void write_voxel_grid(const VoxelGrid& grid, std::ostream& out) {
  auto num = [](double v) { return format_significant(v, 9); };
  out << "VSCANVOX 1\n";
  if (grid.kind == GridFrame::Oriented) {
    out << "OBB " << num(grid.frame.center.x) << ' ' << num(grid.frame.center.y) << ' ' << num(grid.frame.center.z);
    for (const auto& a : grid.frame.axes) out << ' ' << num(a.x) << ' ' << num(a.y) << ' ' << num(a.z);
    out << ' ' << num(grid.frame.half_extents.x) << ' ' << num(grid.frame.half_extents.y) << ' '
        << num(grid.frame.half_extents.z) << '\n';
  } else {
    const Aabb box = grid.frame_aabb();
    out << "AABB " << num(box.min.x) << ' ' << num(box.min.y) << ' ' << num(box.min.z) << ' ' << num(box.max.x) << ' '
        << num(box.max.y) << ' ' << num(box.max.z) << '\n';
  }
  out << "DIMS " << grid.dims[0] << ' ' << grid.dims[1] << ' ' << grid.dims[2] << " EDGE " << num(grid.voxel_edge)
      << '\n';
  out << "ORIGIN " << num(grid.scan_origin.x) << ' ' << num(grid.scan_origin.y) << ' ' << num(grid.scan_origin.z)
      << '\n';
  for (const auto& v : sparse_encode(grid)) {
    out << v.i << ' ' << v.j << ' ' << v.k << ' ' << (v.state == VoxelState::Occupied ? 'O' : 'X') << '\n';
  }
}

void write_voxel_grid(const VoxelGrid& grid, const fs::path& path) {
  auto out = open_output(path);
  write_voxel_grid(grid, out);
  close_output(out, path);
}

VoxelGrid parse_voxel_grid(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto error = [&](const std::string& what) {
    fail(ErrorCode::ParseError, "voxel file line " + std::to_string(line_no) + ": " + what);
  };
  auto next_line = [&]() -> std::vector<std::string_view> {
    ++line_no;
    const std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) error("missing line terminator");
    std::string_view l = text.substr(pos, end - pos);
    pos = end + 1;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (start <= l.size()) {
      const std::size_t sp = l.find(' ', start);
      const std::size_t stop = sp == std::string_view::npos ? l.size() : sp;
      if (stop == start) error("empty field");
      fields.push_back(l.substr(start, stop - start));
      start = stop + 1;
    }
    return fields;
  };
  auto real = [&](std::string_view t) { return parse_double(t, "voxel file line " + std::to_string(line_no)); };
  auto integer = [&](std::string_view t) {
    int v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) error("bad integer '" + std::string(t) + "'");
    return v;
  };

  auto header = next_line();
  if (header.size() != 2 || header[0] != "VSCANVOX" || header[1] != "1") error("expected 'VSCANVOX 1'");

  VoxelGrid grid;
  auto frame = next_line();
  if (frame[0] == "OBB" && frame.size() == 16) {
    grid.kind = GridFrame::Oriented;
    grid.frame.center = {real(frame[1]), real(frame[2]), real(frame[3])};
    for (std::size_t a = 0; a < 3; ++a) {
      grid.frame.axes[a] = {real(frame[4 + 3 * a]), real(frame[5 + 3 * a]), real(frame[6 + 3 * a])};
    }
    grid.frame.half_extents = {real(frame[13]), real(frame[14]), real(frame[15])};
  } else if (frame[0] == "AABB" && frame.size() == 7) {
    grid.kind = GridFrame::AxisAligned;
    const Vec3 lo{real(frame[1]), real(frame[2]), real(frame[3])};
    const Vec3 hi{real(frame[4]), real(frame[5]), real(frame[6])};
    grid.frame.center = (lo + hi) * 0.5;
    grid.frame.half_extents = (hi - lo) * 0.5;
  } else {
    error("expected an OBB or AABB frame record");
  }

  auto dims = next_line();
  if (dims.size() != 6 || dims[0] != "DIMS" || dims[4] != "EDGE") error("expected 'DIMS nx ny nz EDGE e'");
  for (std::size_t a = 0; a < 3; ++a) {
    grid.dims[a] = integer(dims[1 + a]);
    if (grid.dims[a] < 1) error("dimensions must be >= 1");
  }
  grid.voxel_edge = real(dims[5]);
  if (!(grid.voxel_edge > 0.0)) error("edge must be > 0");

  auto origin = next_line();
  if (origin.size() != 4 || origin[0] != "ORIGIN") error("expected 'ORIGIN x y z'");
  grid.scan_origin = {real(origin[1]), real(origin[2]), real(origin[3])};

  std::vector<SparseVoxel> records;
  while (pos < text.size()) {
    auto rec = next_line();
    if (rec.size() != 4 || (rec[3] != "O" && rec[3] != "X")) error("expected 'i j k O|X'");
    records.push_back({integer(rec[0]), integer(rec[1]), integer(rec[2]),
                       rec[3] == "O" ? VoxelState::Occupied : VoxelState::Occluded});
  }
  sparse_decode(grid, records);
  return grid;
}

VoxelGrid read_voxel_grid(const fs::path& path) { return parse_voxel_grid(read_file(path)); }

namespace {

json vec3_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

[[noreturn]] void manifest_error(const std::string& what) { fail(ErrorCode::ParseError, "manifest: " + what); }

const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) manifest_error(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_string()) manifest_error(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

std::string serialize_manifest(const DatasetManifest& m) {
  json doc;
  doc["scene_id"] = m.scene_id;
  doc["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  doc["style"] = m.style;
  doc["scanner"] = {{"preset", m.preset}, {"config", json::parse(serialize_scanner_config(m.config))}};
  doc["files"] = {{"scene", m.scene_file},
                  {"furnished_scan", m.furnished_scan},
                  {"empty_scan", m.empty_scan},
                  {"furnished_panorama", m.furnished_panorama},
                  {"empty_panorama", m.empty_panorama},
                  {"scene_voxels", m.scene_voxels}};
  json objects = json::array();
  for (const auto& o : m.objects) {
    json corners = json::array();
    for (const auto& c : o.obb_corners) corners.push_back(vec3_json(c));
    objects.push_back({{"id", o.id},
                       {"category", o.category},
                       {"partial_scan", o.partial_scan},
                       {"ground_truth_mesh", o.ground_truth_mesh},
                       {"voxel_grid", o.voxel_grid},
                       {"obb_corners", std::move(corners)}});
  }
  doc["objects"] = std::move(objects);
  return doc.dump(2) + "\n";
}

DatasetManifest parse_manifest(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    manifest_error(e.what());
  }
  if (!doc.is_object()) manifest_error("expected an object");
  DatasetManifest m;
  m.scene_id = string_field(doc, "scene_id");
  const json& seed = field(doc, "seed");
  if (seed.is_number_unsigned()) {
    m.seed = seed.get<std::uint64_t>();
  } else if (!seed.is_null()) {
    manifest_error("seed must be an unsigned integer or null");
  }
  m.style = string_field(doc, "style");
  const json& scanner = field(doc, "scanner");
  m.preset = string_field(scanner, "preset");
  json config = field(scanner, "config");
  if (!config.is_object()) manifest_error("scanner.config must be an object");
  if (config.contains("seed")) {
    if (!config["seed"].is_number_unsigned()) manifest_error("scanner.config.seed must be an unsigned integer");
    m.config.seed = config["seed"].get<std::uint64_t>();
    config.erase("seed");
  }
  const std::uint64_t seed_value = m.config.seed;
  m.config = parse_scanner_config(config.dump()).config;
  m.config.seed = seed_value;
  const json& files = field(doc, "files");
  m.scene_file = string_field(files, "scene");
  m.furnished_scan = string_field(files, "furnished_scan");
  m.empty_scan = string_field(files, "empty_scan");
  m.furnished_panorama = string_field(files, "furnished_panorama");
  m.empty_panorama = string_field(files, "empty_panorama");
  m.scene_voxels = string_field(files, "scene_voxels");
  const json& objects = field(doc, "objects");
  if (!objects.is_array()) manifest_error("objects must be an array");
  for (const auto& o : objects) {
    ManifestObject rec;
    const json& id = field(o, "id");
    if (!id.is_number_unsigned() || id.get<std::uint64_t>() > 0xffffffffULL) manifest_error("object id must be a uint32");
    rec.id = id.get<std::uint32_t>();
    rec.category = string_field(o, "category");
    rec.partial_scan = string_field(o, "partial_scan");
    rec.ground_truth_mesh = string_field(o, "ground_truth_mesh");
    rec.voxel_grid = string_field(o, "voxel_grid");
    const json& corners = field(o, "obb_corners");
    if (!corners.is_array() || corners.size() != 8) manifest_error("obb_corners must hold 8 points");
    for (std::size_t k = 0; k < 8; ++k) {
      const json& c = corners[k];
      if (!c.is_array() || c.size() != 3 || !c[0].is_number() || !c[1].is_number() || !c[2].is_number()) {
        manifest_error("obb corner must be [x, y, z]");
      }
      rec.obb_corners[k] = {c[0].get<double>(), c[1].get<double>(), c[2].get<double>()};
    }
    m.objects.push_back(std::move(rec));
  }
  return m;
}

DatasetManifest read_manifest(const fs::path& path) { return parse_manifest(read_file(path)); }

namespace {

constexpr const char* kSceneFile = "scene.json";
constexpr const char* kFurnishedScan = "furnished.ply";
constexpr const char* kEmptyScan = "empty.ply";
constexpr const char* kFurnishedPano = "furnished_pano.ppm";
constexpr const char* kEmptyPano = "empty_pano.ppm";
constexpr const char* kSceneVoxels = "scene_voxels.txt";
constexpr const char* kManifest = "manifest.json";

}  // namespace

BundleWriter::BundleWriter(const fs::path& out_dir, BundleInfo info, PlyFormat format)
    : dir_(out_dir / info.scene_id), info_(std::move(info)), format_(format) {
  if (info_.scene_id.empty()) fail(ErrorCode::InvalidArgument, "bundle needs a scene id");
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create " + dir_.string() + ": " + ec.message());
  // A previous bundle in the same place is replaced, not merged.
  fs::remove(dir_ / kManifest, ec);
  fs::remove_all(dir_ / "objects", ec);
  if (ec) fail(ErrorCode::IoError, "cannot clear " + dir_.string() + ": " + ec.message());
}

void BundleWriter::write_scene(const Scene& scene) {
  save_scene(scene, dir_ / kSceneFile);
  scene_ = scene;
  written_.insert(kSceneFile);
}

void BundleWriter::write_furnished_scan(const PointCloud& cloud) {
  write_ply(cloud, dir_ / kFurnishedScan, format_);
  written_.insert(kFurnishedScan);
}

void BundleWriter::write_empty_scan(const PointCloud& cloud) {
  write_ply(cloud, dir_ / kEmptyScan, format_);
  written_.insert(kEmptyScan);
}

void BundleWriter::write_furnished_panorama(const PanoramaImage& image) {
  write_ppm(image, dir_ / kFurnishedPano);
  written_.insert(kFurnishedPano);
}

void BundleWriter::write_empty_panorama(const PanoramaImage& image) {
  write_ppm(image, dir_ / kEmptyPano);
  written_.insert(kEmptyPano);
}

void BundleWriter::write_scene_voxels(const VoxelGrid& grid) {
  write_voxel_grid(grid, dir_ / kSceneVoxels);
  written_.insert(kSceneVoxels);
}

void BundleWriter::write_object(std::uint32_t object_id, const PointCloud& partial, const VoxelGrid& grid) {
  if (!scene_) fail(ErrorCode::IncompleteInputs, "scene must be written before objects");
  const SceneObject* object = scene_->find(object_id);
  if (!object) fail(ErrorCode::InvalidArgument, "object " + std::to_string(object_id) + " is not in the scene");
  if (object->is_static) fail(ErrorCode::InvalidArgument, "object " + std::to_string(object_id) + " is static");
  for (const auto& o : objects_) {
    if (o.id == object_id) fail(ErrorCode::DuplicateId, "object " + std::to_string(object_id) + " written twice");
  }
  const std::string rel = "objects/" + std::to_string(object_id) + "/";
  ManifestObject rec;
  rec.id = object_id;
  rec.category = object->category;
  rec.partial_scan = rel + "partial.ply";
  rec.ground_truth_mesh = rel + "gt.obj";
  rec.voxel_grid = rel + "voxels.txt";
  write_ply(partial, dir_ / rec.partial_scan, format_);
  rec.obb_corners = export_ground_truth(*object, dir_ / rec.ground_truth_mesh).obb_corners;
  write_voxel_grid(grid, dir_ / rec.voxel_grid);
  objects_.push_back(std::move(rec));
}

DatasetManifest BundleWriter::finish() {
  for (const char* name : {kSceneFile, kFurnishedScan, kEmptyScan, kFurnishedPano, kEmptyPano, kSceneVoxels}) {
    if (!written_.count(name)) fail(ErrorCode::IncompleteInputs, std::string("bundle is missing ") + name);
  }
  std::vector<ManifestObject> ordered;
  for (const auto& o : scene_->objects) {
    if (o.is_static) continue;
    auto it = std::find_if(objects_.begin(), objects_.end(), [&](const ManifestObject& m) { return m.id == o.id; });
    if (it == objects_.end()) {
      fail(ErrorCode::IncompleteInputs, "bundle is missing outputs for object " + std::to_string(o.id));
    }
    ordered.push_back(*it);
  }
  DatasetManifest m;
  m.scene_id = info_.scene_id;
  m.seed = info_.seed;
  m.style = info_.style;
  m.preset = info_.preset;
  m.config = info_.config;
  m.scene_file = kSceneFile;
  m.furnished_scan = kFurnishedScan;
  m.empty_scan = kEmptyScan;
  m.furnished_panorama = kFurnishedPano;
  m.empty_panorama = kEmptyPano;
  m.scene_voxels = kSceneVoxels;
  m.objects = std::move(ordered);
  auto out = open_output(dir_ / kManifest);
  out << serialize_manifest(m);
  close_output(out, dir_ / kManifest);
  return m;
}

DatasetManifest export_scene_bundle(const Scene& scene, const SceneOutputs& outputs, const fs::path& out_dir,
                                    const BundleInfo& info, PlyFormat format) {
  auto require = [](bool present, const char* what) {
    if (!present) fail(ErrorCode::IncompleteInputs, std::string("bundle is missing ") + what);
  };
  require(!outputs.furnished_panorama.pixels.empty(), "the furnished panorama");
  require(!outputs.empty_panorama.pixels.empty(), "the empty panorama");
  require(!outputs.scene_grid.states.empty(), "the scene voxel grid");
  for (const auto& o : outputs.objects) require(!o.grid.states.empty(), "an object voxel grid");
  BundleWriter writer(out_dir, info, format);
  writer.write_scene(scene);
  writer.write_furnished_scan(outputs.furnished);
  writer.write_empty_scan(outputs.empty);
  writer.write_furnished_panorama(outputs.furnished_panorama);
  writer.write_empty_panorama(outputs.empty_panorama);
  writer.write_scene_voxels(outputs.scene_grid);
  for (const auto& o : outputs.objects) writer.write_object(o.id, o.partial, o.grid);
  return writer.finish();
}

}  // namespace vscan
