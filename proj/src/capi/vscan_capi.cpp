// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include "vscan/vscan.h"

#include <exception>
#include <new>
#include <string>

#include "vscan/config_io.hpp"
#include "vscan/error.hpp"
#include "vscan/pipeline.hpp"
#include "vscan/procgen.hpp"
#include "vscan/scanner.hpp"
#include "vscan/scene.hpp"

struct vscan_scene {
  vscan::Scene scene;
};
struct vscan_style {
  vscan::StyleConfig style;
};
struct vscan_cloud {
  vscan::PointCloud cloud;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_preset_scratch;

vscan_status status_of(vscan::ErrorCode code) {
  using vscan::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return VSCAN_ERR_INVALID_ARGUMENT;
    case ErrorCode::EmptyScene: return VSCAN_ERR_EMPTY_SCENE;
    case ErrorCode::EmptyInput: return VSCAN_ERR_EMPTY_INPUT;
    case ErrorCode::VectorBudgetExceeded: return VSCAN_ERR_VECTOR_BUDGET_EXCEEDED;
    case ErrorCode::OutOfVerticalRange: return VSCAN_ERR_OUT_OF_VERTICAL_RANGE;
    case ErrorCode::MismatchedOrigin: return VSCAN_ERR_MISMATCHED_ORIGIN;
    case ErrorCode::DegenerateObb: return VSCAN_ERR_DEGENERATE_OBB;
    case ErrorCode::ParseError: return VSCAN_ERR_PARSE;
    case ErrorCode::MissingMesh: return VSCAN_ERR_MISSING_MESH;
    case ErrorCode::DuplicateId: return VSCAN_ERR_DUPLICATE_ID;
    case ErrorCode::IoError: return VSCAN_ERR_IO;
    case ErrorCode::IncompleteInputs: return VSCAN_ERR_INCOMPLETE_INPUTS;
    case ErrorCode::StyleError: return VSCAN_ERR_STYLE;
    case ErrorCode::NoFreePosition: return VSCAN_ERR_NO_FREE_POSITION;
    case ErrorCode::UnknownPreset: return VSCAN_ERR_UNKNOWN_PRESET;
  }
  return VSCAN_ERR_INTERNAL;
}

template <class Fn>
vscan_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return VSCAN_OK;
  } catch (const vscan::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return VSCAN_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) vscan::fail(vscan::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

vscan_scanner_config to_c(const vscan::ScannerConfig& c) {
  vscan_scanner_config out;
  out.density_mm_per_10m = c.density_mm_per_10m;
  out.max_range_m = c.max_range_m;
  out.vertical_fov_deg = c.vertical_fov_deg;
  out.system_error_mm = c.system_error_mm;
  out.distance_error_fraction = c.distance_error_fraction;
  out.origin[0] = c.origin.x;
  out.origin[1] = c.origin.y;
  out.origin[2] = c.origin.z;
  out.seed = c.seed;
  return out;
}

vscan::ScannerConfig from_c(const vscan_scanner_config& c) {
  vscan::ScannerConfig out;
  out.density_mm_per_10m = c.density_mm_per_10m;
  out.max_range_m = c.max_range_m;
  out.vertical_fov_deg = c.vertical_fov_deg;
  out.system_error_mm = c.system_error_mm;
  out.distance_error_fraction = c.distance_error_fraction;
  out.origin = {c.origin[0], c.origin[1], c.origin[2]};
  out.seed = c.seed;
  return out;
}

vscan::PipelineOptions from_c(const vscan_pipeline_options& o) {
  vscan::PipelineOptions out;
  out.preset = o.preset ? o.preset : "";
  out.config = from_c(o.config);
  out.auto_origin = o.auto_origin != 0;
  out.colour = o.colour != 0;
  out.object_voxel_resolution = o.object_voxel_resolution;
  out.scene_voxel_resolution = o.scene_voxel_resolution;
  out.panorama_width = o.panorama_width;
  out.isolation_offset = o.isolation_offset;
  out.threads = o.threads;
  out.ply_format = o.ascii_ply ? vscan::PlyFormat::Ascii : vscan::PlyFormat::BinaryLittleEndian;
  if (o.progress) {
    const vscan_progress_fn fn = o.progress;
    void* user = o.progress_user;
    out.progress = [fn, user](const std::string& msg) { fn(msg.c_str(), user); };
  }
  return out;
}

}  // namespace

extern "C" {

const char* vscan_version(void) { return "0.1.0"; }

const char* vscan_status_name(vscan_status status) {
  switch (status) {
    case VSCAN_OK: return "ok";
    case VSCAN_ERR_INTERNAL: return "InternalError";
    default: break;
  }
  if (status > VSCAN_OK && status < VSCAN_ERR_INTERNAL) {
    return vscan::error_code_name(static_cast<vscan::ErrorCode>(status - 1));
  }
  return "Unknown";
}

const char* vscan_last_error(void) { return g_last_error.c_str(); }

size_t vscan_preset_count(void) { return vscan::scanner_presets().size(); }

const char* vscan_preset_name(size_t index) {
  const auto& presets = vscan::scanner_presets();
  return index < presets.size() ? presets[index].name.c_str() : nullptr;
}

vscan_status vscan_preset_config(const char* name, vscan_scanner_config* out) {
  return guarded([&] {
    require(name && out, "name and out");
    *out = to_c(vscan::find_preset(name).config);
  });
}

vscan_status vscan_preset_description(const char* name, const char** out) {
  return guarded([&] {
    require(name && out, "name and out");
    *out = vscan::find_preset(name).description.c_str();
  });
}

vscan_status vscan_config_load(const char* path, vscan_scanner_config* out, const char** base_preset,
                               int* has_origin) {
  return guarded([&] {
    require(path && out, "path and out");
    const vscan::ResolvedConfig resolved = vscan::load_scanner_config(path);
    *out = to_c(resolved.config);
    g_preset_scratch = resolved.preset;
    if (base_preset) *base_preset = g_preset_scratch.c_str();
    if (has_origin) *has_origin = resolved.has_origin ? 1 : 0;
  });
}

vscan_status vscan_scene_load(const char* path, vscan_scene** out) {
  return guarded([&] {
    require(path && out, "path and out");
    *out = new vscan_scene{vscan::load_scene(path)};
  });
}

vscan_status vscan_scene_save(const vscan_scene* scene, const char* path) {
  return guarded([&] {
    require(scene && path, "scene and path");
    vscan::save_scene(scene->scene, path);
  });
}

vscan_status vscan_scene_strip_non_static(const vscan_scene* scene, vscan_scene** out) {
  return guarded([&] {
    require(scene && out, "scene and out");
    *out = new vscan_scene{vscan::strip_non_static(scene->scene)};
  });
}

size_t vscan_scene_object_count(const vscan_scene* scene) { return scene ? scene->scene.objects.size() : 0; }

void vscan_scene_free(vscan_scene* scene) { delete scene; }

vscan_status vscan_style_load(const char* path, vscan_style** out) {
  return guarded([&] {
    require(path && out, "path and out");
    *out = new vscan_style{vscan::load_style(path)};
  });
}

void vscan_style_free(vscan_style* style) { delete style; }

vscan_status vscan_generate_room(const vscan_style* style, uint64_t seed, vscan_scene** out) {
  return guarded([&] {
    require(style && out, "style and out");
    *out = new vscan_scene{vscan::generate_room(style->style, seed)};
  });
}

vscan_status vscan_scan(const vscan_scene* scene, const vscan_scanner_config* config, unsigned threads,
                        vscan_cloud** out) {
  return guarded([&] {
    require(scene && config && out, "scene, config and out");
    const vscan::SceneGeometry geometry = vscan::build_scene_geometry(scene->scene);
    *out = new vscan_cloud{vscan::scan(geometry, from_c(*config), {threads})};
  });
}

size_t vscan_cloud_size(const vscan_cloud* cloud) { return cloud ? cloud->cloud.points.size() : 0; }

vscan_status vscan_cloud_point(const vscan_cloud* cloud, size_t index, vscan_point* out) {
  return guarded([&] {
    require(cloud && out, "cloud and out");
    if (index >= cloud->cloud.points.size()) vscan::fail(vscan::ErrorCode::InvalidArgument, "point index out of range");
    const vscan::ScanPoint& p = cloud->cloud.points[index];
    out->position[0] = p.position.x;
    out->position[1] = p.position.y;
    out->position[2] = p.position.z;
    out->normal[0] = p.normal.x;
    out->normal[1] = p.normal.y;
    out->normal[2] = p.normal.z;
    out->true_range = p.true_range;
    out->noisy_range = p.noisy_range;
    out->ring = p.ring;
    out->azimuth = p.azimuth;
    out->object_id = p.object_id;
    out->colour[0] = p.colour.r;
    out->colour[1] = p.colour.g;
    out->colour[2] = p.colour.b;
    out->has_colour = p.has_colour ? 1 : 0;
  });
}

vscan_status vscan_cloud_write_ply(const vscan_cloud* cloud, const char* path, int ascii) {
  return guarded([&] {
    require(cloud && path, "cloud and path");
    vscan::write_ply(cloud->cloud, std::filesystem::path(path),
                     ascii ? vscan::PlyFormat::Ascii : vscan::PlyFormat::BinaryLittleEndian);
  });
}

void vscan_cloud_free(vscan_cloud* cloud) { delete cloud; }

void vscan_pipeline_options_init(vscan_pipeline_options* options) {
  if (!options) return;
  const vscan::PipelineOptions d;
  *options = vscan_pipeline_options{};
  options->preset = nullptr;
  options->config = to_c(d.config);
  options->auto_origin = d.auto_origin ? 1 : 0;
  options->colour = d.colour ? 1 : 0;
  options->object_voxel_resolution = d.object_voxel_resolution;
  options->scene_voxel_resolution = d.scene_voxel_resolution;
  options->panorama_width = d.panorama_width;
  options->isolation_offset = d.isolation_offset;
  options->threads = d.threads;
  options->ascii_ply = 0;
}

vscan_status vscan_run_scan(const vscan_scene* scene, const vscan_pipeline_options* options, const char* out_dir,
                            const char* scene_id, vscan_pipeline_summary* summary) {
  return guarded([&] {
    require(scene && options && out_dir && scene_id, "scene, options, out_dir and scene_id");
    const vscan::PipelineSummary s = vscan::run_scan_pipeline(scene->scene, from_c(*options), out_dir, scene_id);
    if (summary) {
      summary->points = s.points;
      summary->objects = s.objects;
      summary->occluded_fraction = s.occluded_fraction;
    }
  });
}

vscan_status vscan_generate_scenes(const vscan_style* style, uint64_t seed, uint64_t count, const char* out_dir) {
  return guarded([&] {
    require(style && out_dir, "style and out_dir");
    vscan::generate_scenes(style->style, seed, count, out_dir);
  });
}

vscan_status vscan_run_dataset(const vscan_style* style, const vscan_pipeline_options* options, uint64_t seed,
                               uint64_t count, const char* out_dir, unsigned jobs, vscan_dataset_summary* summary) {
  return guarded([&] {
    require(style && options && out_dir, "style, options and out_dir");
    const vscan::DatasetResult r =
        vscan::run_dataset(style->style, from_c(*options), seed, count, out_dir, vscan::resolve_jobs(jobs));
    if (summary) {
      summary->scenes_failed = r.failed();
      summary->scenes_ok = r.scenes.size() - r.failed();
    }
  });
}

}  // extern "C"
