// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include "vscan/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "vscan/error.hpp"
#include "vscan/occlusion.hpp"
#include "vscan/panorama.hpp"
#include "vscan/parallel.hpp"

namespace vscan {

namespace fs = std::filesystem;

PipelineSummary run_scan_pipeline(const Scene& scene, const PipelineOptions& options, const fs::path& out_dir,
                                  const std::string& scene_id, std::optional<std::uint64_t> seed) {
  auto say = [&](const std::string& msg) {
    if (options.progress) options.progress(scene_id + ": " + msg);
  };
  ScannerConfig config = options.config;
  if (options.auto_origin) config.origin = auto_scan_setup(scene);
  config.validate();

  BundleInfo info;
  info.scene_id = scene_id;
  info.seed = seed ? seed : scene.generation_seed;
  info.style = scene.style_name.value_or("");
  info.preset = options.preset;
  info.config = config;
  BundleWriter writer(out_dir, info, options.ply_format);
  writer.write_scene(scene);

  RenderOptions render;
  render.threads = options.threads;
  const ShadingConfig shading;
  PipelineSummary summary;

  {
    const SceneGeometry geometry = build_scene_geometry(scene);
    say("scanning furnished scene");
    PointCloud cloud = scan(geometry, config, {options.threads});
    summary.points = cloud.points.size();
    say("rendering panorama");
    const PanoramaImage pano = render_panorama(geometry, config.origin, shading, options.panorama_width, render);
    if (options.colour) colour_points_in_place(cloud, pano, options.threads);
    writer.write_furnished_panorama(pano);
    writer.write_furnished_scan(cloud);

    say("isolating objects");
    std::size_t occluded = 0;
    std::size_t voxels = 0;
    for (const auto& object : scene.objects) {
      if (object.is_static) continue;
      const PointCloud partial = isolate_object_points(cloud, object, options.isolation_offset);
      VoxelGrid grid = grid_from_obb(object.obb(), options.object_voxel_resolution);
      classify_voxels(grid, geometry, config.origin, partial, options.threads);
      occluded += grid.count(VoxelState::Occluded);
      voxels += grid.size();
      writer.write_object(object.id, partial, grid);
      ++summary.objects;
    }
    summary.occluded_fraction = voxels ? static_cast<double>(occluded) / static_cast<double>(voxels) : 0.0;
    const VoxelGrid scene_grid =
        build_scene_grid(scene, geometry, cloud, options.scene_voxel_resolution, config.origin, options.threads);
    writer.write_scene_voxels(scene_grid);
  }

  {
    const SceneGeometry geometry = build_scene_geometry(strip_non_static(scene));
    say("scanning empty scene");
    PointCloud cloud = scan(geometry, config, {options.threads});
    const PanoramaImage pano = render_panorama(geometry, config.origin, shading, options.panorama_width, render);
    if (options.colour) colour_points_in_place(cloud, pano, options.threads);
    writer.write_empty_panorama(pano);
    writer.write_empty_scan(cloud);
  }

  summary.manifest = writer.finish();
  say("done");
  return summary;
}

std::uint64_t scene_seed(std::uint64_t seed, std::uint64_t m) { return derive_stream(seed, "scene", m).next_u64(); }

std::string scene_id_for(std::uint64_t m) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "scene_%04llu", static_cast<unsigned long long>(m));
  return buf;
}

std::vector<fs::path> generate_scenes(const StyleConfig& style, std::uint64_t seed, std::uint64_t count,
                                      const fs::path& out_dir) {
  style.validate();
  std::vector<fs::path> written;
  for (std::uint64_t m = 0; m < count; ++m) {
    const fs::path path = out_dir / scene_id_for(m) / "scene.json";
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) fail(ErrorCode::IoError, "cannot create " + path.parent_path().string() + ": " + ec.message());
    save_scene(generate_room(style, scene_seed(seed, m)), path);
    written.push_back(path);
  }
  return written;
}

std::size_t DatasetResult::failed() const {
  return static_cast<std::size_t>(std::count_if(scenes.begin(), scenes.end(), [](const auto& s) { return !s.ok; }));
}

DatasetResult run_dataset(const StyleConfig& style, const PipelineOptions& options, std::uint64_t seed,
                          std::uint64_t count, const fs::path& out_dir, unsigned jobs) {
  style.validate();
  jobs = std::max(1u, jobs);
  DatasetResult result;
  result.scenes.resize(count);
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(jobs, std::max<std::uint64_t>(count, 1)));
  // Leftover parallelism goes to the per-scene stages.
  const unsigned inner_threads = std::max(1u, jobs / workers);

  std::mutex progress_mutex;
  PipelineOptions base = options;
  base.threads = inner_threads;
  base.auto_origin = true;
  if (options.progress) {
    base.progress = [&](const std::string& msg) {
      std::lock_guard lock(progress_mutex);
      options.progress(msg);
    };
  }

  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t m = next.fetch_add(1); m < count; m = next.fetch_add(1)) {
      DatasetSceneResult& r = result.scenes[m];
      r.scene_id = scene_id_for(m);
      r.seed = scene_seed(seed, m);
      try {
        const Scene scene = generate_room(style, r.seed);
        PipelineOptions o = base;
        o.config.seed = derive_stream(r.seed, "scanner", 0).next_u64();
        const PipelineSummary s = run_scan_pipeline(scene, o, out_dir, r.scene_id, r.seed);
        r.points = s.points;
        r.objects = s.objects;
        r.ok = true;
      } catch (const std::exception& e) {
        r.error = e.what();
        if (base.progress) base.progress(r.scene_id + ": failed: " + r.error);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  nlohmann::json doc;
  doc["seed"] = seed;
  doc["count"] = count;
  doc["style"] = style.name;
  doc["preset"] = options.preset;
  doc["scenes"] = nlohmann::json::array();
  for (const auto& r : result.scenes) {
    nlohmann::json entry = {{"scene_id", r.scene_id}, {"seed", r.seed}, {"status", r.ok ? "ok" : "failed"}};
    if (r.ok) {
      entry["manifest"] = r.scene_id + "/manifest.json";
    } else {
      entry["error"] = r.error;
    }
    doc["scenes"].push_back(std::move(entry));
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create " + out_dir.string() + ": " + ec.message());
  const fs::path path = out_dir / "dataset_manifest.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << doc.dump(2) << "\n";
  if (!out.flush()) fail(ErrorCode::IoError, "write failed: " + path.string());
  return result;
}

unsigned resolve_jobs(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("VSCAN_JOBS"); env && *env) {
    const std::string_view text(env);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
      fail(ErrorCode::InvalidArgument, "VSCAN_JOBS must be a positive integer, got '" + std::string(text) + "'");
    }
    return value;
  }
  return resolve_threads(0);
}

}  // namespace vscan
