// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
//
// vscan command-line front end. Talks to the library only through the C API.
#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include "vscan/vscan.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

// Failure carrying the exit code it maps to.
struct CliFailure {
  int exit_code;
  std::string message;
};

[[noreturn]] void runtime_failure(vscan_status status) {
  const int code = status == VSCAN_ERR_UNKNOWN_PRESET ? kExitUsage : kExitRuntime;
  throw CliFailure{code, vscan_last_error()};
}

void check(vscan_status status) {
  if (status != VSCAN_OK) runtime_failure(status);
}

void print_progress(const char* message, void*) { std::fprintf(stderr, "vscan: %s\n", message); }

struct SceneDeleter {
  void operator()(vscan_scene* s) const { vscan_scene_free(s); }
};
struct StyleDeleter {
  void operator()(vscan_style* s) const { vscan_style_free(s); }
};
using ScenePtr = std::unique_ptr<vscan_scene, SceneDeleter>;
using StylePtr = std::unique_ptr<vscan_style, StyleDeleter>;

StylePtr load_style(const std::string& path) {
  vscan_style* style = nullptr;
  check(vscan_style_load(path.c_str(), &style));
  return StylePtr(style);
}

vscan_scanner_config preset_config(const std::string& name) {
  vscan_scanner_config config;
  check(vscan_preset_config(name.c_str(), &config));
  return config;
}

struct ScanArgs {
  std::string scene;
  std::string preset;
  std::string config;
  std::uint64_t seed = 0;
  std::string out;
  bool no_color = false;
  int object_voxel_res = 32;
  int scene_voxel_res = 8;
};

int cmd_scan(const ScanArgs& args) {
  vscan_pipeline_options options;
  vscan_pipeline_options_init(&options);
  std::string preset_name = args.preset;
  if (!args.config.empty()) {
    const char* base = nullptr;
    int has_origin = 0;
    check(vscan_config_load(args.config.c_str(), &options.config, &base, &has_origin));
    preset_name = base && *base ? base : "custom";
    options.auto_origin = has_origin ? 0 : 1;
  } else {
    options.config = preset_config(args.preset);
  }
  options.preset = preset_name.c_str();
  options.config.seed = args.seed;
  options.colour = args.no_color ? 0 : 1;
  options.object_voxel_resolution = args.object_voxel_res;
  options.scene_voxel_resolution = args.scene_voxel_res;
  options.progress = print_progress;

  vscan_scene* raw = nullptr;
  check(vscan_scene_load(args.scene.c_str(), &raw));
  ScenePtr scene(raw);
  const std::string scene_id = std::filesystem::path(args.scene).stem().string();
  vscan_pipeline_summary summary;
  check(vscan_run_scan(scene.get(), &options, args.out.c_str(), scene_id.c_str(), &summary));
  std::printf("points=%llu objects=%llu occluded_fraction=%.6f\n", static_cast<unsigned long long>(summary.points),
              static_cast<unsigned long long>(summary.objects), summary.occluded_fraction);
  return kExitOk;
}

struct GenerateArgs {
  std::string style;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  std::string out;
};

int cmd_generate(const GenerateArgs& args) {
  const StylePtr style = load_style(args.style);
  check(vscan_generate_scenes(style.get(), args.seed, args.count, args.out.c_str()));
  std::printf("scenes=%llu\n", static_cast<unsigned long long>(args.count));
  return kExitOk;
}

struct DatasetArgs {
  std::string style;
  std::string preset;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  std::string out;
  unsigned jobs = 0;
};

int cmd_dataset(const DatasetArgs& args) {
  vscan_pipeline_options options;
  vscan_pipeline_options_init(&options);
  options.config = preset_config(args.preset);
  options.preset = args.preset.c_str();
  options.progress = print_progress;
  const StylePtr style = load_style(args.style);
  vscan_dataset_summary summary;
  check(vscan_run_dataset(style.get(), &options, args.seed, args.count, args.out.c_str(), args.jobs, &summary));
  std::printf("scenes_ok=%llu scenes_failed=%llu\n", static_cast<unsigned long long>(summary.scenes_ok),
              static_cast<unsigned long long>(summary.scenes_failed));
  if (summary.scenes_failed > 0) {
    throw CliFailure{kExitRuntime, std::to_string(summary.scenes_failed) + " scene(s) failed; see dataset_manifest.json"};
  }
  return kExitOk;
}

int cmd_presets_list() {
  for (std::size_t i = 0; i < vscan_preset_count(); ++i) std::printf("%s\n", vscan_preset_name(i));
  return kExitOk;
}

int cmd_presets_show(const std::string& name) {
  const vscan_scanner_config c = preset_config(name);
  const char* description = nullptr;
  check(vscan_preset_description(name.c_str(), &description));
  std::printf("name: %s\n", name.c_str());
  std::printf("description: %s\n", description);
  std::printf("max_range: %g m\n", c.max_range_m);
  std::printf("vertical_fov: %g deg\n", c.vertical_fov_deg);
  std::printf("density: %g mm @ 10 m\n", c.density_mm_per_10m);
  std::printf("system_error: %g mm\n", c.system_error_mm);
  std::printf("distance_error: %g ppm\n", c.distance_error_fraction * 1e6);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vscan: virtual 3D scanner and procedural indoor scene generator"};
  app.require_subcommand(1);

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Scan one scene and export a dataset bundle");
  scan_cmd->add_option("--scene", scan.scene, "Scene JSON file")->required()->check(CLI::ExistingFile);
  auto* preset_opt = scan_cmd->add_option("--preset", scan.preset, "Scanner preset name");
  auto* config_opt = scan_cmd->add_option("--config", scan.config, "Scanner config JSON file")->check(CLI::ExistingFile);
  preset_opt->excludes(config_opt);
  scan_cmd->add_option("--seed", scan.seed, "Scanner noise seed")->required();
  scan_cmd->add_option("--out", scan.out, "Output directory")->required();
  scan_cmd->add_flag("--no-color", scan.no_color, "Skip point colouring");
  scan_cmd->add_option("--object-voxel-res", scan.object_voxel_res, "Voxels along an object's longest side")
      ->check(CLI::PositiveNumber);
  scan_cmd->add_option("--scene-voxel-res", scan.scene_voxel_res, "Voxels along the scene's longest side")
      ->check(CLI::PositiveNumber);

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Generate procedural room scenes");
  gen_cmd->add_option("--style", gen.style, "Style JSON file")->required()->check(CLI::ExistingFile);
  gen_cmd->add_option("--seed", gen.seed, "Master seed")->required();
  gen_cmd->add_option("--count", gen.count, "Number of scenes")->required();
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();

  DatasetArgs data;
  auto* data_cmd = app.add_subcommand("dataset", "Generate, scan and export a batch of scenes");
  data_cmd->add_option("--style", data.style, "Style JSON file")->required()->check(CLI::ExistingFile);
  data_cmd->add_option("--preset", data.preset, "Scanner preset name")->required();
  data_cmd->add_option("--seed", data.seed, "Master seed")->required();
  data_cmd->add_option("--count", data.count, "Number of scenes")->required();
  data_cmd->add_option("--out", data.out, "Output directory")->required();
  data_cmd->add_option("--jobs", data.jobs, "Parallel workers (default: VSCAN_JOBS or all cores)")
      ->check(CLI::PositiveNumber);

  auto* presets_cmd = app.add_subcommand("presets", "List or show scanner presets");
  presets_cmd->require_subcommand(1);
  auto* list_cmd = presets_cmd->add_subcommand("list", "List preset names");
  std::string show_name;
  auto* show_cmd = presets_cmd->add_subcommand("show", "Show a preset's configuration");
  show_cmd->add_option("name", show_name, "Preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    for (char& c : message) {
      if (c == '\n') c = ' ';
    }
    std::fprintf(stderr, "error: %s\n", message.c_str());
    return kExitUsage;
  }

  try {
    if (scan_cmd->parsed()) {
      if (scan.preset.empty() && scan.config.empty()) {
        throw CliFailure{kExitUsage, "scan needs --preset or --config"};
      }
      return cmd_scan(scan);
    }
    if (gen_cmd->parsed()) return cmd_generate(gen);
    if (data_cmd->parsed()) return cmd_dataset(data);
    if (list_cmd->parsed()) return cmd_presets_list();
    if (show_cmd->parsed()) return cmd_presets_show(show_name);
  } catch (const CliFailure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.exit_code;
  }
  return kExitUsage;
}
