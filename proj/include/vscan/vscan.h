/* Copyright 2026 The vscan Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the vscan library: virtual scanning of triangle-mesh
 * scenes and procedural room generation.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns a vscan_status; on failure the message is
 * available from vscan_last_error() on the same thread until the next call.
 */
#ifndef VSCAN_VSCAN_H
#define VSCAN_VSCAN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(VSCAN_BUILDING_LIBRARY)
#    define VSCAN_API __declspec(dllexport)
#  else
#    define VSCAN_API __declspec(dllimport)
#  endif
#else
#  define VSCAN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vscan_status {
  VSCAN_OK = 0,
  VSCAN_ERR_INVALID_ARGUMENT,
  VSCAN_ERR_EMPTY_SCENE,
  VSCAN_ERR_EMPTY_INPUT,
  VSCAN_ERR_VECTOR_BUDGET_EXCEEDED,
  VSCAN_ERR_OUT_OF_VERTICAL_RANGE,
  VSCAN_ERR_MISMATCHED_ORIGIN,
  VSCAN_ERR_DEGENERATE_OBB,
  VSCAN_ERR_PARSE,
  VSCAN_ERR_MISSING_MESH,
  VSCAN_ERR_DUPLICATE_ID,
  VSCAN_ERR_IO,
  VSCAN_ERR_INCOMPLETE_INPUTS,
  VSCAN_ERR_STYLE,
  VSCAN_ERR_NO_FREE_POSITION,
  VSCAN_ERR_UNKNOWN_PRESET,
  VSCAN_ERR_INTERNAL
} vscan_status;

typedef struct vscan_scene vscan_scene;
typedef struct vscan_style vscan_style;
typedef struct vscan_cloud vscan_cloud;

typedef struct vscan_scanner_config {
  double density_mm_per_10m;
  double max_range_m;
  double vertical_fov_deg;
  double system_error_mm;
  double distance_error_fraction;
  double origin[3];
  uint64_t seed;
} vscan_scanner_config;

typedef struct vscan_point {
  double position[3];
  float normal[3];
  double true_range;
  double noisy_range;
  uint32_t ring;
  uint32_t azimuth;
  uint32_t object_id;
  uint8_t colour[3];
  int has_colour;
} vscan_point;

typedef void (*vscan_progress_fn)(const char* message, void* user);

typedef struct vscan_pipeline_options {
  const char* preset;  /* name recorded in the manifest; may be NULL */
  vscan_scanner_config config;
  int auto_origin;     /* nonzero: place the scanner automatically */
  int colour;          /* nonzero: colour points from the panorama */
  int object_voxel_resolution;
  int scene_voxel_resolution;
  int panorama_width;
  double isolation_offset;
  unsigned threads;    /* 0: one per hardware thread */
  int ascii_ply;       /* nonzero: ASCII PLY instead of binary */
  vscan_progress_fn progress;  /* may be NULL; called from worker threads */
  void* progress_user;
} vscan_pipeline_options;

typedef struct vscan_pipeline_summary {
  uint64_t points;
  uint64_t objects;
  double occluded_fraction;
} vscan_pipeline_summary;

typedef struct vscan_dataset_summary {
  uint64_t scenes_ok;
  uint64_t scenes_failed;
} vscan_dataset_summary;

VSCAN_API const char* vscan_version(void);
VSCAN_API const char* vscan_status_name(vscan_status status);
/* Message of the last failed call on this thread, "" when none. */
VSCAN_API const char* vscan_last_error(void);

/* Presets. Returned strings are static. */
VSCAN_API size_t vscan_preset_count(void);
VSCAN_API const char* vscan_preset_name(size_t index);
VSCAN_API vscan_status vscan_preset_config(const char* name, vscan_scanner_config* out);
VSCAN_API vscan_status vscan_preset_description(const char* name, const char** out);

/* Scanner configuration file. `base_preset` receives the preset the file
 * extends ("" when none); the string stays valid until the next call on this
 * thread. `has_origin` is set to 1 when the file fixes the scanner origin. */
VSCAN_API vscan_status vscan_config_load(const char* path, vscan_scanner_config* out, const char** base_preset,
                                         int* has_origin);

/* Scenes. */
VSCAN_API vscan_status vscan_scene_load(const char* path, vscan_scene** out);
VSCAN_API vscan_status vscan_scene_save(const vscan_scene* scene, const char* path);
VSCAN_API vscan_status vscan_scene_strip_non_static(const vscan_scene* scene, vscan_scene** out);
VSCAN_API size_t vscan_scene_object_count(const vscan_scene* scene);
VSCAN_API void vscan_scene_free(vscan_scene* scene);

/* Styles and procedural rooms. */
VSCAN_API vscan_status vscan_style_load(const char* path, vscan_style** out);
VSCAN_API void vscan_style_free(vscan_style* style);
VSCAN_API vscan_status vscan_generate_room(const vscan_style* style, uint64_t seed, vscan_scene** out);

/* Single scans. */
VSCAN_API vscan_status vscan_scan(const vscan_scene* scene, const vscan_scanner_config* config, unsigned threads,
                                  vscan_cloud** out);
VSCAN_API size_t vscan_cloud_size(const vscan_cloud* cloud);
VSCAN_API vscan_status vscan_cloud_point(const vscan_cloud* cloud, size_t index, vscan_point* out);
VSCAN_API vscan_status vscan_cloud_write_ply(const vscan_cloud* cloud, const char* path, int ascii);
VSCAN_API void vscan_cloud_free(vscan_cloud* cloud);

/* Full pipeline. */
VSCAN_API void vscan_pipeline_options_init(vscan_pipeline_options* options);
VSCAN_API vscan_status vscan_run_scan(const vscan_scene* scene, const vscan_pipeline_options* options,
                                      const char* out_dir, const char* scene_id, vscan_pipeline_summary* summary);
VSCAN_API vscan_status vscan_generate_scenes(const vscan_style* style, uint64_t seed, uint64_t count,
                                             const char* out_dir);
/* Scanner seed and origin in `options` are ignored: both derive from each
 * scene. jobs = 0 falls back to VSCAN_JOBS, then the hardware thread count.
 * Returns VSCAN_OK even when scenes failed; check the summary. */
VSCAN_API vscan_status vscan_run_dataset(const vscan_style* style, const vscan_pipeline_options* options,
                                         uint64_t seed, uint64_t count, const char* out_dir, unsigned jobs,
                                         vscan_dataset_summary* summary);

#ifdef __cplusplus
}
#endif

#endif /* VSCAN_VSCAN_H */
