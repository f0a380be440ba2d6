/*
 * Copyright 2026 The lgimap Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C API for the lgimap shared library: light-geometry interaction maps,
 * shadow masks, analytic-scene ground truth, bridge-matching math, metrics
 * and the PFM/PNG/JSON file formats.
 *
 * Conventions:
 *  - every fallible function returns lgim_status; LGIM_OK is 0
 *  - lgim_last_error() describes the most recent failure on this thread
 *  - handles are created by lgim_* functions and released with the matching
 *    *_destroy; out-parameters are written only on success
 *  - images are row-major float32 rasters with 1 or 3 interleaved channels;
 *    pixel (0,0) is top-left
 *  - camera frame: x right, y down, z forward; angles in radians
 */

#ifndef LGIMAP_H
#define LGIMAP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LGIM_API __declspec(dllexport)
#else
#define LGIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lgim_status {
    LGIM_OK = 0,
    LGIM_ERR_ARGUMENT = 1,
    LGIM_ERR_DEPTH = 2,
    LGIM_ERR_BEHIND_CAMERA = 3,
    LGIM_ERR_SHAPE = 4,
    LGIM_ERR_DEGENERATE = 5,
    LGIM_ERR_FORMAT = 6,
    LGIM_ERR_CONFIG = 7,
    LGIM_ERR_IO = 8,
    LGIM_ERR_INTERNAL = 9
} lgim_status;

LGIM_API const char* lgim_version(void);
LGIM_API const char* lgim_status_name(lgim_status status);
/* Message of the last failing call on the current thread ("" if none). */
LGIM_API const char* lgim_last_error(void);

/* ---------------- images ---------------- */

typedef struct lgim_image lgim_image;

LGIM_API lgim_status lgim_image_create(int32_t width, int32_t height, int32_t channels,
                                       lgim_image** out);
LGIM_API void lgim_image_destroy(lgim_image* img);
LGIM_API int32_t lgim_image_width(const lgim_image* img);
LGIM_API int32_t lgim_image_height(const lgim_image* img);
LGIM_API int32_t lgim_image_channels(const lgim_image* img);
/* Mutable pointer to width*height*channels floats. */
LGIM_API float* lgim_image_data(lgim_image* img);
LGIM_API const float* lgim_image_data_const(const lgim_image* img);
/* FNV-1a over the raw payload bytes; thread-count invariant. */
LGIM_API uint64_t lgim_image_digest(const lgim_image* img);

LGIM_API lgim_status lgim_read_pfm(const char* path, lgim_image** out);
LGIM_API lgim_status lgim_write_pfm(const char* path, const lgim_image* img);
/* 8-bit grayscale PNG; values map to [0,1] (hard masks round trip exactly). */
LGIM_API lgim_status lgim_read_mask_png(const char* path, lgim_image** out);
LGIM_API lgim_status lgim_write_mask_png(const char* path, const lgim_image* img);

LGIM_API lgim_status lgim_file_digest(const char* path, uint64_t* out);

/* ---------------- scene configs ---------------- */

typedef struct lgim_scene lgim_scene;

typedef struct lgim_intrinsics {
    double fx, fy, cx, cy;
    int32_t width, height;
} lgim_intrinsics;

typedef struct lgim_light {
    int32_t kind;          /* 0 = point, 1 = directional */
    double position[3];    /* point lights */
    double direction[3];   /* directional lights, unit, toward the light */
    double color[3];
    double radius;
    double intensity;
    int32_t has_angles;    /* azimuth/elevation/distance metadata present */
    double azimuth, elevation, distance;
} lgim_light;

typedef struct lgim_lgi_params {
    int32_t n_samples;     /* default 16 */
    double eta;            /* default 5 degrees */
    double z_near;         /* default 1e-4 */
    double softness_beta;  /* default 1 degree */
    int32_t interp;        /* 0 = nearest, 1 = bilinear (default) */
} lgim_lgi_params;

LGIM_API void lgim_lgi_params_defaults(lgim_lgi_params* out);

LGIM_API lgim_status lgim_scene_load(const char* path, lgim_scene** out);
LGIM_API lgim_status lgim_scene_save(const lgim_scene* scene, const char* path);
LGIM_API void lgim_scene_destroy(lgim_scene* scene);
/* Deterministic verification suite: scene `index` of `count` for `seed`. */
LGIM_API lgim_status lgim_scene_suite(uint64_t seed, int32_t count, int32_t index,
                                      int32_t image_size, lgim_scene** out);
LGIM_API lgim_status lgim_scene_intrinsics(const lgim_scene* scene, lgim_intrinsics* out);
LGIM_API lgim_status lgim_scene_seed(const lgim_scene* scene, uint64_t* out);
LGIM_API lgim_status lgim_scene_light_count(const lgim_scene* scene, int32_t* out);
LGIM_API lgim_status lgim_scene_light(const lgim_scene* scene, int32_t index,
                                      lgim_light* out);
LGIM_API lgim_status lgim_scene_lgi_params(const lgim_scene* scene, lgim_lgi_params* out);
/* Effective config (defaults expanded) as a JSON document; free with
 * lgim_string_free. */
LGIM_API lgim_status lgim_scene_json(const lgim_scene* scene, char** out);
LGIM_API void lgim_string_free(char* s);

LGIM_API lgim_status lgim_light_from_angles(double azimuth, double elevation,
                                            double distance, const double anchor[3],
                                            lgim_light* out);

/* ---------------- synthetic ground truth ---------------- */

/* Exact per-pixel z-depth of the scene's primitives; misses are NaN. */
LGIM_API lgim_status lgim_render_depth(const lgim_scene* scene, int32_t threads,
                                       lgim_image** out);
/* Exact shadow-ray ground-truth mask for scene light `light_index`. */
LGIM_API lgim_status lgim_oracle_shadow_mask(const lgim_scene* scene,
                                             const lgim_image* depth,
                                             int32_t light_index, int32_t threads,
                                             lgim_image** out);
/* Lambertian direct-illumination render (linear radiance) under the scene
 * lights listed in `light_indices` (NULL = all lights). */
LGIM_API lgim_status lgim_render_direct(const lgim_scene* scene,
                                        const int32_t* light_indices, int32_t n_lights,
                                        int32_t threads, lgim_image** out);

/* ---------------- LGI maps and masks ---------------- */

/* out_maps: 3-channel image (c1 = min, c2 = max, c3 = signed value at the
 * argmin of |e^d|); out_valid: 1-channel 0/1 image. */
LGIM_API lgim_status lgim_compute_lgi(const lgim_image* depth,
                                      const lgim_intrinsics* intrinsics,
                                      const lgim_light* light,
                                      const lgim_lgi_params* params, int32_t threads,
                                      lgim_image** out_maps, lgim_image** out_valid);
/* Parallel-ray variant; direction is the unit vector toward the light. */
LGIM_API lgim_status lgim_compute_lgi_sunlight(const lgim_image* depth,
                                               const lgim_intrinsics* intrinsics,
                                               const double direction[3],
                                               const lgim_lgi_params* params,
                                               int32_t threads, lgim_image** out_maps,
                                               lgim_image** out_valid);
LGIM_API lgim_status lgim_hard_mask(const lgim_image* maps, const lgim_image* valid,
                                    double eta, lgim_image** out);
LGIM_API lgim_status lgim_soft_mask(const lgim_image* maps, const lgim_image* valid,
                                    double eta, double beta, lgim_image** out);

/* ---------------- metrics ---------------- */

typedef struct lgim_confusion {
    uint64_t tp, fp, fn, tn;
} lgim_confusion;

LGIM_API lgim_status lgim_confusion_counts(const lgim_image* pred, const lgim_image* gt,
                                           double threshold, lgim_confusion* out);
/* LGIM_ERR_DEGENERATE when the metric is undefined for these counts. */
LGIM_API lgim_status lgim_iou(const lgim_confusion* c, double* out);
LGIM_API lgim_status lgim_ber(const lgim_confusion* c, double* out);
/* region: optional 1-channel mask (nonzero pixels participate); may be NULL. */
LGIM_API lgim_status lgim_rmse(const lgim_image* a, const lgim_image* b,
                               const lgim_image* region, double* out);

/* ---------------- bridge math and losses ---------------- */

LGIM_API lgim_status lgim_bridge_sample(const double* z0, const double* z1,
                                        const double* noise, size_t dim, double t,
                                        double sigma, double* out);
LGIM_API lgim_status lgim_drift_target(const double* zt, const double* z1, size_t dim,
                                       double t, double* out);
LGIM_API lgim_status lgim_retrieve_target(const double* zt, const double* v, size_t dim,
                                          double t, double* out);
LGIM_API lgim_status lgim_weighted_l1(const lgim_image* x1_hat, const lgim_image* x1,
                                      const lgim_image* x0, double tau,
                                      int32_t dilation_kernel, double* out);
LGIM_API lgim_status lgim_combined_loss(double lz, double lx, double lambda, double* out);
LGIM_API lgim_status lgim_mask_bce(const lgim_image* pred, const lgim_image* gt,
                                   double* out);
LGIM_API lgim_status lgim_mask_iou_loss(const lgim_image* pred, const lgim_image* gt,
                                        double* out);
/* Elementwise sum of n linear-radiance images of identical shape. */
LGIM_API lgim_status lgim_compose(const lgim_image* const* images, int32_t n,
                                  lgim_image** out);
/* Clamp to [0,1]; the explicit display transform kept out of composition. */
LGIM_API lgim_status lgim_clamp_display(const lgim_image* img, lgim_image** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LGIMAP_H */
