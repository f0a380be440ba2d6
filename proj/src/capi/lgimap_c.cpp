// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgimap/lgimap.h"

#include <cstring>
#include <mutex>
#include <fstream>
#include <string>
#include <vector>

#include "core/bridge.hpp"
#include "core/geometry.hpp"
#include "core/lgi.hpp"
#include "core/metrics.hpp"
#include "core/pfm.hpp"
#include "core/png_io.hpp"
#include "core/scene_config.hpp"
#include "core/synth.hpp"

using namespace lgimap;

struct lgim_image {
    Grid<float> grid;
};

struct lgim_scene {
    SceneConfig config;
};

namespace {

thread_local std::string g_last_error;

void set_last_error(const std::string& msg) { g_last_error = msg; }

lgim_status map_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return LGIM_ERR_ARGUMENT;
        case ErrorCode::InvalidDepth: return LGIM_ERR_DEPTH;
        case ErrorCode::BehindCamera: return LGIM_ERR_BEHIND_CAMERA;
        case ErrorCode::ShapeMismatch: return LGIM_ERR_SHAPE;
        case ErrorCode::DegenerateVector:
        case ErrorCode::DegenerateTime:
        case ErrorCode::DegenerateDenominator:
        case ErrorCode::DegenerateClass:
        case ErrorCode::DegenerateRegion: return LGIM_ERR_DEGENERATE;
        case ErrorCode::FormatError: return LGIM_ERR_FORMAT;
        case ErrorCode::ConfigError: return LGIM_ERR_CONFIG;
        case ErrorCode::IoError: return LGIM_ERR_IO;
        case ErrorCode::Internal: return LGIM_ERR_INTERNAL;
    }
    return LGIM_ERR_INTERNAL;
}

template <typename Fn>
lgim_status guarded(Fn&& fn) noexcept {
    try {
        fn();
        g_last_error.clear();
        return LGIM_OK;
    } catch (const Error& e) {
        set_last_error(e.what());
        return map_code(e.code());
    } catch (const std::exception& e) {
        set_last_error(e.what());
        return LGIM_ERR_INTERNAL;
    } catch (...) {
        set_last_error("unknown error");
        return LGIM_ERR_INTERNAL;
    }
}

void require_arg(bool ok, const char* what) {
    if (!ok) raise(ErrorCode::InvalidArgument, what);
}

lgim_image* wrap(Grid<float> grid) { return new lgim_image{std::move(grid)}; }

Grid<float> to_float_grid(const Grid<double>& g) {
    Grid<float> out(g.width(), g.height(), g.channels());
    for (size_t i = 0; i < g.size(); ++i)
        out.data()[i] = static_cast<float>(g.data()[i]);
    return out;
}

DepthMap to_depth(const lgim_image* img) {
    require_arg(img != nullptr, "depth image is null");
    require_arg(img->grid.channels() == 1, "depth image must have one channel");
    DepthMap d;
    d.values = img->grid;
    return d;
}

CameraIntrinsics to_intrinsics(const lgim_intrinsics* K) {
    require_arg(K != nullptr, "intrinsics pointer is null");
    CameraIntrinsics out{K->fx, K->fy, K->cx, K->cy, K->width, K->height};
    out.validate();
    return out;
}

LightSpec to_light(const lgim_light* l) {
    require_arg(l != nullptr, "light pointer is null");
    LightSpec out;
    if (l->kind == 0) {
        out.kind = LightSpec::Kind::Point;
        out.position = {l->position[0], l->position[1], l->position[2]};
    } else if (l->kind == 1) {
        out.kind = LightSpec::Kind::Directional;
        out.direction = {l->direction[0], l->direction[1], l->direction[2]};
    } else {
        raise(ErrorCode::InvalidArgument, "light kind must be 0 (point) or 1 (directional)");
    }
    out.color = {l->color[0], l->color[1], l->color[2]};
    out.radius = l->radius;
    out.intensity = l->intensity;
    if (l->has_angles) {
        out.azimuth = l->azimuth;
        out.elevation = l->elevation;
        out.distance = l->distance;
    }
    out.validate();
    return out;
}

void from_light(const LightSpec& in, lgim_light* out) {
    std::memset(out, 0, sizeof(*out));
    out->kind = in.kind == LightSpec::Kind::Point ? 0 : 1;
    out->position[0] = in.position.x;
    out->position[1] = in.position.y;
    out->position[2] = in.position.z;
    out->direction[0] = in.direction.x;
    out->direction[1] = in.direction.y;
    out->direction[2] = in.direction.z;
    out->color[0] = in.color[0];
    out->color[1] = in.color[1];
    out->color[2] = in.color[2];
    out->radius = in.radius;
    out->intensity = in.intensity;
    if (in.azimuth && in.elevation && in.distance) {
        out->has_angles = 1;
        out->azimuth = *in.azimuth;
        out->elevation = *in.elevation;
        out->distance = *in.distance;
    }
}

LgiConfig to_lgi_config(const lgim_lgi_params* p) {
    LgiConfig cfg;
    if (p) {
        cfg.n_samples = p->n_samples;
        cfg.eta = p->eta;
        cfg.z_near = p->z_near;
        cfg.softness_beta = p->softness_beta;
        require_arg(p->interp == 0 || p->interp == 1, "interp must be 0 or 1");
        cfg.interp = p->interp == 0 ? Interp::Nearest : Interp::Bilinear;
    }
    cfg.validate();
    return cfg;
}

LgiMaps maps_from_images(const lgim_image* maps, const lgim_image* valid) {
    require_arg(maps != nullptr && valid != nullptr, "maps/valid image is null");
    require_arg(maps->grid.channels() == 3, "LGI maps image must have 3 channels");
    require_arg(valid->grid.channels() == 1, "validity image must have 1 channel");
    if (maps->grid.width() != valid->grid.width() ||
        maps->grid.height() != valid->grid.height())
        raise(ErrorCode::ShapeMismatch, "maps and validity dimensions differ");
    LgiMaps out;
    out.width = maps->grid.width();
    out.height = maps->grid.height();
    out.c1 = Grid<double>(out.width, out.height);
    out.c2 = Grid<double>(out.width, out.height);
    out.c3 = Grid<double>(out.width, out.height);
    out.valid = Grid<uint8_t>(out.width, out.height);
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            out.c1.at(x, y) = maps->grid.at(x, y, 0);
            out.c2.at(x, y) = maps->grid.at(x, y, 1);
            out.c3.at(x, y) = maps->grid.at(x, y, 2);
            out.valid.at(x, y) = valid->grid.at(x, y) != 0.0f ? 1 : 0;
        }
    }
    return out;
}

void maps_to_images(const LgiMaps& maps, lgim_image** out_maps, lgim_image** out_valid) {
    Grid<float> m(maps.width, maps.height, 3);
    Grid<float> v(maps.width, maps.height, 1);
    for (int y = 0; y < maps.height; ++y) {
        for (int x = 0; x < maps.width; ++x) {
            m.at(x, y, 0) = static_cast<float>(maps.c1.at(x, y));
            m.at(x, y, 1) = static_cast<float>(maps.c2.at(x, y));
            m.at(x, y, 2) = static_cast<float>(maps.c3.at(x, y));
            v.at(x, y) = maps.valid.at(x, y) ? 1.0f : 0.0f;
        }
    }
    *out_maps = wrap(std::move(m));
    *out_valid = wrap(std::move(v));
}

ShadowMask mask_from_image(const lgim_image* img, ShadowMask::Kind kind) {
    require_arg(img != nullptr, "mask image is null");
    require_arg(img->grid.channels() == 1, "mask image must have one channel");
    ShadowMask mask;
    mask.width = img->grid.width();
    mask.height = img->grid.height();
    mask.kind = kind;
    mask.values = Grid<double>(mask.width, mask.height);
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            mask.values.at(x, y) = img->grid.at(x, y);
    return mask;
}

Grid<float> float_image(const lgim_image* img, const char* what) {
    require_arg(img != nullptr, what);
    return img->grid;
}

} // namespace

extern "C" {

const char* lgim_version(void) { return "0.1.0"; }

const char* lgim_status_name(lgim_status status) {
    switch (status) {
        case LGIM_OK: return "ok";
        case LGIM_ERR_ARGUMENT: return "invalid-argument";
        case LGIM_ERR_DEPTH: return "invalid-depth";
        case LGIM_ERR_BEHIND_CAMERA: return "behind-camera";
        case LGIM_ERR_SHAPE: return "shape-mismatch";
        case LGIM_ERR_DEGENERATE: return "degenerate";
        case LGIM_ERR_FORMAT: return "format-error";
        case LGIM_ERR_CONFIG: return "config-error";
        case LGIM_ERR_IO: return "io-error";
        case LGIM_ERR_INTERNAL: return "internal-error";
    }
    return "unknown";
}

const char* lgim_last_error(void) { return g_last_error.c_str(); }

lgim_status lgim_image_create(int32_t width, int32_t height, int32_t channels,
                              lgim_image** out) {
    return guarded([&] {
        require_arg(out != nullptr, "out pointer is null");
        *out = wrap(Grid<float>(width, height, channels));
    });
}

void lgim_image_destroy(lgim_image* img) { delete img; }

int32_t lgim_image_width(const lgim_image* img) { return img ? img->grid.width() : 0; }
int32_t lgim_image_height(const lgim_image* img) { return img ? img->grid.height() : 0; }
int32_t lgim_image_channels(const lgim_image* img) { return img ? img->grid.channels() : 0; }

float* lgim_image_data(lgim_image* img) { return img ? img->grid.data() : nullptr; }
const float* lgim_image_data_const(const lgim_image* img) {
    return img ? img->grid.data() : nullptr;
}

uint64_t lgim_image_digest(const lgim_image* img) {
    return img ? grid_digest(img->grid) : 0;
}

lgim_status lgim_read_pfm(const char* path, lgim_image** out) {
    return guarded([&] {
        require_arg(path != nullptr && out != nullptr, "null argument");
        auto [header, grid] = read_pfm(path);
        *out = wrap(std::move(grid));
    });
}

lgim_status lgim_write_pfm(const char* path, const lgim_image* img) {
    return guarded([&] {
        require_arg(path != nullptr && img != nullptr, "null argument");
        write_pfm(path, img->grid);
    });
}

lgim_status lgim_read_mask_png(const char* path, lgim_image** out) {
    return guarded([&] {
        require_arg(path != nullptr && out != nullptr, "null argument");
        const Grid<double> mask = read_mask_png(path);
        *out = wrap(to_float_grid(mask));
    });
}

lgim_status lgim_write_mask_png(const char* path, const lgim_image* img) {
    return guarded([&] {
        require_arg(path != nullptr && img != nullptr, "null argument");
        require_arg(img->grid.channels() == 1, "mask image must have one channel");
        Grid<double> mask(img->grid.width(), img->grid.height());
        for (int y = 0; y < mask.height(); ++y)
            for (int x = 0; x < mask.width(); ++x)
                mask.at(x, y) = img->grid.at(x, y);
        write_mask_png(path, mask);
    });
}

lgim_status lgim_file_digest(const char* path, uint64_t* out) {
    return guarded([&] {
        require_arg(path != nullptr && out != nullptr, "null argument");
        std::ifstream in(path, std::ios::binary);
        if (!in) raise(ErrorCode::IoError, std::string("cannot open ") + path);
        std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
        *out = fnv1a64(bytes.data(), bytes.size());
    });
}

void lgim_lgi_params_defaults(lgim_lgi_params* out) {
    if (!out) return;
    const LgiConfig cfg;
    out->n_samples = cfg.n_samples;
    out->eta = cfg.eta;
    out->z_near = cfg.z_near;
    out->softness_beta = cfg.softness_beta;
    out->interp = cfg.interp == Interp::Nearest ? 0 : 1;
}

lgim_status lgim_scene_load(const char* path, lgim_scene** out) {
    return guarded([&] {
        require_arg(path != nullptr && out != nullptr, "null argument");
        *out = new lgim_scene{load_scene_config(path)};
    });
}

lgim_status lgim_scene_save(const lgim_scene* scene, const char* path) {
    return guarded([&] {
        require_arg(scene != nullptr && path != nullptr, "null argument");
        save_scene_config(path, scene->config);
    });
}

void lgim_scene_destroy(lgim_scene* scene) { delete scene; }

lgim_status lgim_scene_suite(uint64_t seed, int32_t count, int32_t index,
                             int32_t image_size, lgim_scene** out) {
    return guarded([&] {
        require_arg(out != nullptr, "out pointer is null");
        require_arg(index >= 0 && index < count, "suite index out of range");
        // Suites are deterministic in (seed, count, size); cache the last
        // one so per-index callers do not regenerate the whole suite.
        static std::mutex mutex;
        static uint64_t cached_seed = 0;
        static int32_t cached_count = -1, cached_size = -1;
        static std::vector<SuiteEntry> cached;
        std::lock_guard<std::mutex> lock(mutex);
        if (cached_count != count || cached_seed != seed || cached_size != image_size) {
            cached = scene_suite(seed, count, image_size);
            cached_seed = seed;
            cached_count = count;
            cached_size = image_size;
        }
        const SuiteEntry& e = cached[static_cast<size_t>(index)];
        SceneConfig cfg;
        cfg.seed = seed;
        cfg.intrinsics = e.intrinsics;
        cfg.lights = {e.light};
        cfg.scene = e.scene;
        *out = new lgim_scene{std::move(cfg)};
    });
}

lgim_status lgim_scene_intrinsics(const lgim_scene* scene, lgim_intrinsics* out) {
    return guarded([&] {
        require_arg(scene != nullptr && out != nullptr, "null argument");
        const CameraIntrinsics& K = scene->config.intrinsics;
        *out = {K.fx, K.fy, K.cx, K.cy, K.width, K.height};
    });
}

lgim_status lgim_scene_seed(const lgim_scene* scene, uint64_t* out) {
    return guarded([&] {
        require_arg(scene != nullptr && out != nullptr, "null argument");
        *out = scene->config.seed;
    });
}

lgim_status lgim_scene_light_count(const lgim_scene* scene, int32_t* out) {
    return guarded([&] {
        require_arg(scene != nullptr && out != nullptr, "null argument");
        *out = static_cast<int32_t>(scene->config.lights.size());
    });
}

lgim_status lgim_scene_light(const lgim_scene* scene, int32_t index, lgim_light* out) {
    return guarded([&] {
        require_arg(scene != nullptr && out != nullptr, "null argument");
        require_arg(index >= 0 &&
                        index < static_cast<int32_t>(scene->config.lights.size()),
                    "light index out of range");
        from_light(scene->config.lights[static_cast<size_t>(index)], out);
    });
}

lgim_status lgim_scene_lgi_params(const lgim_scene* scene, lgim_lgi_params* out) {
    return guarded([&] {
        require_arg(scene != nullptr && out != nullptr, "null argument");
        const LgiConfig& cfg = scene->config.lgi;
        out->n_samples = cfg.n_samples;
        out->eta = cfg.eta;
        out->z_near = cfg.z_near;
        out->softness_beta = cfg.softness_beta;
        out->interp = cfg.interp == Interp::Nearest ? 0 : 1;
    });
}

lgim_status lgim_scene_json(const lgim_scene* scene, char** out) {
    return guarded([&] {
        require_arg(scene != nullptr && out != nullptr, "null argument");
        const std::string text = scene_config_to_json(scene->config);
        char* buf = new char[text.size() + 1];
        std::memcpy(buf, text.c_str(), text.size() + 1);
        *out = buf;
    });
}

void lgim_string_free(char* s) { delete[] s; }

lgim_status lgim_light_from_angles(double azimuth, double elevation, double distance,
                                   const double anchor[3], lgim_light* out) {
    return guarded([&] {
        require_arg(anchor != nullptr && out != nullptr, "null argument");
        const LightSpec l = light_from_angles(azimuth, elevation, distance,
                                              {anchor[0], anchor[1], anchor[2]});
        from_light(l, out);
    });
}

lgim_status lgim_render_depth(const lgim_scene* scene, int32_t threads, lgim_image** out) {
    return guarded([&] {
        require_arg(scene != nullptr && out != nullptr, "null argument");
        const DepthMap depth =
            render_depth(scene->config.scene, scene->config.intrinsics, threads);
        *out = wrap(depth.values);
    });
}

lgim_status lgim_oracle_shadow_mask(const lgim_scene* scene, const lgim_image* depth,
                                    int32_t light_index, int32_t threads,
                                    lgim_image** out) {
    return guarded([&] {
        require_arg(scene != nullptr && out != nullptr, "null argument");
        require_arg(light_index >= 0 &&
                        light_index < static_cast<int32_t>(scene->config.lights.size()),
                    "light index out of range");
        const DepthMap d = to_depth(depth);
        const ShadowMask mask = oracle_shadow_mask(
            scene->config.scene, d, scene->config.intrinsics,
            scene->config.lights[static_cast<size_t>(light_index)], OracleConfig{}, threads);
        *out = wrap(to_float_grid(mask.values));
    });
}

lgim_status lgim_render_direct(const lgim_scene* scene, const int32_t* light_indices,
                               int32_t n_lights, int32_t threads, lgim_image** out) {
    return guarded([&] {
        require_arg(scene != nullptr && out != nullptr, "null argument");
        std::vector<LightSpec> lights;
        if (!light_indices) {
            require_arg(n_lights == 0, "light_indices is null but n_lights > 0");
            lights = scene->config.lights;
        } else {
            for (int32_t i = 0; i < n_lights; ++i) {
                const int32_t idx = light_indices[i];
                require_arg(idx >= 0 &&
                                idx < static_cast<int32_t>(scene->config.lights.size()),
                            "light index out of range");
                lights.push_back(scene->config.lights[static_cast<size_t>(idx)]);
            }
        }
        const LinearImage img = render_direct(scene->config.scene, scene->config.intrinsics,
                                              lights, OracleConfig{}, threads);
        *out = wrap(img);
    });
}

lgim_status lgim_compute_lgi(const lgim_image* depth, const lgim_intrinsics* intrinsics,
                             const lgim_light* light, const lgim_lgi_params* params,
                             int32_t threads, lgim_image** out_maps,
                             lgim_image** out_valid) {
    return guarded([&] {
        require_arg(out_maps != nullptr && out_valid != nullptr, "null out pointer");
        const DepthMap d = to_depth(depth);
        const CameraIntrinsics K = to_intrinsics(intrinsics);
        const LightSpec l = to_light(light);
        const LgiConfig cfg = to_lgi_config(params);
        const LgiMaps maps = compute_lgi(d, K, l, cfg, threads);
        maps_to_images(maps, out_maps, out_valid);
    });
}

lgim_status lgim_compute_lgi_sunlight(const lgim_image* depth,
                                      const lgim_intrinsics* intrinsics,
                                      const double direction[3],
                                      const lgim_lgi_params* params, int32_t threads,
                                      lgim_image** out_maps, lgim_image** out_valid) {
    return guarded([&] {
        require_arg(direction != nullptr, "direction is null");
        require_arg(out_maps != nullptr && out_valid != nullptr, "null out pointer");
        const DepthMap d = to_depth(depth);
        const CameraIntrinsics K = to_intrinsics(intrinsics);
        const LgiConfig cfg = to_lgi_config(params);
        const LgiMaps maps = lgi_sunlight(
            d, K, {direction[0], direction[1], direction[2]}, cfg, threads);
        maps_to_images(maps, out_maps, out_valid);
    });
}

lgim_status lgim_hard_mask(const lgim_image* maps, const lgim_image* valid, double eta,
                           lgim_image** out) {
    return guarded([&] {
        require_arg(out != nullptr, "out pointer is null");
        const LgiMaps m = maps_from_images(maps, valid);
        const ShadowMask mask = hard_mask(m, eta);
        *out = wrap(to_float_grid(mask.values));
    });
}

lgim_status lgim_soft_mask(const lgim_image* maps, const lgim_image* valid, double eta,
                           double beta, lgim_image** out) {
    return guarded([&] {
        require_arg(out != nullptr, "out pointer is null");
        const LgiMaps m = maps_from_images(maps, valid);
        const ShadowMask mask = soft_mask(m, eta, beta);
        *out = wrap(to_float_grid(mask.values));
    });
}

lgim_status lgim_confusion_counts(const lgim_image* pred, const lgim_image* gt,
                                  double threshold, lgim_confusion* out) {
    return guarded([&] {
        require_arg(out != nullptr, "out pointer is null");
        const ShadowMask p = mask_from_image(pred, ShadowMask::Kind::Soft);
        const ShadowMask g = mask_from_image(gt, ShadowMask::Kind::Hard);
        const ConfusionCounts c = confusion(p, g, threshold);
        *out = {c.tp, c.fp, c.fn, c.tn};
    });
}

lgim_status lgim_iou(const lgim_confusion* c, double* out) {
    return guarded([&] {
        require_arg(c != nullptr && out != nullptr, "null argument");
        *out = iou({c->tp, c->fp, c->fn, c->tn});
    });
}

lgim_status lgim_ber(const lgim_confusion* c, double* out) {
    return guarded([&] {
        require_arg(c != nullptr && out != nullptr, "null argument");
        *out = ber({c->tp, c->fp, c->fn, c->tn});
    });
}

lgim_status lgim_rmse(const lgim_image* a, const lgim_image* b, const lgim_image* region,
                      double* out) {
    return guarded([&] {
        require_arg(a != nullptr && b != nullptr && out != nullptr, "null argument");
        if (!region) {
            *out = rmse(a->grid, b->grid, nullptr);
            return;
        }
        require_arg(region->grid.channels() == 1, "region must have one channel");
        Grid<uint8_t> mask(region->grid.width(), region->grid.height());
        for (int y = 0; y < mask.height(); ++y)
            for (int x = 0; x < mask.width(); ++x)
                mask.at(x, y) = region->grid.at(x, y) != 0.0f ? 1 : 0;
        *out = rmse(a->grid, b->grid, &mask);
    });
}

lgim_status lgim_bridge_sample(const double* z0, const double* z1, const double* noise,
                               size_t dim, double t, double sigma, double* out) {
    return guarded([&] {
        require_arg(z0 && z1 && noise && out, "null argument");
        const LatentVec r = bridge_sample(LatentVec(z0, z0 + dim), LatentVec(z1, z1 + dim),
                                          t, sigma, LatentVec(noise, noise + dim));
        std::memcpy(out, r.data(), dim * sizeof(double));
    });
}

lgim_status lgim_drift_target(const double* zt, const double* z1, size_t dim, double t,
                              double* out) {
    return guarded([&] {
        require_arg(zt && z1 && out, "null argument");
        const LatentVec r = drift_target(LatentVec(zt, zt + dim), LatentVec(z1, z1 + dim), t);
        std::memcpy(out, r.data(), dim * sizeof(double));
    });
}

lgim_status lgim_retrieve_target(const double* zt, const double* v, size_t dim, double t,
                                 double* out) {
    return guarded([&] {
        require_arg(zt && v && out, "null argument");
        const LatentVec r = retrieve_target(LatentVec(zt, zt + dim), t, LatentVec(v, v + dim));
        std::memcpy(out, r.data(), dim * sizeof(double));
    });
}

lgim_status lgim_weighted_l1(const lgim_image* x1_hat, const lgim_image* x1,
                             const lgim_image* x0, double tau, int32_t dilation_kernel,
                             double* out) {
    return guarded([&] {
        require_arg(out != nullptr, "out pointer is null");
        WeightedL1Config cfg;
        cfg.tau = tau;
        cfg.dilation_kernel = dilation_kernel;
        *out = weighted_l1(float_image(x1_hat, "x1_hat is null"),
                           float_image(x1, "x1 is null"), float_image(x0, "x0 is null"), cfg);
    });
}

lgim_status lgim_combined_loss(double lz, double lx, double lambda, double* out) {
    return guarded([&] {
        require_arg(out != nullptr, "out pointer is null");
        *out = combined_loss(lz, lx, lambda);
    });
}

lgim_status lgim_mask_bce(const lgim_image* pred, const lgim_image* gt, double* out) {
    return guarded([&] {
        require_arg(out != nullptr, "out pointer is null");
        *out = mask_bce(mask_from_image(pred, ShadowMask::Kind::Soft),
                        mask_from_image(gt, ShadowMask::Kind::Hard));
    });
}

lgim_status lgim_mask_iou_loss(const lgim_image* pred, const lgim_image* gt, double* out) {
    return guarded([&] {
        require_arg(out != nullptr, "out pointer is null");
        *out = mask_iou_loss(mask_from_image(pred, ShadowMask::Kind::Soft),
                             mask_from_image(gt, ShadowMask::Kind::Hard));
    });
}

lgim_status lgim_compose(const lgim_image* const* images, int32_t n, lgim_image** out) {
    return guarded([&] {
        require_arg(images != nullptr && out != nullptr, "null argument");
        require_arg(n >= 1, "compose requires at least one image");
        std::vector<LinearImage> inputs;
        inputs.reserve(static_cast<size_t>(n));
        for (int32_t i = 0; i < n; ++i) {
            require_arg(images[i] != nullptr, "null image in list");
            inputs.push_back(images[i]->grid);
        }
        *out = wrap(compose_lights(inputs));
    });
}

lgim_status lgim_clamp_display(const lgim_image* img, lgim_image** out) {
    return guarded([&] {
        require_arg(img != nullptr && out != nullptr, "null argument");
        *out = wrap(clamp_display(img->grid));
    });
}

} // extern "C"
