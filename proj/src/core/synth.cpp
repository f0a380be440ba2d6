// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "core/threading.hpp"

namespace lgimap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::optional<double> hit_plane_y(double plane_y, const Point3& o, const Point3& d,
                                  double t_min, double t_max) {
    if (d.y == 0.0) return std::nullopt;
    const double t = (plane_y - o.y) / d.y;
    if (t > t_min && t < t_max) return t;
    return std::nullopt;
}

std::optional<double> hit_plane_z(double plane_z, const Point3& o, const Point3& d,
                                  double t_min, double t_max) {
    if (d.z == 0.0) return std::nullopt;
    const double t = (plane_z - o.z) / d.z;
    if (t > t_min && t < t_max) return t;
    return std::nullopt;
}

std::optional<double> hit_sphere(const Sphere& s, const Point3& o, const Point3& d,
                                 double t_min, double t_max) {
    const Point3 oc = o - s.center;
    const double a = d.dot(d);
    const double b = 2.0 * d.dot(oc);
    const double c = oc.dot(oc) - s.radius * s.radius;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    const double t0 = (-b - sq) / (2.0 * a);
    const double t1 = (-b + sq) / (2.0 * a);
    if (t0 > t_min && t0 < t_max) return t0;
    if (t1 > t_min && t1 < t_max) return t1;
    return std::nullopt;
}

std::optional<double> hit_box(const BoxAA& box, const Point3& o, const Point3& d,
                              double t_min, double t_max) {
    double t0 = -kInf, t1 = kInf;
    const double omin[3] = {box.min.x, box.min.y, box.min.z};
    const double omax[3] = {box.max.x, box.max.y, box.max.z};
    const double oo[3] = {o.x, o.y, o.z};
    const double dd[3] = {d.x, d.y, d.z};
    for (int i = 0; i < 3; ++i) {
        if (dd[i] == 0.0) {
            if (oo[i] < omin[i] || oo[i] > omax[i]) return std::nullopt;
            continue;
        }
        double a = (omin[i] - oo[i]) / dd[i];
        double b = (omax[i] - oo[i]) / dd[i];
        if (a > b) std::swap(a, b);
        t0 = std::max(t0, a);
        t1 = std::min(t1, b);
        if (t0 > t1) return std::nullopt;
    }
    if (t0 > t_min && t0 < t_max) return t0;
    if (t1 > t_min && t1 < t_max) return t1; // origin inside the box
    return std::nullopt;
}

std::optional<double> hit_primitive(const Primitive& prim, const Point3& o,
                                    const Point3& d, double t_min, double t_max) {
    return std::visit(
        [&](const auto& p) -> std::optional<double> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GroundPlane>)
                return hit_plane_y(p.y, o, d, t_min, t_max);
            else if constexpr (std::is_same_v<T, Wall>)
                return hit_plane_z(p.z, o, d, t_min, t_max);
            else if constexpr (std::is_same_v<T, Sphere>)
                return hit_sphere(p, o, d, t_min, t_max);
            else
                return hit_box(p, o, d, t_min, t_max);
        },
        prim);
}

Point3 primitive_normal(const Primitive& prim, const Point3& at) {
    return std::visit(
        [&](const auto& p) -> Point3 {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GroundPlane>) {
                return {0.0, -1.0, 0.0}; // up, toward the camera side
            } else if constexpr (std::is_same_v<T, Wall>) {
                return {0.0, 0.0, -1.0};
            } else if constexpr (std::is_same_v<T, Sphere>) {
                const Point3 n = at - p.center;
                const double r = n.norm();
                return r > 0.0 ? n * (1.0 / r) : Point3{0.0, 0.0, -1.0};
            } else {
                const Point3 c = (p.min + p.max) * 0.5;
                const Point3 h = (p.max - p.min) * 0.5;
                const double rx = (at.x - c.x) / h.x;
                const double ry = (at.y - c.y) / h.y;
                const double rz = (at.z - c.z) / h.z;
                const double ax = std::abs(rx), ay = std::abs(ry), az = std::abs(rz);
                if (ax >= ay && ax >= az) return {rx > 0 ? 1.0 : -1.0, 0.0, 0.0};
                if (ay >= ax && ay >= az) return {0.0, ry > 0 ? 1.0 : -1.0, 0.0};
                return {0.0, 0.0, rz > 0 ? 1.0 : -1.0};
            }
        },
        prim);
}

bool shadow_blocked(const AnalyticScene& scene, const Point3& surface,
                    const LightSpec& light, const OracleConfig& cfg) {
    if (light.kind == LightSpec::Kind::Point) {
        const Point3 to_light = light.position - surface;
        const double dist = to_light.norm();
        if (dist == 0.0) return false;
        const Point3 w = to_light * (1.0 / dist);
        const Point3 origin = surface + cfg.shadow_epsilon * w;
        const double t_max = std::min(dist - cfg.shadow_epsilon, cfg.max_t);
        return intersect_scene(scene, origin, w, 0.0, t_max).has_value();
    }
    const Point3 origin = surface + cfg.shadow_epsilon * light.direction;
    return intersect_scene(scene, origin, light.direction, 0.0, cfg.max_t).has_value();
}

double next_unit(std::mt19937_64& rng) {
    // Portable uniform in [0,1); std::uniform_real_distribution is
    // implementation-defined and would break the bit-for-bit contract.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double a, double b) {
    return a + (b - a) * next_unit(rng);
}

} // namespace

void AnalyticScene::validate() const {
    if (primitives.empty())
        raise(ErrorCode::InvalidArgument, "scene requires at least one primitive");
    for (const auto& prim : primitives) {
        if (const auto* s = std::get_if<Sphere>(&prim)) {
            if (!(s->radius > 0.0))
                raise(ErrorCode::InvalidArgument, "sphere radius must be > 0");
        } else if (const auto* b = std::get_if<BoxAA>(&prim)) {
            if (!(b->min.x < b->max.x) || !(b->min.y < b->max.y) || !(b->min.z < b->max.z))
                raise(ErrorCode::InvalidArgument, "box requires min < max componentwise");
        }
    }
}

void OracleConfig::validate() const {
    if (!(shadow_epsilon > 0.0))
        raise(ErrorCode::InvalidArgument, "oracle requires shadow_epsilon > 0");
}

std::optional<double> intersect_scene(const AnalyticScene& scene, const Point3& origin,
                                      const Point3& dir, double t_min, double t_max) {
    std::optional<double> best;
    for (const auto& prim : scene.primitives) {
        const auto t = hit_primitive(prim, origin, dir, t_min, best ? *best : t_max);
        if (t) best = t;
    }
    return best;
}

DepthMap render_depth(const AnalyticScene& scene, const CameraIntrinsics& K, int threads) {
    scene.validate();
    K.validate();
    DepthMap depth(K.width, K.height);
    parallel_rows(K.height, threads, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            for (int x = 0; x < K.width; ++x) {
                const Point3 q{(x - K.cx) / K.fx, (y - K.cy) / K.fy, 1.0};
                const auto t = intersect_scene(scene, {0, 0, 0}, q, 0.0, kInf);
                if (t) depth.at(x, y) = static_cast<float>(*t); // depth = z since q.z = 1
            }
        }
    });
    return depth;
}

ShadowMask oracle_shadow_mask(const AnalyticScene& scene, const DepthMap& depth,
                              const CameraIntrinsics& K, const LightSpec& light,
                              const OracleConfig& cfg, int threads) {
    scene.validate();
    K.validate();
    cfg.validate();
    light.validate();
    if (depth.width() != K.width || depth.height() != K.height)
        raise(ErrorCode::ShapeMismatch, "depth map dimensions do not match intrinsics");

    ShadowMask mask;
    mask.width = K.width;
    mask.height = K.height;
    mask.kind = ShadowMask::Kind::Hard;
    mask.values = Grid<double>(K.width, K.height);
    parallel_rows(K.height, threads, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            for (int x = 0; x < K.width; ++x) {
                if (!depth.is_valid(x, y)) continue;
                const Point3 p = lift(K, x, y, depth.at(x, y));
                if (shadow_blocked(scene, p, light, cfg)) mask.values.at(x, y) = 1.0;
            }
        }
    });
    return mask;
}

LinearImage render_direct(const AnalyticScene& scene, const CameraIntrinsics& K,
                          std::span<const LightSpec> lights, const OracleConfig& cfg,
                          int threads) {
    scene.validate();
    K.validate();
    cfg.validate();
    for (const auto& l : lights) l.validate();

    LinearImage img(K.width, K.height, 3, 0.0f);
    parallel_rows(K.height, threads, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            for (int x = 0; x < K.width; ++x) {
                const Point3 q{(x - K.cx) / K.fx, (y - K.cy) / K.fy, 1.0};
                const auto t = intersect_scene(scene, {0, 0, 0}, q, 0.0, kInf);
                if (!t) continue;
                const Point3 X = q * (*t);
                Primitive const* hit_prim = nullptr;
                // Recover the hit primitive for its normal.
                double best = kInf;
                for (const auto& prim : scene.primitives) {
                    const auto th = hit_primitive(prim, {0, 0, 0}, q, 0.0, kInf);
                    if (th && *th < best) {
                        best = *th;
                        hit_prim = &prim;
                    }
                }
                if (!hit_prim) continue;
                Point3 n = primitive_normal(*hit_prim, X);
                if (n.dot(q) > 0.0) n = n * -1.0; // face the camera

                double rgb[3] = {0.0, 0.0, 0.0};
                for (const auto& light : lights) {
                    Point3 w;
                    double falloff = 1.0;
                    if (light.kind == LightSpec::Kind::Point) {
                        const Point3 to_light = light.position - X;
                        const double dist = to_light.norm();
                        if (dist == 0.0) continue;
                        w = to_light * (1.0 / dist);
                        falloff = 1.0 / (dist * dist);
                    } else {
                        w = light.direction;
                    }
                    const double lambert = n.dot(w);
                    if (lambert <= 0.0) continue;
                    if (shadow_blocked(scene, X, light, cfg)) continue;
                    const double scale = light.intensity * lambert * falloff;
                    for (int c = 0; c < 3; ++c) rgb[c] += scale * light.color[c];
                }
                for (int c = 0; c < 3; ++c)
                    img.at(x, y, c) = static_cast<float>(rgb[c]);
            }
        }
    });
    return img;
}

std::vector<SuiteEntry> scene_suite(uint64_t seed, int count, int image_size) {
    if (count < 0)
        raise(ErrorCode::InvalidArgument, "scene_suite requires count >= 0");
    if (image_size < 16)
        raise(ErrorCode::InvalidArgument, "scene_suite requires image_size >= 16");

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    const CameraIntrinsics K = CameraIntrinsics::default_for(image_size, image_size);
    const OracleConfig ocfg;

    // Front-lit desk scenes built around low, wide slab occluders: their
    // camera-visible faces carry every surface an oblique steep light can
    // graze, which is the regime where the 2.5D hard mask tracks the exact
    // oracle. Shadows must also be large relative to the eta-wide boundary
    // band (small or border-clipped shadows rejected) but not overly
    // stretched (grazing-band error grows quadratically with stretch).
    // Gates are probed on a half-resolution render to keep generation cheap.
    const int probe_size = std::max(64, image_size / 2);
    const CameraIntrinsics K_probe = CameraIntrinsics::default_for(probe_size, probe_size);
    const double px_scale = probe_size / 256.0;
    const int min_shadow_pixels =
        std::max(16, static_cast<int>(330.0 * px_scale * px_scale));
    const int max_shadow_pixels = static_cast<int>(800.0 * px_scale * px_scale);

    std::vector<SuiteEntry> out;
    out.reserve(count);
    long attempts = 0;
    const long max_attempts = 400L * std::max(count, 1);
    while (static_cast<int>(out.size()) < count) {
        if (++attempts > max_attempts)
            raise(ErrorCode::Internal, "scene_suite rejection loop did not converge");
        AnalyticScene scene;
        const double ground_y = uniform(rng, 0.58, 0.66);
        scene.primitives.push_back(GroundPlane{ground_y});
        if (next_unit(rng) < 0.3)
            scene.primitives.push_back(Wall{uniform(rng, 3.4, 4.2)});

        // The slab sits slightly on the shadow side of the image center so
        // the camera sees little of its shadow-side face (grazing views of
        // that face are the main 2.5D phantom source).
        const double side = next_unit(rng) < 0.5 ? -1.0 : 1.0; // shadow direction
        const double ox = side * uniform(rng, 0.02, 0.1);
        const double oz = uniform(rng, 1.9, 2.1);
        const double hx = uniform(rng, 0.55, 0.65);
        const double hy = uniform(rng, 0.08, 0.09);
        const double hz = uniform(rng, 0.42, 0.5);
        scene.primitives.push_back(
            BoxAA{{ox - hx, ground_y - 2.0 * hy, oz - hz}, {ox + hx, ground_y, oz + hz}});

        // Steep lateral light in front of the occluder, opposite the shadow
        // side; the shadow is the fringe the slab casts sideways and
        // backwards onto the ground.
        const double lx = ox - side * uniform(rng, 1.35, 1.5);
        const double ly = ground_y - uniform(rng, 1.1, 1.25);
        const double lz = uniform(rng, 0.95, 1.1);

        LightSpec light = LightSpec::point({lx, ly, lz});
        light.color = {uniform(rng, 0.5, 1.0), uniform(rng, 0.5, 1.0), uniform(rng, 0.5, 1.0)};
        light.radius = uniform(rng, 0.0, 0.05);
        light.intensity = uniform(rng, 0.8, 1.5);

        // Accept only scenes whose cast shadow is clearly visible and
        // fully inside the image.
        const DepthMap depth = render_depth(scene, K_probe);
        const ShadowMask gt = oracle_shadow_mask(scene, depth, K_probe, light, ocfg);
        int shadowed = 0;
        for (int y = 0; y < gt.height; ++y)
            for (int x = 0; x < gt.width; ++x)
                if (gt.values.at(x, y) == 1.0) ++shadowed;
        if (shadowed < min_shadow_pixels || shadowed > max_shadow_pixels) continue;

        out.push_back({std::move(scene), std::move(light), K});
    }
    return out;
}

} // namespace lgimap
