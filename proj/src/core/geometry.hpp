// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "core/grid.hpp"

namespace lgimap {

// Camera frame: x right, y down, z forward. All angles radians, all
// lengths scene units.
struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Point3 operator*(double s) const { return {x * s, y * s, z * s}; }

    double dot(const Point3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline Point3 operator*(double s, const Point3& p) { return p * s; }

struct Pixel {
    double u = 0.0;
    double v = 0.0;
};

// Pinhole intrinsics. Pixel (0,0) is the top-left pixel center; the image
// rectangle spans [-0.5, width-0.5] x [-0.5, height-0.5].
struct CameraIntrinsics {
    double fx = 0.0;
    double fy = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    int width = 0;
    int height = 0;

    // fx=W, fy=H, cx=W/2, cy=H/2: the convention for normalized scenes
    // (depth in (0,1], lateral extent [-0.5, 0.5] at unit depth).
    static CameraIntrinsics default_for(int width, int height);

    void validate() const;

    bool contains(double u, double v) const {
        return u >= -0.5 && u <= width - 0.5 && v >= -0.5 && v <= height - 0.5;
    }
};

// Single-channel float32 depth grid, depth measured along camera +z.
// Entries that are non-finite or <= 0 are invalid.
struct DepthMap {
    Grid<float> values;

    DepthMap() = default;
    DepthMap(int width, int height, float fill = std::numeric_limits<float>::quiet_NaN())
        : values(width, height, 1, fill) {}

    int width() const { return values.width(); }
    int height() const { return values.height(); }

    float at(int x, int y) const { return values.at(x, y); }
    float& at(int x, int y) { return values.at(x, y); }

    static bool valid_value(float d) { return std::isfinite(d) && d > 0.0f; }
    bool is_valid(int x, int y) const { return valid_value(values.at(x, y)); }

    // Largest valid depth, or nullopt when every entry is invalid.
    std::optional<double> max_valid_depth() const;
};

struct LightSpec {
    enum class Kind { Point, Directional };

    Kind kind = Kind::Point;
    Point3 position;   // Point only
    Point3 direction;  // Directional only; unit vector pointing at the light
    std::array<double, 3> color = {1.0, 1.0, 1.0};
    double radius = 0.0;
    double intensity = 1.0;

    // Derived metadata carried alongside (not consumed by the LGI math).
    std::optional<double> azimuth;
    std::optional<double> elevation;
    std::optional<double> distance;

    static LightSpec point(const Point3& position);
    static LightSpec directional(const Point3& direction);

    void validate() const;
};

// p = d * K^-1 [u v 1]^T. Sub-pixel (u,v) allowed.
Point3 lift(const CameraIntrinsics& K, double u, double v, double d);

// (fx*px/pz + cx, fy*py/pz + cy); no clamping to image bounds.
Pixel project(const CameraIntrinsics& K, const Point3& p);

// arcsin of the component of (to-from) along the camera-plane normal
// n = (0,0,1), in [-pi/2, pi/2].
double elevation_angle(const Point3& from, const Point3& to);

// Point light at anchor + distance * (cos e cos a, cos e sin a, sin e).
// Azimuth a is measured in the camera xy-plane from +x toward +y,
// elevation e toward +z. Requires distance > 0 and e in (-pi/2, pi/2).
LightSpec light_from_angles(double azimuth, double elevation, double distance,
                            const Point3& anchor);

} // namespace lgimap
