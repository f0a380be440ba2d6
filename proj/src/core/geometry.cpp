// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/geometry.hpp"

#include <limits>

namespace lgimap {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::InvalidDepth: return "InvalidDepth";
        case ErrorCode::BehindCamera: return "BehindCamera";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::DegenerateVector: return "DegenerateVector";
        case ErrorCode::DegenerateTime: return "DegenerateTime";
        case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorCode::DegenerateClass: return "DegenerateClass";
        case ErrorCode::DegenerateRegion: return "DegenerateRegion";
        case ErrorCode::FormatError: return "FormatError";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

CameraIntrinsics CameraIntrinsics::default_for(int width, int height) {
    CameraIntrinsics K;
    K.fx = static_cast<double>(width);
    K.fy = static_cast<double>(height);
    K.cx = width / 2.0;
    K.cy = height / 2.0;
    K.width = width;
    K.height = height;
    K.validate();
    return K;
}

void CameraIntrinsics::validate() const {
    if (!(fx > 0.0) || !(fy > 0.0))
        raise(ErrorCode::InvalidArgument, "intrinsics require fx > 0 and fy > 0");
    if (width < 1 || height < 1)
        raise(ErrorCode::InvalidArgument, "intrinsics require width >= 1 and height >= 1");
    if (!std::isfinite(cx) || !std::isfinite(cy))
        raise(ErrorCode::InvalidArgument, "intrinsics require finite principal point");
}

std::optional<double> DepthMap::max_valid_depth() const {
    double best = -1.0;
    const float* p = values.data();
    const size_t n = values.size();
    for (size_t i = 0; i < n; ++i)
        if (valid_value(p[i]) && p[i] > best) best = p[i];
    if (best < 0.0) return std::nullopt;
    return best;
}

LightSpec LightSpec::point(const Point3& position) {
    LightSpec l;
    l.kind = Kind::Point;
    l.position = position;
    l.validate();
    return l;
}

LightSpec LightSpec::directional(const Point3& direction) {
    LightSpec l;
    l.kind = Kind::Directional;
    l.direction = direction;
    l.validate();
    return l;
}

void LightSpec::validate() const {
    for (double c : color)
        if (!(c >= 0.0) || !(c <= 1.0))
            raise(ErrorCode::InvalidArgument, "light color components must lie in [0,1]");
    if (!(radius >= 0.0))
        raise(ErrorCode::InvalidArgument, "light radius must be >= 0");
    if (!(intensity >= 0.0))
        raise(ErrorCode::InvalidArgument, "light intensity must be >= 0");
    if (kind == Kind::Point) {
        if (!position.finite())
            raise(ErrorCode::InvalidArgument, "point light position must be finite");
    } else {
        if (!direction.finite() || direction.norm() == 0.0)
            raise(ErrorCode::DegenerateVector, "directional light requires a nonzero direction");
        if (std::abs(direction.norm() - 1.0) > 1e-9)
            raise(ErrorCode::InvalidArgument, "directional light direction must be unit length");
    }
}

Point3 lift(const CameraIntrinsics& K, double u, double v, double d) {
    if (!std::isfinite(d) || d <= 0.0)
        raise(ErrorCode::InvalidDepth, "lift requires finite depth > 0");
    return {(u - K.cx) * d / K.fx, (v - K.cy) * d / K.fy, d};
}

Pixel project(const CameraIntrinsics& K, const Point3& p) {
    if (!(p.z > 0.0))
        raise(ErrorCode::BehindCamera, "project requires p.z > 0");
    return {K.fx * p.x / p.z + K.cx, K.fy * p.y / p.z + K.cy};
}

double elevation_angle(const Point3& from, const Point3& to) {
    const Point3 v = to - from;
    const double r = v.norm();
    if (r == 0.0)
        raise(ErrorCode::DegenerateVector, "elevation_angle of a zero-length vector");
    double s = v.z / r;
    if (s > 1.0) s = 1.0;
    if (s < -1.0) s = -1.0;
    return std::asin(s);
}

LightSpec light_from_angles(double azimuth, double elevation, double distance,
                            const Point3& anchor) {
    if (!(distance > 0.0))
        raise(ErrorCode::InvalidArgument, "light_from_angles requires distance > 0");
    constexpr double half_pi = 1.5707963267948966;
    if (!(elevation > -half_pi) || !(elevation < half_pi))
        raise(ErrorCode::InvalidArgument, "light_from_angles requires elevation in (-pi/2, pi/2)");
    const double ce = std::cos(elevation);
    const Point3 dir{ce * std::cos(azimuth), ce * std::sin(azimuth), std::sin(elevation)};
    LightSpec l = LightSpec::point(anchor + distance * dir);
    l.azimuth = azimuth;
    l.elevation = elevation;
    l.distance = distance;
    return l;
}

} // namespace lgimap
