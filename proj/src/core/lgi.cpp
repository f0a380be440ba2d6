// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/lgi.hpp"

#include <algorithm>
#include <cmath>

#include "core/threading.hpp"

namespace lgimap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp_unit(double x) { return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x); }

double sigmoid(double x) {
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

struct ClippedRay {
    bool feasible = false;
    double delta_max = 0.0;
    RayClip clip = RayClip::None;
};

// Largest t in (0, cap] keeping p + t*dv inside z >= z_near, z <= z_cap and
// the projected image rectangle. Every bound is linear in t once the
// projection inequalities are multiplied through by z > 0.
ClippedRay clip_ray(const Point3& p, const Point3& dv, const CameraIntrinsics& K,
                    double z_near, double cap, double z_cap) {
    double lo = 0.0;
    double hi = cap;
    RayClip clip = std::isfinite(cap) ? RayClip::Cap : RayClip::None;
    bool feasible = true;

    auto apply_le = [&](double a, double b, RayClip id) { // a*t <= b
        if (a > 0.0) {
            const double t = b / a;
            if (t < hi) {
                hi = t;
                clip = id;
            }
        } else if (a == 0.0) {
            if (b < 0.0) feasible = false;
        } else {
            lo = std::max(lo, b / a);
        }
    };

    apply_le(-dv.z, p.z - z_near, RayClip::ZNear);
    if (std::isfinite(z_cap)) apply_le(dv.z, z_cap - p.z, RayClip::ZFar);

    const double umin = -0.5, umax = K.width - 0.5;
    const double vmin = -0.5, vmax = K.height - 0.5;
    apply_le(K.fx * dv.x - (umax - K.cx) * dv.z, (umax - K.cx) * p.z - K.fx * p.x, RayClip::UMax);
    apply_le(-(K.fx * dv.x - (umin - K.cx) * dv.z), K.fx * p.x - (umin - K.cx) * p.z, RayClip::UMin);
    apply_le(K.fy * dv.y - (vmax - K.cy) * dv.z, (vmax - K.cy) * p.z - K.fy * p.y, RayClip::VMax);
    apply_le(-(K.fy * dv.y - (vmin - K.cy) * dv.z), K.fy * p.y - (vmin - K.cy) * p.z, RayClip::VMin);

    if (!feasible || !(hi > 0.0) || hi < lo || !std::isfinite(hi)) return {};
    return {true, hi, clip};
}

struct RayBasis {
    bool degenerate = false; // light coincides with p
    Point3 dvec;             // l - p (point) or unit direction (directional)
    double e_light = 0.0;
    ClippedRay clipped;
};

RayBasis make_basis(const Point3& p, const LightSpec& light, const CameraIntrinsics& K,
                    const LgiConfig& cfg, double z_far) {
    RayBasis basis;
    if (light.kind == LightSpec::Kind::Point) {
        basis.dvec = light.position - p;
        const double r = basis.dvec.norm();
        if (r == 0.0) {
            basis.degenerate = true;
            return basis;
        }
        basis.e_light = std::asin(clamp_unit(basis.dvec.z / r));
        basis.clipped = clip_ray(p, basis.dvec, K, cfg.z_near, 1.0, kInf);
    } else {
        basis.dvec = light.direction;
        basis.e_light = std::asin(clamp_unit(basis.dvec.z));
        basis.clipped = clip_ray(p, basis.dvec, K, cfg.z_near, kInf, z_far);
    }
    return basis;
}

struct Fetch {
    bool valid = false;
    double depth = 0.0;
    double u = 0.0, v = 0.0; // relift coordinates: snapped to the source
                             // pixel for nearest lookups, fractional for
                             // bilinear blends
    int u0 = -1, v0 = -1;    // bilinear cell, -1 for nearest
    double fu = 0.0, fv = 0.0;
    bool bilinear = false;   // true when all four neighbors participated
    bool clamped = false;
};

Fetch fetch_depth_detail(const DepthMap& depth, double u, double v, Interp interp) {
    Fetch f;
    const int W = depth.width();
    const int H = depth.height();
    if (interp == Interp::Bilinear) {
        const double uf = std::floor(u);
        const double vf = std::floor(v);
        const int u0 = static_cast<int>(uf);
        const int v0 = static_cast<int>(vf);
        const int x0 = std::clamp(u0, 0, W - 1);
        const int x1 = std::clamp(u0 + 1, 0, W - 1);
        const int y0 = std::clamp(v0, 0, H - 1);
        const int y1 = std::clamp(v0 + 1, 0, H - 1);
        const float d00 = depth.at(x0, y0);
        const float d10 = depth.at(x1, y0);
        const float d01 = depth.at(x0, y1);
        const float d11 = depth.at(x1, y1);
        if (DepthMap::valid_value(d00) && DepthMap::valid_value(d10) &&
            DepthMap::valid_value(d01) && DepthMap::valid_value(d11)) {
            const double fu = u - uf;
            const double fv = v - vf;
            f.valid = true;
            f.depth = (1.0 - fu) * (1.0 - fv) * d00 + fu * (1.0 - fv) * d10 +
                      (1.0 - fu) * fv * d01 + fu * fv * d11;
            f.u = u;
            f.v = v;
            f.u0 = u0;
            f.v0 = v0;
            f.fu = fu;
            f.fv = fv;
            f.bilinear = true;
            f.clamped = (x0 != u0) || (x1 != u0 + 1) || (y0 != v0) || (y1 != v0 + 1);
            return f;
        }
        // fall through to nearest when any neighbor is invalid
    }
    // Nearest lookups snap the relift to the source pixel itself, keeping
    // the mode bit-exact for oracle tests.
    const int xi = std::clamp(static_cast<int>(std::lround(u)), 0, W - 1);
    const int yi = std::clamp(static_cast<int>(std::lround(v)), 0, H - 1);
    const float d = depth.at(xi, yi);
    if (!DepthMap::valid_value(d)) return f;
    f.valid = true;
    f.depth = d;
    f.u = xi;
    f.v = yi;
    return f;
}

// One pixel of the LGI pipeline. Record additionally captures the argmin
// sample's intermediates for diagnostics and the gradient chain.
template <bool Record>
PixelLgiDetail eval_pixel(const DepthMap& depth, const CameraIntrinsics& K,
                          const RayBasis& basis, const LgiConfig& cfg,
                          double px, double py, const Point3& p) {
    PixelLgiDetail out;
    if (basis.degenerate || !basis.clipped.feasible) return out;
    const double delta_max = basis.clipped.delta_max;
    const int N = cfg.n_samples;

    double c1 = kInf, c2 = -kInf, c3 = 0.0, best_abs = kInf;

    for (int n = 1; n <= N; ++n) {
        const double delta = static_cast<double>(n) * delta_max / static_cast<double>(N);
        const Point3 S = p + delta * basis.dvec;
        if (!(S.z >= cfg.z_near)) continue;
        const double su = K.fx * S.x / S.z + K.cx;
        const double sv = K.fy * S.y / S.z + K.cy;
        if (!K.contains(su, sv)) continue;
        if (std::max(std::abs(su - px), std::abs(sv - py)) < 0.5) continue;
        const Fetch f = fetch_depth_detail(depth, su, sv, cfg.interp);
        if (!f.valid) continue;
        const Point3 Sp{(f.u - K.cx) * f.depth / K.fx, (f.v - K.cy) * f.depth / K.fy, f.depth};
        const Point3 w = Sp - p;
        const double r = w.norm();
        if (r == 0.0) continue;
        const double es = std::asin(clamp_unit(w.z / r));
        const double ed = es - basis.e_light;

        ++out.n_valid;
        if (ed < c1) c1 = ed;
        if (ed > c2) c2 = ed;
        const double a = std::abs(ed);
        if (a < best_abs) {
            best_abs = a;
            c3 = ed;
            out.argmin_n = n;
            if constexpr (Record) {
                out.u = f.u;
                out.v = f.v;
                out.cell_u0 = f.u0;
                out.cell_v0 = f.v0;
                out.fetched_depth = f.depth;
                out.clean = f.bilinear && !f.clamped;
            }
        }
    }

    if (out.n_valid == 0) {
        out.argmin_n = 0;
        return out;
    }
    out.valid = true;
    out.c1 = c1;
    out.c2 = c2;
    out.c3 = c3;
    out.clip = basis.clipped.clip;
    out.delta_max = delta_max;
    out.e_light = basis.e_light;
    return out;
}

double directional_z_far(const DepthMap& depth) {
    const auto m = depth.max_valid_depth();
    return m ? *m : kInf;
}

} // namespace

void LgiConfig::validate() const {
    if (n_samples < 1)
        raise(ErrorCode::InvalidArgument, "LgiConfig requires n_samples >= 1");
    if (!(eta > 0.0))
        raise(ErrorCode::InvalidArgument, "LgiConfig requires eta > 0");
    if (!(z_near > 0.0))
        raise(ErrorCode::InvalidArgument, "LgiConfig requires z_near > 0");
    if (!(softness_beta > 0.0))
        raise(ErrorCode::InvalidArgument, "LgiConfig requires softness_beta > 0");
}

std::optional<double> fetch_depth(const DepthMap& depth, double u, double v, Interp interp) {
    const Fetch f = fetch_depth_detail(depth, u, v, interp);
    if (!f.valid) return std::nullopt;
    return f.depth;
}

std::vector<RaySample> sample_ray(const Point3& p, const LightSpec& light,
                                  const LgiConfig& cfg, const CameraIntrinsics& K,
                                  double z_far) {
    if (!(p.z > 0.0))
        raise(ErrorCode::BehindCamera, "sample_ray requires p.z > 0");
    cfg.validate();
    K.validate();
    light.validate();

    const RayBasis basis = make_basis(p, light, K, cfg, z_far);
    if (basis.degenerate)
        raise(ErrorCode::DegenerateVector, "light coincides with the ray origin");

    // Without a finite clip parameter the samples span the uncapped unit
    // segment; each sample still carries its own frustum-membership flag.
    const double delta_max = basis.clipped.feasible ? basis.clipped.delta_max : 1.0;

    std::vector<RaySample> samples;
    samples.reserve(cfg.n_samples);
    for (int n = 1; n <= cfg.n_samples; ++n) {
        const double delta =
            static_cast<double>(n) * delta_max / static_cast<double>(cfg.n_samples);
        const Point3 S = p + delta * basis.dvec;
        bool in = S.z >= cfg.z_near;
        if (in) {
            const double su = K.fx * S.x / S.z + K.cx;
            const double sv = K.fy * S.y / S.z + K.cy;
            in = K.contains(su, sv);
        }
        samples.push_back({delta, S, in});
    }
    return samples;
}

LgiMaps compute_lgi(const DepthMap& depth, const CameraIntrinsics& K,
                    const LightSpec& light, const LgiConfig& cfg, int threads) {
    K.validate();
    cfg.validate();
    light.validate();
    if (depth.width() != K.width || depth.height() != K.height)
        raise(ErrorCode::ShapeMismatch, "depth map dimensions do not match intrinsics");

    const double z_far = light.kind == LightSpec::Kind::Directional
                             ? directional_z_far(depth)
                             : kInf;

    const int W = depth.width();
    const int H = depth.height();
    LgiMaps maps;
    maps.width = W;
    maps.height = H;
    maps.c1 = Grid<double>(W, H);
    maps.c2 = Grid<double>(W, H);
    maps.c3 = Grid<double>(W, H);
    maps.valid = Grid<uint8_t>(W, H);

    parallel_rows(H, threads, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            for (int x = 0; x < W; ++x) {
                const float d = depth.at(x, y);
                if (!DepthMap::valid_value(d)) continue;
                const Point3 p = lift(K, x, y, d);
                const RayBasis basis = make_basis(p, light, K, cfg, z_far);
                const PixelLgiDetail r =
                    eval_pixel<false>(depth, K, basis, cfg, x, y, p);
                if (!r.valid) continue;
                maps.c1.at(x, y) = r.c1;
                maps.c2.at(x, y) = r.c2;
                maps.c3.at(x, y) = r.c3;
                maps.valid.at(x, y) = 1;
            }
        }
    });
    return maps;
}

LgiMaps lgi_sunlight(const DepthMap& depth, const CameraIntrinsics& K,
                     const Point3& direction, const LgiConfig& cfg, int threads) {
    if (!direction.finite() || direction.norm() == 0.0)
        raise(ErrorCode::DegenerateVector, "lgi_sunlight requires a nonzero direction");
    return compute_lgi(depth, K, LightSpec::directional(direction), cfg, threads);
}

ShadowMask hard_mask(const LgiMaps& maps, double eta) {
    if (!(eta > 0.0))
        raise(ErrorCode::InvalidArgument, "hard_mask requires eta > 0");
    ShadowMask mask;
    mask.width = maps.width;
    mask.height = maps.height;
    mask.kind = ShadowMask::Kind::Hard;
    mask.values = Grid<double>(maps.width, maps.height);
    for (int y = 0; y < maps.height; ++y)
        for (int x = 0; x < maps.width; ++x)
            mask.values.at(x, y) =
                (maps.valid.at(x, y) && std::abs(maps.c3.at(x, y)) < eta) ? 1.0 : 0.0;
    return mask;
}

ShadowMask soft_mask(const LgiMaps& maps, double eta, double beta) {
    if (!(eta > 0.0))
        raise(ErrorCode::InvalidArgument, "soft_mask requires eta > 0");
    if (!(beta > 0.0))
        raise(ErrorCode::InvalidArgument, "soft_mask requires beta > 0");
    ShadowMask mask;
    mask.width = maps.width;
    mask.height = maps.height;
    mask.kind = ShadowMask::Kind::Soft;
    mask.values = Grid<double>(maps.width, maps.height);
    for (int y = 0; y < maps.height; ++y)
        for (int x = 0; x < maps.width; ++x)
            mask.values.at(x, y) =
                maps.valid.at(x, y)
                    ? sigmoid((eta - std::abs(maps.c3.at(x, y))) / beta)
                    : 0.0;
    return mask;
}

PixelLgiDetail lgi_pixel_detail(const DepthMap& depth, const CameraIntrinsics& K,
                                const LightSpec& light, const LgiConfig& cfg,
                                int px, int py, double z_far) {
    K.validate();
    cfg.validate();
    light.validate();
    if (depth.width() != K.width || depth.height() != K.height)
        raise(ErrorCode::ShapeMismatch, "depth map dimensions do not match intrinsics");
    if (px < 0 || px >= K.width || py < 0 || py >= K.height)
        raise(ErrorCode::InvalidArgument, "pixel outside the image");
    if (light.kind == LightSpec::Kind::Directional && !std::isfinite(z_far))
        z_far = directional_z_far(depth);

    const float d = depth.at(px, py);
    if (!DepthMap::valid_value(d)) return {};
    const Point3 p = lift(K, px, py, d);
    const RayBasis basis = make_basis(p, light, K, cfg, z_far);
    return eval_pixel<true>(depth, K, basis, cfg, px, py, p);
}

SoftMaskGradient soft_mask_gradient(const DepthMap& depth, const CameraIntrinsics& K,
                                    const LightAngles& angles, const LgiConfig& cfg,
                                    int px, int py) {
    if (cfg.interp != Interp::Bilinear)
        raise(ErrorCode::InvalidArgument,
              "soft_mask_gradient requires bilinear interpolation");
    const LightSpec light = angles.to_light();
    const PixelLgiDetail st = lgi_pixel_detail(depth, K, light, cfg, px, py);

    SoftMaskGradient g;
    if (!st.valid) return g;
    g.valid = true;
    g.argmin_n = st.argmin_n;
    g.clip = st.clip;
    g.cell_u0 = st.cell_u0;
    g.cell_v0 = st.cell_v0;

    const double dfloat = depth.at(px, py);
    const Point3 p = lift(K, px, py, dfloat);
    const Point3 l = light.position;
    const Point3 dvec = l - p;

    // dl/d(azimuth) and dl/d(elevation) of the angle parameterization.
    const double ca = std::cos(angles.azimuth), sa = std::sin(angles.azimuth);
    const double ce = std::cos(angles.elevation), se = std::sin(angles.elevation);
    const Point3 dl_da = angles.distance * Point3{-ce * sa, ce * ca, 0.0};
    const Point3 dl_de = angles.distance * Point3{-se * ca, -se * sa, ce};

    const double soft = sigmoid((cfg.eta - std::abs(st.c3)) / cfg.softness_beta);
    g.soft = soft;

    // Fixed-argmin chain requires a clean bilinear cell and non-grazing
    // elevation arguments on both the sample and light legs.
    const double r_l = dvec.norm();
    const double lat_l = 1.0 - (dvec.z / r_l) * (dvec.z / r_l);
    bool stable = st.clean && lat_l > 1e-12;

    // Bilinear cell data for the argmin sample.
    const int u0 = st.cell_u0, v0 = st.cell_v0;
    double d00 = 0, d10 = 0, d01 = 0, d11 = 0, fu = 0, fv = 0;
    if (stable) {
        d00 = depth.at(u0, v0);
        d10 = depth.at(u0 + 1, v0);
        d01 = depth.at(u0, v0 + 1);
        d11 = depth.at(u0 + 1, v0 + 1);
        fu = st.u - std::floor(st.u);
        fv = st.v - std::floor(st.v);
    }

    const double ni = static_cast<double>(st.argmin_n) / cfg.n_samples;
    const double delta_i = ni * st.delta_max;

    auto directional_derivative = [&](const Point3& dl) -> std::optional<double> {
        // e^l = asin(dvec.z / |dvec|)
        const double r2 = dvec.dot(dvec);
        const double de_l = (dl.z * r2 - dvec.z * dvec.dot(dl)) /
                            (r2 * r_l * std::sqrt(lat_l));

        // delta_max through the active clip.
        double ddmax = 0.0;
        switch (st.clip) {
            case RayClip::Cap:
                ddmax = 0.0;
                break;
            case RayClip::ZNear:
                ddmax = -st.delta_max * dl.z / dvec.z;
                break;
            case RayClip::UMax: {
                const double A = K.fx * dvec.x - (K.width - 0.5 - K.cx) * dvec.z;
                const double dA = K.fx * dl.x - (K.width - 0.5 - K.cx) * dl.z;
                ddmax = -st.delta_max * dA / A;
                break;
            }
            case RayClip::UMin: {
                const double A = K.fx * dvec.x - (-0.5 - K.cx) * dvec.z;
                const double dA = K.fx * dl.x - (-0.5 - K.cx) * dl.z;
                ddmax = -st.delta_max * dA / A;
                break;
            }
            case RayClip::VMax: {
                const double A = K.fy * dvec.y - (K.height - 0.5 - K.cy) * dvec.z;
                const double dA = K.fy * dl.y - (K.height - 0.5 - K.cy) * dl.z;
                ddmax = -st.delta_max * dA / A;
                break;
            }
            case RayClip::VMin: {
                const double A = K.fy * dvec.y - (-0.5 - K.cy) * dvec.z;
                const double dA = K.fy * dl.y - (-0.5 - K.cy) * dl.z;
                ddmax = -st.delta_max * dA / A;
                break;
            }
            default:
                return std::nullopt; // ZFar never applies to point lights
        }

        // Sample position and its reprojection.
        const Point3 S = p + delta_i * dvec;
        const Point3 dS = (ni * ddmax) * dvec + delta_i * dl;
        const double du = K.fx * (dS.x * S.z - S.x * dS.z) / (S.z * S.z);
        const double dv = K.fy * (dS.y * S.z - S.y * dS.z) / (S.z * S.z);

        // Bilinear fetch.
        const double Du = (1.0 - fv) * (d10 - d00) + fv * (d11 - d01);
        const double Dv = (1.0 - fu) * (d01 - d00) + fu * (d11 - d10);
        const double dD = Du * du + Dv * dv;

        // Relift and the sample-leg elevation.
        const double D = st.fetched_depth;
        const Point3 Sp{(st.u - K.cx) * D / K.fx, (st.v - K.cy) * D / K.fy, D};
        const Point3 dSp{(du * D + (st.u - K.cx) * dD) / K.fx,
                         (dv * D + (st.v - K.cy) * dD) / K.fy, dD};
        const Point3 w = Sp - p;
        const double rho2 = w.dot(w);
        const double rho = std::sqrt(rho2);
        const double lat_s = 1.0 - (w.z / rho) * (w.z / rho);
        if (!(lat_s > 1e-12)) return std::nullopt;
        const double de_s = (dSp.z * rho2 - w.z * w.dot(dSp)) /
                            (rho2 * rho * std::sqrt(lat_s));

        const double dc3 = de_s - de_l;
        const double sign = st.c3 >= 0.0 ? 1.0 : -1.0;
        return soft * (1.0 - soft) * (-sign / cfg.softness_beta) * dc3;
    };

    if (stable) {
        const auto da = directional_derivative(dl_da);
        const auto de = directional_derivative(dl_de);
        if (da && de) {
            g.d_azimuth = *da;
            g.d_elevation = *de;
        } else {
            stable = false;
        }
    }
    g.stable = stable;
    return g;
}

} // namespace lgimap
