// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/scene_config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace lgimap {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& origin, const std::string& path,
                               const std::string& what) {
    raise(ErrorCode::ConfigError, origin + ": " + path + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& origin, const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            config_error(origin, path + "." + it.key(), "unexpected key");
}

const json& require(const json& obj, const std::string& key, const std::string& origin,
                    const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end())
        config_error(origin, path + "." + key, "missing required key");
    return *it;
}

double as_number(const json& v, const std::string& origin, const std::string& path) {
    if (!v.is_number())
        config_error(origin, path, "expected a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& origin, const std::string& path) {
    if (!v.is_number_integer())
        config_error(origin, path, "expected an integer");
    return v.get<int>();
}

Point3 as_point(const json& v, const std::string& origin, const std::string& path) {
    if (!v.is_array() || v.size() != 3)
        config_error(origin, path, "expected an array of 3 numbers");
    return {as_number(v[0], origin, path + "[0]"), as_number(v[1], origin, path + "[1]"),
            as_number(v[2], origin, path + "[2]")};
}

LightSpec parse_light(const json& v, const std::string& origin, const std::string& path) {
    if (!v.is_object())
        config_error(origin, path, "expected an object");
    reject_unknown_keys(v,
                        {"kind", "position", "direction", "color", "radius", "intensity",
                         "azimuth", "elevation", "distance"},
                        origin, path);
    const json& kind = require(v, "kind", origin, path);
    if (!kind.is_string())
        config_error(origin, path + ".kind", "expected \"point\" or \"directional\"");

    LightSpec light;
    const std::string k = kind.get<std::string>();
    if (k == "point") {
        light.kind = LightSpec::Kind::Point;
        light.position = as_point(require(v, "position", origin, path), origin, path + ".position");
        if (v.contains("direction"))
            config_error(origin, path + ".direction", "not allowed for point lights");
    } else if (k == "directional") {
        light.kind = LightSpec::Kind::Directional;
        light.direction =
            as_point(require(v, "direction", origin, path), origin, path + ".direction");
        if (v.contains("position"))
            config_error(origin, path + ".position", "not allowed for directional lights");
    } else {
        config_error(origin, path + ".kind", "unknown kind '" + k + "'");
    }

    if (v.contains("color")) {
        const Point3 c = as_point(v["color"], origin, path + ".color");
        light.color = {c.x, c.y, c.z};
    }
    if (v.contains("radius")) light.radius = as_number(v["radius"], origin, path + ".radius");
    if (v.contains("intensity"))
        light.intensity = as_number(v["intensity"], origin, path + ".intensity");
    if (v.contains("azimuth")) light.azimuth = as_number(v["azimuth"], origin, path + ".azimuth");
    if (v.contains("elevation"))
        light.elevation = as_number(v["elevation"], origin, path + ".elevation");
    if (v.contains("distance"))
        light.distance = as_number(v["distance"], origin, path + ".distance");

    try {
        light.validate();
    } catch (const Error& e) {
        config_error(origin, path, e.what());
    }
    return light;
}

Primitive parse_primitive(const json& v, const std::string& origin, const std::string& path) {
    if (!v.is_object())
        config_error(origin, path, "expected an object");
    const json& type = require(v, "type", origin, path);
    if (!type.is_string())
        config_error(origin, path + ".type", "expected a string");
    const std::string t = type.get<std::string>();
    if (t == "ground_plane") {
        reject_unknown_keys(v, {"type", "y"}, origin, path);
        return GroundPlane{as_number(require(v, "y", origin, path), origin, path + ".y")};
    }
    if (t == "wall") {
        reject_unknown_keys(v, {"type", "z"}, origin, path);
        return Wall{as_number(require(v, "z", origin, path), origin, path + ".z")};
    }
    if (t == "sphere") {
        reject_unknown_keys(v, {"type", "center", "radius"}, origin, path);
        Sphere s;
        s.center = as_point(require(v, "center", origin, path), origin, path + ".center");
        s.radius = as_number(require(v, "radius", origin, path), origin, path + ".radius");
        if (!(s.radius > 0.0))
            config_error(origin, path + ".radius", "must be > 0");
        return s;
    }
    if (t == "box") {
        reject_unknown_keys(v, {"type", "min", "max"}, origin, path);
        BoxAA b;
        b.min = as_point(require(v, "min", origin, path), origin, path + ".min");
        b.max = as_point(require(v, "max", origin, path), origin, path + ".max");
        if (!(b.min.x < b.max.x) || !(b.min.y < b.max.y) || !(b.min.z < b.max.z))
            config_error(origin, path, "box requires min < max componentwise");
        return b;
    }
    config_error(origin, path + ".type", "unknown primitive '" + t + "'");
}

} // namespace

SceneConfig scene_config_from_json(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        raise(ErrorCode::ConfigError, origin + ": " + e.what());
    }
    if (!doc.is_object())
        config_error(origin, "$", "expected a JSON object");
    reject_unknown_keys(doc, {"version", "seed", "intrinsics", "lights", "primitives", "lgi"},
                        origin, "$");

    const json& version = require(doc, "version", origin, "$");
    if (!version.is_string() || version.get<std::string>() != "1")
        config_error(origin, "$.version", "unsupported schema version");

    SceneConfig cfg;
    if (doc.contains("seed")) {
        const json& s = doc["seed"];
        if (!s.is_number_unsigned() && !s.is_number_integer())
            config_error(origin, "$.seed", "expected an integer");
        cfg.seed = s.get<uint64_t>();
    }

    {
        const json& K = require(doc, "intrinsics", origin, "$");
        if (!K.is_object())
            config_error(origin, "$.intrinsics", "expected an object");
        reject_unknown_keys(K, {"fx", "fy", "cx", "cy", "width", "height"}, origin,
                            "$.intrinsics");
        const int w = as_int(require(K, "width", origin, "$.intrinsics"), origin,
                             "$.intrinsics.width");
        const int h = as_int(require(K, "height", origin, "$.intrinsics"), origin,
                             "$.intrinsics.height");
        if (w < 1 || h < 1)
            config_error(origin, "$.intrinsics", "width and height must be >= 1");
        cfg.intrinsics.width = w;
        cfg.intrinsics.height = h;
        // Omitted focal/principal entries follow the default matrix.
        cfg.intrinsics.fx = K.contains("fx")
                                ? as_number(K["fx"], origin, "$.intrinsics.fx")
                                : static_cast<double>(w);
        cfg.intrinsics.fy = K.contains("fy")
                                ? as_number(K["fy"], origin, "$.intrinsics.fy")
                                : static_cast<double>(h);
        cfg.intrinsics.cx =
            K.contains("cx") ? as_number(K["cx"], origin, "$.intrinsics.cx") : w / 2.0;
        cfg.intrinsics.cy =
            K.contains("cy") ? as_number(K["cy"], origin, "$.intrinsics.cy") : h / 2.0;
        try {
            cfg.intrinsics.validate();
        } catch (const Error& e) {
            config_error(origin, "$.intrinsics", e.what());
        }
    }

    {
        const json& lights = require(doc, "lights", origin, "$");
        if (!lights.is_array())
            config_error(origin, "$.lights", "expected an array");
        for (size_t i = 0; i < lights.size(); ++i)
            cfg.lights.push_back(parse_light(lights[i], origin,
                                             "lights[" + std::to_string(i) + "]"));
    }

    if (doc.contains("primitives")) {
        const json& prims = doc["primitives"];
        if (!prims.is_array())
            config_error(origin, "$.primitives", "expected an array");
        for (size_t i = 0; i < prims.size(); ++i)
            cfg.scene.primitives.push_back(parse_primitive(
                prims[i], origin, "primitives[" + std::to_string(i) + "]"));
    }

    if (doc.contains("lgi")) {
        const json& l = doc["lgi"];
        if (!l.is_object())
            config_error(origin, "$.lgi", "expected an object");
        reject_unknown_keys(l, {"n_samples", "eta", "z_near", "softness_beta", "interp"},
                            origin, "$.lgi");
        if (l.contains("n_samples"))
            cfg.lgi.n_samples = as_int(l["n_samples"], origin, "$.lgi.n_samples");
        if (l.contains("eta")) cfg.lgi.eta = as_number(l["eta"], origin, "$.lgi.eta");
        if (l.contains("z_near"))
            cfg.lgi.z_near = as_number(l["z_near"], origin, "$.lgi.z_near");
        if (l.contains("softness_beta"))
            cfg.lgi.softness_beta =
                as_number(l["softness_beta"], origin, "$.lgi.softness_beta");
        if (l.contains("interp")) {
            const json& v = l["interp"];
            std::string s = v.is_string() ? v.get<std::string>() : "";
            if (s == "nearest") cfg.lgi.interp = Interp::Nearest;
            else if (s == "bilinear") cfg.lgi.interp = Interp::Bilinear;
            else config_error(origin, "$.lgi.interp", "expected \"nearest\" or \"bilinear\"");
        }
        try {
            cfg.lgi.validate();
        } catch (const Error& e) {
            config_error(origin, "$.lgi", e.what());
        }
    }

    return cfg;
}

std::string scene_config_to_json(const SceneConfig& cfg) {
    json doc;
    doc["version"] = "1";
    doc["seed"] = cfg.seed;
    doc["intrinsics"] = {{"fx", cfg.intrinsics.fx}, {"fy", cfg.intrinsics.fy},
                         {"cx", cfg.intrinsics.cx}, {"cy", cfg.intrinsics.cy},
                         {"width", cfg.intrinsics.width}, {"height", cfg.intrinsics.height}};

    json lights = json::array();
    for (const auto& l : cfg.lights) {
        json v;
        if (l.kind == LightSpec::Kind::Point) {
            v["kind"] = "point";
            v["position"] = {l.position.x, l.position.y, l.position.z};
        } else {
            v["kind"] = "directional";
            v["direction"] = {l.direction.x, l.direction.y, l.direction.z};
        }
        v["color"] = {l.color[0], l.color[1], l.color[2]};
        v["radius"] = l.radius;
        v["intensity"] = l.intensity;
        if (l.azimuth) v["azimuth"] = *l.azimuth;
        if (l.elevation) v["elevation"] = *l.elevation;
        if (l.distance) v["distance"] = *l.distance;
        lights.push_back(std::move(v));
    }
    doc["lights"] = std::move(lights);

    json prims = json::array();
    for (const auto& prim : cfg.scene.primitives) {
        json v;
        if (const auto* g = std::get_if<GroundPlane>(&prim)) {
            v["type"] = "ground_plane";
            v["y"] = g->y;
        } else if (const auto* w = std::get_if<Wall>(&prim)) {
            v["type"] = "wall";
            v["z"] = w->z;
        } else if (const auto* s = std::get_if<Sphere>(&prim)) {
            v["type"] = "sphere";
            v["center"] = {s->center.x, s->center.y, s->center.z};
            v["radius"] = s->radius;
        } else if (const auto* b = std::get_if<BoxAA>(&prim)) {
            v["type"] = "box";
            v["min"] = {b->min.x, b->min.y, b->min.z};
            v["max"] = {b->max.x, b->max.y, b->max.z};
        }
        prims.push_back(std::move(v));
    }
    doc["primitives"] = std::move(prims);

    doc["lgi"] = {{"n_samples", cfg.lgi.n_samples},
                  {"eta", cfg.lgi.eta},
                  {"z_near", cfg.lgi.z_near},
                  {"softness_beta", cfg.lgi.softness_beta},
                  {"interp", cfg.lgi.interp == Interp::Nearest ? "nearest" : "bilinear"}};
    return doc.dump(2) + "\n";
}

SceneConfig load_scene_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorCode::IoError, "cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return scene_config_from_json(text, path);
}

void save_scene_config(const std::string& path, const SceneConfig& cfg) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        raise(ErrorCode::IoError, "cannot write " + path);
    out << scene_config_to_json(cfg);
    if (!out)
        raise(ErrorCode::IoError, "write failed for " + path);
}

} // namespace lgimap
