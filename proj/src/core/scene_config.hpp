// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "core/lgi.hpp"
#include "core/synth.hpp"

namespace lgimap {

// JSON scene document: intrinsics, lights, primitives, LGI parameters and
// the generator seed. Schema version "1"; unknown keys are rejected and
// violations name the offending JSON path (e.g. "lights[0].kind").
struct SceneConfig {
    uint64_t seed = 0;
    CameraIntrinsics intrinsics;
    std::vector<LightSpec> lights;
    AnalyticScene scene;
    LgiConfig lgi;
};

SceneConfig scene_config_from_json(const std::string& text, const std::string& origin);
std::string scene_config_to_json(const SceneConfig& cfg);

SceneConfig load_scene_config(const std::string& path);
void save_scene_config(const std::string& path, const SceneConfig& cfg);

} // namespace lgimap
