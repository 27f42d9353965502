// SPDX-License-Identifier: Apache-2.0
//
// passim - positioning and link simulation for pinching-antenna systems
// Copyright (C) 2026 The passim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <string>

#include <json.hpp>

#include "passim/experiments.hpp"
#include "passim/scenario.hpp"

namespace passim {

inline constexpr const char *kVersion = "0.1.0";

/// Scenario + campaign pair produced from one flat config file. Every
/// section is optional and defaults to the desk-scale indoor parameters;
/// unknown keys are rejected with the offending field path.
struct ParsedConfig {
    Scenario scenario;
    Campaign campaign;
};

ParsedConfig parse_config(const nlohmann::json &j);
ParsedConfig parse_config_text(const std::string &text);
ParsedConfig load_config_file(const std::string &path); ///< throws ConfigError on I/O failure too

/// Canonical serialization: emits every field, sorted keys, dBm-quoted
/// powers. parse(serialize(parse(text))) reproduces the parsed structs
/// exactly, so a config echoed into a manifest regenerates its campaign.
nlohmann::json serialize_config(const Scenario &sc, const Campaign &campaign);

} // namespace passim
