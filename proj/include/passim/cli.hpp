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

#include <iosfwd>
#include <string>
#include <vector>

namespace passim {

/// Exit codes of the command-line tool.
enum CliExit : int {
    kExitOk = 0,
    kExitConfigError = 2,
    kExitDegenerateGeometry = 3,
    kExitIoError = 4,
};

/// Full command-line entry point (subcommands: locate, run, validate).
/// Runs in-process so the test suite can drive it without spawning.
int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Parses a power value with an explicit unit suffix: "-80dbm", "2.5e-7w",
/// "0.3mw"; a bare number is watts. Case-insensitive. Throws ConfigError.
double parse_power_value(const std::string &token);

} // namespace passim
