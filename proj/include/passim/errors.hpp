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

#include <stdexcept>
#include <string>

namespace passim {

// Anchor geometry is unusable for trilateration (collinear PA triple).
class DegenerateGeometry : public std::runtime_error {
  public:
    explicit DegenerateGeometry(const std::string &what) : std::runtime_error(what) {}
};

// An array element would land outside its waveguide segment.
class OutOfSegment : public std::runtime_error {
  public:
    explicit OutOfSegment(const std::string &what) : std::runtime_error(what) {}
};

// Configuration file is malformed or violates a physical constraint.
// The message carries the offending field path, e.g. "room.h: must be > 0".
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace passim
