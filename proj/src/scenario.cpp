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

#include "passim/scenario.hpp"

namespace passim {

std::vector<PAPlacement> nonparallel_layout(const Room &room, int n_elements, double spacing) {
    std::vector<PAPlacement> placements(3);
    placements[0].waveguide = {WaveguideAxis::XAxis, 0.0};
    placements[0].center = {room.d1 / 2.0, 0.0, room.h};
    placements[1].waveguide = {WaveguideAxis::YAxis, 0.0};
    placements[1].center = {0.0, room.d2 / 2.0, room.h};
    placements[2].waveguide = {WaveguideAxis::Diagonal, 0.0};
    placements[2].center = {room.d1 / 2.0, room.d2 / 2.0, room.h};
    for (PAPlacement &p : placements) {
        p.n_elements = n_elements;
        p.spacing = spacing;
    }
    return placements;
}

std::vector<PAPlacement> parallel_y_layout(const Room &room, int n_elements, double spacing) {
    std::vector<PAPlacement> placements(3);
    const double xs[3] = {0.0, room.d1 / 2.0, room.d1};
    const double ys[3] = {room.d2 / 4.0, room.d2 / 2.0, 3.0 * room.d2 / 4.0};
    for (int i = 0; i < 3; ++i) {
        placements[i].waveguide = {WaveguideAxis::YAxis, xs[i]};
        placements[i].center = {xs[i], ys[i], room.h};
        placements[i].n_elements = n_elements;
        placements[i].spacing = spacing;
    }
    return placements;
}

Scenario with_n_elements(const Scenario &base, int n_elements) {
    Scenario s = base;
    for (PAPlacement &p : s.placements) p.n_elements = n_elements;
    return s;
}

Scenario default_scenario() {
    Scenario s;
    s.placements = nonparallel_layout(s.room, 3, s.channel.default_spacing());
    s.fixed_pa = {s.room.d1 / 2.0, s.room.d2 / 2.0, s.room.h};
    return s;
}

} // namespace passim
