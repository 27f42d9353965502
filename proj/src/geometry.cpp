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

#include "passim/geometry.hpp"

#include <string>

namespace passim {

const char *to_string(WaveguideAxis axis) {
    switch (axis) {
    case WaveguideAxis::XAxis: return "x";
    case WaveguideAxis::YAxis: return "y";
    default: return "diagonal";
    }
}

void Waveguide::validate(const Room &room) const {
    switch (axis) {
    case WaveguideAxis::XAxis:
        if (offset < 0.0 || offset > room.d2)
            throw ConfigError("waveguide.offset: x-axis guide must satisfy 0 <= offset <= d2");
        break;
    case WaveguideAxis::YAxis:
        if (offset < 0.0 || offset > room.d1)
            throw ConfigError("waveguide.offset: y-axis guide must satisfy 0 <= offset <= d1");
        break;
    case WaveguideAxis::Diagonal:
        if (offset != 0.0)
            throw ConfigError("waveguide.offset: the diagonal waveguide admits no offset");
        break;
    }
}

void PAPlacement::validate(const Room &room) const {
    waveguide.validate(room);
    if (n_elements < 1 || n_elements % 2 == 0)
        throw ConfigError("placement.n_elements: must be an odd integer >= 1");
    if (n_elements > 1 && !(spacing > 0.0))
        throw ConfigError("placement.spacing: must be > 0 for multi-element arrays");
    if (!waveguide.contains(room, center))
        throw ConfigError("placement.center: must lie on the waveguide segment");
    // Materializing the element coordinates performs the on-segment check
    // for the whole array.
    if (n_elements > 1) uplink_element_coords(*this, room);
}

Vec3 project_to_waveguide(const UserPosition &u, const Waveguide &wg, const Room &room) {
    switch (wg.axis) {
    case WaveguideAxis::XAxis: return {std::clamp(u.x, 0.0, room.d1), wg.offset, room.h};
    case WaveguideAxis::YAxis: return {wg.offset, std::clamp(u.y, 0.0, room.d2), room.h};
    default: {
        const double diag_sq = room.d1 * room.d1 + room.d2 * room.d2;
        const double frac = std::clamp((room.d1 * u.x + room.d2 * u.y) / diag_sq, 0.0, 1.0);
        return {room.d1 * frac, room.d2 * frac, room.h};
    }
    }
}

std::vector<Vec3> array_element_coords(const PAPlacement &placement, const Room &room,
                                       std::span<const double> offsets) {
    const double center_arc = placement.feed_arc(room);
    std::vector<Vec3> coords;
    coords.reserve(offsets.size());
    for (double off : offsets) {
        const double s = center_arc + off;
        if (!placement.waveguide.contains_arc(room, s))
            throw OutOfSegment("array element at arc " + std::to_string(s) +
                               " m leaves the waveguide segment");
        coords.push_back(placement.waveguide.point_at_arc(room, s));
    }
    return coords;
}

std::vector<Vec3> uplink_element_coords(const PAPlacement &placement, const Room &room) {
    std::vector<double> offsets(static_cast<std::size_t>(placement.n_elements));
    const int half = (placement.n_elements - 1) / 2;
    for (int n = -half; n <= half; ++n)
        offsets[static_cast<std::size_t>(n + half)] = static_cast<double>(n) * placement.spacing;
    return array_element_coords(placement, room, offsets);
}

} // namespace passim
