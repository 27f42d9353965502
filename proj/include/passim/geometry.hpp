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

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "passim/errors.hpp"

namespace passim {

/// Cartesian point/vector in meters. z is carried explicitly even though
/// users sit on the floor (z = 0); keeping all coordinates 3D keeps the
/// distance formulas uniform across antennas and users.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline double distance(const Vec3 &a, const Vec3 &b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Rectangular room, access point at the ceiling corner above the origin.
/// x spans [0, d1], y spans [0, d2], z spans [0, h].
struct Room {
    double d1 = 6.0; ///< x extent [m]
    double d2 = 10.0; ///< y extent [m]
    double h = 3.0; ///< ceiling height [m]

    void validate() const {
        if (!(d1 > 0.0) || !(d2 > 0.0) || !(h > 0.0))
            throw ConfigError("room: all dimensions must be > 0");
    }
    double ceiling_diagonal() const { return std::sqrt(d1 * d1 + d2 * d2); }
};

/// Floor-level user location. z is fixed at 0.
struct UserPosition {
    double x = 0.0;
    double y = 0.0;

    Vec3 to_vec3() const { return {x, y, 0.0}; }
    bool inside(const Room &room) const {
        return x >= 0.0 && x <= room.d1 && y >= 0.0 && y <= room.d2;
    }
};

inline double planar_distance(const UserPosition &a, const UserPosition &b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

enum class WaveguideAxis { XAxis, YAxis, Diagonal };

const char *to_string(WaveguideAxis axis);

/// Straight ceiling-mounted waveguide. The canonical deployment anchors all
/// three at the AP corner: the x-axis edge, the y-axis edge and the ceiling
/// diagonal. `offset` shifts an axis-aligned waveguide laterally (an x-axis
/// guide to the line y = offset, a y-axis guide to x = offset) so that
/// parallel deployments can be expressed; the diagonal admits no offset.
/// The feed is at the anchor (arc length 0).
struct Waveguide {
    WaveguideAxis axis = WaveguideAxis::XAxis;
    double offset = 0.0;

    double length(const Room &room) const {
        switch (axis) {
        case WaveguideAxis::XAxis: return room.d1;
        case WaveguideAxis::YAxis: return room.d2;
        default: return room.ceiling_diagonal();
        }
    }

    /// Point at arc length `s` from the anchor. Not clamped; callers that
    /// require on-segment points must check `contains_arc`.
    Vec3 point_at_arc(const Room &room, double s) const {
        switch (axis) {
        case WaveguideAxis::XAxis: return {s, offset, room.h};
        case WaveguideAxis::YAxis: return {offset, s, room.h};
        default: {
            const double frac = s / room.ceiling_diagonal();
            return {room.d1 * frac, room.d2 * frac, room.h};
        }
        }
    }

    /// Unit direction along the waveguide (in the ceiling plane).
    Vec3 direction(const Room &room) const {
        switch (axis) {
        case WaveguideAxis::XAxis: return {1.0, 0.0, 0.0};
        case WaveguideAxis::YAxis: return {0.0, 1.0, 0.0};
        default: {
            const double len = room.ceiling_diagonal();
            return {room.d1 / len, room.d2 / len, 0.0};
        }
        }
    }

    /// Arc length of a point assumed to lie on the waveguide.
    double arc_of(const Room &room, const Vec3 &p) const {
        switch (axis) {
        case WaveguideAxis::XAxis: return p.x;
        case WaveguideAxis::YAxis: return p.y;
        default: {
            const double len = room.ceiling_diagonal();
            return (room.d1 * p.x + room.d2 * p.y) / len;
        }
        }
    }

    bool contains_arc(const Room &room, double s, double tol = 1e-9) const {
        return s >= -tol && s <= length(room) + tol;
    }

    /// On-segment check against the infinite-precision line, tolerance in m.
    bool contains(const Room &room, const Vec3 &p, double tol = 1e-9) const {
        const double s = arc_of(room, p);
        if (!contains_arc(room, s, tol)) return false;
        const Vec3 q = point_at_arc(room, s);
        return distance(p, q) <= tol && std::abs(p.z - room.h) <= tol;
    }

    void validate(const Room &room) const;
};

/// Pinching-antenna deployment on one waveguide: an array of `n_elements`
/// (odd, so the center element sits at `center`) spaced `spacing` meters
/// apart along the guide. A single PA is the n_elements = 1 case.
struct PAPlacement {
    Waveguide waveguide;
    Vec3 center; ///< array center (or the single PA), must lie on the waveguide
    int n_elements = 1; ///< odd, >= 1
    double spacing = 0.0; ///< inter-element distance d [m], > 0 when n_elements > 1

    /// Arc length of the array center from the feed; the waveguide loss of
    /// the whole array is referenced to this length.
    double feed_arc(const Room &room) const { return waveguide.arc_of(room, center); }

    void validate(const Room &room) const;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Euclidean distance from a floor-level user to a ceiling-mounted PA.
/// Always >= ceiling height.
inline double user_pa_distance(const UserPosition &user, const Vec3 &pa) {
    const double dx = pa.x - user.x, dy = pa.y - user.y;
    return std::sqrt(dx * dx + dy * dy + pa.z * pa.z);
}

/// Spatial distances from a floor-level position to the three canonical
/// waveguides (x edge, y edge, ceiling diagonal). Point-to-line distance in
/// the ceiling plane combined with the room height; each is >= h.
struct PerpendicularDistances {
    double d_x = 0.0;
    double d_y = 0.0;
    double d_m = 0.0;
};

inline PerpendicularDistances perpendicular_distances(const UserPosition &u, const Room &room) {
    const double in_plane_diag = room.d2 * u.x - room.d1 * u.y;
    const double diag_sq = room.d1 * room.d1 + room.d2 * room.d2;
    return {std::sqrt(u.y * u.y + room.h * room.h), std::sqrt(u.x * u.x + room.h * room.h),
            std::sqrt(in_plane_diag * in_plane_diag / diag_sq + room.h * room.h)};
}

/// Orthogonal projection of a floor position onto a waveguide, clamped onto
/// the segment. This is where a relocated PA (or array center) ends up.
Vec3 project_to_waveguide(const UserPosition &u, const Waveguide &wg, const Room &room);

/// Coordinates of array elements at the given signed arc-length offsets from
/// the placement center (offset 0 = center). Offsets are meters along the
/// waveguide for every axis; on the diagonal they advance the arc-length
/// fraction by offset / sqrt(d1^2 + d2^2).
/// Throws OutOfSegment if any element would leave the waveguide segment,
/// which signals the caller to shrink the array or shift its center.
std::vector<Vec3> array_element_coords(const PAPlacement &placement, const Room &room,
                                       std::span<const double> offsets);

/// Element coordinates for the uplink array: uniform offsets n * spacing,
/// n = -(N-1)/2 .. (N-1)/2.
std::vector<Vec3> uplink_element_coords(const PAPlacement &placement, const Room &room);

/// Cosine of the angle between the user-to-array-center direction and the
/// waveguide direction, clamped to [-1, 1] so downstream trigonometry never
/// sees a domain error from rounding.
inline double signal_cosine(const UserPosition &user, const PAPlacement &placement,
                            const Room &room) {
    const double dx = user.x - placement.center.x;
    const double dy = user.y - placement.center.y;
    const double d = std::sqrt(dx * dx + dy * dy + room.h * room.h);
    double c = 0.0;
    switch (placement.waveguide.axis) {
    case WaveguideAxis::XAxis: c = dx / d; break;
    case WaveguideAxis::YAxis: c = dy / d; break;
    case WaveguideAxis::Diagonal:
        c = (room.d1 * dx + room.d2 * dy) / (d * room.ceiling_diagonal());
        break;
    }
    return std::clamp(c, -1.0, 1.0);
}

} // namespace passim
