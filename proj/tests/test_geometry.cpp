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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "passim/geometry.hpp"
#include "passim/rng.hpp"

using namespace passim;

namespace {
const Room kRoom{6.0, 10.0, 3.0};
}

TEST_CASE("user_pa_distance") {
    // User directly beneath the PA: distance is the room height.
    CHECK(user_pa_distance({2.0, 3.0}, {2.0, 3.0, 3.0}) == doctest::Approx(3.0).epsilon(1e-15));

    // Corner-to-corner: sqrt(36 + 100 + 9).
    CHECK(user_pa_distance({0.0, 0.0}, {6.0, 10.0, 3.0}) ==
          doctest::Approx(12.041594578792296).epsilon(1e-14));

    // Reflection symmetry about the user's x.
    SplitMix64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const UserPosition u{rng.next_in(0.0, 6.0), rng.next_in(0.0, 10.0)};
        const double a = rng.next_in(0.0, 3.0);
        CHECK(user_pa_distance(u, {u.x + a, u.y, 3.0}) ==
              doctest::Approx(user_pa_distance(u, {u.x - a, u.y, 3.0})).epsilon(1e-14));
    }
}

TEST_CASE("perpendicular_distances hand values") {
    // AP corner: every in-plane offset is zero.
    const PerpendicularDistances corner = perpendicular_distances({0.0, 0.0}, kRoom);
    CHECK(corner.d_x == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(corner.d_y == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(corner.d_m == doctest::Approx(3.0).epsilon(1e-15));

    const PerpendicularDistances d = perpendicular_distances({2.0, 3.0}, kRoom);
    CHECK(d.d_x == doctest::Approx(4.242640687119285).epsilon(1e-14)); // sqrt(9 + 9)
    CHECK(d.d_y == doctest::Approx(3.605551275463989).epsilon(1e-14)); // sqrt(4 + 9)
    CHECK(d.d_m == doctest::Approx(3.0048979624449617).epsilon(1e-14)); // sqrt(4/136 + 9)

    // Points on the diagonal's floor projection have zero in-plane offset.
    for (double t : {0.1, 0.35, 0.8}) {
        const PerpendicularDistances on_diag = perpendicular_distances({6.0 * t, 10.0 * t}, kRoom);
        CHECK(on_diag.d_m == doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("perpendicular distances are minimal over the waveguides") {
    SplitMix64 rng(11);
    const Waveguide wx{WaveguideAxis::XAxis, 0.0};
    const Waveguide wy{WaveguideAxis::YAxis, 0.0};
    const Waveguide wm{WaveguideAxis::Diagonal, 0.0};
    for (int i = 0; i < 1000; ++i) {
        const UserPosition u{rng.next_in(0.0, 6.0), rng.next_in(0.0, 10.0)};
        const PerpendicularDistances d = perpendicular_distances(u, kRoom);
        for (int k = 0; k < 100; ++k) {
            const double fx = static_cast<double>(k) / 99.0;
            CHECK(d.d_x <= user_pa_distance(u, wx.point_at_arc(kRoom, fx * wx.length(kRoom))) + 1e-9);
            CHECK(d.d_y <= user_pa_distance(u, wy.point_at_arc(kRoom, fx * wy.length(kRoom))) + 1e-9);
            CHECK(d.d_m <= user_pa_distance(u, wm.point_at_arc(kRoom, fx * wm.length(kRoom))) + 1e-9);
        }
    }
}

TEST_CASE("project_to_waveguide") {
    const Waveguide diag{WaveguideAxis::Diagonal, 0.0};
    const Vec3 p = project_to_waveguide({2.0, 3.0}, diag, kRoom);
    CHECK(p.x == doctest::Approx(1.8529411764705883).epsilon(1e-14)); // 6 * 42/136
    CHECK(p.y == doctest::Approx(3.088235294117647).epsilon(1e-14)); // 10 * 42/136
    CHECK(p.z == 3.0);

    const Vec3 px = project_to_waveguide({2.0, 3.0}, {WaveguideAxis::XAxis, 0.0}, kRoom);
    CHECK(px.x == 2.0);
    CHECK(px.y == 0.0);

    // Far corner maps to the diagonal's endpoint (fraction exactly 1).
    const Vec3 end = project_to_waveguide({6.0, 10.0}, diag, kRoom);
    CHECK(end.x == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(end.y == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("projection is idempotent") {
    SplitMix64 rng(13);
    const Waveguide guides[] = {{WaveguideAxis::XAxis, 0.0},
                                {WaveguideAxis::YAxis, 0.0},
                                {WaveguideAxis::Diagonal, 0.0},
                                {WaveguideAxis::YAxis, 3.0},
                                {WaveguideAxis::XAxis, 7.5}};
    for (int i = 0; i < 500; ++i) {
        const UserPosition u{rng.next_in(0.0, 6.0), rng.next_in(0.0, 10.0)};
        for (const Waveguide &wg : guides) {
            const Vec3 once = project_to_waveguide(u, wg, kRoom);
            const Vec3 twice = project_to_waveguide({once.x, once.y}, wg, kRoom);
            CHECK(distance(once, twice) <= 1e-12);
        }
    }
}

TEST_CASE("array_element_coords") {
    PAPlacement p;
    p.waveguide = {WaveguideAxis::XAxis, 0.0};
    p.center = {3.0, 0.0, 3.0};
    p.n_elements = 3;
    p.spacing = 0.08661194545804361; // lambda / sqrt(eps_r) at 2.4 GHz, eps_r = 2.08

    const std::vector<Vec3> coords = uplink_element_coords(p, kRoom);
    REQUIRE(coords.size() == 3);
    CHECK(coords[0].x == doctest::Approx(2.9133880545419566).epsilon(1e-14));
    CHECK(coords[1].x == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(coords[2].x == doctest::Approx(3.0866119454580434).epsilon(1e-14));
    for (const Vec3 &c : coords) {
        CHECK(c.y == 0.0);
        CHECK(c.z == 3.0);
    }

    // All-zero offsets give N copies of the center.
    const double zeros[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
    for (const Vec3 &c : array_element_coords(p, kRoom, zeros))
        CHECK(distance(c, p.center) == 0.0);

    // Diagonal elements stay collinear with the diagonal.
    PAPlacement d;
    d.waveguide = {WaveguideAxis::Diagonal, 0.0};
    d.center = {3.0, 5.0, 3.0};
    d.n_elements = 9;
    d.spacing = p.spacing;
    for (const Vec3 &c : uplink_element_coords(d, kRoom))
        CHECK(std::abs(10.0 * c.x - 6.0 * c.y) <= 1e-12);

    // An array reaching past the segment end is an error.
    PAPlacement edge = p;
    edge.center = {0.05, 0.0, 3.0};
    CHECK_THROWS_AS(uplink_element_coords(edge, kRoom), OutOfSegment);
}

TEST_CASE("signal_cosine hand values and dot-product oracle") {
    PAPlacement p;
    p.waveguide = {WaveguideAxis::XAxis, 0.0};
    p.center = {2.0, 0.0, 3.0};
    p.n_elements = 1;

    // Directly beneath the center the signal is perpendicular to the guide.
    CHECK(signal_cosine({2.0, 0.0}, p, kRoom) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(signal_cosine({5.0, 0.0}, p, kRoom) ==
          doctest::Approx(0.7071067811865476).epsilon(1e-14)); // 3 / sqrt(18)

    // Oracle: cosine from the explicit unit-vector dot product, guide
    // direction against (user - center, -h).
    SplitMix64 rng(17);
    const WaveguideAxis axes[] = {WaveguideAxis::XAxis, WaveguideAxis::YAxis,
                                  WaveguideAxis::Diagonal};
    for (int i = 0; i < 10000; ++i) {
        PAPlacement q;
        q.waveguide.axis = axes[i % 3];
        q.n_elements = 1;
        const double t = rng.next_in(0.05, 0.95);
        q.center = q.waveguide.point_at_arc(kRoom, t * q.waveguide.length(kRoom));
        const UserPosition u{rng.next_in(0.0, 6.0), rng.next_in(0.0, 10.0)};

        const Vec3 dir = q.waveguide.direction(kRoom);
        const Vec3 sig{u.x - q.center.x, u.y - q.center.y, -kRoom.h};
        const double norm = std::sqrt(sig.x * sig.x + sig.y * sig.y + sig.z * sig.z);
        const double oracle = (dir.x * sig.x + dir.y * sig.y + dir.z * sig.z) / norm;

        CHECK(std::abs(signal_cosine(u, q, kRoom) - oracle) <= 1e-12);
        CHECK(std::abs(signal_cosine(u, q, kRoom)) <= 1.0);
    }
}

TEST_CASE("all user-PA distances at least the room height") {
    SplitMix64 rng(19);
    for (int i = 0; i < 1000; ++i) {
        const UserPosition u{rng.next_in(0.0, 6.0), rng.next_in(0.0, 10.0)};
        const Vec3 pa{rng.next_in(0.0, 6.0), rng.next_in(0.0, 10.0), 3.0};
        CHECK(user_pa_distance(u, pa) >= 3.0);
        const PerpendicularDistances d = perpendicular_distances(u, kRoom);
        CHECK(d.d_x >= 3.0);
        CHECK(d.d_y >= 3.0);
        CHECK(d.d_m >= 3.0);
    }
}

TEST_CASE("placement validation") {
    PAPlacement p;
    p.waveguide = {WaveguideAxis::XAxis, 0.0};
    p.center = {3.0, 0.0, 3.0};
    p.n_elements = 2; // even
    p.spacing = 0.1;
    CHECK_THROWS_AS(p.validate(kRoom), ConfigError);

    p.n_elements = 3;
    p.center = {3.0, 0.5, 3.0}; // off the guide
    CHECK_THROWS_AS(p.validate(kRoom), ConfigError);

    p.center = {3.0, 0.0, 3.0};
    CHECK_NOTHROW(p.validate(kRoom));

    Waveguide diag{WaveguideAxis::Diagonal, 1.0};
    CHECK_THROWS_AS(diag.validate(kRoom), ConfigError);
}
