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
#include <complex>

#include "passim/channel.hpp"
#include "passim/rng.hpp"

using namespace passim;

namespace {
const Room kRoom{6.0, 10.0, 3.0};
const ChannelConstants kChan = ChannelConstants::make(2.4e9, 2.08, 4.0e-4);
} // namespace

TEST_CASE("channel constants") {
    CHECK(kChan.lambda == doctest::Approx(0.12491352416666666).epsilon(1e-15));
    CHECK(kChan.alpha == doctest::Approx(0.014508819248779661).epsilon(1e-14));
    CHECK(kChan.beta == doctest::Approx(72.54409624389831).epsilon(1e-14));

    // The defining formulas fix beta / alpha = 2 / tan_delta.
    CHECK(kChan.beta / kChan.alpha == doctest::Approx(2.0 / kChan.tan_delta).epsilon(1e-12));

    CHECK_THROWS_AS(ChannelConstants::make(0.0, 2.08, 4e-4), ConfigError);
    CHECK_THROWS_AS(ChannelConstants::make(2.4e9, -1.0, 4e-4), ConfigError);
    CHECK_THROWS_AS(ChannelConstants::make(2.4e9, 2.08, 0.0), ConfigError);
}

TEST_CASE("dbm conversions") {
    CHECK(watts_from_dbm(20.0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(watts_from_dbm(-80.0) == doctest::Approx(1e-11).epsilon(1e-12));
    CHECK(dbm_from_watts(0.1) == doctest::Approx(20.0).epsilon(1e-13));
    SplitMix64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const double dbm = rng.next_in(-100.0, 30.0);
        CHECK(dbm_from_watts(watts_from_dbm(dbm)) == doctest::Approx(dbm).epsilon(1e-12));
    }
}

TEST_CASE("free_space_gain") {
    CHECK(free_space_gain(1.0, kChan) == doctest::Approx(0.009940302415076964).epsilon(1e-14));
    CHECK(free_space_gain(3.0, kChan) == doctest::Approx(0.0033134341383589875).epsilon(1e-14));
    // 1/d law.
    CHECK(free_space_gain(2.0, kChan) == doctest::Approx(0.5 * free_space_gain(1.0, kChan)).epsilon(1e-15));
}

TEST_CASE("waveguide_channel") {
    const std::complex<double> unity = waveguide_channel(0.0, kChan);
    CHECK(unity.real() == 1.0);
    CHECK(unity.imag() == 0.0);

    CHECK(std::abs(waveguide_channel(10.0, kChan)) ==
          doctest::Approx(0.8649460080066483).epsilon(1e-14));

    double prev = 1.0;
    for (double s = 0.5; s <= 20.0; s += 0.5) {
        const double mag = std::abs(waveguide_channel(s, kChan));
        CHECK(mag < prev);
        prev = mag;
    }
}

TEST_CASE("coupling model") {
    CouplingModel cm{1.0, std::numbers::pi / 2.0, 1.0};
    CHECK(cm.pinch_power() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cm.waveguide_power() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cm.full_coupling_length() == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-15));
    CHECK_NOTHROW(cm.validate());

    CouplingModel partial{2.0, 0.3, 0.8};
    CHECK(partial.pinch_power() == doctest::Approx(std::sin(0.6)).epsilon(1e-15));
    CHECK(partial.waveguide_power() == doctest::Approx(1.0 - 0.8 * std::sin(0.6)).epsilon(1e-15));
    CHECK_NOTHROW(partial.validate());

    CouplingModel bad{4.0, 1.0, 1.0}; // kappa * L past pi, sin negative
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("mwsp received signal") {
    PAPlacement pa;
    pa.waveguide = {WaveguideAxis::XAxis, 0.0};
    pa.center = {3.0, 0.0, 3.0};
    pa.n_elements = 1;

    NoiseModel none(0.0, 0);
    const ReceivedSignal rs = mwsp_received_signal({3.0, 5.0}, pa, kRoom, kChan, 0.1, none);

    // Oracle: independent evaluation of the amplitude chain
    // sqrt(Ps) * (c / (4 pi f d)) * exp(-alpha * arc), power = amplitude^2.
    const double d = std::sqrt(25.0 + 9.0);
    const double arc = 3.0;
    const double amp = std::sqrt(0.1) * (kChan.c / (4.0 * std::numbers::pi * kChan.f_c * d)) *
                       std::exp(-kChan.alpha * arc);
    CHECK(rs.measurement.noiseless_w == doctest::Approx(amp * amp).epsilon(1e-12));
    CHECK(rs.measurement.noiseless_w == doctest::Approx(2.663873984401008e-07).epsilon(1e-12));

    // Noiseless: measured power equals the model power.
    CHECK(rs.measurement.received_w == rs.measurement.noiseless_w);
    CHECK(rs.measurement.noise_w == 0.0);

    // Total phase: -(2 pi / lambda) * (d + sqrt(eps_r) * arc), mod 2 pi.
    const double want = -2.0 * std::numbers::pi / kChan.lambda * (d + std::sqrt(kChan.eps_r) * arc);
    const double got = std::arg(rs.sample);
    CHECK(std::abs(std::remainder(got - want, 2.0 * std::numbers::pi)) <= 1e-9);

    // Two PAs at equal distance and equal feed arc give identical power.
    PAPlacement pb;
    pb.waveguide = {WaveguideAxis::YAxis, 0.0};
    pb.center = {0.0, 3.0, 3.0};
    pb.n_elements = 1;
    NoiseModel n2(0.0, 0);
    const ReceivedSignal ra = mwsp_received_signal({3.0, 7.0}, pb, kRoom, kChan, 0.1, n2);
    // user (3,7) vs PA (0,3,3): planar offsets (3,4); user (3,5) offsets to
    // pa at (3,0,3) were (0,5). Equal 3D distance, equal arc (3 m).
    CHECK(ra.measurement.noiseless_w == doctest::Approx(rs.measurement.noiseless_w).epsilon(1e-12));

    CHECK_THROWS_AS(mwsp_received_signal({1.0, 1.0},
                                         [] {
                                             PAPlacement p;
                                             p.waveguide = {WaveguideAxis::XAxis, 0.0};
                                             p.center = {3.0, 0.0, 3.0};
                                             p.n_elements = 3;
                                             p.spacing = 0.05;
                                             return p;
                                         }(),
                                         kRoom, kChan, 0.1, none),
                    ConfigError);
}

TEST_CASE("noiseless mwsp power invariant under rotation about the PA axis") {
    PAPlacement pa;
    pa.waveguide = {WaveguideAxis::XAxis, 0.0};
    pa.center = {3.0, 0.0, 3.0};
    pa.n_elements = 1;
    SplitMix64 rng(29);
    for (int i = 0; i < 200; ++i) {
        const double r = rng.next_in(0.2, 4.0);
        const double a1 = rng.next_in(0.0, 2.0 * std::numbers::pi);
        const double a2 = rng.next_in(0.0, 2.0 * std::numbers::pi);
        NoiseModel n1(0.0, 0), n2(0.0, 0);
        const UserPosition u1{pa.center.x + r * std::cos(a1), pa.center.y + r * std::sin(a1)};
        const UserPosition u2{pa.center.x + r * std::cos(a2), pa.center.y + r * std::sin(a2)};
        const double p1 = mwsp_received_signal(u1, pa, kRoom, kChan, 0.1, n1).measurement.noiseless_w;
        const double p2 = mwsp_received_signal(u2, pa, kRoom, kChan, 0.1, n2).measurement.noiseless_w;
        CHECK(p1 == doctest::Approx(p2).epsilon(1e-12));
    }
}

TEST_CASE("mwmp exact sum") {
    PAPlacement array;
    array.waveguide = {WaveguideAxis::YAxis, 0.0};
    array.center = {0.0, 5.0, 3.0};
    array.n_elements = 5;
    array.spacing = kChan.default_spacing();

    SUBCASE("N = 1 equals the single-PA path bit for bit") {
        PAPlacement single = array;
        single.n_elements = 1;
        NoiseModel n1(0.0, 0), n2(0.0, 0);
        const ReceivedSignal a = mwmp_received_signal_exact({2.0, 7.0}, single, kRoom, kChan, 0.1, n1);
        const ReceivedSignal b = mwsp_received_signal({2.0, 7.0}, single, kRoom, kChan, 0.1, n2);
        CHECK(a.sample.real() == b.sample.real());
        CHECK(a.sample.imag() == b.sample.imag());
        CHECK(a.measurement.received_w == b.measurement.received_w);
    }

    SUBCASE("independent per-element loop oracle") {
        SplitMix64 rng(31);
        for (int i = 0; i < 200; ++i) {
            const UserPosition u{rng.next_in(0.0, 6.0), rng.next_in(0.0, 10.0)};
            NoiseModel none(0.0, 0);
            const ReceivedSignal rs = mwmp_received_signal_exact(u, array, kRoom, kChan, 0.1, none);

            // Oracle: element coordinates materialized explicitly, Euclidean
            // distances, per-element arcs and losses summed longhand.
            const std::vector<Vec3> elems = uplink_element_coords(array, kRoom);
            const double d_center = user_pa_distance(u, array.center);
            std::complex<double> sum{0.0, 0.0};
            for (std::size_t e = 0; e < elems.size(); ++e) {
                const double nd = (static_cast<double>(e) - 2.0) * array.spacing;
                const double d_n = user_pa_distance(u, elems[e]);
                const double arc_n = array.feed_arc(kRoom) + nd;
                const double phase = -2.0 * std::numbers::pi / kChan.lambda *
                                     (d_n + std::sqrt(kChan.eps_r) * arc_n);
                sum += std::polar(std::exp(-kChan.alpha * arc_n), phase);
            }
            const double amp = std::sqrt(0.1) * kChan.c / (4.0 * std::numbers::pi * kChan.f_c * d_center);
            const double oracle = std::norm(amp * sum);
            CHECK(rs.measurement.noiseless_w == doctest::Approx(oracle).epsilon(1e-12));
        }
    }

    SUBCASE("coherent scaling when all element phases align") {
        // With a vanishing aperture every element term collapses onto the
        // center term, so the power scales as N^2.
        PAPlacement tight = array;
        tight.spacing = 1e-9;
        for (int n : {1, 3, 5, 7, 9}) {
            tight.n_elements = n;
            NoiseModel none(0.0, 0);
            const double p =
                mwmp_received_signal_exact({2.0, 7.0}, tight, kRoom, kChan, 0.1, none).measurement.noiseless_w;
            NoiseModel none1(0.0, 0);
            PAPlacement one = tight;
            one.n_elements = 1;
            const double p1 =
                mwmp_received_signal_exact({2.0, 7.0}, one, kRoom, kChan, 0.1, none1).measurement.noiseless_w;
            CHECK(p == doctest::Approx(static_cast<double>(n) * n * p1).epsilon(1e-9));
        }
    }
}

TEST_CASE("add_power_noise") {
    SUBCASE("zero variance is the identity") {
        NoiseModel none(0.0, 42);
        CHECK(add_power_noise(3.25e-7, none) == 3.25e-7);
    }

    SUBCASE("identical seeds give identical sequences") {
        NoiseModel a(1e-14, 99), b(1e-14, 99);
        for (int i = 0; i < 100; ++i) CHECK(a.draw() == b.draw());
        NoiseModel c(1e-14, 100);
        bool any_diff = false;
        NoiseModel a2(1e-14, 99);
        for (int i = 0; i < 100; ++i) any_diff |= a2.draw() != c.draw();
        CHECK(any_diff);
    }

    SUBCASE("empirical variance matches sigma2 within 3 percent") {
        const double sigma2 = 2.5;
        NoiseModel nm(sigma2, 7);
        const int n = 100000;
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double g = nm.draw();
            sum += g;
            sum_sq += g * g;
        }
        const double mean = sum / n;
        const double var = sum_sq / n - mean * mean;
        CHECK(var == doctest::Approx(sigma2).epsilon(0.03));
    }

    SUBCASE("power floor") {
        NoiseModel huge(1.0, 5); // draws of order 1 W against a 1e-12 W signal
        for (int i = 0; i < 200; ++i) CHECK(add_power_noise(1e-12, huge) >= kPowerFloorW);
    }

    SUBCASE("dbm mapping: quoted noise power is the draw deviation") {
        const NoiseModel nm = NoiseModel::from_noise_power_dbm(-80.0, 1);
        CHECK(nm.sd() == doctest::Approx(1e-11).epsilon(1e-12));
        CHECK(nm.sigma2() == doctest::Approx(1e-22).epsilon(1e-12));
    }
}

TEST_CASE("measurement bookkeeping") {
    PAPlacement pa;
    pa.waveguide = {WaveguideAxis::XAxis, 0.0};
    pa.center = {3.0, 0.0, 3.0};
    pa.n_elements = 1;
    NoiseModel nm = NoiseModel::from_noise_power_dbm(-40.0, 123);
    int floored = 0;
    for (int i = 0; i < 500; ++i) {
        const Measurement m = mwsp_received_signal({5.0, 9.0}, pa, kRoom, kChan, 0.1, nm).measurement;
        if (m.floored()) {
            ++floored;
            CHECK(m.received_w == kPowerFloorW);
        } else {
            CHECK(m.received_w == m.noiseless_w + m.noise_w);
        }
        CHECK(m.received_w >= kPowerFloorW);
        CHECK(m.truth.x == 5.0);
    }
    CHECK(floored > 0); // -40 dBm noise against a ~1e-7 W signal clamps often
}

TEST_CASE("fraunhofer distances at the default constants") {
    const double d = kChan.default_spacing();
    CHECK(fraunhofer_distance(3, d, kChan.lambda) == doctest::Approx(1.08).epsilon(0.01 / 1.08));
    CHECK(fraunhofer_distance(5, d, kChan.lambda) == doctest::Approx(3.00).epsilon(0.01 / 3.00));
}
