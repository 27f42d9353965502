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

#include <chrono>
#include <cmath>
#include <complex>

#include "passim/experiments.hpp"
#include "passim/positioning_mwmp.hpp"

using namespace passim;

namespace {

const Room kRoom{6.0, 10.0, 3.0};
const ChannelConstants kChan = ChannelConstants::make(2.4e9, 2.08, 4.0e-4);

PAPlacement x_axis_array(double x_center, int n) {
    PAPlacement p;
    p.waveguide = {WaveguideAxis::XAxis, 0.0};
    p.center = {x_center, 0.0, 3.0};
    p.n_elements = n;
    p.spacing = kChan.default_spacing();
    return p;
}

// Explicit geometric-series oracle: real part of sum_n exp(j n psi) over the
// symmetric index range (the imaginary parts cancel pairwise).
double dirichlet_sum_oracle(double psi, int n) {
    double sum = 1.0;
    for (int m = 1; m <= (n - 1) / 2; ++m) sum += 2.0 * std::cos(static_cast<double>(m) * psi);
    return sum;
}

} // namespace

TEST_CASE("dirichlet_factor hand values") {
    CHECK(dirichlet_factor(0.0, 3) == 3.0);
    CHECK(dirichlet_factor(std::numbers::pi, 3) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(dirichlet_factor(0.0, 1) == 1.0);
}

TEST_CASE("dirichlet_factor matches the explicit sum") {
    SplitMix64 rng(53);
    for (int i = 0; i < 10000; ++i) {
        const double psi = rng.next_in(-4.0 * std::numbers::pi, 4.0 * std::numbers::pi);
        for (int n : {1, 3, 5, 7, 9})
            CHECK(std::abs(dirichlet_factor(psi, n) - dirichlet_sum_oracle(psi, n)) <= 1e-12);
    }
}

TEST_CASE("dirichlet_factor removable singularities") {
    for (int k = -3; k <= 3; ++k) {
        const double psi = 2.0 * std::numbers::pi * static_cast<double>(k);
        for (int n : {1, 3, 5, 7, 9}) {
            // Odd N: the limit at every 2*pi*k is exactly N.
            CHECK(dirichlet_factor(psi, n) == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
            CHECK(std::abs(dirichlet_factor(psi + 5e-13, n) - static_cast<double>(n)) <= 1e-9);
        }
    }
}

TEST_CASE("dirichlet_factor symmetry and periodicity") {
    SplitMix64 rng(59);
    for (int i = 0; i < 2000; ++i) {
        const double psi = rng.next_in(-10.0, 10.0);
        for (int n : {3, 5, 9}) {
            CHECK(dirichlet_factor(-psi, n) == doctest::Approx(dirichlet_factor(psi, n)).epsilon(1e-12));
            const double sq = dirichlet_factor(psi, n) * dirichlet_factor(psi, n);
            const double sq_shift = dirichlet_factor(psi + 2.0 * std::numbers::pi, n) *
                                    dirichlet_factor(psi + 2.0 * std::numbers::pi, n);
            CHECK(sq_shift == doctest::Approx(sq).epsilon(1e-9));
        }
    }
}

TEST_CASE("theoretical_power") {
    SUBCASE("N = 1 reduces to the single-PA power") {
        const PAPlacement single = x_axis_array(3.0, 1);
        SplitMix64 rng(61);
        for (int i = 0; i < 200; ++i) {
            const UserPosition u{rng.next_in(0.0, 6.0), rng.next_in(0.0, 10.0)};
            NoiseModel none(0.0, 0);
            const double exact =
                mwsp_received_signal(u, single, kRoom, kChan, 0.1, none).measurement.noiseless_w;
            CHECK(theoretical_power(u, single, kRoom, kChan, 0.1) ==
                  doctest::Approx(exact).epsilon(1e-12));
        }
    }

    SUBCASE("boresight gain is N^2") {
        for (int n : {3, 5, 7, 9}) {
            const PAPlacement arr = x_axis_array(3.0, n);
            const PAPlacement one = x_axis_array(3.0, 1);
            const UserPosition beneath{3.0, 4.0}; // cos(theta) = 0 from the x guide
            CHECK(theoretical_power(beneath, arr, kRoom, kChan, 0.1) ==
                  doctest::Approx(static_cast<double>(n) * n *
                                  theoretical_power(beneath, one, kRoom, kChan, 0.1))
                      .epsilon(1e-12));
        }
    }

    SUBCASE("matches the exact sum rebuilt with far-field phases") {
        // Oracle: per-element loop with the Taylor-linearized distance in
        // the phase and the uniform center feed loss, i.e. exactly the
        // approximations behind the closed form.
        SplitMix64 rng(67);
        const PAPlacement arr = x_axis_array(2.5, 7);
        for (int i = 0; i < 300; ++i) {
            const UserPosition u{rng.next_in(0.0, 6.0), rng.next_in(0.0, 10.0)};
            const double d_c = user_pa_distance(u, arr.center);
            const double cos_t = signal_cosine(u, arr, kRoom);
            const double arc = arr.feed_arc(kRoom);
            std::complex<double> sum{0.0, 0.0};
            for (int n = -3; n <= 3; ++n) {
                const double nd = static_cast<double>(n) * arr.spacing;
                const double d_taylor = d_c - nd * cos_t;
                const double phase = -2.0 * std::numbers::pi / kChan.lambda *
                                     (d_taylor + std::sqrt(kChan.eps_r) * (arc + nd));
                sum += std::polar(1.0, phase);
            }
            const double amp = std::sqrt(0.1) * free_space_gain(d_c, kChan) * std::exp(-kChan.alpha * arc);
            const double oracle = std::norm(amp * sum);
            const double model = theoretical_power(u, arr, kRoom, kChan, 0.1);
            CHECK(model == doctest::Approx(oracle).epsilon(1e-12));
        }
    }

    SUBCASE("deviation from the exact-distance sum is reported, not asserted") {
        const PAPlacement arr = x_axis_array(3.0, 9);
        double worst = 0.0;
        SplitMix64 rng(71);
        for (int i = 0; i < 100; ++i) {
            const UserPosition u{rng.next_in(0.5, 5.5), rng.next_in(0.5, 9.5)};
            worst = std::max(worst, far_field_power_deviation(u, arr, kRoom, kChan, 0.1));
        }
        MESSAGE("far-field power deviation, worst of 100 positions, N=9: ", worst);
    }
}

TEST_CASE("model_measurement bookkeeping") {
    const PAPlacement arr = x_axis_array(3.0, 3);
    NoiseModel nm = NoiseModel::from_noise_power_dbm(-80.0, 5);
    const Measurement m = model_measurement({2.0, 3.0}, arr, kRoom, kChan, 0.1, nm);
    CHECK(m.received_w == m.noiseless_w + m.noise_w);
    CHECK(m.noiseless_w == theoretical_power({2.0, 3.0}, arr, kRoom, kChan, 0.1));
}

TEST_CASE("grid search") {
    Scenario sc = default_scenario();
    sc.sigma2_dbm.reset();

    SUBCASE("noiseless grid-aligned truth is recovered exactly") {
        // (2, 3) lies on the 0.5 m coarse lattice, so the truth is in the
        // candidate set and the error function vanishes there.
        const UserPosition truth{2.0, 3.0};
        NoiseModel none(0.0, 0);
        const std::vector<Measurement> meas = synthesize_mwmp_measurements(sc, truth, none);
        const GridSearchResult r = locate_mwmp(sc, meas);
        CHECK(r.estimate.x == doctest::Approx(truth.x).epsilon(1e-15));
        CHECK(r.estimate.y == doctest::Approx(truth.y).epsilon(1e-15));
        CHECK(r.final_error_value == 0.0);
    }

    SUBCASE("noiseless off-grid truth recovered within the final pitch") {
        SplitMix64 rng(73);
        for (int i = 0; i < 50; ++i) {
            const UserPosition truth{rng.next_in(0.0, 6.0), rng.next_in(0.0, 10.0)};
            NoiseModel none(0.0, 0);
            const std::vector<Measurement> meas = synthesize_mwmp_measurements(sc, truth, none);
            const GridSearchResult r = locate_mwmp(sc, meas);
            CHECK(planar_distance(r.estimate, truth) <= sc.grid.final_pitch() * 1.5);
        }
    }

    SUBCASE("deterministic") {
        NoiseModel nm = sc.noise_for(11);
        Scenario noisy = sc;
        noisy.sigma2_dbm = -80.0;
        NoiseModel nm2 = noisy.noise_for(11);
        const std::vector<Measurement> meas = synthesize_mwmp_measurements(noisy, {4.3, 6.1}, nm2);
        const GridSearchResult a = locate_mwmp(noisy, meas);
        const GridSearchResult b = locate_mwmp(noisy, meas);
        CHECK(a.estimate.x == b.estimate.x);
        CHECK(a.estimate.y == b.estimate.y);
        CHECK(a.points_evaluated == b.points_evaluated);
        (void)nm;
    }
}

TEST_CASE("single-waveguide search is mirror-ambiguous") {
    // One x-axis array centered at x = 3: powers are even in (x - 3), so a
    // truth left of center is found, a truth right of center resolves to its
    // mirror through the lowest-(x, y) tie-break.
    Scenario sc = default_scenario();
    sc.sigma2_dbm.reset();
    sc.placements = {x_axis_array(3.0, 3)};

    NoiseModel n1(0.0, 0);
    const std::vector<Measurement> left = synthesize_mwmp_measurements(sc, {1.5, 5.0}, n1);
    const GridSearchResult r_left = locate_mwmp(sc, left);
    CHECK(planar_distance(r_left.estimate, {1.5, 5.0}) <= sc.grid.final_pitch() * 1.5);

    NoiseModel n2(0.0, 0);
    const std::vector<Measurement> right = synthesize_mwmp_measurements(sc, {4.5, 5.0}, n2);
    const GridSearchResult r_right = locate_mwmp(sc, right);
    CHECK(planar_distance(r_right.estimate, {1.5, 5.0}) <= sc.grid.final_pitch() * 1.5);
    CHECK(planar_distance(r_right.estimate, {4.5, 5.0}) ==
          doctest::Approx(3.0).epsilon(0.01)); // landed on the mirror
}

TEST_CASE("power symmetry pairs across an array center") {
    // Equal center distance and equal |cos(theta)| force equal theoretical
    // power; this is the unresolvable single-waveguide ambiguity.
    const PAPlacement arr = x_axis_array(3.0, 3);
    SplitMix64 rng(79);
    for (int i = 0; i < 1000; ++i) {
        const double dx = rng.next_in(0.05, 2.9);
        const double y = rng.next_in(0.2, 9.8);
        const double pa = theoretical_power({3.0 + dx, y}, arr, kRoom, kChan, 0.1);
        const double pb = theoretical_power({3.0 - dx, y}, arr, kRoom, kChan, 0.1);
        CHECK(pa == doctest::Approx(pb).epsilon(1e-12));
    }
}

TEST_CASE("complexity audit") {
    Scenario sc = default_scenario();
    sc.sigma2_dbm.reset();

    SUBCASE("coarse grid arithmetic") {
        CHECK(sc.grid.coarse_points(kRoom) == 273); // 13 x 21 at 0.5 m on 6 x 10
        CHECK(sc.grid.refine_points() == 121); // (2 * 5 + 1)^2
        CHECK(sc.grid.final_pitch() == doctest::Approx(0.5 / 625.0).epsilon(1e-12));
    }

    SUBCASE("no refinement: exactly the coarse evaluations") {
        Scenario flat = sc;
        flat.grid.max_iterations = 0;
        NoiseModel none(0.0, 0);
        const std::vector<Measurement> meas = synthesize_mwmp_measurements(flat, {2.0, 3.0}, none);
        const GridSearchResult r = locate_mwmp(flat, meas);
        CHECK(r.points_evaluated == 273);
        const ComplexityAudit audit = complexity_audit(r, flat.grid, kRoom, 3);
        CHECK(audit.power_evaluations == 3 * 273);
        CHECK(audit.evaluation_bound == 3 * 273);
        CHECK(audit.within_bound);
    }

    SUBCASE("bound holds with refinement") {
        NoiseModel nm = NoiseModel::from_noise_power_dbm(-80.0, 3);
        Scenario noisy = sc;
        noisy.sigma2_dbm = -80.0;
        const std::vector<Measurement> meas = synthesize_mwmp_measurements(noisy, {4.1, 2.7}, nm);
        const GridSearchResult r = locate_mwmp(noisy, meas);
        const ComplexityAudit audit = complexity_audit(r, noisy.grid, kRoom, 3);
        CHECK(audit.within_bound);
        CHECK(r.iterations_used <= noisy.grid.max_iterations);
    }

    SUBCASE("per-point cost flat in the element count") {
        // The closed form's cost is element-count independent; allow 2x for
        // timer noise on a loaded machine.
        const auto time_for = [&](int n) {
            const PowerModel model(x_axis_array(3.0, n), kRoom, kChan, 0.1);
            volatile double sink = 0.0;
            const auto start = std::chrono::steady_clock::now();
            for (int i = 0; i < 400000; ++i) {
                const double x = static_cast<double>(i % 600) * 0.01;
                sink = sink + model.power_at({x, 5.0});
            }
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        };
        time_for(3); // warm up
        const double t3 = time_for(3);
        const double t9 = time_for(9);
        MESSAGE("power_at timing: N=3 ", t3, " s, N=9 ", t9, " s");
        CHECK(t9 < 2.0 * t3);
    }
}
