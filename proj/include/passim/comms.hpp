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
#include <vector>

#include "passim/channel.hpp"
#include "passim/geometry.hpp"

namespace passim {

/// Which of the three canonical waveguides serves the user, and how far it
/// is. Ties break in the order x, y, diagonal.
struct WaveguideChoice {
    WaveguideAxis axis = WaveguideAxis::XAxis;
    double distance = 0.0; ///< perpendicular (spatial) distance [m]
};

WaveguideChoice select_waveguide(const UserPosition &estimate, const Room &room);

/// Downlink deployment derived from a position estimate: the chosen
/// waveguide, the array center at the estimate's projection, and the
/// per-element offsets l_n that make the transmitted signals superimpose in
/// phase at the estimate. Element coordinates may overhang the waveguide
/// segment near the room walls; the in-phase construction has no sensible
/// on-segment repair, so the geometry is materialized on the full line.
struct RelocationPlan {
    Waveguide waveguide;
    Vec3 center;
    double d0 = 0.0; ///< distance from the (estimated) user to the waveguide
    std::vector<double> offsets; ///< l_n, center element first in n-order
    std::vector<Vec3> elements;
};

/// Single-PA relocation: the estimate's projection onto the waveguide.
Vec3 relocate_single(const UserPosition &estimate, const Waveguide &wg, const Room &room);

/// In-phase element offsets l_n = n * lambda * (2 * d0 + n * lambda) /
/// (2 * (d0 + n * lambda)) for n = -(N-1)/2 .. (N-1)/2. l_0 = 0; the offsets
/// are antisymmetric up to the nonlinear correction. With the array center
/// at the user's projection, every per-element path phase
/// (2 pi / lambda) * (l_n + d'_n) is congruent mod 2 pi.
std::vector<double> in_phase_offsets(double d0, int n_elements, double lambda);

/// Full relocation for an N-element array driven by a position estimate.
RelocationPlan plan_relocation(const UserPosition &estimate, int n_elements, const Room &room,
                               const ChannelConstants &k);

enum class RateTag { Mwsp, Mwmp, FixedBaseline };

const char *to_string(RateTag tag);

/// Downlink link report. `theory` assumes the relocation was driven by the
/// true position (perfect estimate); `realized` evaluates the actual
/// deployment at the true user, including the phase misalignment a position
/// error causes. realized <= theory: misplacement only loses power.
struct RateReport {
    RateTag tag = RateTag::Mwsp;
    int n_elements = 1;
    double snr_theory = 0.0; ///< linear
    double rate_theory = 0.0; ///< bits/s/Hz
    double snr_realized = 0.0;
    double rate_realized = 0.0;

    double snr_theory_db() const { return 10.0 * std::log10(snr_theory); }
    double snr_realized_db() const { return 10.0 * std::log10(snr_realized); }
};

/// Rate of the single relocated PA. `relocated_pa` comes from the estimate;
/// the theoretical side re-derives the relocation from the truth.
RateReport downlink_rate_mwsp(const UserPosition &user_true, const Vec3 &relocated_pa,
                              const Room &room, const ChannelConstants &k, double p_t_w,
                              double sigma2_w);

/// Rate of the relocated in-phase array. The realized side sums complex
/// per-element amplitudes at the true position; the theoretical side uses
/// the in-phase amplitude sum of a truth-driven relocation.
RateReport downlink_rate_mwmp(const UserPosition &user_true, const RelocationPlan &plan,
                              const Room &room, const ChannelConstants &k, double p_t_w,
                              double sigma2_w);

/// Non-relocating single-antenna baseline; theory and realized coincide.
RateReport fixed_baseline_rate(const UserPosition &user_true, const Vec3 &fixed_pa,
                               const ChannelConstants &k, double p_t_w, double sigma2_w);

/// Shannon rate of a link with the given amplitude gain.
inline double shannon_rate(double amplitude_gain, double p_t_w, double sigma2_w) {
    const double snr = amplitude_gain * amplitude_gain * p_t_w / sigma2_w;
    return std::log2(1.0 + snr);
}

} // namespace passim
