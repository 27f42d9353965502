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

#include "passim/comms.hpp"

#include <complex>

namespace passim {

const char *to_string(RateTag tag) {
    switch (tag) {
    case RateTag::Mwsp: return "mwsp";
    case RateTag::Mwmp: return "mwmp";
    default: return "fixed";
    }
}

WaveguideChoice select_waveguide(const UserPosition &estimate, const Room &room) {
    const PerpendicularDistances d = perpendicular_distances(estimate, room);
    WaveguideChoice choice{WaveguideAxis::XAxis, d.d_x};
    if (d.d_y < choice.distance) choice = {WaveguideAxis::YAxis, d.d_y};
    if (d.d_m < choice.distance) choice = {WaveguideAxis::Diagonal, d.d_m};
    return choice;
}

Vec3 relocate_single(const UserPosition &estimate, const Waveguide &wg, const Room &room) {
    return project_to_waveguide(estimate, wg, room);
}

std::vector<double> in_phase_offsets(double d0, int n_elements, double lambda) {
    if (n_elements < 1 || n_elements % 2 == 0)
        throw ConfigError("in_phase_offsets: n_elements must be an odd integer >= 1");
    std::vector<double> offsets(static_cast<std::size_t>(n_elements));
    const int half = (n_elements - 1) / 2;
    for (int n = -half; n <= half; ++n) {
        const double nl = static_cast<double>(n) * lambda;
        offsets[static_cast<std::size_t>(n + half)] = nl * (2.0 * d0 + nl) / (2.0 * (d0 + nl));
    }
    return offsets;
}

RelocationPlan plan_relocation(const UserPosition &estimate, int n_elements, const Room &room,
                               const ChannelConstants &k) {
    const WaveguideChoice choice = select_waveguide(estimate, room);
    RelocationPlan plan;
    plan.waveguide = Waveguide{choice.axis, 0.0};
    plan.center = project_to_waveguide(estimate, plan.waveguide, room);
    plan.d0 = choice.distance;
    plan.offsets = in_phase_offsets(plan.d0, n_elements, k.lambda);
    plan.elements.reserve(plan.offsets.size());
    const double center_arc = plan.waveguide.arc_of(room, plan.center);
    // Elements near a wall may overhang the segment end; keep the in-phase
    // geometry intact rather than distorting the offsets.
    for (double l : plan.offsets)
        plan.elements.push_back(plan.waveguide.point_at_arc(room, center_arc + l));
    return plan;
}

RateReport downlink_rate_mwsp(const UserPosition &user_true, const Vec3 &relocated_pa,
                              const Room &room, const ChannelConstants &k, double p_t_w,
                              double sigma2_w) {
    RateReport report;
    report.tag = RateTag::Mwsp;
    report.n_elements = 1;

    // Perfect relocation puts the PA at the projection onto the nearest
    // waveguide, so the theoretical distance is the smallest perpendicular
    // distance from the true position.
    const double d_theory = select_waveguide(user_true, room).distance;
    const double gain_theory = free_space_gain(d_theory, k);
    report.snr_theory = gain_theory * gain_theory * p_t_w / sigma2_w;
    report.rate_theory = std::log2(1.0 + report.snr_theory);

    const double d_real = user_pa_distance(user_true, relocated_pa);
    const double gain_real = free_space_gain(d_real, k);
    report.snr_realized = gain_real * gain_real * p_t_w / sigma2_w;
    report.rate_realized = std::log2(1.0 + report.snr_realized);
    return report;
}

RateReport downlink_rate_mwmp(const UserPosition &user_true, const RelocationPlan &plan,
                              const Room &room, const ChannelConstants &k, double p_t_w,
                              double sigma2_w) {
    RateReport report;
    report.tag = RateTag::Mwmp;
    report.n_elements = static_cast<int>(plan.offsets.size());

    // Theory: relocation driven by the truth, signals in phase by
    // construction, amplitudes add directly.
    const RelocationPlan ideal = plan_relocation(user_true, report.n_elements, room, k);
    double amp_theory = 0.0;
    for (const Vec3 &e : ideal.elements)
        amp_theory += free_space_gain(user_pa_distance(user_true, e), k);
    report.snr_theory = amp_theory * amp_theory * p_t_w / sigma2_w;
    report.rate_theory = std::log2(1.0 + report.snr_theory);

    // Realized: exact per-element complex amplitudes at the true position.
    // A misplaced array decoheres the sum; this is the second half of the
    // noise double-impact.
    const double two_pi_over_lambda = 2.0 * std::numbers::pi / k.lambda;
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t i = 0; i < plan.elements.size(); ++i) {
        const double d = user_pa_distance(user_true, plan.elements[i]);
        const double phase = -two_pi_over_lambda * (plan.offsets[i] + d);
        sum += std::polar(free_space_gain(d, k), phase);
    }
    report.snr_realized = std::norm(sum) * p_t_w / sigma2_w;
    report.rate_realized = std::log2(1.0 + report.snr_realized);
    return report;
}

RateReport fixed_baseline_rate(const UserPosition &user_true, const Vec3 &fixed_pa,
                               const ChannelConstants &k, double p_t_w, double sigma2_w) {
    RateReport report;
    report.tag = RateTag::FixedBaseline;
    report.n_elements = 1;
    const double gain = free_space_gain(user_pa_distance(user_true, fixed_pa), k);
    report.snr_theory = gain * gain * p_t_w / sigma2_w;
    report.rate_theory = std::log2(1.0 + report.snr_theory);
    report.snr_realized = report.snr_theory;
    report.rate_realized = report.rate_theory;
    return report;
}

} // namespace passim
