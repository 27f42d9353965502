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

#include "passim/channel.hpp"

namespace passim {

ReceivedSignal mwmp_received_signal_exact(const UserPosition &user, const PAPlacement &placement,
                                          const Room &room, const ChannelConstants &k,
                                          double p_s_w, NoiseModel &noise) {
    const double d_center = user_pa_distance(user, placement.center);
    const double cos_theta = signal_cosine(user, placement, room);
    const double feed_arc = placement.feed_arc(room);
    const double two_pi_over_lambda = 2.0 * std::numbers::pi / k.lambda;
    const double sqrt_eps = std::sqrt(k.eps_r);

    const int half = (placement.n_elements - 1) / 2;
    std::complex<double> sum{0.0, 0.0};
    for (int n = -half; n <= half; ++n) {
        const double nd = static_cast<double>(n) * placement.spacing;
        // Law of cosines along the guide; identical to the Euclidean
        // distance to the element at signed offset nd from the center.
        const double d_n = (n == 0)
                               ? d_center
                               : std::sqrt(d_center * d_center + nd * nd -
                                           2.0 * d_center * nd * cos_theta);
        const double arc_n = feed_arc + nd;
        const double phase = -two_pi_over_lambda * (d_n + sqrt_eps * arc_n);
        sum += std::polar(std::exp(-k.alpha * arc_n), phase);
    }

    const double prefactor = std::sqrt(p_s_w) * free_space_gain(d_center, k);
    ReceivedSignal out;
    out.sample = prefactor * sum;
    out.measurement = make_measurement(std::norm(out.sample), user, noise);
    return out;
}

ReceivedSignal mwsp_received_signal(const UserPosition &user, const PAPlacement &pa,
                                    const Room &room, const ChannelConstants &k, double p_s_w,
                                    NoiseModel &noise) {
    if (pa.n_elements != 1)
        throw ConfigError("mwsp_received_signal: placement must host a single PA");
    return mwmp_received_signal_exact(user, pa, room, k, p_s_w, noise);
}

} // namespace passim
