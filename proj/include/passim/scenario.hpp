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

#include <optional>
#include <vector>

#include "passim/channel.hpp"
#include "passim/geometry.hpp"
#include "passim/positioning_mwmp.hpp"

namespace passim {

/// The single source of geometric and physical truth for a simulation:
/// room, RF constants, transmit/noise powers, the uplink PA deployment and
/// the search configuration.
struct Scenario {
    Room room{6.0, 10.0, 3.0};
    ChannelConstants channel = ChannelConstants::make(2.4e9, 2.08, 4.0e-4);
    double p_s_dbm = 20.0; ///< uplink transmit power [dBm] (config-facing value)
    double p_t_dbm = 20.0; ///< downlink per-element transmit power [dBm]
    double p_s_w = 0.1; ///< uplink transmit power [W], derived from p_s_dbm
    double p_t_w = 0.1; ///< downlink per-element transmit power [W]
    std::optional<double> sigma2_dbm = -80.0; ///< noise power [dBm]; nullopt = noiseless
    std::vector<PAPlacement> placements; ///< uplink deployment, one entry per waveguide
    GridSearchConfig grid{};
    Vec3 fixed_pa{3.0, 5.0, 3.0}; ///< fixed-antenna baseline location

    /// Standard deviation of the measured-power perturbation [W].
    double noise_sd_w() const { return sigma2_dbm ? watts_from_dbm(*sigma2_dbm) : 0.0; }

    /// Noise stream for one Monte Carlo unit of work.
    NoiseModel noise_for(std::uint64_t substream_seed) const {
        const double sd = noise_sd_w();
        return NoiseModel(sd * sd, substream_seed);
    }

    void validate() const {
        room.validate();
        grid.validate();
        if (!(p_s_w > 0.0)) throw ConfigError("power.p_s_dbm: transmit power must be > 0");
        if (!(p_t_w > 0.0)) throw ConfigError("power.p_t_dbm: transmit power must be > 0");
        if (placements.empty() || placements.size() > 3)
            throw ConfigError("layout.waveguides: need 1 to 3 waveguides");
        for (const PAPlacement &p : placements) p.validate(room);
    }
};

/// Three canonical non-parallel waveguides (x edge, y edge, diagonal) with
/// array centers at mid-waveguide.
std::vector<PAPlacement> nonparallel_layout(const Room &room, int n_elements, double spacing);

/// Three waveguides parallel to the y axis at x = 0, d1/2 and d1, with
/// staggered array centers (y = d2/4, d2/2, 3*d2/4). The stagger separates
/// the per-guide symmetry points; without it the deployment would share one
/// exact mirror symmetry and positioning could never resolve it.
std::vector<PAPlacement> parallel_y_layout(const Room &room, int n_elements, double spacing);

/// A copy of the scenario with every placement rebuilt for a new element
/// count (spacing kept).
Scenario with_n_elements(const Scenario &base, int n_elements);

/// Desk-scale indoor defaults: 6 m x 10 m x 3 m room, 2.4 GHz carrier,
/// eps_r = 2.08, tan_delta = 4e-4, 0.1 W transmit powers, -80 dBm noise,
/// non-parallel N = 3 deployment at the guided-wavelength spacing.
Scenario default_scenario();

} // namespace passim
