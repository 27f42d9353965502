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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "passim/comms.hpp"
#include "passim/positioning_mwmp.hpp"
#include "passim/positioning_mwsp.hpp"
#include "passim/scenario.hpp"

namespace passim {

enum class CampaignKind { MwspMap, MwmpMap, SwmpMap, AvgErrorCurve, RateVsPower, RateVsNoise };

const char *to_string(CampaignKind kind);

/// True-position lattice: nx-by-ny cell centers covering the room footprint.
struct LatticeSpec {
    int nx = 30;
    int ny = 50;

    UserPosition cell_center(const Room &room, int i, int j) const {
        return {(static_cast<double>(i) + 0.5) * room.d1 / static_cast<double>(nx),
                (static_cast<double>(j) + 0.5) * room.d2 / static_cast<double>(ny)};
    }
    int cells() const { return nx * ny; }
};

/// One Monte Carlo experiment: what to run, over which lattice or user set,
/// how many trials, and which axes to sweep. The master seed pins every
/// realization; reruns are byte-identical regardless of worker count.
struct Campaign {
    CampaignKind kind = CampaignKind::MwmpMap;
    LatticeSpec lattice;
    int trials = 100;
    std::uint64_t seed = 1;
    std::vector<double> sigma2_dbm_sweep;
    std::vector<double> p_t_dbm_sweep;
    std::vector<int> n_elements_sweep;

    void validate() const {
        if (lattice.nx < 1 || lattice.ny < 1) throw ConfigError("campaign.lattice: counts must be >= 1");
        if (trials < 1) throw ConfigError("campaign.trials: must be >= 1");
        for (int n : n_elements_sweep)
            if (n < 1 || n % 2 == 0) throw ConfigError("campaign.sweeps.n_elements: entries must be odd and >= 1");
    }
};

/// Gridded positioning-error statistics. Cells are stored x-major
/// (index = i * ny + j); pooled statistics aggregate every trial in the map.
struct ErrorMapCell {
    double x = 0.0;
    double y = 0.0;
    double mean_err_m = 0.0;
    double median_err_m = 0.0;
};

struct ErrorMap {
    int nx = 0;
    int ny = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::string scenario_hash;
    std::vector<ErrorMapCell> cells;
    double pooled_mean_m = 0.0;
    double pooled_median_m = 0.0;
};

struct AvgErrorPoint {
    double sigma2_dbm = 0.0;
    std::string layout; ///< "non_parallel" or "parallel_y"
    int n_elements = 0;
    double mean_err_m = 0.0;
    int trials = 0;
};

struct AvgErrorCurve {
    std::uint64_t seed = 0;
    std::string scenario_hash;
    std::vector<AvgErrorPoint> points;
};

struct RateCurvePoint {
    double sweep_value = 0.0; ///< p_t [dBm] or sigma2 [dBm]
    RateTag tag = RateTag::Mwsp;
    int n_elements = 1;
    double rate_theory = 0.0; ///< mean over users, perfect-estimate relocation
    double rate_sim = 0.0; ///< mean over users, estimate-driven relocation
};

struct RateCurve {
    std::string sweep_name; ///< "p_t_dbm" or "sigma2_dbm"
    std::uint64_t seed = 0;
    std::string scenario_hash;
    int users = 0;
    int trials = 0;
    std::vector<RateCurvePoint> points;
};

// ---------------------------------------------------------------------------
// Single-trial building blocks (shared by the runners and the CLI)
// ---------------------------------------------------------------------------

/// Uplink samples for the single-PA deployment, one per waveguide in layout
/// order. Noise draws are consumed in that same order.
std::vector<Measurement> synthesize_mwsp_measurements(const Scenario &sc, const UserPosition &truth,
                                                      NoiseModel &noise);

/// Uplink samples for the multi-PA deployment from the closed-form
/// superposed power plus the noise draw (the quantity the grid search
/// inverts).
std::vector<Measurement> synthesize_mwmp_measurements(std::span<const PAPlacement> placements,
                                                      const Room &room, const ChannelConstants &k,
                                                      double p_s_w, const UserPosition &truth,
                                                      NoiseModel &noise);
std::vector<Measurement> synthesize_mwmp_measurements(const Scenario &sc, const UserPosition &truth,
                                                      NoiseModel &noise);

/// RSSI ranging + least squares over the scenario's three single-PA
/// waveguides.
PositionEstimate locate_mwsp(const Scenario &sc, std::span<const Measurement> measurements);

/// Superposed-power grid search over the given deployment.
GridSearchResult locate_mwmp(const Scenario &sc, std::span<const PAPlacement> placements,
                             std::span<const Measurement> measurements);
GridSearchResult locate_mwmp(const Scenario &sc, std::span<const Measurement> measurements);

// ---------------------------------------------------------------------------
// Campaign runners
// ---------------------------------------------------------------------------

ErrorMap run_mwsp_map(const Scenario &sc, const Campaign &campaign, int threads = 1);

/// Grid-search error map; also serves the single-waveguide diagnostic when
/// the scenario deploys one waveguide.
ErrorMap run_mwmp_map(const Scenario &sc, const Campaign &campaign, int threads = 1);

/// Mean positioning error vs. noise power for the scenario layout and its
/// parallel-to-y counterpart, over room-uniform random users. User positions
/// and noise realizations are paired across layouts and element counts.
AvgErrorCurve run_avg_error_curve(const Scenario &sc, const Campaign &campaign, int threads = 1);

/// Downlink rate sweeps (vs. transmit power or vs. noise power) with
/// uplink-positioning-driven relocation for MWSP, MWMP at each element
/// count, and the fixed-antenna baseline.
RateCurve run_rate_sweeps(const Scenario &sc, const Campaign &campaign, int threads = 1);

// ---------------------------------------------------------------------------
// Serialization and provenance
// ---------------------------------------------------------------------------

/// Locale-independent formatting with 9 significant digits.
std::string format_g9(double value);

void write_csv(const ErrorMap &map, std::ostream &out);
void write_csv(const AvgErrorCurve &curve, std::ostream &out);
void write_csv(const RateCurve &curve, std::ostream &out);

/// Stable 64-bit FNV-1a fingerprint of the scenario and campaign, used to
/// tie emitted records back to the exact configuration that produced them.
std::string scenario_fingerprint(const Scenario &sc, const Campaign &campaign);

/// Runs fn(0..n-1) on up to `threads` workers with a stride schedule.
/// Results must be written to disjoint slots; the schedule never affects
/// the output.
void parallel_for(int n, int threads, const std::function<void(int)> &fn);

} // namespace passim
