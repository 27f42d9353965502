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

#include "passim/positioning_mwmp.hpp"

#include <cmath>
#include <limits>

namespace passim {

double far_field_power_deviation(const UserPosition &user, const PAPlacement &placement,
                                 const Room &room, const ChannelConstants &k, double p_s_w) {
    NoiseModel none(0.0, 0);
    const double exact =
        mwmp_received_signal_exact(user, placement, room, k, p_s_w, none).measurement.noiseless_w;
    const double model = theoretical_power(user, placement, room, k, p_s_w);
    return std::abs(model - exact) / exact;
}

namespace {

struct Incumbent {
    double err = std::numeric_limits<double>::infinity();
    double x = 0.0;
    double y = 0.0;

    // Total order on (err, x, y); the lexicographic tie-break keeps the
    // argmin unique and therefore independent of evaluation order.
    void offer(double e, double cx, double cy) {
        if (e < err || (e == err && (cx < x || (cx == x && cy < y)))) {
            err = e;
            x = cx;
            y = cy;
        }
    }
};

} // namespace

GridSearchResult grid_search_locate(std::span<const Measurement> measurements,
                                    std::span<const PAPlacement> placements,
                                    const GridSearchConfig &config, const Room &room,
                                    const ChannelConstants &k, double p_s_w) {
    if (measurements.empty() || measurements.size() != placements.size())
        throw ConfigError("grid_search_locate: need one measurement per waveguide");
    config.validate();

    std::vector<PowerModel> models;
    models.reserve(placements.size());
    for (const PAPlacement &p : placements) models.emplace_back(p, room, k, p_s_w);

    std::int64_t points = 0;
    const auto error_at = [&](double x, double y) {
        double e = 0.0;
        for (std::size_t i = 0; i < models.size(); ++i)
            e += std::abs(measurements[i].received_w - models[i].power_at({x, y}));
        return e;
    };

    Incumbent best;
    const int nx = static_cast<int>(std::floor(room.d1 / config.coarse_resolution + 1e-9)) + 1;
    const int ny = static_cast<int>(std::floor(room.d2 / config.coarse_resolution + 1e-9)) + 1;
    for (int i = 0; i < nx; ++i) {
        const double x = static_cast<double>(i) * config.coarse_resolution;
        for (int j = 0; j < ny; ++j) {
            const double y = static_cast<double>(j) * config.coarse_resolution;
            best.offer(error_at(x, y), x, y);
            ++points;
        }
    }

    int iterations = 0;
    double pitch = config.coarse_resolution;
    double prev_err = best.err;
    for (int m = 1; m <= config.max_iterations; ++m) {
        pitch /= static_cast<double>(config.refine_factor);
        const double cx = best.x, cy = best.y;
        for (int i = -config.refine_factor; i <= config.refine_factor; ++i) {
            const double x = cx + static_cast<double>(i) * pitch;
            if (x < 0.0 || x > room.d1) continue;
            for (int j = -config.refine_factor; j <= config.refine_factor; ++j) {
                const double y = cy + static_cast<double>(j) * pitch;
                if (y < 0.0 || y > room.d2) continue;
                best.offer(error_at(x, y), x, y);
                ++points;
            }
        }
        iterations = m;
        if (prev_err - best.err < config.stop_threshold) break;
        prev_err = best.err;
    }

    GridSearchResult result;
    result.estimate = {best.x, best.y};
    result.final_error_value = best.err;
    result.iterations_used = iterations;
    result.points_evaluated = points;
    return result;
}

ComplexityAudit complexity_audit(const GridSearchResult &result, const GridSearchConfig &config,
                                 const Room &room, int n_waveguides) {
    ComplexityAudit audit;
    audit.g_coarse = config.coarse_points(room);
    audit.g_refine = config.refine_points();
    audit.max_iterations = config.max_iterations;
    audit.n_waveguides = n_waveguides;
    audit.power_evaluations = static_cast<std::int64_t>(n_waveguides) * result.points_evaluated;
    audit.evaluation_bound =
        3 * (static_cast<std::int64_t>(audit.g_coarse) +
             static_cast<std::int64_t>(audit.max_iterations) * audit.g_refine);
    audit.within_bound = audit.power_evaluations <= audit.evaluation_bound;
    return audit;
}

} // namespace passim
