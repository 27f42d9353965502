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
#include <span>
#include <vector>

#include "passim/channel.hpp"
#include "passim/geometry.hpp"

namespace passim {

/// Coherent gain of N equally spaced in-line elements at electrical spacing
/// psi: sin(N * psi / 2) / sin(psi / 2). The half-angle is reduced mod pi
/// first (an exact operation), which keeps numerator and denominator
/// shrinking together near the removable singularities at psi = 2 * pi * k;
/// there the quotient of derivatives N * cos(N h) / cos(h) takes over,
/// giving N * (-1)^(k * (N - 1)) at the singular points (exactly N for odd
/// N, the deployed case).
inline double dirichlet_factor(double psi, int n) {
    const double nd = static_cast<double>(n);
    const double h = std::remainder(0.5 * psi, std::numbers::pi);
    double sign = 1.0;
    if (n % 2 == 0) {
        const double k = std::round((0.5 * psi - h) / std::numbers::pi);
        if (std::fmod(std::abs(k), 2.0) >= 0.5) sign = -1.0;
    }
    const double denom = std::sin(h);
    if (std::abs(denom) < 1e-12) return sign * nd * std::cos(nd * h) / std::cos(h);
    return sign * std::sin(nd * h) / denom;
}

/// Precomputed far-field power model of one waveguide's array: everything
/// that does not depend on the candidate position is folded into constants
/// so the grid search pays only two square roots and two sines per point.
/// The per-point cost is independent of the number of elements.
class PowerModel {
  public:
    PowerModel(const PAPlacement &placement, const Room &room, const ChannelConstants &k,
               double p_s_w)
        : center_(placement.center), n_(placement.n_elements),
          axis_(placement.waveguide.axis), h_sq_(room.h * room.h),
          psi_scale_(2.0 * std::numbers::pi * placement.spacing / k.lambda) {
        const double feed_loss = std::exp(-k.alpha * placement.feed_arc(room));
        const double amp = k.lambda * feed_loss / (4.0 * std::numbers::pi);
        scaled_power_ = p_s_w * amp * amp;
        const double diag = room.ceiling_diagonal();
        dir_x_ = axis_ == WaveguideAxis::XAxis ? 1.0 : (axis_ == WaveguideAxis::YAxis ? 0.0 : room.d1 / diag);
        dir_y_ = axis_ == WaveguideAxis::XAxis ? 0.0 : (axis_ == WaveguideAxis::YAxis ? 1.0 : room.d2 / diag);
    }

    /// Noiseless superposed power at a candidate user position [W].
    double power_at(const UserPosition &u) const {
        const double dx = u.x - center_.x;
        const double dy = u.y - center_.y;
        const double d_sq = dx * dx + dy * dy + h_sq_;
        const double d = std::sqrt(d_sq);
        const double cos_theta = (dir_x_ * dx + dir_y_ * dy) / d;
        const double factor = dirichlet_factor(psi_scale_ * cos_theta, n_);
        return scaled_power_ * factor * factor / d_sq;
    }

    int n_elements() const { return n_; }

  private:
    Vec3 center_;
    int n_;
    WaveguideAxis axis_;
    double h_sq_;
    double psi_scale_;
    double scaled_power_ = 0.0;
    double dir_x_ = 1.0, dir_y_ = 0.0;
};

/// Far-field closed-form power of the superposed uplink signal.
inline double theoretical_power(const UserPosition &candidate, const PAPlacement &placement,
                                const Room &room, const ChannelConstants &k, double p_s_w) {
    return PowerModel(placement, room, k, p_s_w).power_at(candidate);
}

/// Measurement synthesized from the closed-form power model plus the power
/// noise draw. This is the quantity the grid search consumes: the model the
/// search inverts is the noiseless closed form, and noise lives only in the
/// measurement. The exact coherent sum stays available as a physical
/// reference (see far_field_power_deviation).
inline Measurement model_measurement(const UserPosition &truth, const PAPlacement &placement,
                                     const Room &room, const ChannelConstants &k, double p_s_w,
                                     NoiseModel &noise) {
    return make_measurement(theoretical_power(truth, placement, room, k, p_s_w), truth, noise);
}

/// Relative gap between the closed-form power and the exact coherent sum
/// (Taylor phase + uniform feed loss vs. exact distances and arcs).
/// Diagnostic only; part of the far-field error budget.
double far_field_power_deviation(const UserPosition &user, const PAPlacement &placement,
                                 const Room &room, const ChannelConstants &k, double p_s_w);

/// Coarse-to-fine search configuration. Defaults: 0.5 m coarse pitch,
/// refine factor 5 and 4 refinement rounds, i.e. a final pitch of 0.8 mm,
/// far below the noise-limited accuracy of any swept operating point.
struct GridSearchConfig {
    double coarse_resolution = 0.5; ///< coarse pitch [m]
    int refine_factor = 5; ///< pitch divider per refinement round, >= 2
    int max_iterations = 4; ///< refinement rounds M, >= 0
    double stop_threshold = 1e-15; ///< minimum error-function improvement [W]

    void validate() const {
        if (!(coarse_resolution > 0.0)) throw ConfigError("grid_search.coarse_resolution_m: must be > 0");
        if (refine_factor < 2) throw ConfigError("grid_search.refine_factor: must be >= 2");
        if (max_iterations < 0) throw ConfigError("grid_search.max_iterations: must be >= 0");
        if (!(stop_threshold > 0.0)) throw ConfigError("grid_search.stop_threshold_w: must be > 0");
    }

    /// Candidate count of the coarse pass, inclusive endpoints (G_coa).
    int coarse_points(const Room &room) const {
        const int nx = static_cast<int>(std::floor(room.d1 / coarse_resolution + 1e-9)) + 1;
        const int ny = static_cast<int>(std::floor(room.d2 / coarse_resolution + 1e-9)) + 1;
        return nx * ny;
    }

    /// Candidate count of one refinement round (G_ref): the incumbent's
    /// +/- one-previous-pitch neighborhood subdivided by refine_factor.
    int refine_points() const {
        const int side = 2 * refine_factor + 1;
        return side * side;
    }

    double final_pitch() const {
        double pitch = coarse_resolution;
        for (int i = 0; i < max_iterations; ++i) pitch /= static_cast<double>(refine_factor);
        return pitch;
    }
};

struct GridSearchResult {
    UserPosition estimate;
    double final_error_value = 0.0; ///< best error-function value [W]
    int iterations_used = 0; ///< refinement rounds executed
    std::int64_t points_evaluated = 0; ///< candidate points visited (all rounds)
};

/// Superposed-power grid search: minimizes the summed absolute power
/// mismatch e_r = sum_i |P_ri - P_thi| over a coarse lattice, then refines
/// around the incumbent until the improvement drops below stop_threshold or
/// the round budget is exhausted. Ties break toward the lowest x, then the
/// lowest y, so the result is deterministic and schedule-independent.
/// Works with one to three waveguides; a single guide is the diagnostic
/// (ambiguous) configuration.
GridSearchResult grid_search_locate(std::span<const Measurement> measurements,
                                    std::span<const PAPlacement> placements,
                                    const GridSearchConfig &config, const Room &room,
                                    const ChannelConstants &k, double p_s_w);

/// Evaluation-count audit of a completed search against the complexity bound
/// 3 * (G_coa + M * G_ref) of the three-waveguide deployment.
struct ComplexityAudit {
    int g_coarse = 0;
    int g_refine = 0;
    int max_iterations = 0;
    int n_waveguides = 0;
    std::int64_t power_evaluations = 0; ///< n_waveguides * points_evaluated
    std::int64_t evaluation_bound = 0; ///< 3 * (G_coa + M * G_ref)
    bool within_bound = false;
};

ComplexityAudit complexity_audit(const GridSearchResult &result, const GridSearchConfig &config,
                                 const Room &room, int n_waveguides);

} // namespace passim
