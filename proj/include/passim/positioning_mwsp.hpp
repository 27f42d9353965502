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

#include <array>

#include "passim/channel.hpp"
#include "passim/geometry.hpp"

namespace passim {

/// Collinear PA triples are rejected below this determinant magnitude [m^2].
/// The canonical deployment uses three non-parallel waveguides, so tripping
/// this threshold indicates a broken scenario file rather than bad luck.
inline constexpr double kDegenerateDetThreshold = 1e-9;

/// RSSI-derived distance from one waveguide's PA to the user.
struct RangeEstimate {
    double distance = 0.0; ///< estimated user-PA distance [m], > 0
    double power_used_w = 0.0; ///< measured power the estimate came from
};

/// Linearized trilateration system A * X = b obtained by subtracting the
/// first range equation from the other two; the squared height cancels in
/// the subtraction and never appears. The PA coordinates and ranges that
/// built the system are retained for error diagnostics.
struct LinearSystem {
    double a[2][2] = {{0.0, 0.0}, {0.0, 0.0}}; ///< rows 2(x_k - x_1), 2(y_k - y_1), k = 2, 3
    double b[2] = {0.0, 0.0}; ///< observations e_1, e_2 [m^2]
    std::array<Vec3, 3> pas{};
    std::array<RangeEstimate, 3> ranges{};

    double e1() const { return b[0]; }
    double e2() const { return b[1]; }
    double det() const { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
};

/// Least-squares position with solver diagnostics. The reported (x, y) is
/// clamped to the room footprint -- a deployed system knows its room -- and
/// the raw solution is kept alongside.
struct PositionEstimate {
    double x = 0.0;
    double y = 0.0;
    double raw_x = 0.0;
    double raw_y = 0.0;
    bool clamped = false;
    double det_a = 0.0; ///< determinant of A [m^2], equals 8 * triangle_area in magnitude
    double triangle_area = 0.0; ///< area enclosed by the three PAs [m^2]
    double residual_norm = 0.0; ///< ||A * X_raw - b||
    double condition_estimate = 0.0; ///< Frobenius condition number of A

    UserPosition position() const { return {x, y}; }
};

/// Exact and first-order observation-error diagnostics for one solve, given
/// the true position (simulation context).
struct MwspErrorDiagnostics {
    std::array<double, 2> g_exact{}; ///< b - A * X_true
    std::array<double, 2> g_first_order{}; ///< 2 * (d_1 delta_1 - d_k delta_k), k = 2, 3
    double amplification = 0.0; ///< ||A^-1 * g_exact||, the realized error to first order
    double realized_error = 0.0; ///< ||X_raw - X_true||
    double det_a = 0.0;
    double eight_area = 0.0; ///< 8 * PA-triangle area, = |det A|
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Inverts the received-power path-loss law: the waveguide attenuation over
/// the known feed arc is divided out and the free-space law solved for
/// distance. Floor-clamped powers yield finite (possibly huge) distances;
/// the LS subtraction downstream tolerates common-mode range bias.
inline double rssi_range(double measured_power_w, double pa_arc_length, double p_s_w,
                         const ChannelConstants &k) {
    const double amplitude_ratio = std::sqrt(measured_power_w / p_s_w);
    return k.c * std::exp(-k.alpha * pa_arc_length) /
           (amplitude_ratio * 4.0 * std::numbers::pi * k.f_c);
}

/// Builds the linearized system from three ranges and the matching PA
/// coordinates. Throws DegenerateGeometry when the PAs are collinear.
LinearSystem build_linear_system(const std::array<RangeEstimate, 3> &ranges,
                                 const std::array<Vec3, 3> &pas);

/// Solves the system. A is square and well-conditioned away from degeneracy,
/// so the normal-equations solution coincides with A^-1 * b.
PositionEstimate solve_ls(const LinearSystem &sys, const Room &room);

/// Error decomposition for a completed solve against the known truth.
MwspErrorDiagnostics error_diagnostics(const LinearSystem &sys, const UserPosition &truth,
                                       const PositionEstimate &estimate);

/// Signed twice-area helper: the PA-triangle area is |shoelace| / 2.
inline double triangle_area_xy(const Vec3 &p1, const Vec3 &p2, const Vec3 &p3) {
    return 0.5 * std::abs(p1.x * (p2.y - p3.y) + p2.x * (p3.y - p1.y) + p3.x * (p1.y - p2.y));
}

} // namespace passim
