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

#include "passim/positioning_mwsp.hpp"

#include <cmath>

namespace passim {

namespace {

// 2x2 inverse applied to a vector; caller guarantees |det| above threshold.
void apply_inverse(const double a[2][2], const double v[2], double out[2]) {
    const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    out[0] = (a[1][1] * v[0] - a[0][1] * v[1]) / det;
    out[1] = (-a[1][0] * v[0] + a[0][0] * v[1]) / det;
}

} // namespace

LinearSystem build_linear_system(const std::array<RangeEstimate, 3> &ranges,
                                 const std::array<Vec3, 3> &pas) {
    LinearSystem sys;
    sys.pas = pas;
    sys.ranges = ranges;

    sys.a[0][0] = 2.0 * (pas[1].x - pas[0].x);
    sys.a[0][1] = 2.0 * (pas[1].y - pas[0].y);
    sys.a[1][0] = 2.0 * (pas[2].x - pas[0].x);
    sys.a[1][1] = 2.0 * (pas[2].y - pas[0].y);

    const double d1_sq = ranges[0].distance * ranges[0].distance;
    const double d2_sq = ranges[1].distance * ranges[1].distance;
    const double d3_sq = ranges[2].distance * ranges[2].distance;
    sys.b[0] = d1_sq - d2_sq + (pas[1].x * pas[1].x - pas[0].x * pas[0].x) +
               (pas[1].y * pas[1].y - pas[0].y * pas[0].y);
    sys.b[1] = d1_sq - d3_sq + (pas[2].x * pas[2].x - pas[0].x * pas[0].x) +
               (pas[2].y * pas[2].y - pas[0].y * pas[0].y);

    if (std::abs(sys.det()) < kDegenerateDetThreshold)
        throw DegenerateGeometry("PA triple is collinear: |det(A)| < 1e-9 m^2");
    return sys;
}

PositionEstimate solve_ls(const LinearSystem &sys, const Room &room) {
    const double det = sys.det();
    if (std::abs(det) < kDegenerateDetThreshold)
        throw DegenerateGeometry("PA triple is collinear: |det(A)| < 1e-9 m^2");

    double x[2];
    apply_inverse(sys.a, sys.b, x);

    PositionEstimate est;
    est.raw_x = x[0];
    est.raw_y = x[1];
    est.x = std::clamp(x[0], 0.0, room.d1);
    est.y = std::clamp(x[1], 0.0, room.d2);
    est.clamped = est.x != est.raw_x || est.y != est.raw_y;
    est.det_a = det;
    est.triangle_area = triangle_area_xy(sys.pas[0], sys.pas[1], sys.pas[2]);

    const double r0 = sys.a[0][0] * x[0] + sys.a[0][1] * x[1] - sys.b[0];
    const double r1 = sys.a[1][0] * x[0] + sys.a[1][1] * x[1] - sys.b[1];
    est.residual_norm = std::hypot(r0, r1);

    const double norm_a = std::sqrt(sys.a[0][0] * sys.a[0][0] + sys.a[0][1] * sys.a[0][1] +
                                    sys.a[1][0] * sys.a[1][0] + sys.a[1][1] * sys.a[1][1]);
    // Frobenius norm of the 2x2 inverse is ||A||_F / |det|.
    est.condition_estimate = norm_a * norm_a / std::abs(det);
    return est;
}

MwspErrorDiagnostics error_diagnostics(const LinearSystem &sys, const UserPosition &truth,
                                       const PositionEstimate &estimate) {
    MwspErrorDiagnostics diag;
    diag.det_a = sys.det();
    diag.eight_area = 8.0 * triangle_area_xy(sys.pas[0], sys.pas[1], sys.pas[2]);

    diag.g_exact[0] = sys.b[0] - (sys.a[0][0] * truth.x + sys.a[0][1] * truth.y);
    diag.g_exact[1] = sys.b[1] - (sys.a[1][0] * truth.x + sys.a[1][1] * truth.y);

    double true_dist[3];
    double delta[3];
    for (int i = 0; i < 3; ++i) {
        true_dist[i] = user_pa_distance(truth, sys.pas[i]);
        delta[i] = sys.ranges[i].distance - true_dist[i];
    }
    diag.g_first_order[0] = 2.0 * (true_dist[0] * delta[0] - true_dist[1] * delta[1]);
    diag.g_first_order[1] = 2.0 * (true_dist[0] * delta[0] - true_dist[2] * delta[2]);

    double amp[2];
    const double g[2] = {diag.g_exact[0], diag.g_exact[1]};
    apply_inverse(sys.a, g, amp);
    diag.amplification = std::hypot(amp[0], amp[1]);
    diag.realized_error = std::hypot(estimate.raw_x - truth.x, estimate.raw_y - truth.y);
    return diag;
}

} // namespace passim
