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

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include "passim/geometry.hpp"
#include "passim/rng.hpp"

namespace passim {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s, exact

/// Measured powers are clamped to this floor so RSSI inversion stays defined
/// even when a large noise draw would push the power negative.
inline constexpr double kPowerFloorW = 1e-18;

/// P[W] = 10^((P[dBm] - 30) / 10). All internal math is in watts; dBm only
/// appears at configuration and reporting boundaries.
inline double watts_from_dbm(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double dbm_from_watts(double w) { return 10.0 * std::log10(w) + 30.0; }

/// RF constants shared by every link in a scenario. `alpha` and `beta` are
/// the attenuation (Np/m) and phase (rad/m) constants of the dielectric
/// waveguide; gamma = alpha + j*beta is the complex propagation constant.
struct ChannelConstants {
    double f_c = 0.0; ///< carrier frequency [Hz]
    double c = kSpeedOfLight; ///< propagation speed [m/s]
    double lambda = 0.0; ///< free-space wavelength c / f_c [m]
    double eps_r = 0.0; ///< relative permittivity of the waveguide dielectric
    double tan_delta = 0.0; ///< loss tangent
    double alpha = 0.0; ///< pi * sqrt(eps_r) * tan_delta / lambda [Np/m]
    double beta = 0.0; ///< 2 * pi * sqrt(eps_r) / lambda [rad/m]

    static ChannelConstants make(double f_c_hz, double eps_r, double tan_delta) {
        if (!(f_c_hz > 0.0)) throw ConfigError("channel.f_c_hz: must be > 0");
        if (!(eps_r > 0.0)) throw ConfigError("channel.eps_r: must be > 0");
        if (!(tan_delta > 0.0)) throw ConfigError("channel.tan_delta: must be > 0");
        ChannelConstants k;
        k.f_c = f_c_hz;
        k.eps_r = eps_r;
        k.tan_delta = tan_delta;
        k.lambda = k.c / f_c_hz;
        k.alpha = std::numbers::pi * std::sqrt(eps_r) * tan_delta / k.lambda;
        k.beta = 2.0 * std::numbers::pi * std::sqrt(eps_r) / k.lambda;
        return k;
    }

    /// Default inter-element spacing d with sqrt(eps_r) * d = lambda, which
    /// makes the guided phase increment between adjacent elements a full
    /// turn and drops it from the superposed-signal model.
    double default_spacing() const { return lambda / std::sqrt(eps_r); }
};

/// Far-field boundary of an N-element array with aperture N*d.
inline double fraunhofer_distance(int n_elements, double spacing, double lambda) {
    const double aperture = static_cast<double>(n_elements) * spacing;
    return 2.0 * aperture * aperture / lambda;
}

/// Evanescent coupling between the pinched dielectric element and the guide.
/// Evaluated as a standalone model; the simulation pipeline assumes ideal
/// coupling (efficiency 1), which corresponds to L = pi / (2 * kappa).
struct CouplingModel {
    double kappa = 0.0; ///< coupling coefficient [1/m]
    double length = 0.0; ///< coupling length [m]
    double f_max = 1.0; ///< maximum coupling efficiency, in (0, 1]

    double pinch_power() const { return std::sin(kappa * length); }
    double waveguide_power() const { return 1.0 - f_max * std::sin(kappa * length); }
    double full_coupling_length() const { return std::numbers::pi / (2.0 * kappa); }

    void validate() const {
        if (!(kappa > 0.0) || !(length > 0.0)) throw ConfigError("coupling: kappa and length must be > 0");
        if (!(f_max > 0.0) || f_max > 1.0) throw ConfigError("coupling.f_max: must be in (0, 1]");
        const double p = pinch_power();
        if (p < 0.0 || p > 1.0 || waveguide_power() < 0.0 || waveguide_power() > 1.0)
            throw ConfigError("coupling: powers leave [0, 1]; kappa * length out of range");
    }
};

/// Additive Gaussian perturbation of measured powers. `sigma2` is the
/// variance of the draw; identical seeds give identical realization
/// sequences. The dBm-quoted noise power of a scenario maps to the draw's
/// standard deviation (see NoiseModel::from_noise_power_dbm).
class NoiseModel {
  public:
    NoiseModel() = default;
    NoiseModel(double sigma2, std::uint64_t seed) : sigma2_(sigma2), stream_(seed) {
        if (sigma2 < 0.0) throw ConfigError("noise.sigma2: must be >= 0");
    }

    /// The quoted noise power (in dBm, converted to watts) is the standard
    /// deviation of the power perturbation: it stands in for the squared
    /// noise magnitude, an exponential variate whose deviation equals its
    /// mean. Mapping the quoted value to the variance instead would swamp
    /// every link in the sweeps by several orders of magnitude.
    static NoiseModel from_noise_power_dbm(double noise_power_dbm, std::uint64_t seed) {
        const double sd = watts_from_dbm(noise_power_dbm);
        return {sd * sd, seed};
    }

    double sigma2() const { return sigma2_; }
    double sd() const { return std::sqrt(sigma2_); }

    /// One zero-mean draw with variance sigma2. sigma2 = 0 yields exact 0.
    double draw() { return std::sqrt(sigma2_) * stream_.next_gaussian(); }

  private:
    double sigma2_ = 0.0;
    SplitMix64 stream_{0};
};

/// One received-power sample from one waveguide, with the realization
/// metadata needed to audit a trial. received_w = noiseless_w + noise_w
/// whenever the power floor did not fire; noise_w keeps the raw draw.
struct Measurement {
    double received_w = 0.0;
    double noiseless_w = 0.0;
    double noise_w = 0.0; ///< raw perturbation draw [W]
    UserPosition truth; ///< position the sample was synthesized from

    bool floored() const { return received_w != noiseless_w + noise_w; }
};

inline Measurement make_measurement(double noiseless_w, const UserPosition &truth,
                                    NoiseModel &noise) {
    Measurement m;
    m.noiseless_w = noiseless_w;
    m.noise_w = noise.draw();
    m.received_w = std::max(noiseless_w + m.noise_w, kPowerFloorW);
    m.truth = truth;
    return m;
}

/// Complex baseband sample (unit-power symbol) together with its power
/// measurement.
struct ReceivedSignal {
    std::complex<double> sample;
    Measurement measurement;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Free-space amplitude gain c / (4 * pi * f_c * d).
inline double free_space_gain(double d, const ChannelConstants &k) {
    return k.c / (4.0 * std::numbers::pi * k.f_c * d);
}

/// Complex waveguide channel over `arc_length` meters of guide:
/// magnitude exp(-alpha * s), phase -beta * s.
inline std::complex<double> waveguide_channel(double arc_length, const ChannelConstants &k) {
    return std::polar(std::exp(-k.alpha * arc_length), -k.beta * arc_length);
}

/// Uplink sample received at the AP through one waveguide hosting an
/// N-element array: coherent sum of the per-element terms with exact
/// per-element distances and exact per-element feed arcs. The free-space
/// amplitude is referenced to the array center.
ReceivedSignal mwmp_received_signal_exact(const UserPosition &user, const PAPlacement &placement,
                                          const Room &room, const ChannelConstants &k,
                                          double p_s_w, NoiseModel &noise);

/// Single-PA special case (n_elements == 1). Shares the exact-sum code path,
/// so the two agree bit for bit on identical inputs.
ReceivedSignal mwsp_received_signal(const UserPosition &user, const PAPlacement &pa,
                                    const Room &room, const ChannelConstants &k, double p_s_w,
                                    NoiseModel &noise);

/// Additive power noise with the floor clamp applied.
inline double add_power_noise(double p_true_w, NoiseModel &noise) {
    return std::max(p_true_w + noise.draw(), kPowerFloorW);
}

} // namespace passim
