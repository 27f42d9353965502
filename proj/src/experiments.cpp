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

#include "passim/experiments.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <thread>

namespace passim {

namespace {

// Stream identifiers keep independent Monte Carlo axes on disjoint
// substreams of the master seed.
constexpr std::uint64_t kMapStream = 0x6D61702D63656C6CULL;
constexpr std::uint64_t kUserStream = 0x757365722D706F73ULL;
constexpr std::uint64_t kCurveStream = 0x63757276652D6E6FULL;
constexpr std::uint64_t kRateSpStream = 0x726174652D737056ULL;
constexpr std::uint64_t kRateMpStream = 0x726174652D6D7056ULL;

double median_destructive(std::vector<double> &values) {
    const std::size_t n = values.size();
    const std::size_t mid = n / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    double m = values[mid];
    if (n % 2 == 0) {
        const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
        m = 0.5 * (m + lower);
    }
    return m;
}

void require_nondegenerate_layout(const Scenario &sc) {
    if (sc.placements.size() == 3) {
        const double area = triangle_area_xy(sc.placements[0].center, sc.placements[1].center,
                                             sc.placements[2].center);
        if (8.0 * area < kDegenerateDetThreshold)
            throw DegenerateGeometry("scenario layout: PA centers are collinear");
    }
}

// Shared map kernel: per cell, `trial_error` is evaluated `trials` times on
// the cell's own noise substreams and reduced to mean/median. Pooled
// statistics cover every trial in the map.
ErrorMap run_error_map(const Scenario &sc, const Campaign &campaign, int threads,
                       const std::function<double(const UserPosition &, NoiseModel &)> &trial_error) {
    sc.validate();
    campaign.validate();

    ErrorMap map;
    map.nx = campaign.lattice.nx;
    map.ny = campaign.lattice.ny;
    map.trials = campaign.trials;
    map.seed = campaign.seed;
    map.scenario_hash = scenario_fingerprint(sc, campaign);
    map.cells.resize(static_cast<std::size_t>(campaign.lattice.cells()));

    std::vector<double> all_errors(
        static_cast<std::size_t>(campaign.lattice.cells()) * static_cast<std::size_t>(campaign.trials));

    parallel_for(campaign.lattice.cells(), threads, [&](int cell) {
        const int i = cell / campaign.lattice.ny;
        const int j = cell % campaign.lattice.ny;
        const UserPosition truth = campaign.lattice.cell_center(sc.room, i, j);

        double sum = 0.0;
        std::vector<double> errors(static_cast<std::size_t>(campaign.trials));
        for (int t = 0; t < campaign.trials; ++t) {
            NoiseModel noise = sc.noise_for(derive_substream(campaign.seed, kMapStream,
                                                             static_cast<std::uint64_t>(cell),
                                                             static_cast<std::uint64_t>(t)));
            const double err = trial_error(truth, noise);
            errors[static_cast<std::size_t>(t)] = err;
            all_errors[static_cast<std::size_t>(cell) * static_cast<std::size_t>(campaign.trials) +
                       static_cast<std::size_t>(t)] = err;
            sum += err;
        }
        ErrorMapCell &out = map.cells[static_cast<std::size_t>(cell)];
        out.x = truth.x;
        out.y = truth.y;
        out.mean_err_m = sum / static_cast<double>(campaign.trials);
        out.median_err_m = median_destructive(errors);
    });

    double total = 0.0;
    for (double e : all_errors) total += e;
    map.pooled_mean_m = total / static_cast<double>(all_errors.size());
    map.pooled_median_m = median_destructive(all_errors);
    return map;
}

UserPosition random_user(const Room &room, std::uint64_t seed, int index) {
    SplitMix64 stream(derive_substream(seed, kUserStream, static_cast<std::uint64_t>(index)));
    return {stream.next_in(0.0, room.d1), stream.next_in(0.0, room.d2)};
}

std::vector<double> default_sigma_sweep() { return {-90.0, -85.0, -80.0, -75.0, -70.0}; }

} // namespace

const char *to_string(CampaignKind kind) {
    switch (kind) {
    case CampaignKind::MwspMap: return "mwsp_map";
    case CampaignKind::MwmpMap: return "mwmp_map";
    case CampaignKind::SwmpMap: return "swmp_map";
    case CampaignKind::AvgErrorCurve: return "avg_error_curve";
    case CampaignKind::RateVsPower: return "rate_vs_power";
    default: return "rate_vs_noise";
    }
}

void parallel_for(int n, int threads, const std::function<void(int)> &fn) {
    threads = std::clamp(threads, 1, std::max(1, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([n, t, threads, &fn] {
            for (int i = t; i < n; i += threads) fn(i);
        });
    for (std::thread &th : pool) th.join();
}

std::vector<Measurement> synthesize_mwsp_measurements(const Scenario &sc, const UserPosition &truth,
                                                      NoiseModel &noise) {
    std::vector<Measurement> out;
    out.reserve(sc.placements.size());
    for (const PAPlacement &p : sc.placements)
        out.push_back(mwsp_received_signal(truth, p, sc.room, sc.channel, sc.p_s_w, noise).measurement);
    return out;
}

std::vector<Measurement> synthesize_mwmp_measurements(std::span<const PAPlacement> placements,
                                                      const Room &room, const ChannelConstants &k,
                                                      double p_s_w, const UserPosition &truth,
                                                      NoiseModel &noise) {
    std::vector<Measurement> out;
    out.reserve(placements.size());
    for (const PAPlacement &p : placements)
        out.push_back(model_measurement(truth, p, room, k, p_s_w, noise));
    return out;
}

std::vector<Measurement> synthesize_mwmp_measurements(const Scenario &sc, const UserPosition &truth,
                                                      NoiseModel &noise) {
    return synthesize_mwmp_measurements(sc.placements, sc.room, sc.channel, sc.p_s_w, truth, noise);
}

PositionEstimate locate_mwsp(const Scenario &sc, std::span<const Measurement> measurements) {
    if (sc.placements.size() != 3 || measurements.size() != 3)
        throw ConfigError("locate_mwsp: needs three single-PA waveguides and three measurements");
    std::array<RangeEstimate, 3> ranges;
    std::array<Vec3, 3> pas;
    for (int i = 0; i < 3; ++i) {
        const PAPlacement &p = sc.placements[static_cast<std::size_t>(i)];
        pas[static_cast<std::size_t>(i)] = p.center;
        ranges[static_cast<std::size_t>(i)] = {
            rssi_range(measurements[static_cast<std::size_t>(i)].received_w, p.feed_arc(sc.room),
                       sc.p_s_w, sc.channel),
            measurements[static_cast<std::size_t>(i)].received_w};
    }
    return solve_ls(build_linear_system(ranges, pas), sc.room);
}

GridSearchResult locate_mwmp(const Scenario &sc, std::span<const PAPlacement> placements,
                             std::span<const Measurement> measurements) {
    return grid_search_locate(measurements, placements, sc.grid, sc.room, sc.channel, sc.p_s_w);
}

GridSearchResult locate_mwmp(const Scenario &sc, std::span<const Measurement> measurements) {
    return locate_mwmp(sc, sc.placements, measurements);
}

ErrorMap run_mwsp_map(const Scenario &sc, const Campaign &campaign, int threads) {
    if (sc.placements.size() != 3)
        throw ConfigError("mwsp_map: scenario must deploy three waveguides");
    for (const PAPlacement &p : sc.placements)
        if (p.n_elements != 1) throw ConfigError("mwsp_map: every waveguide hosts a single PA");
    require_nondegenerate_layout(sc);

    return run_error_map(sc, campaign, threads, [&](const UserPosition &truth, NoiseModel &noise) {
        const std::vector<Measurement> meas = synthesize_mwsp_measurements(sc, truth, noise);
        const PositionEstimate est = locate_mwsp(sc, meas);
        return planar_distance(est.position(), truth);
    });
}

ErrorMap run_mwmp_map(const Scenario &sc, const Campaign &campaign, int threads) {
    require_nondegenerate_layout(sc);
    return run_error_map(sc, campaign, threads, [&](const UserPosition &truth, NoiseModel &noise) {
        const std::vector<Measurement> meas = synthesize_mwmp_measurements(sc, truth, noise);
        const GridSearchResult result = locate_mwmp(sc, meas);
        return planar_distance(result.estimate, truth);
    });
}

AvgErrorCurve run_avg_error_curve(const Scenario &sc, const Campaign &campaign, int threads) {
    sc.validate();
    campaign.validate();
    if (sc.placements.size() != 3)
        throw ConfigError("avg_error_curve: scenario must deploy three waveguides");

    const std::vector<double> sigmas =
        campaign.sigma2_dbm_sweep.empty() ? default_sigma_sweep() : campaign.sigma2_dbm_sweep;
    std::vector<int> n_list = campaign.n_elements_sweep;
    if (n_list.empty()) n_list = {sc.placements.front().n_elements};
    const double spacing = sc.placements.front().spacing;
    const int n_users = campaign.trials;

    AvgErrorCurve curve;
    curve.seed = campaign.seed;
    curve.scenario_hash = scenario_fingerprint(sc, campaign);

    std::vector<UserPosition> users(static_cast<std::size_t>(n_users));
    for (int i = 0; i < n_users; ++i) users[static_cast<std::size_t>(i)] = random_user(sc.room, campaign.seed, i);

    struct LayoutCase {
        std::string name;
        std::vector<PAPlacement> placements;
    };

    for (std::size_t si = 0; si < sigmas.size(); ++si) {
        Scenario at_sigma = sc;
        at_sigma.sigma2_dbm = sigmas[si];
        for (int n : n_list) {
            const std::array<LayoutCase, 2> layouts = {
                LayoutCase{"non_parallel", [&] {
                               std::vector<PAPlacement> p = sc.placements;
                               for (PAPlacement &pl : p) pl.n_elements = n;
                               return p;
                           }()},
                LayoutCase{"parallel_y", parallel_y_layout(sc.room, n, spacing)}};
            for (const LayoutCase &layout : layouts) {
                std::vector<double> errors(static_cast<std::size_t>(n_users));
                parallel_for(n_users, threads, [&](int u) {
                    // One substream per (sigma, user); identical draws across
                    // layouts and element counts pair the comparisons.
                    NoiseModel noise = at_sigma.noise_for(derive_substream(
                        campaign.seed, kCurveStream + si, static_cast<std::uint64_t>(u)));
                    const std::vector<Measurement> meas = synthesize_mwmp_measurements(
                        layout.placements, sc.room, sc.channel, sc.p_s_w,
                        users[static_cast<std::size_t>(u)], noise);
                    const GridSearchResult result = locate_mwmp(at_sigma, layout.placements, meas);
                    errors[static_cast<std::size_t>(u)] =
                        planar_distance(result.estimate, users[static_cast<std::size_t>(u)]);
                });
                double sum = 0.0;
                for (double e : errors) sum += e;
                curve.points.push_back({sigmas[si], layout.name, n,
                                        sum / static_cast<double>(n_users), n_users});
            }
        }
    }
    return curve;
}

RateCurve run_rate_sweeps(const Scenario &sc, const Campaign &campaign, int threads) {
    sc.validate();
    campaign.validate();
    if (sc.placements.size() != 3)
        throw ConfigError("rate sweeps: scenario must deploy three waveguides");
    const bool vs_power = campaign.kind == CampaignKind::RateVsPower;
    if (vs_power && !sc.sigma2_dbm)
        throw ConfigError("rate_vs_power: scenario needs a noise power");

    const std::vector<double> sweep = vs_power
        ? (campaign.p_t_dbm_sweep.empty()
               ? std::vector<double>{0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0}
               : campaign.p_t_dbm_sweep)
        : (campaign.sigma2_dbm_sweep.empty()
               ? std::vector<double>{-90.0, -80.0, -70.0, -60.0, -50.0}
               : campaign.sigma2_dbm_sweep);
    std::vector<int> n_list = campaign.n_elements_sweep;
    if (n_list.empty()) n_list = {3, 5, 7, 9};

    RateCurve curve;
    curve.sweep_name = vs_power ? "p_t_dbm" : "sigma2_dbm";
    curve.seed = campaign.seed;
    curve.scenario_hash = scenario_fingerprint(sc, campaign);
    curve.users = campaign.lattice.cells();
    curve.trials = campaign.trials;

    const Scenario sp_scenario = with_n_elements(sc, 1);
    const int n_units = campaign.lattice.cells() * campaign.trials;

    // Uplink estimates per (sigma point, user, trial); for the power sweep
    // the uplink operating point is fixed, so one estimation pass is reused
    // across all transmit powers.
    struct Estimates {
        UserPosition mwsp;
        std::vector<UserPosition> mwmp; // one per element count
    };
    const int n_sigma_passes = vs_power ? 1 : static_cast<int>(sweep.size());
    std::vector<Estimates> estimates(static_cast<std::size_t>(n_sigma_passes * n_units));

    for (int sp = 0; sp < n_sigma_passes; ++sp) {
        Scenario uplink = sc;
        if (!vs_power) uplink.sigma2_dbm = sweep[static_cast<std::size_t>(sp)];
        const Scenario uplink_sp = with_n_elements(uplink, 1);
        parallel_for(n_units, threads, [&](int unit) {
            const int u = unit / campaign.trials;
            const int t = unit % campaign.trials;
            const UserPosition truth = campaign.lattice.cell_center(
                sc.room, u / campaign.lattice.ny, u % campaign.lattice.ny);
            Estimates &e = estimates[static_cast<std::size_t>(sp * n_units + unit)];

            NoiseModel noise_sp = uplink.noise_for(derive_substream(
                campaign.seed, kRateSpStream + static_cast<std::uint64_t>(sp),
                static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(t)));
            const std::vector<Measurement> meas_sp =
                synthesize_mwsp_measurements(uplink_sp, truth, noise_sp);
            e.mwsp = locate_mwsp(uplink_sp, meas_sp).position();

            e.mwmp.resize(n_list.size());
            for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
                const Scenario uplink_n = with_n_elements(uplink, n_list[ni]);
                NoiseModel noise_mp = uplink.noise_for(derive_substream(
                    campaign.seed, kRateMpStream + static_cast<std::uint64_t>(sp),
                    static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(t)));
                const std::vector<Measurement> meas_mp =
                    synthesize_mwmp_measurements(uplink_n, truth, noise_mp);
                e.mwmp[ni] = locate_mwmp(uplink_n, meas_mp).estimate;
            }
        });
    }

    for (std::size_t s = 0; s < sweep.size(); ++s) {
        const double p_t_w = vs_power ? watts_from_dbm(sweep[s]) : sc.p_t_w;
        const double sigma_w =
            vs_power ? watts_from_dbm(*sc.sigma2_dbm) : watts_from_dbm(sweep[s]);
        const int sp = vs_power ? 0 : static_cast<int>(s);

        double fixed_theory = 0.0, fixed_sim = 0.0;
        double sp_theory = 0.0, sp_sim = 0.0;
        std::vector<double> mp_theory(n_list.size(), 0.0), mp_sim(n_list.size(), 0.0);

        for (int unit = 0; unit < n_units; ++unit) {
            const int u = unit / campaign.trials;
            const UserPosition truth = campaign.lattice.cell_center(
                sc.room, u / campaign.lattice.ny, u % campaign.lattice.ny);
            const Estimates &e = estimates[static_cast<std::size_t>(sp * n_units + unit)];

            const RateReport fixed = fixed_baseline_rate(truth, sc.fixed_pa, sc.channel, p_t_w, sigma_w);
            fixed_theory += fixed.rate_theory;
            fixed_sim += fixed.rate_realized;

            const Vec3 pa = relocate_single(e.mwsp, Waveguide{select_waveguide(e.mwsp, sc.room).axis, 0.0},
                                            sc.room);
            const RateReport rsp = downlink_rate_mwsp(truth, pa, sc.room, sc.channel, p_t_w, sigma_w);
            sp_theory += rsp.rate_theory;
            sp_sim += rsp.rate_realized;

            for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
                const RelocationPlan plan =
                    plan_relocation(e.mwmp[ni], n_list[ni], sc.room, sc.channel);
                const RateReport rmp =
                    downlink_rate_mwmp(truth, plan, sc.room, sc.channel, p_t_w, sigma_w);
                mp_theory[ni] += rmp.rate_theory;
                mp_sim[ni] += rmp.rate_realized;
            }
        }

        const double scale = 1.0 / static_cast<double>(n_units);
        curve.points.push_back({sweep[s], RateTag::FixedBaseline, 1, fixed_theory * scale, fixed_sim * scale});
        curve.points.push_back({sweep[s], RateTag::Mwsp, 1, sp_theory * scale, sp_sim * scale});
        for (std::size_t ni = 0; ni < n_list.size(); ++ni)
            curve.points.push_back({sweep[s], RateTag::Mwmp, n_list[ni], mp_theory[ni] * scale,
                                    mp_sim[ni] * scale});
    }
    return curve;
}

std::string format_g9(double value) {
    char buf[64];
    const std::to_chars_result res =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

void write_csv(const ErrorMap &map, std::ostream &out) {
    out << "x,y,mean_err_m,median_err_m,trials\n";
    for (const ErrorMapCell &c : map.cells)
        out << format_g9(c.x) << ',' << format_g9(c.y) << ',' << format_g9(c.mean_err_m) << ','
            << format_g9(c.median_err_m) << ',' << map.trials << '\n';
}

void write_csv(const AvgErrorCurve &curve, std::ostream &out) {
    out << "sigma2_dbm,layout,n_elements,mean_err_m,trials\n";
    for (const AvgErrorPoint &p : curve.points)
        out << format_g9(p.sigma2_dbm) << ',' << p.layout << ',' << p.n_elements << ','
            << format_g9(p.mean_err_m) << ',' << p.trials << '\n';
}

void write_csv(const RateCurve &curve, std::ostream &out) {
    out << curve.sweep_name << ",tag,n_elements,rate_theory,rate_sim\n";
    for (const RateCurvePoint &p : curve.points)
        out << format_g9(p.sweep_value) << ',' << to_string(p.tag) << ',' << p.n_elements << ','
            << format_g9(p.rate_theory) << ',' << format_g9(p.rate_sim) << '\n';
}

namespace {

class Fnv1a {
  public:
    void bytes(const void *data, std::size_t len) {
        const unsigned char *p = static_cast<const unsigned char *>(data);
        for (std::size_t i = 0; i < len; ++i) {
            hash_ ^= static_cast<std::uint64_t>(p[i]);
            hash_ *= 1099511628211ULL;
        }
    }
    void f64(double v) { bytes(&v, sizeof(v)); }
    void i64(std::int64_t v) { bytes(&v, sizeof(v)); }
    std::uint64_t value() const { return hash_; }

  private:
    std::uint64_t hash_ = 14695981039346656037ULL;
};

} // namespace

std::string scenario_fingerprint(const Scenario &sc, const Campaign &campaign) {
    Fnv1a h;
    h.f64(sc.room.d1);
    h.f64(sc.room.d2);
    h.f64(sc.room.h);
    h.f64(sc.channel.f_c);
    h.f64(sc.channel.eps_r);
    h.f64(sc.channel.tan_delta);
    h.f64(sc.p_s_w);
    h.f64(sc.p_t_w);
    h.i64(sc.sigma2_dbm.has_value() ? 1 : 0);
    h.f64(sc.sigma2_dbm.value_or(0.0));
    h.i64(static_cast<std::int64_t>(sc.placements.size()));
    for (const PAPlacement &p : sc.placements) {
        h.i64(static_cast<std::int64_t>(p.waveguide.axis));
        h.f64(p.waveguide.offset);
        h.f64(p.center.x);
        h.f64(p.center.y);
        h.f64(p.center.z);
        h.i64(p.n_elements);
        h.f64(p.spacing);
    }
    h.f64(sc.grid.coarse_resolution);
    h.i64(sc.grid.refine_factor);
    h.i64(sc.grid.max_iterations);
    h.f64(sc.grid.stop_threshold);
    h.f64(sc.fixed_pa.x);
    h.f64(sc.fixed_pa.y);
    h.f64(sc.fixed_pa.z);
    h.i64(static_cast<std::int64_t>(campaign.kind));
    h.i64(campaign.lattice.nx);
    h.i64(campaign.lattice.ny);
    h.i64(campaign.trials);
    h.i64(static_cast<std::int64_t>(campaign.seed));
    h.i64(static_cast<std::int64_t>(campaign.sigma2_dbm_sweep.size()));
    for (double v : campaign.sigma2_dbm_sweep) h.f64(v);
    h.i64(static_cast<std::int64_t>(campaign.p_t_dbm_sweep.size()));
    for (double v : campaign.p_t_dbm_sweep) h.f64(v);
    h.i64(static_cast<std::int64_t>(campaign.n_elements_sweep.size()));
    for (int v : campaign.n_elements_sweep) h.i64(v);

    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h.value()));
    return std::string(buf);
}

} // namespace passim
