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

#include "passim/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "passim/config.hpp"

namespace passim {

namespace {

using nlohmann::json;

std::vector<std::string> split_commas(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

UserPosition parse_position(const std::string &s) {
    const std::vector<std::string> parts = split_commas(s);
    if (parts.size() != 2) throw ConfigError("--true-pos: expected \"x,y\" in meters");
    try {
        return {std::stod(parts[0]), std::stod(parts[1])};
    } catch (const std::exception &) {
        throw ConfigError("--true-pos: expected \"x,y\" in meters");
    }
}

json estimate_to_json(const PositionEstimate &est) {
    return {{"x_m", est.x},
            {"y_m", est.y},
            {"raw_x_m", est.raw_x},
            {"raw_y_m", est.raw_y},
            {"clamped", est.clamped},
            {"det_a_m2", est.det_a},
            {"triangle_area_m2", est.triangle_area},
            {"residual_norm", est.residual_norm},
            {"condition_estimate", est.condition_estimate}};
}

json grid_result_to_json(const GridSearchResult &r, const ComplexityAudit &audit) {
    return {{"x_m", r.estimate.x},
            {"y_m", r.estimate.y},
            {"final_error_w", r.final_error_value},
            {"iterations_used", r.iterations_used},
            {"points_evaluated", r.points_evaluated},
            {"power_evaluations", audit.power_evaluations},
            {"evaluation_bound", audit.evaluation_bound}};
}

struct LocateOptions {
    std::string config_path;
    std::string true_pos;
    std::string powers;
    std::string estimator = "auto";
    std::string format = "text";
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool noiseless = false;
};

int run_locate(const LocateOptions &opt, std::ostream &out) {
    ParsedConfig cfg = load_config_file(opt.config_path);
    Scenario &sc = cfg.scenario;
    if (opt.noiseless) sc.sigma2_dbm.reset();
    const std::uint64_t seed = opt.seed_set ? opt.seed : cfg.campaign.seed;

    std::string estimator = opt.estimator;
    if (estimator == "auto")
        estimator = sc.placements.front().n_elements == 1 && sc.placements.size() == 3 ? "mwsp"
                                                                                       : "mwmp";
    if (estimator != "mwsp" && estimator != "mwmp")
        throw ConfigError("--estimator: must be \"mwsp\" or \"mwmp\"");

    if (opt.true_pos.empty() == opt.powers.empty())
        throw ConfigError("locate: exactly one of --true-pos or --powers is required");

    std::vector<Measurement> measurements;
    if (!opt.true_pos.empty()) {
        const UserPosition truth = parse_position(opt.true_pos);
        if (!truth.inside(sc.room)) throw ConfigError("--true-pos: outside the room footprint");
        NoiseModel noise = sc.noise_for(derive_substream(seed, 0x6C6F63617465ULL));
        measurements = estimator == "mwsp" ? synthesize_mwsp_measurements(sc, truth, noise)
                                           : synthesize_mwmp_measurements(sc, truth, noise);
    } else {
        const std::vector<std::string> tokens = split_commas(opt.powers);
        if (tokens.size() != sc.placements.size())
            throw ConfigError("--powers: expected one value per configured waveguide");
        for (const std::string &t : tokens) {
            Measurement m;
            m.received_w = parse_power_value(t);
            m.noiseless_w = m.received_w;
            measurements.push_back(m);
        }
    }

    json report;
    report["estimator"] = estimator;
    if (estimator == "mwsp") {
        const PositionEstimate est = locate_mwsp(sc, measurements);
        report["estimate"] = estimate_to_json(est);
        if (opt.format == "json") {
            out << report.dump(2) << '\n';
        } else {
            char line[128];
            std::snprintf(line, sizeof(line), "estimate: (%.6f, %.6f)\n", est.x, est.y);
            out << "estimator: mwsp\n" << line;
            out << "det_a_m2: " << format_g9(est.det_a)
                << " triangle_area_m2: " << format_g9(est.triangle_area)
                << " residual: " << format_g9(est.residual_norm)
                << " condition: " << format_g9(est.condition_estimate) << '\n';
        }
    } else {
        const GridSearchResult result = locate_mwmp(sc, measurements);
        const ComplexityAudit audit = complexity_audit(result, sc.grid, sc.room,
                                                       static_cast<int>(sc.placements.size()));
        report["estimate"] = grid_result_to_json(result, audit);
        if (opt.format == "json") {
            out << report.dump(2) << '\n';
        } else {
            char line[128];
            std::snprintf(line, sizeof(line), "estimate: (%.6f, %.6f)\n", result.estimate.x,
                          result.estimate.y);
            out << "estimator: mwmp\n" << line;
            out << "final_error_w: " << format_g9(result.final_error_value)
                << " iterations: " << result.iterations_used
                << " points_evaluated: " << result.points_evaluated
                << " evaluation_bound: " << audit.evaluation_bound << '\n';
        }
    }
    return kExitOk;
}

struct RunOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
};

json rows_to_json(const ErrorMap &map) {
    json rows = json::array();
    for (const ErrorMapCell &c : map.cells)
        rows.push_back({{"x", c.x},
                        {"y", c.y},
                        {"mean_err_m", c.mean_err_m},
                        {"median_err_m", c.median_err_m},
                        {"trials", map.trials}});
    return rows;
}

json rows_to_json(const AvgErrorCurve &curve) {
    json rows = json::array();
    for (const AvgErrorPoint &p : curve.points)
        rows.push_back({{"sigma2_dbm", p.sigma2_dbm},
                        {"layout", p.layout},
                        {"n_elements", p.n_elements},
                        {"mean_err_m", p.mean_err_m},
                        {"trials", p.trials}});
    return rows;
}

json rows_to_json(const RateCurve &curve) {
    json rows = json::array();
    for (const RateCurvePoint &p : curve.points)
        rows.push_back({{curve.sweep_name, p.sweep_value},
                        {"tag", to_string(p.tag)},
                        {"n_elements", p.n_elements},
                        {"rate_theory", p.rate_theory},
                        {"rate_sim", p.rate_sim}});
    return rows;
}

int run_campaign(const RunOptions &opt, std::ostream &out) {
    ParsedConfig cfg = load_config_file(opt.config_path);
    if (opt.seed_set) cfg.campaign.seed = opt.seed;
    const Scenario &sc = cfg.scenario;
    const Campaign &campaign = cfg.campaign;

    std::string csv;
    json rows;
    std::string hash;
    {
        std::ostringstream stream;
        switch (campaign.kind) {
        case CampaignKind::MwspMap: {
            const ErrorMap map = run_mwsp_map(sc, campaign, opt.threads);
            write_csv(map, stream);
            rows = rows_to_json(map);
            hash = map.scenario_hash;
            break;
        }
        case CampaignKind::MwmpMap:
        case CampaignKind::SwmpMap: {
            const ErrorMap map = run_mwmp_map(sc, campaign, opt.threads);
            write_csv(map, stream);
            rows = rows_to_json(map);
            hash = map.scenario_hash;
            break;
        }
        case CampaignKind::AvgErrorCurve: {
            const AvgErrorCurve curve = run_avg_error_curve(sc, campaign, opt.threads);
            write_csv(curve, stream);
            rows = rows_to_json(curve);
            hash = curve.scenario_hash;
            break;
        }
        default: {
            const RateCurve curve = run_rate_sweeps(sc, campaign, opt.threads);
            write_csv(curve, stream);
            rows = rows_to_json(curve);
            hash = curve.scenario_hash;
            break;
        }
        }
        csv = stream.str();
    }

    const std::string stem = std::string(to_string(campaign.kind)) + "_" +
                             std::to_string(campaign.seed);
    const std::string data_name = stem + (opt.format == "json" ? ".json" : ".csv");
    const std::string data_path = opt.out_dir + "/" + data_name;
    const std::string manifest_path = opt.out_dir + "/" + stem + ".manifest.json";

    {
        std::ofstream f(data_path, std::ios::binary);
        if (!f) {
            throw std::ios_base::failure("cannot write \"" + data_path + "\"");
        }
        if (opt.format == "json")
            f << json{{"rows", rows}}.dump(2) << '\n';
        else
            f << csv;
        if (!f.good()) throw std::ios_base::failure("short write on \"" + data_path + "\"");
    }
    {
        json manifest;
        manifest["config"] = serialize_config(sc, campaign);
        manifest["scenario_hash"] = hash;
        manifest["version"] = kVersion;
        manifest["campaign"] = to_string(campaign.kind);
        manifest["seed"] = campaign.seed;
        manifest["output"] = data_name;
        std::ofstream f(manifest_path, std::ios::binary);
        if (!f) throw std::ios_base::failure("cannot write \"" + manifest_path + "\"");
        f << manifest.dump(2) << '\n';
        if (!f.good()) throw std::ios_base::failure("short write on \"" + manifest_path + "\"");
    }

    out << "wrote " << data_path << '\n' << "wrote " << manifest_path << '\n';
    return kExitOk;
}

} // namespace

double parse_power_value(const std::string &token) {
    std::string s = token;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    std::string lower(s.size(), '\0');
    std::transform(s.begin(), s.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

    double scale = 1.0;
    bool dbm = false;
    std::string digits = s;
    if (lower.size() >= 3 && lower.compare(lower.size() - 3, 3, "dbm") == 0) {
        dbm = true;
        digits = s.substr(0, s.size() - 3);
    } else if (lower.size() >= 2 && lower.compare(lower.size() - 2, 2, "mw") == 0) {
        scale = 1e-3;
        digits = s.substr(0, s.size() - 2);
    } else if (lower.size() >= 1 && lower.back() == 'w') {
        digits = s.substr(0, s.size() - 1);
    }

    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(digits, &used);
    } catch (const std::exception &) {
        throw ConfigError("power value \"" + token + "\": expected <number>[w|mw|dbm]");
    }
    if (used != digits.size())
        throw ConfigError("power value \"" + token + "\": expected <number>[w|mw|dbm]");
    return dbm ? watts_from_dbm(value) : value * scale;
}

int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"pinching-antenna positioning and link simulator"};
    app.require_subcommand(1);

    LocateOptions locate_opt;
    CLI::App *locate = app.add_subcommand("locate", "estimate one position from measurements");
    locate->add_option("--config", locate_opt.config_path, "config file (JSON)")->required();
    locate->add_option("--true-pos", locate_opt.true_pos, "synthesize measurements at \"x,y\" [m]");
    locate->add_option("--powers", locate_opt.powers,
                       "comma-separated measured powers, unit suffix w|mw|dbm");
    locate->add_option("--estimator", locate_opt.estimator, "mwsp|mwmp|auto");
    locate->add_option("--format", locate_opt.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    locate->add_option("--seed", locate_opt.seed, "override the campaign seed")
        ->each([&](const std::string &) { locate_opt.seed_set = true; });
    locate->add_flag("--noiseless", locate_opt.noiseless, "disable measurement noise");

    RunOptions run_opt;
    CLI::App *run = app.add_subcommand("run", "run the configured campaign");
    run->add_option("--config", run_opt.config_path, "config file (JSON)")->required();
    run->add_option("--out", run_opt.out_dir, "output directory");
    run->add_option("--seed", run_opt.seed, "override the campaign seed")
        ->each([&](const std::string &) { run_opt.seed_set = true; });
    run->add_option("--threads", run_opt.threads, "worker threads")->check(CLI::PositiveNumber);
    run->add_option("--format", run_opt.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    std::string validate_path;
    CLI::App *validate = app.add_subcommand("validate", "check a config file");
    validate->add_option("--config", validate_path, "config file (JSON)")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << e.what() << '\n';
        return kExitConfigError;
    }

    try {
        if (app.got_subcommand(locate)) return run_locate(locate_opt, out);
        if (app.got_subcommand(run)) return run_campaign(run_opt, out);
        const ParsedConfig cfg = load_config_file(validate_path);
        out << "config ok, scenario_hash " << scenario_fingerprint(cfg.scenario, cfg.campaign)
            << '\n';
        return kExitOk;
    } catch (const DegenerateGeometry &e) {
        err << "error: " << e.what() << '\n';
        return kExitDegenerateGeometry;
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::ios_base::failure &e) {
        err << "error: " << e.what() << '\n';
        return kExitIoError;
    }
}

} // namespace passim
