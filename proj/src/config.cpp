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

#include "passim/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace passim {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json &obj, const std::string &path,
                         std::initializer_list<const char *> allowed) {
    for (const auto &item : obj.items()) {
        bool known = false;
        for (const char *key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known) throw ConfigError(path + "." + item.key() + ": unknown key");
    }
}

const json *find(const json &obj, const char *key) {
    const auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double as_number(const json &v, const std::string &path) {
    if (!v.is_number()) throw ConfigError(path + ": expected a number");
    return v.get<double>();
}

double number_or(const json &obj, const char *key, const std::string &path, double fallback) {
    const json *v = find(obj, key);
    return v ? as_number(*v, path + "." + key) : fallback;
}

double positive_number_or(const json &obj, const char *key, const std::string &path,
                          double fallback) {
    const double v = number_or(obj, key, path, fallback);
    if (!(v > 0.0)) throw ConfigError(path + "." + key + ": must be > 0");
    return v;
}

int int_or(const json &obj, const char *key, const std::string &path, int fallback) {
    const json *v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw ConfigError(path + "." + key + ": expected an integer");
    return v->get<int>();
}

WaveguideAxis axis_from_string(const std::string &s, const std::string &path) {
    if (s == "x") return WaveguideAxis::XAxis;
    if (s == "y") return WaveguideAxis::YAxis;
    if (s == "diagonal") return WaveguideAxis::Diagonal;
    throw ConfigError(path + ": axis must be one of \"x\", \"y\", \"diagonal\"");
}

CampaignKind kind_from_string(const std::string &s, const std::string &path) {
    if (s == "mwsp_map") return CampaignKind::MwspMap;
    if (s == "mwmp_map") return CampaignKind::MwmpMap;
    if (s == "swmp_map") return CampaignKind::SwmpMap;
    if (s == "avg_error_curve") return CampaignKind::AvgErrorCurve;
    if (s == "rate_vs_power") return CampaignKind::RateVsPower;
    if (s == "rate_vs_noise") return CampaignKind::RateVsNoise;
    throw ConfigError(path + ": unknown campaign kind \"" + s + "\"");
}

Vec3 ceiling_point(const json &v, const std::string &path, double h) {
    if (!v.is_array() || v.size() != 2)
        throw ConfigError(path + ": expected [x, y] in meters");
    return {as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]"), h};
}

void parse_room(const json *section, Scenario &sc) {
    if (!section) return;
    reject_unknown_keys(*section, "room", {"d1", "d2", "h"});
    sc.room.d1 = positive_number_or(*section, "d1", "room", sc.room.d1);
    sc.room.d2 = positive_number_or(*section, "d2", "room", sc.room.d2);
    sc.room.h = positive_number_or(*section, "h", "room", sc.room.h);
}

void parse_channel(const json *section, Scenario &sc) {
    double f_c = sc.channel.f_c, eps_r = sc.channel.eps_r, tan_delta = sc.channel.tan_delta;
    if (section) {
        reject_unknown_keys(*section, "channel", {"f_c_hz", "eps_r", "tan_delta"});
        f_c = positive_number_or(*section, "f_c_hz", "channel", f_c);
        eps_r = positive_number_or(*section, "eps_r", "channel", eps_r);
        tan_delta = positive_number_or(*section, "tan_delta", "channel", tan_delta);
    }
    sc.channel = ChannelConstants::make(f_c, eps_r, tan_delta);
}

void parse_power(const json *section, Scenario &sc) {
    if (section) {
        reject_unknown_keys(*section, "power", {"p_s_dbm", "p_t_dbm", "sigma2_dbm"});
        sc.p_s_dbm = number_or(*section, "p_s_dbm", "power", sc.p_s_dbm);
        sc.p_t_dbm = number_or(*section, "p_t_dbm", "power", sc.p_t_dbm);
        if (const auto it = section->find("sigma2_dbm"); it != section->end()) {
            // An explicit null disables measurement noise.
            if (it->is_null())
                sc.sigma2_dbm.reset();
            else
                sc.sigma2_dbm = as_number(*it, "power.sigma2_dbm");
        }
    }
    sc.p_s_w = watts_from_dbm(sc.p_s_dbm);
    sc.p_t_w = watts_from_dbm(sc.p_t_dbm);
}

void parse_layout(const json *section, Scenario &sc) {
    int n_elements = 3;
    std::string spacing_mode = "guided_wavelength";
    double spacing_m = 0.0;

    if (section) {
        reject_unknown_keys(*section, "layout",
                            {"waveguides", "n_elements", "spacing_mode", "spacing_m", "fixed_pa"});
        n_elements = int_or(*section, "n_elements", "layout", n_elements);
        if (const json *v = find(*section, "spacing_mode")) {
            if (!v->is_string()) throw ConfigError("layout.spacing_mode: expected a string");
            spacing_mode = v->get<std::string>();
            if (spacing_mode != "guided_wavelength" && spacing_mode != "explicit")
                throw ConfigError("layout.spacing_mode: must be \"guided_wavelength\" or \"explicit\"");
        }
        if (spacing_mode == "explicit")
            spacing_m = positive_number_or(*section, "spacing_m", "layout", 0.0);
        else if (find(*section, "spacing_m"))
            throw ConfigError("layout.spacing_m: only valid with spacing_mode = \"explicit\"");
    }
    const double spacing =
        spacing_mode == "explicit" ? spacing_m : sc.channel.default_spacing();

    const json *wgs = section ? find(*section, "waveguides") : nullptr;
    if (wgs) {
        if (!wgs->is_array() || wgs->empty() || wgs->size() > 3)
            throw ConfigError("layout.waveguides: expected an array of 1 to 3 entries");
        sc.placements.clear();
        int idx = 0;
        for (const json &w : *wgs) {
            const std::string path = "layout.waveguides[" + std::to_string(idx++) + "]";
            if (!w.is_object()) throw ConfigError(path + ": expected an object");
            reject_unknown_keys(w, path, {"axis", "offset", "center"});
            const json *axis = find(w, "axis");
            if (!axis || !axis->is_string()) throw ConfigError(path + ".axis: required string");
            PAPlacement p;
            p.waveguide.axis = axis_from_string(axis->get<std::string>(), path + ".axis");
            p.waveguide.offset = number_or(w, "offset", path, 0.0);
            const json *center = find(w, "center");
            if (!center) throw ConfigError(path + ".center: required [x, y]");
            p.center = ceiling_point(*center, path + ".center", sc.room.h);
            p.n_elements = n_elements;
            p.spacing = spacing;
            sc.placements.push_back(p);
        }
    } else {
        sc.placements = nonparallel_layout(sc.room, n_elements, spacing);
    }

    if (section) {
        if (const json *v = find(*section, "fixed_pa"))
            sc.fixed_pa = ceiling_point(*v, "layout.fixed_pa", sc.room.h);
        else
            sc.fixed_pa = {sc.room.d1 / 2.0, sc.room.d2 / 2.0, sc.room.h};
    } else {
        sc.fixed_pa = {sc.room.d1 / 2.0, sc.room.d2 / 2.0, sc.room.h};
    }
}

void parse_grid(const json *section, Scenario &sc) {
    if (!section) return;
    reject_unknown_keys(*section, "grid_search",
                        {"coarse_resolution_m", "refine_factor", "max_iterations", "stop_threshold_w"});
    sc.grid.coarse_resolution =
        positive_number_or(*section, "coarse_resolution_m", "grid_search", sc.grid.coarse_resolution);
    sc.grid.refine_factor = int_or(*section, "refine_factor", "grid_search", sc.grid.refine_factor);
    sc.grid.max_iterations = int_or(*section, "max_iterations", "grid_search", sc.grid.max_iterations);
    sc.grid.stop_threshold =
        positive_number_or(*section, "stop_threshold_w", "grid_search", sc.grid.stop_threshold);
    sc.grid.validate();
}

std::vector<double> number_list(const json &v, const std::string &path) {
    if (!v.is_array() || v.empty()) throw ConfigError(path + ": expected a non-empty array");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

void parse_campaign(const json *section, const Scenario &sc, Campaign &campaign) {
    if (section) {
        reject_unknown_keys(*section, "campaign", {"kind", "lattice", "trials", "seed", "sweeps"});
        if (const json *v = find(*section, "kind")) {
            if (!v->is_string()) throw ConfigError("campaign.kind: expected a string");
            campaign.kind = kind_from_string(v->get<std::string>(), "campaign.kind");
        }
    }

    // Kind-specific defaults: map campaigns sweep a dense lattice with many
    // trials per cell, rate campaigns a coarse lattice once per user, and
    // the average-error curve draws `trials` random users.
    const bool rate_kind =
        campaign.kind == CampaignKind::RateVsPower || campaign.kind == CampaignKind::RateVsNoise;
    campaign.lattice = rate_kind ? LatticeSpec{10, 10} : LatticeSpec{30, 50};
    campaign.trials = campaign.kind == CampaignKind::AvgErrorCurve ? 1000 : (rate_kind ? 1 : 100);

    if (section) {
        if (const json *v = find(*section, "lattice")) {
            if (!v->is_object()) throw ConfigError("campaign.lattice: expected an object");
            reject_unknown_keys(*v, "campaign.lattice", {"nx", "ny"});
            campaign.lattice.nx = int_or(*v, "nx", "campaign.lattice", campaign.lattice.nx);
            campaign.lattice.ny = int_or(*v, "ny", "campaign.lattice", campaign.lattice.ny);
        }
        campaign.trials = int_or(*section, "trials", "campaign", campaign.trials);
        if (const json *v = find(*section, "seed")) {
            if (!v->is_number_unsigned() && !v->is_number_integer())
                throw ConfigError("campaign.seed: expected an integer");
            campaign.seed = v->get<std::uint64_t>();
        }
        if (const json *v = find(*section, "sweeps")) {
            if (!v->is_object()) throw ConfigError("campaign.sweeps: expected an object");
            reject_unknown_keys(*v, "campaign.sweeps", {"sigma2_dbm", "p_t_dbm", "n_elements"});
            if (const json *s = find(*v, "sigma2_dbm"))
                campaign.sigma2_dbm_sweep = number_list(*s, "campaign.sweeps.sigma2_dbm");
            if (const json *s = find(*v, "p_t_dbm"))
                campaign.p_t_dbm_sweep = number_list(*s, "campaign.sweeps.p_t_dbm");
            if (const json *s = find(*v, "n_elements")) {
                if (!s->is_array() || s->empty())
                    throw ConfigError("campaign.sweeps.n_elements: expected a non-empty array");
                campaign.n_elements_sweep.clear();
                for (std::size_t i = 0; i < s->size(); ++i) {
                    const json &e = (*s)[i];
                    if (!e.is_number_integer())
                        throw ConfigError("campaign.sweeps.n_elements[" + std::to_string(i) +
                                          "]: expected an integer");
                    campaign.n_elements_sweep.push_back(e.get<int>());
                }
            }
        }
    }
    campaign.validate();
    (void)sc;
}

} // namespace

ParsedConfig parse_config(const json &j) {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown_keys(j, "config",
                        {"room", "channel", "power", "layout", "grid_search", "campaign"});

    ParsedConfig cfg;
    cfg.scenario.placements.clear();
    parse_room(find(j, "room"), cfg.scenario);
    cfg.scenario.room.validate();
    parse_channel(find(j, "channel"), cfg.scenario);
    parse_power(find(j, "power"), cfg.scenario);
    parse_layout(find(j, "layout"), cfg.scenario);
    parse_grid(find(j, "grid_search"), cfg.scenario);
    parse_campaign(find(j, "campaign"), cfg.scenario, cfg.campaign);
    cfg.scenario.validate();
    return cfg;
}

ParsedConfig parse_config_text(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

ParsedConfig load_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

json serialize_config(const Scenario &sc, const Campaign &campaign) {
    json j;
    j["room"] = {{"d1", sc.room.d1}, {"d2", sc.room.d2}, {"h", sc.room.h}};
    j["channel"] = {{"f_c_hz", sc.channel.f_c},
                    {"eps_r", sc.channel.eps_r},
                    {"tan_delta", sc.channel.tan_delta}};
    j["power"] = {{"p_s_dbm", sc.p_s_dbm}, {"p_t_dbm", sc.p_t_dbm}};
    if (sc.sigma2_dbm)
        j["power"]["sigma2_dbm"] = *sc.sigma2_dbm;
    else
        j["power"]["sigma2_dbm"] = nullptr;

    json wgs = json::array();
    for (const PAPlacement &p : sc.placements)
        wgs.push_back({{"axis", to_string(p.waveguide.axis)},
                       {"offset", p.waveguide.offset},
                       {"center", {p.center.x, p.center.y}}});
    j["layout"] = {{"waveguides", wgs},
                   {"n_elements", sc.placements.empty() ? 1 : sc.placements.front().n_elements},
                   {"spacing_mode", "explicit"},
                   {"spacing_m", sc.placements.empty() ? 0.0 : sc.placements.front().spacing},
                   {"fixed_pa", {sc.fixed_pa.x, sc.fixed_pa.y}}};

    j["grid_search"] = {{"coarse_resolution_m", sc.grid.coarse_resolution},
                        {"refine_factor", sc.grid.refine_factor},
                        {"max_iterations", sc.grid.max_iterations},
                        {"stop_threshold_w", sc.grid.stop_threshold}};

    json sweeps = json::object();
    if (!campaign.sigma2_dbm_sweep.empty()) sweeps["sigma2_dbm"] = campaign.sigma2_dbm_sweep;
    if (!campaign.p_t_dbm_sweep.empty()) sweeps["p_t_dbm"] = campaign.p_t_dbm_sweep;
    if (!campaign.n_elements_sweep.empty()) sweeps["n_elements"] = campaign.n_elements_sweep;
    j["campaign"] = {{"kind", to_string(campaign.kind)},
                     {"lattice", {{"nx", campaign.lattice.nx}, {"ny", campaign.lattice.ny}}},
                     {"trials", campaign.trials},
                     {"seed", campaign.seed},
                     {"sweeps", sweeps}};
    return j;
}

} // namespace passim
