// mra: massive random access simulator
// Copyright (C) 2026 mra contributors
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

#include "mra/experiments/spec_io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "mra/core/errors.hpp"
#include "mra/cpa/cpa.hpp"

namespace mra {

using nlohmann::json;

namespace {

struct Entry {
    const char* name;
    const char* summary;
    std::vector<std::string> keys;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries = {
        {"fig3_runtime", "activity-detection wall time of AMP and the covariance method versus M",
         {"m_grid", "cd_passes", "amp_iterations"}},
        {"fig5_fastfading", "successes per slot of scheduled access and CPA versus K (fast fading)",
         {"k_sweep", "detection", "p_md", "p_fa", "threshold", "beta_grid", "acknowledged"}},
        {"fig7_slots", "slow-fading sum rate versus the number of transmission slots B", {"pilot_len", "slot_grid"}},
        {"fig8_pilotlen", "slow-fading sum rate versus total pilot length", {"pilot_grid", "slot_grid"}},
        {"table2", "slow-fading sum rate and feedback cost of the three schemes", {"pilot_grid", "slot_grid"}},
        {"codec_rates", "CHD feedback length against the analytic bounds versus K", {"k_sweep", "bin_load"}},
    };
    return entries;
}

const Entry& lookup(const std::string& name) {
    for (const auto& e : registry())
        if (name == e.name) return e;
    std::string known;
    for (const auto& e : registry()) known += std::string(known.empty() ? "" : ", ") + e.name;
    throw ConfigError("unknown experiment '" + name + "' (known: " + known + ")");
}

const std::map<std::string, std::string>& aliases() {
    static const std::map<std::string, std::string> a = {
        {"N", "n_users"},      {"K", "n_active"},         {"M", "n_antennas"}, {"Delta", "n_blocks"},
        {"D", "block_len"},    {"T", "frame_len"},        {"L", "det_pilot_len"}, {"L1", "det_pilot_len"},
        {"tau", "orth_pilot_count"},
    };
    return a;
}

std::string canonical(const std::string& key) {
    const auto it = aliases().find(key);
    return it == aliases().end() ? key : it->second;
}

template <typename T>
T as(const json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("invalid config: bad value for " + key + ": " + v.dump());
    }
}

std::size_t as_count(const json& v, const std::string& key) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ConfigError("invalid config: " + key + " must be a nonnegative integer, got " + v.dump());
    return v.get<std::size_t>();
}

std::vector<std::size_t> as_counts(const json& v, const std::string& key) {
    if (!v.is_array() || v.empty()) throw ConfigError("invalid config: " + key + " must be a nonempty list");
    std::vector<std::size_t> out;
    for (const auto& x : v) out.push_back(as_count(x, key));
    return out;
}

using Setter = std::function<void(ResolvedExperiment&, const json&)>;

const std::map<std::string, Setter>& system_setters() {
    static const std::map<std::string, Setter> s = [] {
        std::map<std::string, Setter> m;
        auto count = [&m](const char* k, std::size_t SystemConfig::*field) {
            m[k] = [k, field](ResolvedExperiment& r, const json& v) { r.system.*field = as_count(v, k); };
        };
        auto real = [&m](const char* k, double SystemConfig::*field) {
            m[k] = [k, field](ResolvedExperiment& r, const json& v) { r.system.*field = as<double>(v, k); };
        };
        count("n_users", &SystemConfig::n_users);
        count("n_active", &SystemConfig::n_active);
        count("n_antennas", &SystemConfig::n_antennas);
        count("n_blocks", &SystemConfig::n_blocks);
        count("block_len", &SystemConfig::block_len);
        count("frame_len", &SystemConfig::frame_len);
        count("det_pilot_len", &SystemConfig::det_pilot_len);
        count("orth_pilot_count", &SystemConfig::orth_pilot_count);
        count("orth_pilot_len", &SystemConfig::orth_pilot_len);
        real("tx_power_dbm", &SystemConfig::tx_power_dbm);
        real("noise_psd_dbm_hz", &SystemConfig::noise_psd_dbm_hz);
        real("bandwidth_hz", &SystemConfig::bandwidth_hz);
        real("pathloss_intercept_db", &SystemConfig::pathloss_intercept_db);
        real("pathloss_slope_db", &SystemConfig::pathloss_slope_db);
        real("dist_min_km", &SystemConfig::dist_min_km);
        real("dist_max_km", &SystemConfig::dist_max_km);
        m["power_control"] = [](ResolvedExperiment& r, const json& v) {
            r.system.power_control = as<bool>(v, "power_control");
        };
        m["snr_db"] = [](ResolvedExperiment& r, const json& v) {
            if (v.is_null())
                r.system.snr_db.reset();
            else
                r.system.snr_db = as<double>(v, "snr_db");
        };
        return m;
    }();
    return s;
}

const std::map<std::string, Setter>& param_setters() {
    static const std::map<std::string, Setter> s = {
        {"m_grid", [](ResolvedExperiment& r, const json& v) { r.params.m_grid = as_counts(v, "m_grid"); }},
        {"cd_passes", [](ResolvedExperiment& r, const json& v) { r.params.cd_passes = as_count(v, "cd_passes"); }},
        {"amp_iterations",
         [](ResolvedExperiment& r, const json& v) { r.params.amp_iterations = as_count(v, "amp_iterations"); }},
        {"k_sweep", [](ResolvedExperiment& r, const json& v) { r.params.k_sweep = as_counts(v, "k_sweep"); }},
        {"detection", [](ResolvedExperiment& r, const json& v) { r.params.detection = as<std::string>(v, "detection"); }},
        {"p_md", [](ResolvedExperiment& r, const json& v) { r.params.p_md = as<double>(v, "p_md"); }},
        {"p_fa", [](ResolvedExperiment& r, const json& v) { r.params.p_fa = as<double>(v, "p_fa"); }},
        {"threshold", [](ResolvedExperiment& r, const json& v) { r.params.threshold = as<double>(v, "threshold"); }},
        {"beta_grid", [](ResolvedExperiment& r, const json& v) {
             r.params.beta_grid = as<std::vector<double>>(v, "beta_grid");
             if (r.params.beta_grid.empty()) throw ConfigError("invalid config: beta_grid must be nonempty");
         }},
        {"acknowledged",
         [](ResolvedExperiment& r, const json& v) { r.params.acknowledged = as<bool>(v, "acknowledged"); }},
        {"pilot_len", [](ResolvedExperiment& r, const json& v) { r.params.pilot_len = as_count(v, "pilot_len"); }},
        {"slot_grid", [](ResolvedExperiment& r, const json& v) { r.params.slot_grid = as_counts(v, "slot_grid"); }},
        {"pilot_grid", [](ResolvedExperiment& r, const json& v) { r.params.pilot_grid = as_counts(v, "pilot_grid"); }},
        {"bin_load", [](ResolvedExperiment& r, const json& v) { r.params.bin_load = as<double>(v, "bin_load"); }},
    };
    return s;
}

std::vector<std::size_t> range(std::size_t first, std::size_t last, std::size_t step) {
    std::vector<std::size_t> out;
    for (std::size_t v = first; v <= last; v += step) out.push_back(v);
    return out;
}

// Preset defaults.  The "paper" preset uses the full-scale parameter sets;
// quick presets shrink trial counts and grids to desk scale.
void apply_preset(ResolvedExperiment& r) {
    const std::string& name = r.spec.name;
    const bool paper = r.spec.preset == "paper";
    if (r.spec.preset != "paper" && r.spec.preset != "quick")
        throw ConfigError("unknown preset '" + r.spec.preset + "' (known: quick, paper)");

    if (name == "fig3_runtime") {
        r.system = fast_fading_defaults();
        r.system.n_users = 1000;
        r.system.n_active = 100;
        r.system.det_pilot_len = 100;
        r.params.m_grid = paper ? std::vector<std::size_t>{8, 16, 32, 64, 128, 256, 512, 1024}
                                : std::vector<std::size_t>{8, 64, 256};
        r.trials = paper ? 3 : 1;
    } else if (name == "fig5_fastfading") {
        r.system = fast_fading_defaults();
        r.params.k_sweep = paper ? range(50, 1200, 50) : range(100, 1200, 100);
        r.params.k_sweep.push_back(896);
        std::sort(r.params.k_sweep.begin(), r.params.k_sweep.end());
        r.params.beta_grid = default_beta_grid();
        r.trials = paper ? 200 : 20;
    } else if (name == "fig7_slots") {
        r.system = slow_fading_defaults();
        r.params.pilot_len = 600;
        r.params.slot_grid = range(1, 10, 1);
        r.trials = paper ? 200 : 30;
    } else if (name == "fig8_pilotlen") {
        r.system = slow_fading_defaults();
        r.params.pilot_grid = range(400, 1000, 100);
        r.params.slot_grid = range(1, 8, 1);
        r.trials = paper ? 200 : 20;
    } else if (name == "table2") {
        r.system = slow_fading_defaults();
        r.params.pilot_grid = range(400, 1000, 100);
        r.params.slot_grid = range(1, 8, 1);
        r.trials = paper ? 200 : 20;
    } else if (name == "codec_rates") {
        r.system = fast_fading_defaults();
        r.system.n_users = 1000000;
        r.params.k_sweep = {250, 500, 1000, 2000};
        r.trials = paper ? 100 : 20;
    }
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& e : registry()) n.emplace_back(e.name);
        return n;
    }();
    return names;
}

std::string experiment_summary(const std::string& name) { return lookup(name).summary; }

std::vector<std::string> experiment_keys(const std::string& name) { return lookup(name).keys; }

ExperimentSpec parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    ExperimentSpec spec;
    std::vector<std::string> unknown;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& key = it.key();
        const json& v = it.value();
        if (key == "experiment") {
            spec.name = as<std::string>(v, key);
        } else if (key == "preset") {
            spec.preset = as<std::string>(v, key);
        } else if (key == "seed") {
            spec.seed = as<std::uint64_t>(v, key);
        } else if (key == "trials") {
            spec.trials = as_count(v, key);
        } else if (key == "threads") {
            spec.threads = as_count(v, key);
        } else if (key == "out") {
            spec.out_path = as<std::string>(v, key);
        } else if (key == "system" || key == "params") {
            if (!v.is_object()) throw ConfigError("config section '" + key + "' must be an object");
            for (auto jt = v.begin(); jt != v.end(); ++jt) spec.overrides[jt.key()] = jt.value().dump();
        } else {
            unknown.push_back(key);
        }
    }
    if (!unknown.empty()) {
        std::string list;
        for (const auto& k : unknown) list += (list.empty() ? "" : ", ") + k;
        throw ConfigError("unknown config keys: " + list);
    }
    if (spec.name.empty()) throw ConfigError("config names no experiment");
    return spec;
}

ExperimentSpec load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file " + path);
    std::ostringstream text;
    text << f.rdbuf();
    return parse_config(text.str());
}

void add_override(ExperimentSpec& spec, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like key=value: " + assignment);
    const std::string key = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    const json parsed = json::parse(value, nullptr, false);
    spec.overrides[key] = parsed.is_discarded() ? json(value).dump() : parsed.dump();
}

ResolvedExperiment resolve(const ExperimentSpec& spec) {
    const Entry& entry = lookup(spec.name);
    ResolvedExperiment r;
    r.spec = spec;
    apply_preset(r);

    std::vector<std::string> unknown;
    bool frame_given = false;
    for (const auto& [raw_key, text] : spec.overrides) {
        const std::string key = canonical(raw_key);
        const json value = json::parse(text);
        if (auto it = system_setters().find(key); it != system_setters().end()) {
            it->second(r, value);
            frame_given = frame_given || key == "frame_len";
        } else if (std::find(entry.keys.begin(), entry.keys.end(), key) != entry.keys.end()) {
            param_setters().at(key)(r, value);
        } else {
            unknown.push_back(raw_key);
        }
    }
    if (!unknown.empty()) {
        std::string list;
        for (const auto& k : unknown) list += (list.empty() ? "" : ", ") + k;
        throw ConfigError("unknown keys for " + spec.name + ": " + list);
    }
    // T follows D * Delta unless given explicitly.
    if (!frame_given) r.system.frame_len = r.system.block_len * r.system.n_blocks;
    if (spec.trials > 0) r.trials = spec.trials;
    r.system.seed = spec.seed;
    r.system.validate();
    if (r.params.detection != "synthetic" && r.params.detection != "empirical")
        throw ConfigError("invalid config: detection must be synthetic or empirical");
    return r;
}

}  // namespace mra
