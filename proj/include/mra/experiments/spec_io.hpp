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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mra/core/config.hpp"

namespace mra {

// Experiment knobs that are not scenario parameters.  Each experiment reads
// only the subset listed for it by experiment_keys().
struct ExperimentParams {
    std::vector<std::size_t> m_grid;         // fig3_runtime: antenna counts
    std::size_t cd_passes = 10;              // fig3_runtime: fixed coordinate sweeps
    std::size_t amp_iterations = 25;         // fig3_runtime
    std::vector<std::size_t> k_sweep;        // fig5_fastfading, codec_rates
    std::string detection = "synthetic";     // fig5_fastfading: synthetic | empirical
    double p_md = 1e-4;
    double p_fa = 1e-3;
    double threshold = 0.5;                  // fig5_fastfading, empirical detection
    std::vector<double> beta_grid;           // fig5_fastfading
    bool acknowledged = false;               // fig5_fastfading
    std::size_t pilot_len = 600;             // fig7_slots: total pilot length
    std::vector<std::size_t> slot_grid;      // fig7_slots, fig8_pilotlen, table2
    std::vector<std::size_t> pilot_grid;     // fig8_pilotlen, table2
    double bin_load = 4.0;                   // codec_rates
};

struct ExperimentSpec {
    std::string name;
    std::string preset = "quick";
    std::uint64_t seed = 1;
    std::size_t trials = 0;  // 0 selects the preset's count
    std::string out_path;
    std::size_t threads = 0;  // 0 selects the hardware concurrency
    // key -> JSON-encoded value; keys name SystemConfig fields (or their
    // short aliases K, N, M, ...) or ExperimentParams fields.
    std::map<std::string, std::string> overrides;
};

// Fully resolved experiment: preset defaults with overrides applied and
// validated.
struct ResolvedExperiment {
    ExperimentSpec spec;
    SystemConfig system;
    ExperimentParams params;
    std::size_t trials = 0;
};

const std::vector<std::string>& experiment_names();
std::string experiment_summary(const std::string& name);
// Parameter keys (beyond SystemConfig fields) accepted by an experiment.
std::vector<std::string> experiment_keys(const std::string& name);

// Parses a JSON config file:
//   { "experiment": "...", "preset": "quick", "seed": 1, "trials": 10,
//     "out": "path.csv", "system": { ... }, "params": { ... } }
// Unknown keys at any level throw ConfigError naming all of them.
ExperimentSpec load_config(const std::string& path);
ExperimentSpec parse_config(const std::string& json_text);

// Adds a "key=value" override where value is JSON or a bare string.
void add_override(ExperimentSpec& spec, const std::string& assignment);

// Applies the preset, then the overrides; throws ConfigError on unknown
// names, unknown keys or invariant violations.
ResolvedExperiment resolve(const ExperimentSpec& spec);

}  // namespace mra
