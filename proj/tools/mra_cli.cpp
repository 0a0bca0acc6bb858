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

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mra/core/errors.hpp"
#include "mra/experiments/runner.hpp"
#include "mra/experiments/spec_io.hpp"
#include "mra/experiments/table.hpp"

namespace {

struct Options {
    std::string name;
    std::string config;
    std::string preset;
    std::string out;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t threads = 0;
    std::vector<std::string> sets;
};

// File values first, then command-line flags on top.
mra::ExperimentSpec build_spec(const Options& o, CLI::App& sub) {
    mra::ExperimentSpec spec;
    if (!o.config.empty()) spec = mra::load_config(o.config);
    if (!o.name.empty()) spec.name = o.name;
    if (spec.name.empty()) throw mra::ConfigError("no experiment named (pass <name> or a config with \"experiment\")");
    if (sub.count("--preset")) spec.preset = o.preset;
    if (sub.count("--seed")) spec.seed = o.seed;
    if (sub.count("--trials")) spec.trials = o.trials;
    if (sub.count("--threads")) spec.threads = o.threads;
    if (const auto* out = sub.get_option_no_throw("--out"); out && out->count()) spec.out_path = o.out;
    for (const auto& s : o.sets) mra::add_override(spec, s);
    return spec;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("name", o.name, "Experiment name (see `mra list`)");
    sub->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--preset", o.preset, "quick or paper");
    sub->add_option("--seed", o.seed, "Base seed of every random stream");
    sub->add_option("--trials", o.trials, "Trials (frames, draws or repetitions) per point");
    sub->add_option("--threads", o.threads, "Worker threads, 0 = all cores");
    sub->add_option("--set", o.sets, "Override key=value (value parsed as JSON when possible)");
}

const char* kind_of(const std::exception& e) {
    if (dynamic_cast<const mra::ConfigError*>(&e)) return "ConfigError";
    if (dynamic_cast<const mra::ExperimentError*>(&e)) return "ExperimentError";
    if (dynamic_cast<const mra::InfeasibleError*>(&e)) return "InfeasibleError";
    if (dynamic_cast<const std::system_error*>(&e)) return "IOError";
    return "Error";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scheduled and contention-based massive random access simulator"};
    app.require_subcommand(1);

    Options run_opts;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment and emit its CSV");
    add_common(run_cmd, run_opts);
    run_cmd->add_option("--out", run_opts.out, "CSV output path (stdout when omitted)");

    Options validate_opts;
    auto* validate_cmd = app.add_subcommand("validate", "Resolve and validate a configuration without running it");
    add_common(validate_cmd, validate_opts);

    auto* list_cmd = app.add_subcommand("list", "List experiments and their parameter keys");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_cmd->parsed()) {
            for (const auto& name : mra::experiment_names()) {
                std::cout << name << "  " << mra::experiment_summary(name) << "\n    keys:";
                for (const auto& k : mra::experiment_keys(name)) std::cout << ' ' << k;
                std::cout << '\n';
            }
            return 0;
        }
        if (validate_cmd->parsed()) {
            const auto r = mra::resolve(build_spec(validate_opts, *validate_cmd));
            const auto& s = r.system;
            std::cout << "ok " << r.spec.name << " preset=" << r.spec.preset << " seed=" << r.spec.seed
                      << " trials=" << r.trials << " N=" << s.n_users << " K=" << s.n_active << " M=" << s.n_antennas
                      << " Delta=" << s.n_blocks << " D=" << s.block_len << " T=" << s.frame_len
                      << " L=" << s.det_pilot_len << " tau=" << s.orth_pilot_count << '\n';
            return 0;
        }
        const auto spec = build_spec(run_opts, *run_cmd);
        const auto table = mra::run(spec);
        if (spec.out_path.empty()) mra::write_csv(table, std::cout);
        return 0;
    } catch (const std::exception& e) {
        const nlohmann::json line = {{"error", kind_of(e)}, {"message", e.what()}};
        std::cerr << line.dump() << std::endl;
        return dynamic_cast<const mra::ConfigError*>(&e) ? 2 : 1;
    }
}
