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

#include "mra/experiments/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "mra/core/channel.hpp"
#include "mra/core/errors.hpp"
#include "mra/core/pilots.hpp"
#include "mra/cpa/cpa.hpp"
#include "mra/detect/amp.hpp"
#include "mra/detect/covariance.hpp"
#include "mra/estimation/slow_fading.hpp"
#include "mra/feedback/bounds.hpp"
#include "mra/feedback/chd.hpp"
#include "mra/scheduled/scheduled.hpp"

#ifndef MRA_BUILD_VERSION
#define MRA_BUILD_VERSION "unknown"
#endif

namespace mra {

const char* build_version() { return MRA_BUILD_VERSION; }

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn,
                  const std::string& label) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(count, 1));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex mu;
    std::string error;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (const std::exception& e) {
                std::lock_guard lock(mu);
                if (!failed.exchange(true)) error = label + " point " + std::to_string(i) + ": " + e.what();
                return;
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed) throw ExperimentError(error);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

ResultTable run_fig3(const ResolvedExperiment& r) {
    ResultTable table({"M", "t_amp_s", "t_cov_s", "amp_p_md", "amp_p_fa", "cov_p_md", "cov_p_fa"});
    const SystemConfig& base = r.system;
    const std::uint64_t seed = r.spec.seed;
    RngStream pilot_rng(seed, 0, Stage::pilots);
    const CMatrix pilots = gaussian_signatures(base.det_pilot_len, base.n_users, pilot_rng);
    const double l = static_cast<double>(base.det_pilot_len);
    const CMatrix unit_pilots = pilots / std::sqrt(l);
    const double p = base.tx_power_linear();

    CdConfig cd;
    cd.max_passes = r.params.cd_passes;
    cd.tolerance = 1e-300;  // run exactly cd_passes sweeps so timings compare like with like
    AmpConfig amp;
    amp.iterations = r.params.amp_iterations;
    amp.prior_activity = static_cast<double>(base.n_active) / static_cast<double>(base.n_users);

    // Timing is sequential on purpose: concurrent points would contend for cores.
    for (std::size_t m : r.params.m_grid) {
        SystemConfig c = base;
        c.n_antennas = m;
        double t_amp = 0.0, t_cov = 0.0;
        DetectionMetrics amp_err, cov_err;
        for (std::size_t t = 0; t < r.trials; ++t) {
            RngStream act(seed, t, Stage::activity);
            RngStream large(seed, t, Stage::large_scale);
            RngStream small(seed, t, Stage::small_scale);
            RngStream noise(seed, t, Stage::noise);
            RngStream order(seed, t, Stage::detection);
            const ActivitySet active = sample_activity(c, act);
            const auto g = sample_large_scale(c, active.size(), large);
            const ChannelBlock channel = sample_channel_block(c, active, g, small);
            CMatrix signals(static_cast<Eigen::Index>(active.size()), pilots.rows());
            for (std::size_t i = 0; i < active.size(); ++i)
                signals.row(static_cast<Eigen::Index>(i)) = std::sqrt(p) * pilots.col(active[i]).transpose();
            const ReceivedBlock rx = synthesize_received(active, signals, channel, c.noise_var(), noise);

            amp.prior_gain = {l * p};
            auto start = Clock::now();
            const AmpResult a = amp_detect(rx.samples, unit_pilots, amp);
            t_amp += seconds_since(start);

            start = Clock::now();
            const CovarianceDetection d = detect_covariance(rx.samples, pilots, c.noise_var(), cd, order);
            t_cov += seconds_since(start);

            const auto ea = detection_metrics(active, a.activity, c.n_users);
            const auto ec = detection_metrics(active, d.estimate, c.n_users);
            amp_err.p_md += ea.p_md;
            amp_err.p_fa += ea.p_fa;
            cov_err.p_md += ec.p_md;
            cov_err.p_fa += ec.p_fa;
        }
        const double tr = static_cast<double>(r.trials);
        table.add_row({as_int(m), t_amp / tr, t_cov / tr, amp_err.p_md / tr, amp_err.p_fa / tr, cov_err.p_md / tr,
                       cov_err.p_fa / tr});
    }
    return table;
}

ResultTable run_fig5(const ResolvedExperiment& r) {
    ResultTable table({"K", "sched", "cpa_beta_opt", "beta_opt", "cpa_beta2", "cpa_beta3", "sched_collisions",
                       "sched_wasted_slots", "feedback_bits", "feedback_bound"});
    const SystemConfig& c = r.system;
    DetectionModel detection = SyntheticDetection{r.params.p_md, r.params.p_fa};
    if (r.params.detection == "empirical") {
        EmpiricalDetection e;
        e.threshold = r.params.threshold;
        detection = e;
    }
    ScheduledOptions options;
    options.acknowledged = r.params.acknowledged;
    const auto& sweep = r.params.k_sweep;
    std::vector<std::vector<Cell>> rows(sweep.size());
    parallel_for(
        sweep.size(), r.spec.threads,
        [&](std::size_t i) {
            const std::size_t k = sweep[i];
            const auto sched = successes_per_slot_scheduled(c, {k}, detection, r.trials, r.spec.seed, options).front();
            const auto best =
                optimize_beta(k, c.n_blocks, c.orth_pilot_count, r.params.beta_grid, r.trials, r.spec.seed);
            const auto b2 = successes_per_slot_cpa(k, c.n_blocks, c.orth_pilot_count, 2.0, r.trials, r.spec.seed);
            const auto b3 = successes_per_slot_cpa(k, c.n_blocks, c.orth_pilot_count, 3.0, r.trials, r.spec.seed);
            rows[i] = {as_int(k),          sched.successes_per_slot, best.value,         best.beta,
                       b2.successes_per_slot, b3.successes_per_slot, sched.collisions, sched.wasted_slots,
                       sched.feedback_bits, sched.feedback_bound};
        },
        "fig5_fastfading");
    for (auto& row : rows) table.add_row(std::move(row));
    table.sort_by("K");
    return table;
}

ResultTable run_fig7(const ResolvedExperiment& r) {
    ResultTable table({"B", "sum_rate_nonorth_mbps", "sum_rate_orth_mbps"});
    std::vector<RateReport> curves[2];
    const PilotScheme schemes[2] = {PilotScheme::nonorthogonal, PilotScheme::orthogonal};
    parallel_for(
        2, r.spec.threads,
        [&](std::size_t i) {
            curves[i] = slot_curve(r.system, schemes[i], r.params.pilot_len, r.params.slot_grid, r.trials, r.spec.seed);
        },
        "fig7_slots");
    for (std::size_t i = 0; i < r.params.slot_grid.size(); ++i)
        table.add_row({as_int(r.params.slot_grid[i]), curves[0][i].sum_rate / 1e6, curves[1][i].sum_rate / 1e6});
    table.sort_by("B");
    return table;
}

ResultTable run_fig8(const ResolvedExperiment& r) {
    ResultTable table({"L", "amp_b1_mbps", "amp_bstar_mbps", "amp_bstar", "orth_bstar_mbps", "orth_bstar"});
    std::vector<std::size_t> slots = r.params.slot_grid;
    if (std::find(slots.begin(), slots.end(), std::size_t{1}) == slots.end()) slots.insert(slots.begin(), 1);
    const auto& grid = r.params.pilot_grid;
    std::vector<std::vector<Cell>> rows(grid.size());
    parallel_for(
        grid.size(), r.spec.threads,
        [&](std::size_t i) {
            const std::size_t l = grid[i];
            const auto amp = optimize_slots(r.system, PilotScheme::nonorthogonal, l, slots, r.trials, r.spec.seed);
            const auto b1 = std::find(amp.slot_grid.begin(), amp.slot_grid.end(), std::size_t{1}) - amp.slot_grid.begin();
            const auto orth = optimize_slots(r.system, PilotScheme::orthogonal, l, slots, r.trials, r.spec.seed);
            rows[i] = {as_int(l),
                       amp.sum_rate[static_cast<std::size_t>(b1)] / 1e6,
                       amp.best.sum_rate / 1e6,
                       as_int(amp.best_slots),
                       orth.best.sum_rate / 1e6,
                       as_int(orth.best_slots)};
        },
        "fig8_pilotlen");
    for (auto& row : rows) table.add_row(std::move(row));
    table.sort_by("L");
    return table;
}

ResultTable run_table2(const ResolvedExperiment& r) {
    ResultTable table({"scheme", "pilot_len", "det_pilot_len", "orth_pilot_len", "slots", "feedback_bits",
                       "feedback_kbps", "sum_rate_mbps"});
    Table2Options options;
    options.pilot_grid = r.params.pilot_grid;
    options.slot_grid = r.params.slot_grid;
    options.draws = r.trials;
    const auto reports = table2_experiment(r.system, options, r.spec.seed);
    const char* labels[3] = {"amp_nonorth_b1", "amp_nonorth_bstar", "cov_orth_bstar"};
    const double frame_s = static_cast<double>(r.system.frame_len) / r.system.bandwidth_hz;
    for (std::size_t i = 0; i < 3; ++i) {
        const RateReport& rep = reports[i];
        table.add_row({std::string(labels[i]), as_int(rep.det_pilot_len + rep.orth_pilot_len), as_int(rep.det_pilot_len),
                       as_int(rep.orth_pilot_len), as_int(rep.slots), as_int(rep.feedback_bits),
                       static_cast<double>(rep.feedback_bits) / frame_s / 1e3, rep.sum_rate / 1e6});
    }
    return table;
}

ResultTable run_codec(const ResolvedExperiment& r) {
    ResultTable table({"K", "B", "max_load", "mean_bits", "bits_per_user", "retries", "bound_variable_length",
                       "bound_naive", "bound_enumerative"});
    struct Job {
        std::size_t k;
        std::uint32_t slots;
        std::uint16_t load;
    };
    std::vector<Job> jobs;
    for (std::size_t k : r.params.k_sweep) {
        const double kd = static_cast<double>(k);
        jobs.push_back({k, static_cast<std::uint32_t>(k), 1});
        jobs.push_back({k, static_cast<std::uint32_t>(std::ceil(1.15 * kd)), 1});
        jobs.push_back({k, static_cast<std::uint32_t>(std::ceil(kd / 2.0)), 2});
    }
    ChdOptions options;
    options.bin_load = r.params.bin_load;
    std::vector<std::vector<Cell>> rows(jobs.size());
    parallel_for(
        jobs.size(), r.spec.threads,
        [&](std::size_t i) {
            const Job& j = jobs[i];
            const RateStats s = measure_rate(r.system.n_users, j.k, std::max<std::uint32_t>(j.slots, 1), j.load,
                                             r.trials, r.spec.seed, options);
            rows[i] = {as_int(j.k),
                       as_int(j.slots),
                       as_int(j.load),
                       s.mean_bits,
                       s.bits_per_user,
                       s.mean_retries,
                       bound_variable_length(j.k),
                       bound_naive(j.k, r.system.n_users),
                       bound_enumerative(j.k, r.system.n_users)};
        },
        "codec_rates");
    for (auto& row : rows) table.add_row(std::move(row));
    return table;
}

}  // namespace

ResultTable run(const ResolvedExperiment& r) {
    const auto start = Clock::now();
    ResultTable table;
    const std::string& name = r.spec.name;
    if (name == "fig3_runtime")
        table = run_fig3(r);
    else if (name == "fig5_fastfading")
        table = run_fig5(r);
    else if (name == "fig7_slots")
        table = run_fig7(r);
    else if (name == "fig8_pilotlen")
        table = run_fig8(r);
    else if (name == "table2")
        table = run_table2(r);
    else if (name == "codec_rates")
        table = run_codec(r);
    else
        throw ConfigError("unknown experiment '" + name + "'");

    table.set_meta("experiment", name);
    table.set_meta("preset", r.spec.preset);
    table.set_meta("build", build_version());
    table.set_meta("seed", std::to_string(r.spec.seed));
    table.set_meta("trials", std::to_string(r.trials));
    table.set_meta("wall_time_s", format_double(seconds_since(start)));
    if (!r.spec.out_path.empty()) emit_csv(table, r.spec.out_path);
    return table;
}

ResultTable run(const ExperimentSpec& spec) { return run(resolve(spec)); }

}  // namespace mra
