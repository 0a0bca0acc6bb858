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

#include "mra/scheduled/scheduled.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "mra/core/errors.hpp"
#include "mra/core/pilots.hpp"
#include "mra/feedback/bounds.hpp"

namespace mra {

std::size_t effective_slots(std::size_t n_blocks, std::size_t n_pilots) {
    if (n_blocks < 2) throw ConfigError("invalid config: scheduling needs Delta >= 2 (no data blocks)");
    if (n_pilots == 0) throw ConfigError("invalid config: orth_pilot_count must be positive");
    return n_pilots * (n_blocks - 1);
}

BlockPilotPair slot_to_pair(std::size_t slot, std::size_t n_pilots) {
    if (n_pilots == 0) throw DomainError("slot_to_pair: no pilots");
    return {static_cast<std::uint32_t>(2 + slot / n_pilots), static_cast<std::uint32_t>(slot % n_pilots)};
}

namespace {

// Detected users in admission order, most confident first.
struct Detection {
    ActivitySet detected;
    std::vector<UserId> ranked;
};

Detection detect_synthetic(const SystemConfig& config, const ActivitySet& active, const SyntheticDetection& model,
                           RngStream& rng) {
    if (!(model.p_md >= 0.0 && model.p_md <= 1.0 && model.p_fa >= 0.0 && model.p_fa <= 1.0))
        throw ConfigError("invalid config: detection error probabilities must lie in [0, 1]");
    std::vector<UserId> hits;
    for (UserId u : active)
        if (!rng.bernoulli(model.p_md)) hits.push_back(u);

    // False alarms: a binomial count, then a uniform subset of the inactive
    // users addressed by rank within the complement of the active set.
    const std::size_t inactive = config.n_users - active.size();
    std::size_t n_fa = 0;
    if (inactive > 0 && model.p_fa > 0.0)
        n_fa = std::binomial_distribution<std::size_t>(inactive, model.p_fa)(rng.engine());
    std::vector<UserId> alarms;
    if (n_fa > 0) {
        const ActivitySet ranks = sample_activity(inactive, n_fa, rng);
        std::size_t a = 0;
        for (UserId r : ranks) {
            // Smallest id whose complement rank equals r.
            while (a < active.size() && active[a] <= r + a) ++a;
            alarms.push_back(static_cast<UserId>(r + a));
        }
    }

    std::shuffle(hits.begin(), hits.end(), rng.engine());
    std::shuffle(alarms.begin(), alarms.end(), rng.engine());
    Detection out;
    out.ranked = hits;
    out.ranked.insert(out.ranked.end(), alarms.begin(), alarms.end());
    out.detected = ActivitySet(out.ranked, config.n_users);
    return out;
}

Detection detect_empirical(const SystemConfig& config, const ActivitySet& active, const EmpiricalDetection& model,
                           std::uint64_t seed, std::uint64_t trial) {
    RngStream pilot_rng(seed, 0, Stage::pilots);
    const CMatrix pilots = gaussian_signatures(config.det_pilot_len, config.n_users, pilot_rng);

    RngStream fading(seed, trial, Stage::small_scale);
    RngStream large(seed, trial, Stage::large_scale);
    RngStream noise(seed, trial, Stage::noise);
    RngStream order(seed, trial, Stage::detection);
    const auto g = sample_large_scale(config, active.size(), large);
    const ChannelBlock channel = sample_channel_block(config, active, g, fading);

    const double amplitude = std::sqrt(config.tx_power_linear());
    CMatrix signals(static_cast<Eigen::Index>(active.size()), pilots.rows());
    for (std::size_t i = 0; i < active.size(); ++i)
        signals.row(static_cast<Eigen::Index>(i)) = amplitude * pilots.col(active[i]).transpose();
    const ReceivedBlock rx = synthesize_received(active, signals, channel, config.noise_var(), noise);

    const CovarianceDetection det = detect_covariance(rx.samples, pilots, config.noise_var(), model.detector, order);
    Detection out;
    out.detected = threshold_activity(det.gamma, model.threshold);
    out.ranked = out.detected.ids();
    std::stable_sort(out.ranked.begin(), out.ranked.end(),
                     [&](UserId a, UserId b) { return det.gamma.values[a] > det.gamma.values[b]; });
    return out;
}

}  // namespace

ScheduledFrameOutcome simulate_scheduled_frame(const SystemConfig& config, const DetectionModel& detection,
                                               std::uint64_t seed, std::uint64_t trial,
                                               const ScheduledOptions& options) {
    config.validate();
    const std::size_t n_slots = effective_slots(config.n_blocks, config.orth_pilot_count);

    ScheduledFrameOutcome out;
    RngStream activity_rng(seed, trial, Stage::activity);
    out.active = sample_activity(config, activity_rng);

    Detection det;
    if (const auto* synthetic = std::get_if<SyntheticDetection>(&detection)) {
        RngStream rng(seed, trial, Stage::detection);
        det = detect_synthetic(config, out.active, *synthetic, rng);
    } else {
        det = detect_empirical(config, out.active, std::get<EmpiricalDetection>(detection), seed, trial);
    }
    out.detected = det.detected;

    std::vector<UserId> admitted(det.ranked.begin(),
                                 det.ranked.begin() + static_cast<std::ptrdiff_t>(std::min(n_slots, det.ranked.size())));
    out.scheduled = ActivitySet(std::move(admitted), config.n_users);
    for (UserId u : out.scheduled)
        if (!out.active.contains(u)) ++out.wasted_slots;

    RngStream feedback_rng(seed, trial, Stage::feedback);
    const FeedbackCodeword codeword = chd_encode(out.scheduled, static_cast<std::uint32_t>(n_slots), 1,
                                                 config.n_users, feedback_rng, options.codec);
    const ChdDecoder decoder(codeword);
    out.feedback_bound = std::numbers::log2e * static_cast<double>(out.scheduled.size() + 1);
    out.feedback_bits = options.acknowledged
                            ? static_cast<std::size_t>(std::ceil(bound_enumerative(out.scheduled.size(), config.n_users)))
                            : codeword.bit_length;

    // Distinct slots are distinct block-pilot pairs, so occupancy per slot
    // decides collisions.
    std::vector<std::uint32_t> occupancy(n_slots, 0);
    std::vector<std::uint32_t> chosen;
    chosen.reserve(out.active.size());
    for (UserId u : out.active) {
        ++out.transmissions;  // detection pilot
        if (options.acknowledged && !out.scheduled.contains(u)) continue;
        const std::uint32_t s = decoder.slot(u);
        ++occupancy[s];
        chosen.push_back(s);
        ++out.transmissions;
    }
    for (std::uint32_t s : chosen) {
        if (occupancy[s] == 1)
            ++out.successes;
        else
            ++out.collisions;
    }
    return out;
}

std::vector<ScheduledPoint> successes_per_slot_scheduled(const SystemConfig& config,
                                                         const std::vector<std::size_t>& k_sweep,
                                                         const DetectionModel& detection, std::size_t trials,
                                                         std::uint64_t seed, const ScheduledOptions& options) {
    if (trials == 0) throw ConfigError("invalid config: trials must be >= 1");
    std::vector<ScheduledPoint> curve;
    curve.reserve(k_sweep.size());
    for (std::size_t k : k_sweep) {
        if (k > config.n_users) throw ConfigError("invalid config: sweep value K exceeds N");
        SystemConfig c = config;
        c.n_active = k;
        ScheduledPoint point;
        point.n_active = k;
        double transmissions = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            const ScheduledFrameOutcome o = simulate_scheduled_frame(c, detection, seed, t, options);
            point.successes_per_slot += static_cast<double>(o.successes);
            point.collisions += static_cast<double>(o.collisions);
            point.wasted_slots += static_cast<double>(o.wasted_slots);
            point.feedback_bits += static_cast<double>(o.feedback_bits);
            point.feedback_bound += o.feedback_bound;
            transmissions += static_cast<double>(o.transmissions);
        }
        const double tr = static_cast<double>(trials);
        point.successes_per_slot /= tr * static_cast<double>(c.n_blocks);
        point.collisions /= tr;
        point.wasted_slots /= tr;
        point.feedback_bits /= tr;
        point.feedback_bound /= tr;
        point.transmissions_per_user = k == 0 ? 0.0 : transmissions / tr / static_cast<double>(k);
        curve.push_back(point);
    }
    return curve;
}

}  // namespace mra
