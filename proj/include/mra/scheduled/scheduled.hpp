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
#include <variant>
#include <vector>

#include "mra/core/channel.hpp"
#include "mra/core/config.hpp"
#include "mra/detect/covariance.hpp"
#include "mra/feedback/chd.hpp"

namespace mra {

// Data transmission resource.  Blocks are numbered 1..Delta and block 1
// carries the detection pilots, so data blocks run from 2 to Delta; pilots
// are numbered from 0.
struct BlockPilotPair {
    std::uint32_t block = 2;
    std::uint32_t pilot = 0;

    friend bool operator==(const BlockPilotPair&, const BlockPilotPair&) = default;
};

// Slots available for scheduling, tau (Delta - 1).  Throws ConfigError when
// Delta < 2 or tau == 0.
std::size_t effective_slots(std::size_t n_blocks, std::size_t n_pilots);

// Slot s in [B] maps to block 2 + s / tau and pilot s mod tau.
BlockPilotPair slot_to_pair(std::size_t slot, std::size_t n_pilots);

// Independent per-user decision errors: each active user is missed with
// probability p_md, each inactive user raised with probability p_fa.
struct SyntheticDetection {
    double p_md = 0.0;
    double p_fa = 0.0;
};

// Run the covariance detector on the first block with Gaussian signatures of
// length det_pilot_len.
struct EmpiricalDetection {
    CdConfig detector;
    double threshold = 0.5;
};

using DetectionModel = std::variant<SyntheticDetection, EmpiricalDetection>;

struct ScheduledOptions {
    // With acknowledgement the broadcast names the scheduled set, so
    // unscheduled users stay silent; the cost is charged as enumerative
    // coding of that set instead of the CHD codeword length.
    bool acknowledged = false;
    ChdOptions codec;
};

struct ScheduledFrameOutcome {
    ActivitySet active;
    ActivitySet detected;
    ActivitySet scheduled;
    std::size_t successes = 0;      // active users alone in their block-pilot pair
    std::size_t collisions = 0;     // active users sharing a pair with another transmitter
    std::size_t wasted_slots = 0;   // slots handed to false alarms
    std::size_t transmissions = 0;  // detection pilots plus data packets, all active users
    std::size_t feedback_bits = 0;  // actual codeword length
    double feedback_bound = 0.0;    // log2(e)(|scheduled| + 1)
};

// One frame of the three-phase protocol: detection, CHD feedback to
// min(|detected|, B) users, then data in the decoded block-pilot pairs.
// When detection reports more than B users the most confident ones are
// admitted; synthetic detection ranks true detections above false alarms.
ScheduledFrameOutcome simulate_scheduled_frame(const SystemConfig& config, const DetectionModel& detection,
                                               std::uint64_t seed, std::uint64_t trial,
                                               const ScheduledOptions& options = {});

struct ScheduledPoint {
    std::size_t n_active = 0;
    double successes_per_slot = 0.0;
    double collisions = 0.0;
    double wasted_slots = 0.0;
    double feedback_bits = 0.0;
    double feedback_bound = 0.0;
    double transmissions_per_user = 0.0;
};

// Mean successes / Delta over `trials` frames for every K in the sweep.
std::vector<ScheduledPoint> successes_per_slot_scheduled(const SystemConfig& config,
                                                         const std::vector<std::size_t>& k_sweep,
                                                         const DetectionModel& detection, std::size_t trials,
                                                         std::uint64_t seed, const ScheduledOptions& options = {});

}  // namespace mra
