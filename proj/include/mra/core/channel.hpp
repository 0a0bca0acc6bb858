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
#include <span>
#include <vector>

#include "mra/core/config.hpp"
#include "mra/core/rng.hpp"
#include "mra/core/types.hpp"

namespace mra {

using UserId = std::uint32_t;

// Sorted, duplicate-free subset of [0, universe).
class ActivitySet {
public:
    ActivitySet() = default;
    // Sorts and validates; throws DomainError on duplicates or ids >= universe.
    ActivitySet(std::vector<UserId> ids, std::size_t universe);

    [[nodiscard]] std::size_t size() const noexcept { return ids_.size(); }
    [[nodiscard]] bool empty() const noexcept { return ids_.empty(); }
    [[nodiscard]] std::size_t universe() const noexcept { return universe_; }
    [[nodiscard]] bool contains(UserId id) const;
    // Position of id within the sorted list; size() when absent.
    [[nodiscard]] std::size_t position(UserId id) const;
    [[nodiscard]] const std::vector<UserId>& ids() const noexcept { return ids_; }
    UserId operator[](std::size_t i) const { return ids_[i]; }
    auto begin() const noexcept { return ids_.begin(); }
    auto end() const noexcept { return ids_.end(); }

    friend bool operator==(const ActivitySet&, const ActivitySet&) = default;

private:
    std::vector<UserId> ids_;
    std::size_t universe_ = 0;
};

// Small-scale fading h (M x K, i.i.d. CN(0,1)) plus large-scale amplitudes g
// for the users listed in `users`; column j belongs to users[j].
struct ChannelBlock {
    ActivitySet users;
    CMatrix small_scale;
    std::vector<double> large_scale;

    [[nodiscard]] std::size_t antennas() const { return static_cast<std::size_t>(small_scale.rows()); }
    // g_j h_j for column j.
    [[nodiscard]] CMatrix effective() const;
};

struct SampleSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    [[nodiscard]] std::size_t length() const noexcept { return end - begin; }
};

struct ReceivedBlock {
    CMatrix samples;  // M x D
    SampleSpan pilot_span;
    SampleSpan data_span;
};

// Uniformly random K-subset of [N].
ActivitySet sample_activity(std::size_t n_users, std::size_t n_active, RngStream& rng);
ActivitySet sample_activity(const SystemConfig& config, RngStream& rng);

// Linear path-loss power gain 10^((intercept - slope*log10 d)/10); exactly 1
// under inverse power control.
double pathloss_gain(double distance_km, const SystemConfig& config);

// Large-scale amplitudes g = sqrt(pathloss_gain(d)) with d ~ U[dist_min, dist_max].
std::vector<double> sample_large_scale(const SystemConfig& config, std::size_t count, RngStream& rng);

// Fresh small-scale fading for the given users, with large-scale amplitudes
// drawn once here.  Use the overload below to hold them fixed across blocks.
ChannelBlock sample_channel_block(const SystemConfig& config, const ActivitySet& users, RngStream& rng);
ChannelBlock sample_channel_block(const SystemConfig& config, const ActivitySet& users,
                                  std::span<const double> large_scale, RngStream& rng);

// Y = sum_j g_j h_j x_j + Z for the transmitting subset of channel users.
// Row i of `signals` is the symbol sequence of transmitters[i].  The first
// pilot_len columns form the pilot span, the rest the data span.
ReceivedBlock synthesize_received(const ActivitySet& transmitters, const CMatrix& signals,
                                  const ChannelBlock& channel, double noise_var, RngStream& rng,
                                  std::size_t pilot_len = 0);

}  // namespace mra
