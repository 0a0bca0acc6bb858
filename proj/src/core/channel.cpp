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

#include "mra/core/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "mra/core/errors.hpp"

namespace mra {

ActivitySet::ActivitySet(std::vector<UserId> ids, std::size_t universe)
    : ids_(std::move(ids)), universe_(universe) {
    std::sort(ids_.begin(), ids_.end());
    if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end())
        throw DomainError("activity set contains duplicate ids");
    if (!ids_.empty() && ids_.back() >= universe_)
        throw DomainError("activity id " + std::to_string(ids_.back()) + " outside universe of size " +
                          std::to_string(universe_));
}

bool ActivitySet::contains(UserId id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }

std::size_t ActivitySet::position(UserId id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return ids_.size();
    return static_cast<std::size_t>(it - ids_.begin());
}

CMatrix ChannelBlock::effective() const {
    CMatrix out = small_scale;
    for (Eigen::Index j = 0; j < out.cols(); ++j) out.col(j) *= large_scale[static_cast<std::size_t>(j)];
    return out;
}

ActivitySet sample_activity(std::size_t n_users, std::size_t n_active, RngStream& rng) {
    if (n_active > n_users)
        throw ConfigError("invalid config: n_active (" + std::to_string(n_active) + ") exceeds n_users (" +
                          std::to_string(n_users) + ")");
    std::vector<UserId> ids;
    ids.reserve(n_active);
    if (2 * n_active > n_users) {
        // Dense case: partial Fisher-Yates over the full index range.
        std::vector<UserId> all(n_users);
        for (std::size_t i = 0; i < n_users; ++i) all[i] = static_cast<UserId>(i);
        for (std::size_t i = 0; i < n_active; ++i) {
            const std::size_t j = i + rng.below(n_users - i);
            std::swap(all[i], all[j]);
        }
        ids.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n_active));
    } else {
        // Floyd's algorithm, O(K) memory.
        std::unordered_set<UserId> chosen;
        chosen.reserve(2 * n_active);
        for (std::size_t j = n_users - n_active; j < n_users; ++j) {
            const auto t = static_cast<UserId>(rng.below(j + 1));
            if (!chosen.insert(t).second) chosen.insert(static_cast<UserId>(j));
        }
        ids.assign(chosen.begin(), chosen.end());
    }
    return ActivitySet(std::move(ids), n_users);
}

ActivitySet sample_activity(const SystemConfig& config, RngStream& rng) {
    return sample_activity(config.n_users, config.n_active, rng);
}

double pathloss_gain(double distance_km, const SystemConfig& config) {
    if (!(distance_km > 0.0)) throw DomainError("pathloss_gain: distance must be positive");
    if (config.power_control) return 1.0;
    const double db = config.pathloss_intercept_db - config.pathloss_slope_db * std::log10(distance_km);
    return db_to_linear(db);
}

std::vector<double> sample_large_scale(const SystemConfig& config, std::size_t count, RngStream& rng) {
    std::vector<double> g(count);
    for (auto& x : g) {
        const double d = config.dist_min_km == config.dist_max_km
                             ? config.dist_min_km
                             : rng.uniform(config.dist_min_km, config.dist_max_km);
        x = std::sqrt(pathloss_gain(d, config));
    }
    return g;
}

ChannelBlock sample_channel_block(const SystemConfig& config, const ActivitySet& users, RngStream& rng) {
    auto g = sample_large_scale(config, users.size(), rng);
    return sample_channel_block(config, users, g, rng);
}

ChannelBlock sample_channel_block(const SystemConfig& config, const ActivitySet& users,
                                  std::span<const double> large_scale, RngStream& rng) {
    if (large_scale.size() != users.size()) throw ShapeError("sample_channel_block: large_scale size != user count");
    ChannelBlock block;
    block.users = users;
    block.small_scale = rng.cgauss_matrix(static_cast<Eigen::Index>(config.n_antennas),
                                          static_cast<Eigen::Index>(users.size()));
    block.large_scale.assign(large_scale.begin(), large_scale.end());
    return block;
}

ReceivedBlock synthesize_received(const ActivitySet& transmitters, const CMatrix& signals,
                                  const ChannelBlock& channel, double noise_var, RngStream& rng,
                                  std::size_t pilot_len) {
    if (static_cast<std::size_t>(signals.rows()) != transmitters.size())
        throw ShapeError("synthesize_received: one signal row per transmitter required");
    const Eigen::Index m = channel.small_scale.rows();
    const Eigen::Index d = signals.cols();
    if (pilot_len > static_cast<std::size_t>(d)) throw ShapeError("synthesize_received: pilot_len exceeds block");

    CMatrix gains(m, static_cast<Eigen::Index>(transmitters.size()));
    for (std::size_t i = 0; i < transmitters.size(); ++i) {
        const std::size_t col = channel.users.position(transmitters[i]);
        if (col == channel.users.size())
            throw ShapeError("synthesize_received: transmitter " + std::to_string(transmitters[i]) +
                             " has no channel");
        gains.col(static_cast<Eigen::Index>(i)) =
            channel.large_scale[col] * channel.small_scale.col(static_cast<Eigen::Index>(col));
    }

    ReceivedBlock out;
    out.samples = CMatrix::Zero(m, d);
    if (transmitters.size() > 0) out.samples.noalias() = gains * signals;
    if (noise_var > 0.0) out.samples += rng.cgauss_matrix(m, d, noise_var);
    out.pilot_span = {0, pilot_len};
    out.data_span = {pilot_len, static_cast<std::size_t>(d)};
    return out;
}

}  // namespace mra
