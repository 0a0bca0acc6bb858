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

#include "mra/feedback/chd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mra/core/errors.hpp"
#include "mra/feedback/bitstream.hpp"

namespace mra {

namespace {

constexpr std::uint64_t kBinSalt = 0x243f6a8885a308d3ULL;
constexpr std::uint64_t kSlotSalt = 0x13198a2e03707344ULL;
constexpr std::uint64_t kStep = 0x9e3779b97f4a7c15ULL;

std::uint32_t reduce(std::uint64_t h, std::uint32_t n) {
    return static_cast<std::uint32_t>((static_cast<unsigned __int128>(h) * n) >> 64);
}

std::uint64_t slot_key(std::uint32_t seed, UserId user) {
    return splitmix64(splitmix64(seed ^ kSlotSalt) ^ user);
}

std::uint32_t slot_from_key(std::uint64_t key, std::uint64_t displacement, std::uint32_t n_slots) {
    return reduce(splitmix64(key + displacement * kStep), n_slots);
}

void write_header(BitWriter& w, const ChdHeader& h) {
    w.put(h.version, 8);
    w.put(h.n_users, 32);
    w.put(h.n_slots, 32);
    w.put(h.max_load, 16);
    w.put(h.n_bins, 32);
    w.put(h.seed, 32);
    w.put(h.rice_k, 8);
}

unsigned fit_rice_parameter(const std::vector<std::uint64_t>& values) {
    unsigned best_k = 0;
    std::uint64_t best = UINT64_MAX;
    for (unsigned k = 0; k < 48; ++k) {
        std::uint64_t total = 0;
        for (auto v : values) total += rice_length(v, k);
        if (total < best) {
            best = total;
            best_k = k;
        }
    }
    return best_k;
}

// Places every bin, or returns false when some bin exhausts the budget.
bool place_bins(const std::vector<std::vector<UserId>>& bins, std::uint32_t seed, std::uint32_t n_slots,
                std::uint16_t max_load, std::uint64_t budget, std::vector<std::uint64_t>& displacement) {
    std::vector<std::size_t> order(bins.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return bins[a].size() > bins[b].size(); });

    std::vector<std::uint16_t> load(n_slots, 0);
    std::vector<std::uint64_t> keys;
    std::vector<std::uint32_t> slots;
    displacement.assign(bins.size(), 0);

    for (std::size_t b : order) {
        const auto& members = bins[b];
        if (members.empty()) break;  // sorted by size: the rest are empty too
        keys.resize(members.size());
        slots.resize(members.size());
        for (std::size_t i = 0; i < members.size(); ++i) keys[i] = slot_key(seed, members[i]);

        bool placed = false;
        for (std::uint64_t d = 0; d < budget; ++d) {
            std::size_t i = 0;
            for (; i < members.size(); ++i) {
                const std::uint32_t s = slot_from_key(keys[i], d, n_slots);
                if (load[s] >= max_load) break;
                ++load[s];
                slots[i] = s;
            }
            if (i == members.size()) {
                displacement[b] = d;
                placed = true;
                break;
            }
            while (i-- > 0) --load[slots[i]];
        }
        if (!placed) return false;
    }
    return true;
}

}  // namespace

std::uint32_t chd_bin(std::uint32_t seed, UserId user, std::uint32_t n_bins) {
    return reduce(splitmix64(splitmix64(seed ^ kBinSalt) ^ user), n_bins);
}

std::uint32_t chd_slot(std::uint32_t seed, UserId user, std::uint64_t displacement, std::uint32_t n_slots) {
    return slot_from_key(slot_key(seed, user), displacement, n_slots);
}

FeedbackCodeword chd_encode(const ActivitySet& scheduled, std::uint32_t n_slots, std::uint16_t max_load,
                            std::size_t n_users, RngStream& rng, const ChdOptions& options) {
    if (n_slots == 0 || max_load == 0) throw InfeasibleError("chd_encode: need at least one slot of positive capacity");
    if (scheduled.size() > static_cast<std::size_t>(n_slots) * max_load)
        throw InfeasibleError("chd_encode: " + std::to_string(scheduled.size()) + " users exceed capacity " +
                              std::to_string(static_cast<std::size_t>(n_slots) * max_load));
    if (n_users > UINT32_MAX) throw InfeasibleError("chd_encode: universe too large for the header");
    if (!(options.bin_load > 0.0)) throw ConfigError("invalid config: bin_load must be positive");
    if (!scheduled.empty() && scheduled.ids().back() >= n_users)
        throw DomainError("chd_encode: scheduled id outside universe");

    ChdHeader h;
    h.n_users = static_cast<std::uint32_t>(n_users);
    h.n_slots = n_slots;
    h.max_load = max_load;
    h.n_bins = static_cast<std::uint32_t>(
        std::max<double>(1.0, std::ceil(static_cast<double>(scheduled.size()) / options.bin_load)));

    FeedbackCodeword cw;
    std::vector<std::uint64_t> displacement;
    std::vector<std::vector<UserId>> bins(h.n_bins);
    for (;;) {
        h.seed = static_cast<std::uint32_t>(rng.next_u64());
        for (auto& b : bins) b.clear();
        for (UserId u : scheduled) bins[chd_bin(h.seed, u, h.n_bins)].push_back(u);
        if (place_bins(bins, h.seed, n_slots, max_load, options.search_budget, displacement)) break;
        ++cw.retries;
    }

    h.rice_k = static_cast<std::uint8_t>(fit_rice_parameter(displacement));
    BitWriter w;
    write_header(w, h);
    for (auto d : displacement) w.put_rice(d, h.rice_k);
    cw.bit_length = w.bit_length();
    cw.bytes = w.finish();
    cw.header = h;
    return cw;
}

ChdDecoder::ChdDecoder(std::span<const std::uint8_t> bytes) {
    BitReader r(bytes);
    header_.version = static_cast<std::uint8_t>(r.get(8));
    if (header_.version != ChdHeader::kVersion)
        throw DecodeError("feedback codeword: unsupported version " + std::to_string(header_.version));
    header_.n_users = static_cast<std::uint32_t>(r.get(32));
    header_.n_slots = static_cast<std::uint32_t>(r.get(32));
    header_.max_load = static_cast<std::uint16_t>(r.get(16));
    header_.n_bins = static_cast<std::uint32_t>(r.get(32));
    header_.seed = static_cast<std::uint32_t>(r.get(32));
    header_.rice_k = static_cast<std::uint8_t>(r.get(8));
    if (header_.n_slots == 0 || header_.n_bins == 0 || header_.max_load == 0 || header_.rice_k >= 48)
        throw DecodeError("feedback codeword: malformed header");
    // Every bin needs at least one bit, so n_bins is bounded by the payload.
    if (header_.n_bins > r.size_bits() - r.position())
        throw DecodeError("feedback codeword: bin count exceeds payload");

    displacement_.resize(header_.n_bins);
    const std::uint64_t max_quotient = r.size_bits();
    for (auto& d : displacement_) d = r.get_rice(header_.rice_k, max_quotient);
    const std::size_t rest = r.size_bits() - r.position();
    if (rest >= 8) throw DecodeError("feedback codeword: trailing bytes");
    if (rest > 0 && r.get(static_cast<unsigned>(rest)) != 0) throw DecodeError("feedback codeword: nonzero padding");
}

std::uint32_t ChdDecoder::slot(UserId user) const {
    if (user >= header_.n_users) throw DomainError("chd_decode: user id outside universe");
    const std::uint32_t bin = chd_bin(header_.seed, user, header_.n_bins);
    return chd_slot(header_.seed, user, displacement_[bin], header_.n_slots);
}

std::uint32_t chd_decode(UserId user, const FeedbackCodeword& codeword) { return ChdDecoder(codeword).slot(user); }

RateStats measure_rate(std::size_t n_users, std::size_t n_active, std::uint32_t n_slots, std::uint16_t max_load,
                       std::size_t trials, std::uint64_t seed, const ChdOptions& options) {
    if (trials < 1) throw ConfigError("invalid config: trials must be >= 1");
    RateStats stats;
    stats.bits.reserve(trials);
    double retries = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        RngStream act(seed, t, Stage::activity);
        RngStream fb(seed, t, Stage::feedback);
        const auto users = sample_activity(n_users, n_active, act);
        const auto cw = chd_encode(users, n_slots, max_load, n_users, fb, options);
        stats.bits.push_back(static_cast<double>(cw.bit_length));
        retries += static_cast<double>(cw.retries);
    }
    stats.mean_bits = std::accumulate(stats.bits.begin(), stats.bits.end(), 0.0) / static_cast<double>(trials);
    stats.bits_per_user = n_active == 0 ? 0.0 : stats.mean_bits / static_cast<double>(n_active);
    stats.mean_retries = retries / static_cast<double>(trials);
    return stats;
}

}  // namespace mra
