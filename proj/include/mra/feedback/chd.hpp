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

#include "mra/core/channel.hpp"
#include "mra/core/rng.hpp"

namespace mra {

// Fixed-width big-endian header that opens every codeword.
//
//   field      bits   meaning
//   version      8    format version, currently 1
//   n_users     32    universe size N
//   n_slots     32    B
//   max_load    16    users allowed per slot
//   n_bins      32    first-level bins
//   seed        32    first-level hash seed
//   rice_k       8    Golomb-Rice parameter of the displacement stream
//
// followed by n_bins Rice-coded displacement indices in bin order, zero
// padded to a byte boundary.
struct ChdHeader {
    static constexpr std::uint8_t kVersion = 1;
    static constexpr unsigned kBits = 8 + 32 + 32 + 16 + 32 + 32 + 8;

    std::uint8_t version = kVersion;
    std::uint32_t n_users = 0;
    std::uint32_t n_slots = 0;
    std::uint16_t max_load = 1;
    std::uint32_t n_bins = 1;
    std::uint32_t seed = 0;
    std::uint8_t rice_k = 0;
};

struct FeedbackCodeword {
    std::vector<std::uint8_t> bytes;  // serialized, byte padded
    std::size_t bit_length = 0;       // header + displacement stream, before padding
    ChdHeader header;
    std::size_t retries = 0;          // first-level seeds discarded by the encoder

    [[nodiscard]] std::uint32_t slot_count() const noexcept { return header.n_slots; }
    [[nodiscard]] std::uint32_t n_bins() const noexcept { return header.n_bins; }
    [[nodiscard]] std::uint16_t max_load() const noexcept { return header.max_load; }
};

struct ChdOptions {
    double bin_load = 4.0;  // average scheduled users per first-level bin
    // Displacements tried per bin before the first-level seed is redrawn.
    std::uint64_t search_budget = std::uint64_t{1} << 26;
};

// Two-level perfect-hash construction: scheduled users are hashed into bins,
// bins are placed largest first, each taking the first displacement index
// that sends all its members to slots with spare capacity.
FeedbackCodeword chd_encode(const ActivitySet& scheduled, std::uint32_t n_slots, std::uint16_t max_load,
                            std::size_t n_users, RngStream& rng, const ChdOptions& options = {});

// Parses a codeword once; slot() is then O(1) and defined for every id < N.
class ChdDecoder {
public:
    explicit ChdDecoder(std::span<const std::uint8_t> bytes);
    explicit ChdDecoder(const FeedbackCodeword& codeword) : ChdDecoder(codeword.bytes) {}

    [[nodiscard]] std::uint32_t slot(UserId user) const;
    [[nodiscard]] const ChdHeader& header() const noexcept { return header_; }
    [[nodiscard]] const std::vector<std::uint64_t>& displacements() const noexcept { return displacement_; }

private:
    ChdHeader header_;
    std::vector<std::uint64_t> displacement_;
};

std::uint32_t chd_decode(UserId user, const FeedbackCodeword& codeword);

// Hash family shared by encoder and decoder.
std::uint32_t chd_bin(std::uint32_t seed, UserId user, std::uint32_t n_bins);
std::uint32_t chd_slot(std::uint32_t seed, UserId user, std::uint64_t displacement, std::uint32_t n_slots);

struct RateStats {
    double mean_bits = 0.0;
    double bits_per_user = 0.0;
    double mean_retries = 0.0;
    std::vector<double> bits;  // per trial
};

// Average CHD codeword length over random K-subsets of [N].
RateStats measure_rate(std::size_t n_users, std::size_t n_active, std::uint32_t n_slots, std::uint16_t max_load,
                       std::size_t trials, std::uint64_t seed, const ChdOptions& options = {});

}  // namespace mra
