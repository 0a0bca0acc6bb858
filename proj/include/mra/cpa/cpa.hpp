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
#include <vector>

#include "mra/core/channel.hpp"
#include "mra/core/rng.hpp"

namespace mra {

struct CpaCell {
    std::uint32_t block = 0;
    std::uint32_t pilot = 0;

    friend bool operator==(const CpaCell&, const CpaCell&) = default;
};

// Bipartite user <-> (block, pilot) structure of one Coded Pilot Access frame.
// Users are numbered 0..K-1 within the frame; each appears at most once per
// block, and appearances are stored in increasing block order.
class CpaFrame {
public:
    CpaFrame(std::size_t n_users, std::size_t n_blocks, std::size_t n_pilots);

    // Adds an appearance; throws DomainError on out-of-range indices or a
    // second appearance of the user in the same block.
    void add(UserId user, CpaCell cell);

    [[nodiscard]] std::size_t users() const noexcept { return appearances_.size(); }
    [[nodiscard]] std::size_t blocks() const noexcept { return n_blocks_; }
    [[nodiscard]] std::size_t pilots() const noexcept { return n_pilots_; }
    [[nodiscard]] std::size_t cells() const noexcept { return n_blocks_ * n_pilots_; }
    [[nodiscard]] std::size_t cell_index(CpaCell cell) const noexcept { return cell.block * n_pilots_ + cell.pilot; }
    [[nodiscard]] const std::vector<CpaCell>& appearances(UserId user) const { return appearances_[user]; }
    [[nodiscard]] std::size_t transmissions() const noexcept { return transmissions_; }

private:
    std::size_t n_blocks_;
    std::size_t n_pilots_;
    std::size_t transmissions_ = 0;
    std::vector<std::vector<CpaCell>> appearances_;
};

// Each user joins each block independently with probability p and picks a
// uniform pilot there.  Throws DomainError unless 0 <= p <= 1.
CpaFrame build_cpa_frame(std::size_t n_users, std::size_t n_blocks, std::size_t n_pilots, double p, RngStream& rng);

struct PeelResult {
    ActivitySet decoded;             // frame-local ids, universe = frame users
    std::size_t rounds = 0;          // rounds that decoded at least one user
    std::size_t residual_collisions = 0;  // cells still holding >= 2 undecoded users
};

// Perfect-SIC peeling: every round decodes the sole undecoded occupant of
// each singleton cell and cancels all of that user's appearances.
PeelResult peel(const CpaFrame& frame);

// Same fixpoint reached one singleton at a time in random order.  Used to
// check that the decoded set does not depend on processing order.
PeelResult peel_random_order(const CpaFrame& frame, RngStream& rng);

struct CpaPoint {
    double successes_per_slot = 0.0;   // mean |decoded| / Delta
    double transmissions_per_user = 0.0;
    double residual_collisions = 0.0;
};

// Monte-Carlo mean over `trials` frames with p = beta / Delta.  Frame t draws
// from stream (seed, t, cpa).
CpaPoint successes_per_slot_cpa(std::size_t n_users, std::size_t n_blocks, std::size_t n_pilots, double beta,
                                std::size_t trials, std::uint64_t seed);

struct BetaChoice {
    double beta = 0.0;
    double value = 0.0;
};

// Default repetition grid {1.0, 1.5, ..., 6.0}.
std::vector<double> default_beta_grid();

// Grid search for the repetition rate maximising successes per slot.  Ties go
// to the smaller beta.  Every grid point reuses the same frame streams.
BetaChoice optimize_beta(std::size_t n_users, std::size_t n_blocks, std::size_t n_pilots,
                         const std::vector<double>& grid, std::size_t trials, std::uint64_t seed);

}  // namespace mra
