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

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mra/core/config.hpp"

namespace mra {

enum class PilotScheme {
    // Joint detection and estimation from L non-orthogonal pilot symbols;
    // channel estimates follow the AMP state-evolution fixed point.
    nonorthogonal,
    // L1 = det_pilot_len non-orthogonal symbols for covariance detection,
    // then L - L1 orthogonal pilot symbols assigned by feedback.  Estimation
    // uses LMMSE over both segments.
    orthogonal,
};

const char* to_string(PilotScheme scheme);

struct RateReport {
    PilotScheme scheme = PilotScheme::orthogonal;
    std::vector<double> per_user_sinr;  // mean over channel draws
    std::vector<double> per_user_rate;  // bits/symbol, mean over draws
    double sum_rate = 0.0;              // bits/s
    std::size_t slots = 1;              // B
    std::size_t det_pilot_len = 0;      // L1 (or L for the non-orthogonal scheme)
    std::size_t orth_pilot_len = 0;     // L2
    std::size_t feedback_bits = 0;
};

// Sum-rate evaluation for one pilot scheme and total pilot length across a
// grid of slot counts.  Active user k (in id order) transmits in slot
// k mod B.  Every call with the same seed reuses the same channel draws, so
// schemes and pilot lengths are compared on common random numbers.
std::vector<RateReport> slot_curve(const SystemConfig& config, PilotScheme scheme, std::size_t pilot_len,
                                   const std::vector<std::size_t>& slot_grid, std::size_t draws, std::uint64_t seed);

struct SlotOptimum {
    std::vector<std::size_t> slot_grid;
    std::vector<double> sum_rate;  // bits/s per grid entry
    std::size_t best_slots = 1;
    RateReport best;
};

SlotOptimum optimize_slots(const SystemConfig& config, PilotScheme scheme, std::size_t pilot_len,
                           const std::vector<std::size_t>& slot_grid, std::size_t draws, std::uint64_t seed);

struct Table2Options {
    std::vector<std::size_t> pilot_grid{400, 500, 600, 700, 800, 900, 1000};
    std::vector<std::size_t> slot_grid{1, 2, 3, 4, 5, 6, 7, 8};
    std::size_t draws = 200;
    // Reference feedback cost for the scheduled non-orthogonal scheme,
    // quoted from general-B scheduling bounds rather than computed.
    std::size_t nonorthogonal_feedback_bits = 18;
};

// Rows: (a) non-orthogonal pilots without scheduling, (b) non-orthogonal
// pilots at B*, (c) covariance detection plus orthogonal pilots at B*.
// Each scheme takes its best pilot length from the grid.
std::array<RateReport, 3> table2_experiment(const SystemConfig& config, const Table2Options& options,
                                            std::uint64_t seed);

// ceil(K log2 e): feedback that assigns K distinct orthogonal pilots.
std::size_t orthogonal_assignment_bits(std::size_t n_active);

}  // namespace mra
