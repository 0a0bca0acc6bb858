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
#include <optional>

namespace mra {

// Scenario parameters shared by every simulator.  Counts follow the usual
// massive-access notation: N potential users, K active, M antennas, a frame of
// n_blocks coherence blocks of block_len symbols each.
struct SystemConfig {
    std::size_t n_users = 10000;         // N
    std::size_t n_active = 1000;         // K
    std::size_t n_antennas = 400;        // M
    std::size_t n_blocks = 15;           // Delta
    std::size_t block_len = 300;         // D
    std::size_t frame_len = 4500;        // T = D * Delta
    std::size_t det_pilot_len = 300;     // L (or L1 in the slow-fading scheme)
    std::size_t orth_pilot_count = 64;   // tau
    std::size_t orth_pilot_len = 64;     // symbols per orthogonal pilot

    double tx_power_dbm = 13.0;
    double noise_psd_dbm_hz = -169.0;
    double bandwidth_hz = 1.0e6;
    double pathloss_intercept_db = -128.1;
    double pathloss_slope_db = 36.7;     // dB per decade of distance in km
    double dist_min_km = 0.8;
    double dist_max_km = 1.0;
    bool power_control = true;

    // When set, bypasses the dBm pathway: unit per-symbol transmit power and
    // noise variance 10^(-snr_db/10).
    std::optional<double> snr_db = 10.0;

    std::uint64_t seed = 1;

    // Throws ConfigError on the first violated invariant.
    void validate() const;

    // Per-symbol transmit power in linear units (mW, or 1 in SNR mode).
    [[nodiscard]] double tx_power_linear() const;
    // Noise variance per complex sample, same units as tx_power_linear().
    [[nodiscard]] double noise_var() const;
};

// Fast-fading scenario: N=10000, M=400, Delta=15, D=300, L=300, tau=64,
// unit gains under inverse power control and 10 dB SNR.
SystemConfig fast_fading_defaults();

// Slow-fading scenario: single 2000-symbol block, N=2000, K=150, M=64,
// L1=200, 13 dBm transmit power, -169 dBm/Hz noise and distance-based path loss.
SystemConfig slow_fading_defaults();

double db_to_linear(double db);

}  // namespace mra
