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

#include "mra/core/config.hpp"

#include <cmath>
#include <string>

#include "mra/core/errors.hpp"

namespace mra {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid config: " + what);
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void SystemConfig::validate() const {
    require(n_users > 0, "n_users must be positive");
    require(n_antennas > 0, "n_antennas must be positive");
    require(n_blocks > 0, "n_blocks must be positive");
    require(block_len > 0, "block_len must be positive");
    require(det_pilot_len > 0, "det_pilot_len must be positive");
    require(orth_pilot_count > 0, "orth_pilot_count must be positive");
    require(orth_pilot_len > 0, "orth_pilot_len must be positive");
    require(n_active <= n_users, "n_active (K) exceeds n_users (N)");
    require(frame_len == block_len * n_blocks, "frame_len must equal block_len * n_blocks");
    require(det_pilot_len <= block_len, "det_pilot_len (L) exceeds block_len (D)");
    require(orth_pilot_count <= block_len, "orth_pilot_count (tau) exceeds block_len (D)");
    require(dist_min_km > 0.0 && std::isfinite(dist_max_km), "dist_range must lie in (0, inf)");
    require(dist_min_km <= dist_max_km, "dist_min_km exceeds dist_max_km");
    require(bandwidth_hz > 0.0, "bandwidth_hz must be positive");
    if (snr_db) require(std::isfinite(*snr_db), "snr_db must be finite");
}

double SystemConfig::tx_power_linear() const {
    if (snr_db) return 1.0;
    return db_to_linear(tx_power_dbm);
}

double SystemConfig::noise_var() const {
    if (snr_db) return db_to_linear(-*snr_db);
    return db_to_linear(noise_psd_dbm_hz) * bandwidth_hz;
}

SystemConfig fast_fading_defaults() {
    SystemConfig c;
    c.n_users = 10000;
    c.n_active = 1000;
    c.n_antennas = 400;
    c.n_blocks = 15;
    c.block_len = 300;
    c.frame_len = 4500;
    c.det_pilot_len = 300;
    c.orth_pilot_count = 64;
    c.orth_pilot_len = 64;
    c.power_control = true;
    c.snr_db = 10.0;
    return c;
}

SystemConfig slow_fading_defaults() {
    SystemConfig c;
    c.n_users = 2000;
    c.n_active = 150;
    c.n_antennas = 64;
    c.n_blocks = 1;
    c.block_len = 2000;
    c.frame_len = 2000;
    c.det_pilot_len = 200;
    c.orth_pilot_count = 400;
    c.orth_pilot_len = 400;
    c.tx_power_dbm = 13.0;
    c.noise_psd_dbm_hz = -169.0;
    c.bandwidth_hz = 1.0e6;
    c.power_control = false;
    c.snr_db.reset();
    return c;
}

}  // namespace mra
