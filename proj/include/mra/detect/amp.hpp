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
#include <functional>
#include <vector>

#include "mra/core/channel.hpp"
#include "mra/core/types.hpp"

namespace mra {

// Bernoulli-Gaussian row prior (1 - activity) delta_0 + activity CN(0, gain I_M).
struct RowPrior {
    double activity = 0.0;
    double gain = 1.0;
};

struct AmpConfig {
    std::size_t iterations = 25;
    double prior_activity = 0.0;     // epsilon = K / N
    std::vector<double> prior_gain;  // per-user entry variance of active rows (size 1 broadcasts)
    double damping = 1.0;            // 1 = undamped
    void validate(std::size_t n_users) const;
    [[nodiscard]] double gain(std::size_t user) const { return prior_gain.size() == 1 ? prior_gain[0] : prior_gain[user]; }
};

struct DenoisedRow {
    CVector value;
    double posterior = 0.0;   // P(active | row)
    double divergence = 0.0;  // tr(d eta / d r) / M, used by the Onsager term
};

// Posterior mean of x given r = x + sqrt(state_var) w, w ~ CN(0, I).
DenoisedRow row_mmse_denoiser(const Eigen::Ref<const CVector>& row, double state_var, const RowPrior& prior);

struct AmpResult {
    CMatrix estimate;                // N x M
    ActivitySet activity;            // posterior > 1/2
    std::vector<double> posterior;   // per user
    std::vector<double> state_var;   // tau_t^2 = ||R_t||_F^2 / (L M), t = 0..iterations
    bool diverged = false;
};

// Called after each iteration with (t, X^{t+1}, tau_t^2 used by the denoiser).
using AmpObserver = std::function<void(std::size_t, const CMatrix&, double)>;

// MMV-AMP for Y^T = S X + Z.  received is M x L, pilots is L x N with unit-norm
// columns and power folded into the prior gains.
AmpResult amp_detect(const CMatrix& received, const CMatrix& pilots, const AmpConfig& config,
                     const AmpObserver& observer = {});

struct StateEvolution {
    std::vector<double> state_var;  // tau_0^2 .. tau_T^2
    std::vector<double> mse;        // predicted per-entry MSE of X^{t+1}, averaged over the N rows
    [[nodiscard]] double fixed_point() const { return state_var.back(); }
};

// tau_0^2 = sigma^2 + (N/L) E||x_row||^2 / M, then
// tau_{t+1}^2 = sigma^2 + (1/L) sum_n mse_n(tau_t^2).
StateEvolution state_evolution(const AmpConfig& config, double noise_var, std::size_t pilot_len, std::size_t n_users,
                               std::size_t n_antennas);

// Per-entry MMSE of one row under the prior at the given state variance.
double row_mmse(double state_var, const RowPrior& prior, std::size_t n_antennas);

}  // namespace mra
