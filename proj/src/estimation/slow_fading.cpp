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

#include "mra/estimation/slow_fading.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mra/core/channel.hpp"
#include "mra/core/errors.hpp"
#include "mra/core/pilots.hpp"
#include "mra/detect/amp.hpp"
#include "mra/estimation/estimation.hpp"
#include "mra/estimation/rate.hpp"

namespace mra {

namespace {

// Distinct path-loss levels used to represent the user population in the
// state evolution; each stands for an equal share of the N users.
constexpr std::size_t kGainLevels = 64;
constexpr std::size_t kSeIterations = 40;

// State-evolution fixed point tau^2 for pilots of length L, in units where
// the noise variance is one.  Potential users sit on a deterministic
// distance grid covering [dist_min, dist_max].
double amp_fixed_point(const SystemConfig& config, std::size_t pilot_len, double snr_scale) {
    const std::size_t n = config.n_users;
    const std::size_t levels = std::min(n, kGainLevels);
    AmpConfig amp;
    amp.iterations = kSeIterations;
    amp.prior_activity = static_cast<double>(config.n_active) / static_cast<double>(n);
    amp.prior_gain.resize(n);
    const double l = static_cast<double>(pilot_len);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t level = i * levels / n;
        const double u = (static_cast<double>(level) + 0.5) / static_cast<double>(levels);
        const double d = config.dist_min_km + u * (config.dist_max_km - config.dist_min_km);
        amp.prior_gain[i] = l * snr_scale * pathloss_gain(d, config);
    }
    return state_evolution(amp, 1.0, pilot_len, n, config.n_antennas).fixed_point();
}

void check_setup(const SystemConfig& config, PilotScheme scheme, std::size_t pilot_len) {
    config.validate();
    if (pilot_len >= config.frame_len) throw ConfigError("invalid config: pilot length must be shorter than T");
    if (pilot_len == 0) throw ConfigError("invalid config: pilot length must be positive");
    if (scheme == PilotScheme::orthogonal) {
        if (pilot_len <= config.det_pilot_len)
            throw ConfigError("invalid config: total pilot length must exceed det_pilot_len");
        if (pilot_len - config.det_pilot_len < config.n_active)
            throw ConfigError("invalid config: orthogonal segment " + std::to_string(pilot_len - config.det_pilot_len) +
                              " shorter than K = " + std::to_string(config.n_active));
    }
}

CMatrix select_columns(const CMatrix& m, const std::vector<Eigen::Index>& cols) {
    CMatrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = m.col(cols[i]);
    return out;
}

}  // namespace

const char* to_string(PilotScheme scheme) {
    return scheme == PilotScheme::orthogonal ? "orthogonal" : "nonorthogonal";
}

std::size_t orthogonal_assignment_bits(std::size_t n_active) {
    return static_cast<std::size_t>(std::ceil(static_cast<double>(n_active) * std::numbers::log2e));
}

std::vector<RateReport> slot_curve(const SystemConfig& config, PilotScheme scheme, std::size_t pilot_len,
                                   const std::vector<std::size_t>& slot_grid, std::size_t draws, std::uint64_t seed) {
    check_setup(config, scheme, pilot_len);
    if (slot_grid.empty()) throw ConfigError("invalid config: slot grid is empty");
    if (draws == 0) throw ConfigError("invalid config: draws must be >= 1");
    for (std::size_t b : slot_grid)
        if (b < 1) throw ConfigError("invalid config: slot counts must be >= 1");

    const auto k = static_cast<Eigen::Index>(config.n_active);
    const auto m = static_cast<Eigen::Index>(config.n_antennas);
    // Everything below is in units of the noise variance.
    const double snr = config.tx_power_linear() / config.noise_var();
    const std::size_t det_len = scheme == PilotScheme::orthogonal ? config.det_pilot_len : pilot_len;
    const std::size_t orth_len = pilot_len - det_len;
    const double tau2 = scheme == PilotScheme::nonorthogonal ? amp_fixed_point(config, pilot_len, snr) : 0.0;

    std::vector<RateReport> reports(slot_grid.size());
    for (std::size_t i = 0; i < slot_grid.size(); ++i) {
        RateReport& r = reports[i];
        r.scheme = scheme;
        r.slots = slot_grid[i];
        r.det_pilot_len = det_len;
        r.orth_pilot_len = orth_len;
        r.feedback_bits = scheme == PilotScheme::orthogonal ? orthogonal_assignment_bits(config.n_active) : 0;
        r.per_user_sinr.assign(config.n_active, 0.0);
        r.per_user_rate.assign(config.n_active, 0.0);
    }

    const RVector power = RVector::Constant(k, snr);
    const CMatrix bank = scheme == PilotScheme::orthogonal ? dft_pilot_bank(orth_len) : CMatrix();
    for (std::size_t d = 0; d < draws; ++d) {
        RngStream large(seed, d, Stage::large_scale);
        RngStream small(seed, d, Stage::small_scale);
        const std::vector<double> g = sample_large_scale(config, config.n_active, large);
        RVector gain2(k);
        for (Eigen::Index j = 0; j < k; ++j) gain2(j) = g[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(j)];
        const CMatrix h = small.cgauss_matrix(m, k) * gain2.cwiseSqrt().asDiagonal();

        ChannelEstimate est;
        if (scheme == PilotScheme::nonorthogonal) {
            // Decoupled AMP output r = x + tau w in the pilot-scaled domain
            // x = sqrt(L snr) g h, followed by the conditional-mean shrinkage.
            RngStream noise(seed, d, Stage::estimation);
            const double scale = std::sqrt(static_cast<double>(pilot_len) * snr);
            const CMatrix w = noise.cgauss_matrix(m, k, tau2);
            est.channels.resize(m, k);
            est.error_var.resize(k);
            for (Eigen::Index j = 0; j < k; ++j) {
                const double v = scale * scale * gain2(j);
                const double c = v / (v + tau2);
                est.channels.col(j) = c * (h.col(j) + w.col(j) / scale);
                est.error_var(j) = gain2(j) * tau2 / (v + tau2);
            }
        } else {
            RngStream pilot_rng(seed, d, Stage::pilots);
            RngStream noise(seed, d, Stage::noise);
            const auto l = static_cast<Eigen::Index>(pilot_len);
            CMatrix p(k, l);
            p.leftCols(static_cast<Eigen::Index>(det_len)) =
                gaussian_signatures(det_len, config.n_active, pilot_rng).transpose();
            p.rightCols(static_cast<Eigen::Index>(orth_len)) = bank.topRows(k);
            p *= std::sqrt(snr);
            CMatrix y = h * p;
            y += noise.cgauss_matrix(m, l, 1.0);
            est = lmmse_estimate(y, p, gain2, 1.0);
        }

        for (std::size_t i = 0; i < slot_grid.size(); ++i) {
            RateReport& r = reports[i];
            const std::size_t b = slot_grid[i];
            for (std::size_t slot = 0; slot < b; ++slot) {
                std::vector<Eigen::Index> members;
                for (Eigen::Index j = static_cast<Eigen::Index>(slot); j < k; j += static_cast<Eigen::Index>(b))
                    members.push_back(j);
                if (members.empty()) continue;
                RVector err(static_cast<Eigen::Index>(members.size()));
                for (std::size_t q = 0; q < members.size(); ++q) err(static_cast<Eigen::Index>(q)) = est.error_var(members[q]);
                const RVector sinr = mmse_sinr(select_columns(est.channels, members), err,
                                               power.head(static_cast<Eigen::Index>(members.size())), 1.0);
                for (std::size_t q = 0; q < members.size(); ++q) {
                    const auto user = static_cast<std::size_t>(members[q]);
                    const double s = sinr(static_cast<Eigen::Index>(q));
                    r.per_user_sinr[user] += s;
                    r.per_user_rate[user] += scheme == PilotScheme::orthogonal
                                                 ? rate_orthogonal(config.frame_len, det_len, orth_len, b, s)
                                                 : rate_nonorthogonal(config.frame_len, pilot_len, b, s);
                }
            }
        }
    }

    const double nd = static_cast<double>(draws);
    for (RateReport& r : reports) {
        double total = 0.0;
        for (std::size_t j = 0; j < config.n_active; ++j) {
            r.per_user_sinr[j] /= nd;
            r.per_user_rate[j] /= nd;
            total += r.per_user_rate[j];
        }
        r.sum_rate = config.bandwidth_hz * total;
    }
    return reports;
}

SlotOptimum optimize_slots(const SystemConfig& config, PilotScheme scheme, std::size_t pilot_len,
                           const std::vector<std::size_t>& slot_grid, std::size_t draws, std::uint64_t seed) {
    const auto reports = slot_curve(config, scheme, pilot_len, slot_grid, draws, seed);
    SlotOptimum out;
    out.slot_grid = slot_grid;
    std::size_t best = 0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        out.sum_rate.push_back(reports[i].sum_rate);
        if (reports[i].sum_rate > reports[best].sum_rate) best = i;
    }
    out.best_slots = reports[best].slots;
    out.best = reports[best];
    return out;
}

std::array<RateReport, 3> table2_experiment(const SystemConfig& config, const Table2Options& options,
                                            std::uint64_t seed) {
    if (options.pilot_grid.empty()) throw ConfigError("invalid config: pilot grid is empty");
    std::array<RateReport, 3> rows;
    bool first = true;
    std::vector<std::size_t> slot_grid = options.slot_grid;
    if (std::find(slot_grid.begin(), slot_grid.end(), std::size_t{1}) == slot_grid.end())
        slot_grid.insert(slot_grid.begin(), 1);

    for (std::size_t l : options.pilot_grid) {
        const auto amp = slot_curve(config, PilotScheme::nonorthogonal, l, slot_grid, options.draws, seed);
        const auto unscheduled = std::find_if(amp.begin(), amp.end(), [](const RateReport& r) { return r.slots == 1; });
        const auto amp_best = std::max_element(amp.begin(), amp.end(), [](const RateReport& a, const RateReport& b) {
            return a.sum_rate < b.sum_rate;
        });
        if (first || unscheduled->sum_rate > rows[0].sum_rate) rows[0] = *unscheduled;
        if (first || amp_best->sum_rate > rows[1].sum_rate) rows[1] = *amp_best;

        if (l > config.det_pilot_len && l - config.det_pilot_len >= config.n_active) {
            const auto orth = optimize_slots(config, PilotScheme::orthogonal, l, slot_grid, options.draws, seed);
            if (rows[2].per_user_rate.empty() || orth.best.sum_rate > rows[2].sum_rate) rows[2] = orth.best;
        }
        first = false;
    }
    if (rows[2].per_user_rate.empty())
        throw ConfigError("invalid config: no pilot length in the grid leaves room for orthogonal pilots");
    rows[1].feedback_bits = rows[1].slots == 1 ? 0 : options.nonorthogonal_feedback_bits;
    return rows;
}

}  // namespace mra
