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

#include "mra/detect/amp.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>

#include "mra/core/errors.hpp"

namespace mra {

namespace {

// Activity posterior as a function of q = ||r||^2.
struct PosteriorModel {
    double log_prior_odds;  // ln(eps / (1 - eps))
    double log_ratio;       // M ln(tau^2 / (g + tau^2))
    double slope;           // g / (tau^2 (g + tau^2))
    double shrink;          // g / (g + tau^2)

    PosteriorModel(double state_var, const RowPrior& p, std::size_t m) {
        log_prior_odds = p.activity > 0.0 ? std::log(p.activity) - std::log1p(-p.activity) : -INFINITY;
        log_ratio = static_cast<double>(m) * (std::log(state_var) - std::log(p.gain + state_var));
        slope = p.gain / (state_var * (p.gain + state_var));
        shrink = p.gain / (p.gain + state_var);
    }

    [[nodiscard]] double posterior(double q) const {
        const double z = log_prior_odds + log_ratio + slope * q;
        if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
        const double e = std::exp(z);
        return e / (1.0 + e);
    }
};

// E_{u ~ Gamma(m, 1)}[f(u)] by adaptive Gauss-Kronrod over the bulk of the density.
template <class F>
double gamma_expectation(std::size_t m, F&& f) {
    const double md = static_cast<double>(m);
    const double log_norm = std::lgamma(md);
    auto integrand = [&](double u) {
        if (u <= 0.0) return 0.0;
        return std::exp((md - 1.0) * std::log(u) - u - log_norm) * f(u);
    };
    const double lo = std::max(0.0, md - 1.0 - 14.0 * std::sqrt(md));
    const double hi = md + 14.0 * std::sqrt(md) + 40.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, lo, hi, 12, 1e-13);
}

}  // namespace

void AmpConfig::validate(std::size_t n_users) const {
    if (iterations < 1) throw ConfigError("invalid config: AMP iterations must be >= 1");
    if (!(prior_activity >= 0.0 && prior_activity < 1.0))
        throw ConfigError("invalid config: prior_activity must lie in [0, 1)");
    if (prior_gain.size() != 1 && prior_gain.size() != n_users)
        throw ConfigError("invalid config: prior_gain must have 1 or N entries");
    for (double g : prior_gain)
        if (!(g > 0.0)) throw ConfigError("invalid config: prior_gain entries must be positive");
    if (!(damping > 0.0 && damping <= 1.0)) throw ConfigError("invalid config: damping must lie in (0, 1]");
}

DenoisedRow row_mmse_denoiser(const Eigen::Ref<const CVector>& row, double state_var, const RowPrior& prior) {
    if (!(state_var > 0.0)) throw DomainError("row_mmse_denoiser: state_var must be positive");
    const auto m = static_cast<std::size_t>(row.size());
    const PosteriorModel model(state_var, prior, m);
    const double q = row.squaredNorm();
    const double phi = model.posterior(q);
    DenoisedRow out;
    out.value = (model.shrink * phi) * row;
    out.posterior = phi;
    // Wirtinger trace: M c phi + c q phi'(q), phi' = phi (1 - phi) slope.
    const double trace = model.shrink * (static_cast<double>(m) * phi + q * phi * (1.0 - phi) * model.slope);
    out.divergence = m == 0 ? 0.0 : trace / static_cast<double>(m);
    return out;
}

AmpResult amp_detect(const CMatrix& received, const CMatrix& pilots, const AmpConfig& config,
                     const AmpObserver& observer) {
    const auto n = static_cast<std::size_t>(pilots.cols());
    config.validate(n);
    if (received.cols() != pilots.rows()) throw ShapeError("amp_detect: received must be M x L");
    const Eigen::Index l = pilots.rows();
    const Eigen::Index m = received.rows();
    const double lm = static_cast<double>(l) * static_cast<double>(m);

    const CMatrix y = received.transpose();  // L x M
    CMatrix x = CMatrix::Zero(static_cast<Eigen::Index>(n), m);
    CMatrix residual = y;
    CMatrix pseudo(static_cast<Eigen::Index>(n), m);
    std::vector<double> posterior(n, 0.0);

    AmpResult out;
    out.state_var.push_back(residual.squaredNorm() / lm);

    for (std::size_t t = 0; t < config.iterations; ++t) {
        const double tau2 = std::max(out.state_var.back(), 1e-300);
        pseudo = x;
        pseudo.noalias() += pilots.adjoint() * residual;

        double divergence_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = static_cast<Eigen::Index>(i);
            const PosteriorModel model(tau2, RowPrior{config.prior_activity, config.gain(i)},
                                       static_cast<std::size_t>(m));
            const double q = pseudo.row(row).squaredNorm();
            const double phi = model.posterior(q);
            const double c = model.shrink * phi;
            x.row(row) = config.damping * c * pseudo.row(row) + (1.0 - config.damping) * x.row(row);
            posterior[i] = phi;
            divergence_sum += model.shrink * (phi + q * phi * (1.0 - phi) * model.slope / static_cast<double>(m));
        }

        const double onsager = divergence_sum / static_cast<double>(l);
        CMatrix next = y;
        next.noalias() -= pilots * x;
        next += onsager * residual;
        residual.swap(next);
        out.state_var.push_back(residual.squaredNorm() / lm);
        if (observer) observer(t, x, tau2);

        const std::size_t k = out.state_var.size();
        if (k >= 4 && out.state_var[k - 1] > 10.0 * out.state_var[k - 4]) out.diverged = true;
        if (!std::isfinite(out.state_var.back())) {
            out.diverged = true;
            break;
        }
    }

    std::vector<UserId> ids;
    for (std::size_t i = 0; i < n; ++i)
        if (posterior[i] > 0.5) ids.push_back(static_cast<UserId>(i));
    out.activity = ActivitySet(std::move(ids), n);
    out.posterior = std::move(posterior);
    out.estimate = std::move(x);
    return out;
}

double row_mmse(double state_var, const RowPrior& prior, std::size_t n_antennas) {
    if (prior.activity <= 0.0) return 0.0;
    const PosteriorModel model(state_var, prior, n_antennas);
    const double md = static_cast<double>(n_antennas);
    // E||eta(r)||^2 = c^2 E[phi(q)^2 q] with q ~ theta Gamma(M, 1) in each hypothesis.
    auto second_moment = [&](double theta) {
        return gamma_expectation(n_antennas, [&](double u) {
            const double q = theta * u;
            const double phi = model.posterior(q);
            return phi * phi * q;
        });
    };
    const double active = second_moment(prior.gain + state_var);
    const double inactive = second_moment(state_var);
    const double eta_sq = model.shrink * model.shrink *
                          (prior.activity * active + (1.0 - prior.activity) * inactive);
    const double mse = prior.activity * prior.gain - eta_sq / md;
    return std::max(mse, 0.0);
}

StateEvolution state_evolution(const AmpConfig& config, double noise_var, std::size_t pilot_len, std::size_t n_users,
                               std::size_t n_antennas) {
    config.validate(n_users);
    const double l = static_cast<double>(pilot_len);
    double mean_gain = 0.0;
    for (std::size_t i = 0; i < n_users; ++i) mean_gain += config.gain(i);
    mean_gain /= static_cast<double>(n_users);

    StateEvolution se;
    double tau2 = noise_var + static_cast<double>(n_users) / l * config.prior_activity * mean_gain;
    se.state_var.push_back(tau2);
    for (std::size_t t = 0; t < config.iterations; ++t) {
        // Users sharing a gain share the integral.
        std::map<double, double> cache;
        double total = 0.0;
        for (std::size_t i = 0; i < n_users; ++i) {
            const double g = config.gain(i);
            auto it = cache.find(g);
            if (it == cache.end())
                it = cache.emplace(g, row_mmse(tau2, RowPrior{config.prior_activity, g}, n_antennas)).first;
            total += it->second;
        }
        se.mse.push_back(total / static_cast<double>(n_users));
        tau2 = noise_var + total / l;
        se.state_var.push_back(tau2);
    }
    return se;
}

}  // namespace mra
