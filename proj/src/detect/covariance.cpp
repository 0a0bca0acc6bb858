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

#include "mra/detect/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mra/core/errors.hpp"

namespace mra {

namespace {

CMatrix model_covariance(const CMatrix& pilots, std::span<const double> gamma, double noise_var) {
    const Eigen::Index l = pilots.rows();
    CMatrix sigma = noise_var * CMatrix::Identity(l, l);
    for (Eigen::Index n = 0; n < pilots.cols(); ++n) {
        const double g = gamma[static_cast<std::size_t>(n)];
        if (g != 0.0) sigma.selfadjointView<Eigen::Lower>().rankUpdate(pilots.col(n), g);
    }
    return sigma.selfadjointView<Eigen::Lower>();
}

}  // namespace

void CdConfig::validate() const {
    if (max_passes < 1) throw ConfigError("invalid config: max_passes must be >= 1");
    if (!(tolerance > 0.0)) throw ConfigError("invalid config: tolerance must be > 0");
}

InverseCovariance::InverseCovariance(const CMatrix& pilots, std::span<const double> gamma, double noise_var) {
    reset(pilots, gamma, noise_var);
}

InverseCovariance::InverseCovariance(CMatrix sigma_inv) : lower_(std::move(sigma_inv)) {
    work_v_.resize(lower_.rows());
    work_u_.resize(lower_.rows());
}

void InverseCovariance::reset(const CMatrix& pilots, std::span<const double> gamma, double noise_var) {
    if (static_cast<std::size_t>(pilots.cols()) != gamma.size())
        throw ShapeError("InverseCovariance: gamma length differs from pilot count");
    if (!(noise_var > 0.0)) throw DomainError("InverseCovariance: noise_var must be positive");
    const CMatrix sigma = model_covariance(pilots, gamma, noise_var);
    Eigen::LLT<CMatrix> llt(sigma);
    if (llt.info() != Eigen::Success) throw NumericalError("InverseCovariance: Sigma not positive definite");
    lower_ = llt.solve(CMatrix::Identity(sigma.rows(), sigma.cols()));
    work_v_.resize(lower_.rows());
    work_u_.resize(lower_.rows());
}

CMatrix InverseCovariance::full() const { return lower_.selfadjointView<Eigen::Lower>(); }

struct CoordinateKernel {
    static CoordinateStep apply(double gamma_k, const Eigen::Ref<const CVector>& s, InverseCovariance& st,
                                const CMatrix& sample_cov) {
        auto& v = st.work_v_;
        auto& u = st.work_u_;
        v.noalias() = st.lower_.selfadjointView<Eigen::Lower>() * s;
        u.noalias() = sample_cov.selfadjointView<Eigen::Lower>() * v;
        const double a = std::real(s.dot(v));
        const double b = std::real(v.dot(u));
        const double unconstrained = (b - a) / (a * a);
        const double delta = std::max(unconstrained, -gamma_k);
        CoordinateStep step;
        step.delta = delta;
        if (delta == 0.0) return step;
        const double denom = 1.0 + delta * a;
        step.objective_change = std::log(denom) - delta * b / denom;
        st.lower_.selfadjointView<Eigen::Lower>().rankUpdate(v, -delta / denom);
        return step;
    }
};

CoordinateStep coordinate_update(double gamma_k, const Eigen::Ref<const CVector>& pilot, InverseCovariance& state,
                                 const SampleCovariance& sample_cov) {
    if (pilot.size() != state.dim() || sample_cov.dim() != state.dim())
        throw ShapeError("coordinate_update: dimension mismatch");
    return CoordinateKernel::apply(gamma_k, pilot, state, sample_cov.matrix());
}

SampleCovariance sample_covariance(const CMatrix& received) {
    if (received.rows() == 0 || received.cols() == 0) throw ShapeError("sample_covariance: empty received block");
    const double inv_m = 1.0 / static_cast<double>(received.rows());
    // Y^T conj(Y) / M: the antenna-averaged outer product of the L-dim pilot observations.
    CMatrix cov = CMatrix::Zero(received.cols(), received.cols());
    cov.selfadjointView<Eigen::Lower>().rankUpdate(received.transpose(), inv_m);
    CMatrix full = cov.selfadjointView<Eigen::Lower>();
    return SampleCovariance(std::move(full));
}

double ml_objective(std::span<const double> gamma, const CMatrix& pilots, const SampleCovariance& sample_cov,
                    double noise_var) {
    if (static_cast<std::size_t>(pilots.cols()) != gamma.size() || pilots.rows() != sample_cov.dim())
        throw ShapeError("ml_objective: dimension mismatch");
    if (!(noise_var > 0.0)) throw DomainError("ml_objective: noise_var must be positive");
    const CMatrix sigma = model_covariance(pilots, gamma, noise_var);
    Eigen::LLT<CMatrix> llt(sigma);
    if (llt.info() != Eigen::Success) throw NumericalError("ml_objective: Sigma is singular");
    const auto& lmat = llt.matrixLLT();
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < lmat.rows(); ++i) logdet += 2.0 * std::log(std::real(lmat(i, i)));
    const double trace = std::real(llt.solve(sample_cov.matrix()).trace());
    return logdet + trace;
}

CovarianceDetection detect_covariance(const CMatrix& received, const CMatrix& pilots, double noise_var,
                                      const CdConfig& config, RngStream& rng) {
    if (received.cols() != pilots.rows()) throw ShapeError("detect_covariance: received must be M x L");
    return detect_covariance(sample_covariance(received), pilots, noise_var, config, rng);
}

CovarianceDetection detect_covariance(const SampleCovariance& sample_cov, const CMatrix& pilots, double noise_var,
                                      const CdConfig& config, RngStream& rng) {
    config.validate();
    if (pilots.rows() != sample_cov.dim()) throw ShapeError("detect_covariance: pilots must be L x N");
    if (!(noise_var > 0.0)) throw DomainError("detect_covariance: noise_var must be positive");
    const auto n = static_cast<std::size_t>(pilots.cols());
    const auto l = static_cast<double>(pilots.rows());

    std::vector<double> gamma(n, 0.0);
    InverseCovariance state(CMatrix::Identity(pilots.rows(), pilots.rows()) / noise_var);
    const CMatrix& cov = sample_cov.matrix();

    double objective = l * std::log(noise_var) + std::real(cov.trace()) / noise_var;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    CovarianceDetection out;
    for (std::size_t pass = 0; pass < config.max_passes; ++pass) {
        if (config.order == UpdateOrder::random_permutation) std::shuffle(order.begin(), order.end(), rng.engine());
        const double before = objective;
        for (std::size_t k : order) {
            const auto step = CoordinateKernel::apply(gamma[k], pilots.col(static_cast<Eigen::Index>(k)), state, cov);
            gamma[k] = std::max(0.0, gamma[k] + step.delta);
            objective += step.objective_change;
        }
        // Resynchronise the inverse; the running objective is exact up to rounding.
        state.reset(pilots, gamma, noise_var);
        out.passes = pass + 1;
        out.objective_trace.push_back(objective);
        if (before - objective <= config.tolerance * std::abs(before)) {
            out.converged = true;
            break;
        }
    }

    out.objective = objective;
    out.gamma.values = Eigen::Map<const RVector>(gamma.data(), static_cast<Eigen::Index>(n));
    out.estimate = threshold_activity(out.gamma, config.activity_threshold);
    return out;
}

ActivitySet threshold_activity(const GammaVector& gamma, double threshold) {
    std::vector<UserId> ids;
    for (Eigen::Index i = 0; i < gamma.values.size(); ++i)
        if (gamma.values[i] > threshold) ids.push_back(static_cast<UserId>(i));
    return ActivitySet(std::move(ids), static_cast<std::size_t>(gamma.values.size()));
}

DetectionMetrics detection_metrics(const ActivitySet& truth, const ActivitySet& estimate, std::size_t n_users) {
    std::size_t missed = 0;
    for (UserId id : truth)
        if (!estimate.contains(id)) ++missed;
    std::size_t false_alarms = 0;
    for (UserId id : estimate)
        if (!truth.contains(id)) ++false_alarms;
    DetectionMetrics m;
    m.p_md = truth.empty() ? 0.0 : static_cast<double>(missed) / static_cast<double>(truth.size());
    const std::size_t inactive = n_users - truth.size();
    m.p_fa = inactive == 0 ? 0.0 : static_cast<double>(false_alarms) / static_cast<double>(inactive);
    return m;
}

double tune_threshold(std::span<const GammaVector> gammas, std::span<const ActivitySet> truths, double target_pfa) {
    if (gammas.size() != truths.size() || gammas.empty())
        throw ShapeError("tune_threshold: need one truth per gamma vector");
    std::vector<double> inactive;
    for (std::size_t f = 0; f < gammas.size(); ++f) {
        const auto& g = gammas[f].values;
        for (Eigen::Index i = 0; i < g.size(); ++i)
            if (!truths[f].contains(static_cast<UserId>(i))) inactive.push_back(g[i]);
    }
    if (inactive.empty()) return 0.0;
    std::sort(inactive.begin(), inactive.end(), std::greater<>());
    // Allow at most floor(target * count) inactive users strictly above the threshold.
    const auto allowed = static_cast<std::size_t>(std::floor(target_pfa * static_cast<double>(inactive.size())));
    if (allowed >= inactive.size()) return 0.0;
    // Entries strictly greater than inactive[allowed] number at most `allowed`.
    return inactive[allowed];
}

}  // namespace mra
