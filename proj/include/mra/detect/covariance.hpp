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
#include <span>
#include <vector>

#include "mra/core/channel.hpp"
#include "mra/core/rng.hpp"
#include "mra/core/types.hpp"

namespace mra {

// Estimated activity powers gamma_n = (a_n g_n)^2, one per potential user.
struct GammaVector {
    RVector values;
};

// (1/M) sum_m y_m y_m^H over antennas, where y_m is row m of the M x L
// received matrix viewed as an L-vector.  Hermitian PSD by construction.
class SampleCovariance {
public:
    explicit SampleCovariance(CMatrix matrix) : matrix_(std::move(matrix)) {}
    [[nodiscard]] const CMatrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return matrix_.rows(); }

private:
    CMatrix matrix_;
};

enum class UpdateOrder { cyclic, random_permutation };

struct CdConfig {
    std::size_t max_passes = 15;
    UpdateOrder order = UpdateOrder::random_permutation;
    double tolerance = 1e-6;          // relative objective decrease per pass
    double activity_threshold = 0.5;  // gamma above this counts as active
    void validate() const;
};

// Sigma^{-1} for Sigma = S diag(gamma) S^H + noise_var I, maintained by
// rank-one updates.  Only the lower triangle is stored.
class InverseCovariance {
public:
    InverseCovariance(const CMatrix& pilots, std::span<const double> gamma, double noise_var);
    explicit InverseCovariance(CMatrix sigma_inv);

    // Recompute from scratch to shed accumulated rounding.
    void reset(const CMatrix& pilots, std::span<const double> gamma, double noise_var);
    [[nodiscard]] CMatrix full() const;
    [[nodiscard]] Eigen::Index dim() const noexcept { return lower_.rows(); }

private:
    friend struct CoordinateKernel;
    CMatrix lower_;
    CVector work_v_;
    CVector work_u_;
};

struct CoordinateStep {
    double delta = 0.0;             // applied change to gamma_k
    double objective_change = 0.0;  // exact change of the ML objective
};

// Minimise the ML objective along one coordinate: with a = s^H Sigma^{-1} s and
// b = s^H Sigma^{-1} Sigma_hat Sigma^{-1} s the unconstrained minimiser is
// (b - a) / a^2, projected so gamma_k + delta >= 0.  Updates the inverse in O(L^2).
CoordinateStep coordinate_update(double gamma_k, const Eigen::Ref<const CVector>& pilot,
                                 InverseCovariance& state, const SampleCovariance& sample_cov);

SampleCovariance sample_covariance(const CMatrix& received);

// log|Sigma| + tr(Sigma^{-1} Sigma_hat) with natural logarithms.
double ml_objective(std::span<const double> gamma, const CMatrix& pilots, const SampleCovariance& sample_cov,
                    double noise_var);

struct CovarianceDetection {
    GammaVector gamma;
    ActivitySet estimate;
    std::size_t passes = 0;  // W, coordinate sweeps actually run
    bool converged = false;
    double objective = 0.0;
    std::vector<double> objective_trace;  // after each pass
};

// Coordinate-descent MLE of gamma from an M x L received pilot block.  pilots
// is L x N.  Returns the last iterate with converged == false if max_passes
// ran out before the relative decrease dropped below tolerance.
CovarianceDetection detect_covariance(const CMatrix& received, const CMatrix& pilots, double noise_var,
                                      const CdConfig& config, RngStream& rng);
CovarianceDetection detect_covariance(const SampleCovariance& sample_cov, const CMatrix& pilots,
                                      double noise_var, const CdConfig& config, RngStream& rng);

ActivitySet threshold_activity(const GammaVector& gamma, double threshold);

struct DetectionMetrics {
    double p_md = 0.0;
    double p_fa = 0.0;
};

DetectionMetrics detection_metrics(const ActivitySet& truth, const ActivitySet& estimate, std::size_t n_users);

// Smallest threshold whose empirical false-alarm rate on the given frames does
// not exceed target_pfa (Neyman-Pearson style tuning on held-out data).
double tune_threshold(std::span<const GammaVector> gammas, std::span<const ActivitySet> truths, double target_pfa);

}  // namespace mra
