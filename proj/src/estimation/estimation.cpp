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

#include "mra/estimation/estimation.hpp"

#include <string>

#include "mra/core/errors.hpp"

namespace mra {

ChannelEstimate lmmse_estimate(const CMatrix& received, const CMatrix& pilots, const RVector& channel_corr,
                               double noise_var) {
    const Eigen::Index k = pilots.rows();
    const Eigen::Index l = pilots.cols();
    if (received.cols() != l)
        throw ShapeError("lmmse_estimate: received has " + std::to_string(received.cols()) + " columns, pilots " +
                         std::to_string(l));
    if (channel_corr.size() != k) throw ShapeError("lmmse_estimate: channel_corr length != pilot rows");
    if (!(noise_var > 0.0)) throw DomainError("lmmse_estimate: noise variance must be positive");
    if ((channel_corr.array() < 0.0).any()) throw DomainError("lmmse_estimate: negative channel correlation");

    // (P^H R P + s I)^{-1} P^H R = P^H R (P P^H R + s I)^{-1}; work in the
    // K x K form A = R^{1/2} P P^H R^{1/2} + s I, which stays Hermitian and
    // tolerates zero correlations.
    const RVector root = channel_corr.cwiseSqrt();
    CMatrix gram(k, k);
    gram.setZero();
    gram.selfadjointView<Eigen::Lower>().rankUpdate(pilots);
    CMatrix a = root.asDiagonal() * CMatrix(gram.selfadjointView<Eigen::Lower>()) * root.asDiagonal();
    a.diagonal().array() += noise_var;
    const Eigen::LLT<CMatrix> llt(a);
    if (llt.info() != Eigen::Success) throw NumericalError("lmmse_estimate: Gram matrix not positive definite");

    // H_hat^T = Y P^H R^{1/2} A^{-1} R^{1/2}
    CMatrix rhs = (received * pilots.adjoint()) * root.asDiagonal();
    // A is Hermitian, so rhs A^{-1} = (A^{-1} rhs^H)^H.
    CMatrix solved = llt.solve(rhs.adjoint()).adjoint();
    ChannelEstimate out;
    out.channels = solved * root.asDiagonal();

    // The error covariance R - R P (P^H R P + s I)^{-1} P^H R equals s R^{1/2} A^{-1} R^{1/2}.
    const CMatrix inv = llt.solve(CMatrix::Identity(k, k));
    out.error_var.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) out.error_var(i) = noise_var * channel_corr(i) * inv(i, i).real();
    return out;
}

CMatrix ls_estimate(const CMatrix& received, const CMatrix& bank, const std::vector<std::size_t>& assignment) {
    if (received.cols() != bank.cols())
        throw ShapeError("ls_estimate: received span length != pilot length");
    std::vector<char> used(static_cast<std::size_t>(bank.rows()), 0);
    CMatrix out(received.rows(), static_cast<Eigen::Index>(assignment.size()));
    for (std::size_t k = 0; k < assignment.size(); ++k) {
        const std::size_t t = assignment[k];
        if (t >= used.size()) throw ShapeError("ls_estimate: pilot index " + std::to_string(t) + " outside bank");
        if (used[t]) throw ContractViolation("ls_estimate: pilot " + std::to_string(t) + " assigned twice in one block");
        used[t] = 1;
        const auto phi = bank.row(static_cast<Eigen::Index>(t));
        out.col(static_cast<Eigen::Index>(k)) = received * phi.adjoint() / phi.squaredNorm();
    }
    return out;
}

RVector mmse_sinr(const CMatrix& estimates, const RVector& error_var, const RVector& power, double noise_var) {
    const Eigen::Index m = estimates.rows();
    const Eigen::Index k = estimates.cols();
    if (error_var.size() != k || power.size() != k) throw ShapeError("mmse_sinr: per-user vectors must match K");
    if (k == 0) return RVector();

    const double floor = power.dot(error_var) + noise_var;
    CMatrix a = CMatrix::Zero(m, m);
    const CMatrix scaled = estimates * power.cwiseSqrt().asDiagonal();
    a.selfadjointView<Eigen::Lower>().rankUpdate(scaled);
    a.diagonal().array() += floor;
    const Eigen::LLT<CMatrix> llt(a);  // reads the lower triangle only
    if (llt.info() != Eigen::Success) throw NumericalError("mmse_sinr: combiner Gram matrix is singular");

    const CMatrix w = llt.solve(estimates);            // M x K combiners
    const CMatrix cross = w.adjoint() * estimates;     // (k, j) = w_k^H h_j
    RVector sinr(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const double signal = power(i) * std::norm(cross(i, i));
        double interference = 0.0;
        for (Eigen::Index j = 0; j < k; ++j)
            if (j != i) interference += power(j) * std::norm(cross(i, j));
        sinr(i) = signal / (interference + floor * w.col(i).squaredNorm());
    }
    return sinr;
}

}  // namespace mra
