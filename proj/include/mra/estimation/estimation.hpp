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
#include <vector>

#include "mra/core/types.hpp"

namespace mra {

struct ChannelEstimate {
    CMatrix channels;     // M x K, column k estimates the effective channel g_k h_k
    RVector error_var;    // per-entry error variance of each column
};

// Linear MMSE estimate from Y = H P + Z with H = [g_1 h_1 ... g_K h_K]:
//   H_hat = Y (P^H R P + noise_var I)^{-1} P^H R,  R = diag(channel_corr).
// received is M x L, pilots is K x L with rows equal to the transmitted
// pilots (transmit power included).  Throws ShapeError on inconsistent sizes.
ChannelEstimate lmmse_estimate(const CMatrix& received, const CMatrix& pilots, const RVector& channel_corr,
                               double noise_var);

// Matched-filter estimates h_k = Y phi_k^H / ||phi_k||^2 from an orthogonal
// pilot bank (one pilot per row).  assignment[k] is the bank row used by
// user k; a repeated row throws ContractViolation.
CMatrix ls_estimate(const CMatrix& received, const CMatrix& bank, const std::vector<std::size_t>& assignment);

// Per-user SINR of the MMSE combiner treating the estimation error as
// independent noise.  estimates is M x K for the users sharing one slot.
RVector mmse_sinr(const CMatrix& estimates, const RVector& error_var, const RVector& power, double noise_var);

}  // namespace mra
