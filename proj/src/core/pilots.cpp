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

#include "mra/core/pilots.hpp"

#include <cmath>
#include <numbers>

namespace mra {

CMatrix gaussian_signatures(std::size_t length, std::size_t count, RngStream& rng) {
    const auto l = static_cast<Eigen::Index>(length);
    CMatrix s = rng.cgauss_matrix(l, static_cast<Eigen::Index>(count));
    const double target = std::sqrt(static_cast<double>(length));
    for (Eigen::Index c = 0; c < s.cols(); ++c) s.col(c) *= target / s.col(c).norm();
    return s;
}

CMatrix dft_pilot_bank(std::size_t n) {
    const auto ni = static_cast<Eigen::Index>(n);
    CMatrix bank(ni, ni);
    const double w = -2.0 * std::numbers::pi / static_cast<double>(n);
    for (Eigen::Index t = 0; t < ni; ++t)
        for (Eigen::Index k = 0; k < ni; ++k) {
            // Reduce the exponent modulo n before scaling to keep phases exact.
            const auto e = static_cast<double>((t * k) % ni);
            bank(t, k) = std::polar(1.0, w * e);
        }
    return bank;
}

}  // namespace mra
