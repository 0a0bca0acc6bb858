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

#include "mra/feedback/bounds.hpp"

#include <cmath>
#include <numbers>

#include "mra/core/errors.hpp"

namespace mra {

double bound_variable_length(std::size_t n_active) {
    if (n_active < 1) throw DomainError("bound_variable_length: K must be >= 1");
    return std::numbers::log2e * static_cast<double>(n_active + 1);
}

double bound_naive(std::size_t n_active, std::size_t n_users) {
    if (n_active < 1 || n_users < 2) throw DomainError("bound_naive: need K >= 1 and N >= 2");
    return static_cast<double>(n_active) * std::log2(static_cast<double>(n_users));
}

double bound_enumerative(std::size_t n_active, std::size_t n_users) {
    if (n_active > n_users) throw DomainError("bound_enumerative: K exceeds N");
    if (n_active == 0 || n_active == n_users) return 0.0;
    const double n = static_cast<double>(n_users);
    const double k = static_cast<double>(n_active);
    return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) * std::numbers::log2e;
}

}  // namespace mra
