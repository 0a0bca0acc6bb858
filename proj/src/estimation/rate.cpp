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

#include "mra/estimation/rate.hpp"

#include <cmath>

#include "mra/core/errors.hpp"

namespace mra {

namespace {

double prelog(std::size_t frame_len, std::size_t overhead, std::size_t n_slots) {
    if (overhead >= frame_len) throw DomainError("rate: pilot overhead must be shorter than the frame");
    if (n_slots < 1) throw DomainError("rate: need at least one slot");
    return static_cast<double>(frame_len - overhead) / (static_cast<double>(frame_len) * static_cast<double>(n_slots));
}

double spectral(double sinr) {
    if (!(sinr >= 0.0)) throw DomainError("rate: SINR must be nonnegative");
    return std::log2(1.0 + sinr);
}

}  // namespace

double rate_nonorthogonal(std::size_t frame_len, std::size_t pilot_len, std::size_t n_slots, double sinr) {
    return prelog(frame_len, pilot_len, n_slots) * spectral(sinr);
}

double rate_orthogonal(std::size_t frame_len, std::size_t det_len, std::size_t orth_len, std::size_t n_slots,
                       double sinr) {
    return prelog(frame_len, det_len + orth_len, n_slots) * spectral(sinr);
}

}  // namespace mra
