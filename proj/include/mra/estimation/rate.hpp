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

namespace mra {

// Per-user spectral efficiency (bits/symbol) averaged over a T-symbol frame
// whose first L symbols carry non-orthogonal pilots and whose data part is
// split into B slots: ((T - L) / (T B)) log2(1 + sinr).
double rate_nonorthogonal(std::size_t frame_len, std::size_t pilot_len, std::size_t n_slots, double sinr);

// Same with L1 detection symbols and L2 orthogonal pilot symbols:
// ((T - L1 - L2) / (T B)) log2(1 + sinr).
double rate_orthogonal(std::size_t frame_len, std::size_t det_len, std::size_t orth_len, std::size_t n_slots,
                       double sinr);

}  // namespace mra
