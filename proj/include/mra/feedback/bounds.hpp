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

// log2(e) (K + 1): achievable variable-length collision-free rate for B = K.
double bound_variable_length(std::size_t n_active);

// K log2 N: sending the ordered list of active ids.
double bound_naive(std::size_t n_active, std::size_t n_users);

// log2 C(N, K): enumerative coding of the active set (positive acknowledgement).
double bound_enumerative(std::size_t n_active, std::size_t n_users);

}  // namespace mra
