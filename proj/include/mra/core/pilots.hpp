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

#include "mra/core/rng.hpp"
#include "mra/core/types.hpp"

namespace mra {

// L x N signature matrix: i.i.d. complex Gaussian entries with every column
// rescaled to squared norm L (unit power per symbol).
CMatrix gaussian_signatures(std::size_t length, std::size_t count, RngStream& rng);

// n x n discrete-Fourier pilot bank; row t is pilot t with unit-modulus
// entries, so rows are mutually orthogonal with squared norm n.
CMatrix dft_pilot_bank(std::size_t n);

}  // namespace mra
