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
#include <functional>
#include <stdexcept>
#include <string>

#include "mra/experiments/spec_io.hpp"
#include "mra/experiments/table.hpp"

namespace mra {

// A sweep point failed; what() names the experiment and the point.
class ExperimentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Runs fn(0..count-1) on up to `threads` workers (0 = hardware concurrency).
// The first exception, tagged with its index, is rethrown as ExperimentError
// after all workers stop.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn,
                  const std::string& label);

// Deterministic given (spec, seed) apart from timing columns of
// fig3_runtime and the wall_time_s metadata line.  Writes the CSV when
// spec.out_path is set.
ResultTable run(const ExperimentSpec& spec);
ResultTable run(const ResolvedExperiment& experiment);

// Build identifier recorded in every table.
const char* build_version();

}  // namespace mra
