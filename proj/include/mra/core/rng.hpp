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

#include <complex>
#include <cstdint>
#include <random>

#include "mra/core/types.hpp"

namespace mra {

// Tags that separate the random streams of one trial.  Values are part of the
// reproducibility contract: changing them changes every experiment output.
enum class Stage : std::uint32_t {
    activity = 1,
    large_scale = 2,
    small_scale = 3,
    noise = 4,
    pilots = 5,
    detection = 6,
    feedback = 7,
    cpa = 8,
    ordering = 9,
    estimation = 10,
    tuning = 11,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream key for (seed, trial, stage).  Every stochastic operation takes an
// RngStream built from such a key so that trials never share state.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t trial, Stage stage) noexcept {
    std::uint64_t k = splitmix64(seed);
    k = splitmix64(k ^ (trial * 0xd1b54a32d192ed03ULL));
    k = splitmix64(k ^ (static_cast<std::uint64_t>(stage) * 0x8cb92ba72f3d8dd7ULL));
    return k;
}

class RngStream {
public:
    using engine_type = std::mt19937_64;

    explicit RngStream(std::uint64_t key) : engine_(key) {}
    RngStream(std::uint64_t seed, std::uint64_t trial, Stage stage)
        : engine_(stream_key(seed, trial, stage)) {}

    engine_type& engine() noexcept { return engine_; }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    bool bernoulli(double p) { return uniform() < p; }
    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_); }
    double gauss() { return normal_(engine_); }

    // Circularly symmetric complex Gaussian with E|z|^2 = variance.
    cplx cgauss(double variance = 1.0);
    CMatrix cgauss_matrix(Eigen::Index rows, Eigen::Index cols, double variance = 1.0);

    std::uint64_t next_u64() { return engine_(); }

private:
    engine_type engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace mra
