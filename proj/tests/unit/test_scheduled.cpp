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

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "mra/core/errors.hpp"
#include "mra/feedback/bounds.hpp"
#include "mra/scheduled/scheduled.hpp"

using namespace mra;

namespace {

SystemConfig tiny(std::size_t n_users, std::size_t n_active, std::size_t n_blocks, std::size_t n_pilots) {
    SystemConfig c = fast_fading_defaults();
    c.n_users = n_users;
    c.n_active = n_active;
    c.n_blocks = n_blocks;
    c.frame_len = c.block_len * n_blocks;
    c.orth_pilot_count = n_pilots;
    return c;
}

}  // namespace

TEST_CASE("effective slots and the slot map") {
    CHECK(effective_slots(15, 64) == 896);
    CHECK(effective_slots(2, 1) == 1);
    CHECK(effective_slots(3, 4) == 8);
    CHECK_THROWS_AS(effective_slots(1, 64), ConfigError);
    CHECK_THROWS_AS(effective_slots(15, 0), ConfigError);

    CHECK(slot_to_pair(0, 64) == BlockPilotPair{2, 0});
    CHECK(slot_to_pair(63, 64) == BlockPilotPair{2, 63});
    CHECK(slot_to_pair(64, 64) == BlockPilotPair{3, 0});
    CHECK(slot_to_pair(895, 64) == BlockPilotPair{15, 63});
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (std::size_t s = 0; s < 896; ++s) {
        const BlockPilotPair p = slot_to_pair(s, 64);
        CHECK(p.block >= 2);
        CHECK(p.block <= 15);
        CHECK(p.pilot < 64);
        seen.insert({p.block, p.pilot});
    }
    CHECK(seen.size() == 896);
}

TEST_CASE("perfect detection schedules everyone without collisions") {
    const SystemConfig c = tiny(1000, 40, 6, 10);
    for (std::uint64_t t = 0; t < 20; ++t) {
        const auto o = simulate_scheduled_frame(c, SyntheticDetection{0.0, 0.0}, 1, t);
        CHECK(o.detected == o.active);
        CHECK(o.scheduled == o.active);
        CHECK(o.successes == 40);
        CHECK(o.collisions == 0);
        CHECK(o.wasted_slots == 0);
        CHECK(o.transmissions == 80);
        CHECK(o.feedback_bound == doctest::Approx(std::log2(std::exp(1.0)) * 41.0));
    }
}

TEST_CASE("missed users collide in the only slot") {
    const SystemConfig c = tiny(10, 2, 2, 1);
    const auto o = simulate_scheduled_frame(c, SyntheticDetection{1.0, 0.0}, 2, 0);
    CHECK(o.detected.empty());
    CHECK(o.successes == 0);
    CHECK(o.collisions == 2);
    CHECK(o.transmissions == 4);

    ScheduledOptions ack;
    ack.acknowledged = true;
    const auto silent = simulate_scheduled_frame(c, SyntheticDetection{1.0, 0.0}, 2, 0, ack);
    CHECK(silent.successes == 0);
    CHECK(silent.collisions == 0);
    CHECK(silent.transmissions == 2);
    CHECK(silent.feedback_bits == 0);
}

TEST_CASE("admission is capped at B and prefers true detections") {
    const SystemConfig c = tiny(2000, 30, 3, 10);  // B = 20
    for (std::uint64_t t = 0; t < 20; ++t) {
        const auto o = simulate_scheduled_frame(c, SyntheticDetection{0.0, 0.01}, 3, t);
        CHECK(o.scheduled.size() == 20);
        CHECK(o.wasted_slots == 0);
        CHECK(o.detected.size() >= 30);
        for (UserId u : o.scheduled) CHECK(o.active.contains(u));
        CHECK(o.successes + o.collisions == 30);
    }
}

TEST_CASE("false alarms are inactive users and consume slots") {
    const SystemConfig c = tiny(5000, 50, 15, 64);
    double alarms = 0.0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        const auto o = simulate_scheduled_frame(c, SyntheticDetection{0.0, 0.01}, 4, t);
        std::size_t fa = 0;
        for (UserId u : o.detected)
            if (!o.active.contains(u)) ++fa;
        CHECK(o.wasted_slots == fa);
        CHECK(o.successes == 50);
        alarms += static_cast<double>(fa);
    }
    CHECK(alarms / 50.0 == doctest::Approx(0.01 * 4950).epsilon(0.1));
}

TEST_CASE("full load throughput under the default detection errors") {
    SystemConfig c = fast_fading_defaults();
    const auto pt = successes_per_slot_scheduled(c, {896}, SyntheticDetection{1e-4, 1e-3}, 1000, 5);
    REQUIRE(pt.size() == 1);
    CHECK(pt[0].successes_per_slot == doctest::Approx(59.7).epsilon(0.5 / 59.7));
    CHECK(pt[0].feedback_bound <= 1300.0);
    CHECK(pt[0].transmissions_per_user == doctest::Approx(2.0));
}

TEST_CASE("throughput grows linearly with K below capacity and drops past it") {
    SystemConfig c = fast_fading_defaults();
    std::vector<std::size_t> ks;
    for (std::size_t k = 100; k <= 800; k += 100) ks.push_back(k);
    const auto curve = successes_per_slot_scheduled(c, ks, SyntheticDetection{1e-4, 1e-3}, 40, 6);
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double n = static_cast<double>(curve.size());
    for (const auto& p : curve) {
        const double x = static_cast<double>(p.n_active), y = p.successes_per_slot;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double cov = sxy - sx * sy / n, vx = sxx - sx * sx / n, vy = syy - sy * sy / n;
    const double slope = cov / vx;
    CHECK(cov * cov / (vx * vy) >= 0.999);
    CHECK(slope == doctest::Approx(1.0 / 15.0).epsilon(0.01));

    const auto over = successes_per_slot_scheduled(c, {896, 1100}, SyntheticDetection{1e-4, 1e-3}, 40, 6);
    CHECK(over[1].successes_per_slot < over[0].successes_per_slot);

    const auto empty = successes_per_slot_scheduled(c, {0}, SyntheticDetection{1e-4, 1e-3}, 5, 6);
    CHECK(empty[0].successes_per_slot == 0.0);
    CHECK(empty[0].transmissions_per_user == 0.0);
}

TEST_CASE("acknowledged feedback is charged at the enumerative cost") {
    const SystemConfig c = tiny(3000, 60, 15, 64);
    ScheduledOptions ack;
    ack.acknowledged = true;
    const auto o = simulate_scheduled_frame(c, SyntheticDetection{0.1, 0.002}, 7, 0, ack);
    CHECK(o.feedback_bits == static_cast<std::size_t>(std::ceil(bound_enumerative(o.scheduled.size(), 3000))));
    std::size_t scheduled_active = 0;
    for (UserId u : o.active)
        if (o.scheduled.contains(u)) ++scheduled_active;
    CHECK(o.transmissions == 60 + scheduled_active);
    CHECK(o.successes == scheduled_active);
}

TEST_CASE("frames are reproducible and invalid detection models are rejected") {
    const SystemConfig c = tiny(1000, 40, 6, 10);
    const auto a = simulate_scheduled_frame(c, SyntheticDetection{0.05, 0.01}, 8, 3);
    const auto b = simulate_scheduled_frame(c, SyntheticDetection{0.05, 0.01}, 8, 3);
    CHECK(a.scheduled == b.scheduled);
    CHECK(a.successes == b.successes);
    CHECK(a.feedback_bits == b.feedback_bits);
    CHECK_THROWS_AS(simulate_scheduled_frame(c, SyntheticDetection{1.5, 0.0}, 8, 0), ConfigError);
    CHECK_THROWS_AS(successes_per_slot_scheduled(c, {40}, SyntheticDetection{}, 0, 8), ConfigError);
    CHECK_THROWS_AS(successes_per_slot_scheduled(c, {1001}, SyntheticDetection{}, 1, 8), ConfigError);
}

TEST_CASE("empirical detection on a small high-SNR scenario") {
    SystemConfig c = tiny(400, 20, 4, 16);
    c.det_pilot_len = 60;
    c.n_antennas = 64;
    EmpiricalDetection model;
    model.detector.max_passes = 20;
    const auto o = simulate_scheduled_frame(c, model, 9, 0);
    CHECK(o.detected == o.active);
    CHECK(o.successes == 20);
}
