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
#include <string>
#include <vector>

#include "mra/core/errors.hpp"
#include "mra/core/pilots.hpp"
#include "mra/core/rng.hpp"
#include "mra/estimation/estimation.hpp"
#include "mra/estimation/rate.hpp"
#include "mra/estimation/slow_fading.hpp"

using namespace mra;

namespace {

struct Scenario {
    CMatrix h;  // M x K effective channels
    CMatrix y;  // M x L
};

Scenario observe(const CMatrix& pilots, const RVector& corr, double noise_var, std::size_t m, RngStream& rng) {
    Scenario s;
    s.h = rng.cgauss_matrix(static_cast<Eigen::Index>(m), pilots.rows());
    for (Eigen::Index k = 0; k < pilots.rows(); ++k) s.h.col(k) *= std::sqrt(corr[k]);
    s.y = s.h * pilots + rng.cgauss_matrix(static_cast<Eigen::Index>(m), pilots.cols(), noise_var);
    return s;
}

}  // namespace

TEST_CASE("LMMSE approaches least squares as the noise vanishes") {
    const CMatrix bank = dft_pilot_bank(16);
    const CMatrix pilots = bank.topRows(5);
    const RVector corr = RVector::Constant(5, 2.0);
    RngStream rng(1, 0, Stage::estimation);
    const Scenario s = observe(pilots, corr, 1e-12, 8, rng);
    const ChannelEstimate e = lmmse_estimate(s.y, pilots, corr, 1e-12);
    const CMatrix ls = ls_estimate(s.y, bank, {0, 1, 2, 3, 4});
    CHECK((e.channels - ls).norm() <= 1e-6 * ls.norm());
    CHECK((e.channels - s.h).norm() <= 1e-5 * s.h.norm());
    for (Eigen::Index k = 0; k < 5; ++k) CHECK(e.error_var[k] < 1e-12);
}

TEST_CASE("single-user LMMSE is scalar shrinkage of the matched filter") {
    RngStream rng(2, 0, Stage::estimation);
    const CMatrix p = rng.cgauss_matrix(1, 12);
    const double r = 0.7, noise = 0.3;
    const Scenario s = observe(p, RVector::Constant(1, r), noise, 6, rng);
    const ChannelEstimate e = lmmse_estimate(s.y, p, RVector::Constant(1, r), noise);
    const double energy = p.squaredNorm();
    const CMatrix expected = s.y * p.adjoint() * (r / (r * energy + noise));
    CHECK((e.channels - expected).norm() < 1e-12);
    CHECK(e.error_var[0] == doctest::Approx(r * noise / (r * energy + noise)).epsilon(1e-12));
}

TEST_CASE("more pilot symbols never increase the LMMSE error") {
    RngStream rng(3, 0, Stage::pilots);
    const CMatrix p1 = gaussian_signatures(20, 30, rng).transpose();  // K = 30 > L1 = 20
    const CMatrix p2 = dft_pilot_bank(40).topRows(30);
    CMatrix both(30, 60);
    both << p1, p2;
    RVector corr(30);
    for (Eigen::Index k = 0; k < 30; ++k) corr[k] = 0.5 + 0.05 * static_cast<double>(k);
    const double noise = 0.5;
    const CMatrix y1 = CMatrix::Zero(4, 20), y2 = CMatrix::Zero(4, 60);
    const ChannelEstimate a = lmmse_estimate(y1, p1, corr, noise);
    const ChannelEstimate b = lmmse_estimate(y2, both, corr, noise);
    const ChannelEstimate c = lmmse_estimate(CMatrix::Zero(4, 40), p2, corr, noise);
    for (Eigen::Index k = 0; k < 30; ++k) {
        CHECK(b.error_var[k] <= a.error_var[k] + 1e-12);
        CHECK(b.error_var[k] <= c.error_var[k] + 1e-12);
        CHECK(a.error_var[k] <= corr[k] + 1e-12);
    }
}

TEST_CASE("LMMSE error variance matches the empirical error") {
    RngStream prng(4, 0, Stage::pilots);
    const CMatrix p = gaussian_signatures(12, 20, prng).transpose();
    RVector corr = RVector::Constant(20, 1.0);
    corr[3] = 3.0;
    const double noise = 0.8;
    RngStream rng(4, 0, Stage::estimation);
    RVector err = RVector::Zero(20);
    const int draws = 400;
    ChannelEstimate e;
    for (int d = 0; d < draws; ++d) {
        const Scenario s = observe(p, corr, noise, 16, rng);
        e = lmmse_estimate(s.y, p, corr, noise);
        err += (e.channels - s.h).colwise().squaredNorm().transpose() / 16.0;
    }
    err /= draws;
    for (Eigen::Index k = 0; k < 20; ++k) CHECK(err[k] == doctest::Approx(e.error_var[k]).epsilon(0.05));
}

TEST_CASE("LMMSE input validation") {
    const CMatrix p = CMatrix::Ones(2, 4);
    CHECK_THROWS_AS(lmmse_estimate(CMatrix::Zero(3, 5), p, RVector::Ones(2), 1.0), ShapeError);
    CHECK_THROWS_AS(lmmse_estimate(CMatrix::Zero(3, 4), p, RVector::Ones(3), 1.0), ShapeError);
    CHECK_THROWS_AS(lmmse_estimate(CMatrix::Zero(3, 4), p, RVector::Ones(2), 0.0), DomainError);
    CHECK_THROWS_AS(lmmse_estimate(CMatrix::Zero(3, 4), p, -RVector::Ones(2), 1.0), DomainError);
}

TEST_CASE("least squares on orthogonal pilots") {
    const CMatrix bank = dft_pilot_bank(8);
    RngStream rng(5, 0, Stage::estimation);
    const CMatrix h = rng.cgauss_matrix(4, 3);
    const std::vector<std::size_t> assign{6, 1, 3};
    CMatrix tx(3, 8);
    for (int k = 0; k < 3; ++k) tx.row(k) = bank.row(static_cast<Eigen::Index>(assign[static_cast<std::size_t>(k)]));
    const CMatrix y = h * tx;
    const CMatrix est = ls_estimate(y, bank, assign);
    CHECK((est - h).norm() < 1e-12);

    // A user on an unused pilot sees nothing of the others.
    const CMatrix idle = ls_estimate(y, bank, {0});
    CHECK(idle.norm() < 1e-12);
    CHECK_THROWS_AS(ls_estimate(y, bank, {2, 2}), ContractViolation);

    // Noise only: the error variance per entry is noise_var / tau.
    const double noise = 0.6;
    const CMatrix z = rng.cgauss_matrix(2000, 8, noise);
    const CMatrix e = ls_estimate(z, bank, {4});
    CHECK(e.squaredNorm() / 2000.0 == doctest::Approx(noise / 8.0).epsilon(0.05));
}

TEST_CASE("single-user MMSE SINR with perfect CSI") {
    const std::size_t m = 16, draws = 10000;
    const double p = 2.0, g2 = 0.5, noise = 0.4;
    RngStream rng(6, 0, Stage::estimation);
    double mean = 0.0;
    for (std::size_t d = 0; d < draws; ++d) {
        const CMatrix h = rng.cgauss_matrix(static_cast<Eigen::Index>(m), 1, g2);
        mean += mmse_sinr(h, RVector::Zero(1), RVector::Constant(1, p), noise)[0];
    }
    mean /= static_cast<double>(draws);
    CHECK(mean == doctest::Approx(p * g2 * static_cast<double>(m) / noise).epsilon(0.03));
}

TEST_CASE("MMSE SINR responds to estimate quality and load") {
    RngStream rng(7, 0, Stage::estimation);
    // Estimate carries no energy while the error is the whole channel.
    const CMatrix weak = rng.cgauss_matrix(8, 1, 1e-6);
    CHECK(mmse_sinr(weak, RVector::Constant(1, 1.0), RVector::Ones(1), 1.0)[0] < 0.05);

    const std::size_t m = 8;
    const CMatrix h = rng.cgauss_matrix(static_cast<Eigen::Index>(m), 16);
    const RVector pw = RVector::Ones(16);
    const RVector all = mmse_sinr(h, RVector::Zero(16), pw, 0.1);
    const RVector half = mmse_sinr(h.leftCols(8), RVector::Zero(8), pw.head(8), 0.1);
    for (Eigen::Index k = 0; k < 8; ++k) CHECK(half[k] > all[k]);

    RVector err = RVector::Constant(16, 0.05);
    const RVector base = mmse_sinr(h, err, pw, 0.1);
    err[0] = 0.5;
    const RVector worse = mmse_sinr(h, err, pw, 0.1);
    for (Eigen::Index k = 0; k < 16; ++k) CHECK(worse[k] <= base[k] + 1e-12);
    CHECK(worse[0] < base[0]);
}

TEST_CASE("rate formulas") {
    CHECK(rate_nonorthogonal(1000, 300, 1, 1.0) == doctest::Approx(0.7));
    CHECK(rate_orthogonal(1500, 200, 600, 1, 1.0) == doctest::Approx(0.4667).epsilon(1e-4));
    CHECK(rate_nonorthogonal(1000, 300, 2, 3.0) == doctest::Approx(0.7));
    CHECK(rate_orthogonal(2000, 300, 0, 3, 7.0) == doctest::Approx(rate_nonorthogonal(2000, 300, 3, 7.0)));
    CHECK_THROWS_AS(rate_nonorthogonal(100, 100, 1, 1.0), DomainError);
    CHECK_THROWS_AS(rate_orthogonal(100, 60, 40, 1, 1.0), DomainError);
    CHECK_THROWS_AS(rate_nonorthogonal(100, 10, 0, 1.0), DomainError);
    CHECK_THROWS_AS(rate_nonorthogonal(100, 10, 1, -1.0), DomainError);
}

TEST_CASE("slot optimisation with few users keeps a single slot") {
    SystemConfig c = slow_fading_defaults();
    c.n_active = 32;
    const SlotOptimum o = optimize_slots(c, PilotScheme::orthogonal, 600, {1, 2, 3, 4}, 20, 8);
    CHECK(o.best_slots == 1);
    REQUIRE(o.sum_rate.size() == 4);
    for (std::size_t i = 1; i < 4; ++i) CHECK(o.sum_rate[i] < o.sum_rate[0]);
}

TEST_CASE("one slot per user wastes most of the frame") {
    SystemConfig c = slow_fading_defaults();
    c.n_active = 40;
    const SlotOptimum o = optimize_slots(c, PilotScheme::orthogonal, 600, {1, 40}, 10, 9);
    CHECK(o.sum_rate[1] < 0.5 * o.sum_rate[0]);
}

TEST_CASE("slow fading with 150 users favours a few slots") {
    const SystemConfig c = slow_fading_defaults();
    const std::vector<std::size_t> slots{1, 2, 3, 4, 5, 6};
    const SlotOptimum o = optimize_slots(c, PilotScheme::orthogonal, 600, slots, 30, 10);
    CHECK(o.best_slots > 1);
    CHECK(static_cast<double>(c.n_active) / (static_cast<double>(c.n_antennas) * o.best_slots) < 1.0);
    CHECK(o.best.slots == o.best_slots);
    CHECK(o.best.per_user_rate.size() == c.n_active);
    CHECK(o.best.det_pilot_len == c.det_pilot_len);
    CHECK(o.best.orth_pilot_len == 400);
}

TEST_CASE("orthogonal pilots beat non-orthogonal ones at every pilot length") {
    const SystemConfig c = slow_fading_defaults();
    const std::vector<std::size_t> slots{1, 2, 3, 4, 5};
    for (std::size_t l = 400; l <= 1000; l += 200) {
        const SlotOptimum orth = optimize_slots(c, PilotScheme::orthogonal, l, slots, 20, 11);
        const SlotOptimum non = optimize_slots(c, PilotScheme::nonorthogonal, l, slots, 20, 11);
        CHECK(orth.best.sum_rate >= non.best.sum_rate);
    }
}

TEST_CASE("table rows carry their feedback costs") {
    const SystemConfig c = slow_fading_defaults();
    Table2Options opt;
    opt.pilot_grid = {600, 800};
    opt.slot_grid = {1, 2, 3, 4};
    opt.draws = 10;
    const auto rows = table2_experiment(c, opt, 12);
    CHECK(rows[0].scheme == PilotScheme::nonorthogonal);
    CHECK(rows[0].slots == 1);
    CHECK(rows[0].feedback_bits == 0);
    CHECK(rows[1].feedback_bits == (rows[1].slots == 1 ? 0u : 18u));
    CHECK(rows[2].scheme == PilotScheme::orthogonal);
    CHECK(rows[2].feedback_bits == 217);
    CHECK(orthogonal_assignment_bits(150) == 217);
    CHECK(rows[1].sum_rate >= rows[0].sum_rate);
    CHECK(std::string(to_string(PilotScheme::orthogonal)) != to_string(PilotScheme::nonorthogonal));
}

TEST_CASE("orthogonal scheme needs enough pilot symbols for every user") {
    const SystemConfig c = slow_fading_defaults();
    CHECK_THROWS(slot_curve(c, PilotScheme::orthogonal, 300, {1}, 1, 13));
}
