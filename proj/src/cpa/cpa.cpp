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

#include "mra/cpa/cpa.hpp"

#include <algorithm>
#include <string>

#include "mra/core/errors.hpp"

namespace mra {

CpaFrame::CpaFrame(std::size_t n_users, std::size_t n_blocks, std::size_t n_pilots)
    : n_blocks_(n_blocks), n_pilots_(n_pilots), appearances_(n_users) {
    if (n_blocks == 0 || n_pilots == 0) throw DomainError("cpa frame needs at least one block and one pilot");
}

void CpaFrame::add(UserId user, CpaCell cell) {
    if (user >= appearances_.size()) throw DomainError("cpa user " + std::to_string(user) + " out of range");
    if (cell.block >= n_blocks_ || cell.pilot >= n_pilots_) throw DomainError("cpa cell out of range");
    auto& list = appearances_[user];
    const auto pos = std::lower_bound(list.begin(), list.end(), cell,
                                      [](const CpaCell& a, const CpaCell& b) { return a.block < b.block; });
    if (pos != list.end() && pos->block == cell.block)
        throw DomainError("user " + std::to_string(user) + " already transmits in block " + std::to_string(cell.block));
    list.insert(pos, cell);
    ++transmissions_;
}

CpaFrame build_cpa_frame(std::size_t n_users, std::size_t n_blocks, std::size_t n_pilots, double p, RngStream& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("repetition probability must lie in [0, 1]");
    CpaFrame frame(n_users, n_blocks, n_pilots);
    for (std::size_t u = 0; u < n_users; ++u)
        for (std::size_t b = 0; b < n_blocks; ++b)
            if (rng.bernoulli(p))
                frame.add(static_cast<UserId>(u),
                          CpaCell{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(rng.below(n_pilots))});
    return frame;
}

namespace {

// Undecoded occupancy per cell plus the XOR of occupant ids, which names the
// occupant whenever the count is one.
struct CellState {
    std::vector<std::uint32_t> count;
    std::vector<UserId> xor_ids;

    explicit CellState(const CpaFrame& frame) : count(frame.cells(), 0), xor_ids(frame.cells(), 0) {
        for (UserId u = 0; u < frame.users(); ++u)
            for (const CpaCell& c : frame.appearances(u)) {
                const std::size_t i = frame.cell_index(c);
                ++count[i];
                xor_ids[i] ^= u;
            }
    }

    template <typename OnSingleton>
    void cancel(const CpaFrame& frame, UserId u, OnSingleton&& on_singleton) {
        for (const CpaCell& c : frame.appearances(u)) {
            const std::size_t i = frame.cell_index(c);
            --count[i];
            xor_ids[i] ^= u;
            if (count[i] == 1) on_singleton(i);
        }
    }

    [[nodiscard]] std::size_t collisions() const {
        return static_cast<std::size_t>(std::count_if(count.begin(), count.end(), [](auto c) { return c >= 2; }));
    }
};

PeelResult finish(const CpaFrame& frame, const std::vector<char>& decoded, std::size_t rounds,
                  const CellState& state) {
    std::vector<UserId> ids;
    for (UserId u = 0; u < decoded.size(); ++u)
        if (decoded[u]) ids.push_back(u);
    PeelResult out;
    out.decoded = ActivitySet(std::move(ids), frame.users());
    out.rounds = rounds;
    out.residual_collisions = state.collisions();
    return out;
}

}  // namespace

PeelResult peel(const CpaFrame& frame) {
    CellState state(frame);
    std::vector<char> decoded(frame.users(), 0);
    std::vector<std::size_t> frontier;
    for (std::size_t i = 0; i < frame.cells(); ++i)
        if (state.count[i] == 1) frontier.push_back(i);

    std::size_t rounds = 0;
    std::vector<UserId> batch;
    std::vector<std::size_t> next;
    while (!frontier.empty()) {
        batch.clear();
        for (std::size_t i : frontier) {
            if (state.count[i] != 1) continue;
            const UserId u = state.xor_ids[i];
            if (!decoded[u]) {
                decoded[u] = 1;
                batch.push_back(u);
            }
        }
        if (batch.empty()) break;
        ++rounds;
        next.clear();
        for (UserId u : batch) state.cancel(frame, u, [&](std::size_t i) { next.push_back(i); });
        frontier.swap(next);
    }
    return finish(frame, decoded, rounds, state);
}

PeelResult peel_random_order(const CpaFrame& frame, RngStream& rng) {
    CellState state(frame);
    std::vector<char> decoded(frame.users(), 0);
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < frame.cells(); ++i)
        if (state.count[i] == 1) pending.push_back(i);

    std::size_t steps = 0;
    while (!pending.empty()) {
        const std::size_t pick = rng.below(pending.size());
        const std::size_t cell = pending[pick];
        pending[pick] = pending.back();
        pending.pop_back();
        if (state.count[cell] != 1) continue;
        const UserId u = state.xor_ids[cell];
        if (decoded[u]) continue;
        decoded[u] = 1;
        ++steps;
        state.cancel(frame, u, [&](std::size_t i) { pending.push_back(i); });
    }
    // One user per step; rounds are not meaningful for a sequential order.
    return finish(frame, decoded, steps, state);
}

CpaPoint successes_per_slot_cpa(std::size_t n_users, std::size_t n_blocks, std::size_t n_pilots, double beta,
                                std::size_t trials, std::uint64_t seed) {
    if (!(beta > 0.0) || beta > static_cast<double>(n_blocks))
        throw DomainError("repetition rate beta must lie in (0, Delta]");
    if (trials == 0) throw DomainError("successes_per_slot_cpa needs at least one trial");
    const double p = beta / static_cast<double>(n_blocks);
    CpaPoint point;
    double decoded = 0.0;
    double sent = 0.0;
    double residual = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        RngStream rng(seed, t, Stage::cpa);
        const CpaFrame frame = build_cpa_frame(n_users, n_blocks, n_pilots, p, rng);
        const PeelResult result = peel(frame);
        decoded += static_cast<double>(result.decoded.size());
        sent += static_cast<double>(frame.transmissions());
        residual += static_cast<double>(result.residual_collisions);
    }
    const double tr = static_cast<double>(trials);
    point.successes_per_slot = decoded / tr / static_cast<double>(n_blocks);
    point.transmissions_per_user = n_users == 0 ? 0.0 : sent / tr / static_cast<double>(n_users);
    point.residual_collisions = residual / tr;
    return point;
}

std::vector<double> default_beta_grid() {
    std::vector<double> grid;
    for (int i = 2; i <= 12; ++i) grid.push_back(0.5 * i);
    return grid;
}

BetaChoice optimize_beta(std::size_t n_users, std::size_t n_blocks, std::size_t n_pilots,
                         const std::vector<double>& grid, std::size_t trials, std::uint64_t seed) {
    if (grid.empty()) throw DomainError("optimize_beta needs a nonempty grid");
    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    BetaChoice best{sorted.front(), -1.0};
    for (double beta : sorted) {
        const double value = successes_per_slot_cpa(n_users, n_blocks, n_pilots, beta, trials, seed).successes_per_slot;
        if (value > best.value) best = {beta, value};
    }
    return best;
}

}  // namespace mra
