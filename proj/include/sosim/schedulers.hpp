// sosim - semi-orthogonal user selection: sum-rate analysis and simulation
// Copyright (C) 2026 the sosim authors
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

#ifndef SOSIM_SCHEDULERS_HPP
#define SOSIM_SCHEDULERS_HPP

#include <optional>

#include "sosim/channel.hpp"

namespace sosim {

/// User selection policy: random (fair, no diversity), max-gain (greedy,
/// full diversity) or CDF-based (fair, partial diversity).
enum class Scheme { RUS, MUS, CUS };

/// Outcome of one scheduling decision. `second` is present iff the mode
/// is MU, and the selected pair always satisfies the semi-orthogonality
/// constraint so_coherence <= alpha^2.
struct Schedule {
    Mode mode = Mode::SU;
    int first = 0;                // pi(1)
    std::optional<int> second;    // pi(2)

    int size() const { return mode == Mode::MU ? 2 : 1; }
};

/// Random user selection: pi(1) uniform over users, pi(2) the first user
/// in a random order that is semi-orthogonal to pi(1).
Schedule rus_select(const ChannelRealization& real, double alpha, RandomStream& rng);

/// Max-gain user selection: rank users by g_k ||h_k||^2 and pick the
/// strongest as pi(1), then the strongest semi-orthogonal one as pi(2).
/// Deterministic given the realization; ties break towards lower index.
Schedule mus_select(const ChannelRealization& real, const UserPopulation& pop,
                    double alpha);

/// CDF-based user selection: each user is ranked by its received power
/// relative to its own statistics, p_k = gamma(2, ||h_k||^2). The map is
/// strictly monotone in ||h_k||^2, so the selection ranks plain channel
/// norms; path loss plays no role in the decision.
Schedule cus_select(const ChannelRealization& real, double alpha);

/// Dispatch on scheme; rng is consulted only by RUS.
Schedule select_users(Scheme scheme, const ChannelRealization& real,
                      const UserPopulation& pop, double alpha, RandomStream& rng);

}  // namespace sosim

#endif  // SOSIM_SCHEDULERS_HPP
