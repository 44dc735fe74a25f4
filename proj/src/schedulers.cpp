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

#include "sosim/schedulers.hpp"

#include <algorithm>
#include <numeric>

namespace sosim {

namespace {

// Walk `order` starting after pi(1) and return the first user that is
// semi-orthogonal to it, if any.
Schedule pick_pair(const ChannelRealization& real, double alpha,
                   std::span<const int> order)
{
    Schedule sched;
    sched.first = order[0];
    const double alpha2 = alpha * alpha;
    for (std::size_t j = 1; j < order.size(); ++j) {
        if (so_coherence(real.h[sched.first], real.h[order[j]]) <= alpha2) {
            sched.mode = Mode::MU;
            sched.second = order[j];
            return sched;
        }
    }
    sched.mode = Mode::SU;
    return sched;
}

// Per-thread scratch keeps the per-realization selectors allocation-free.
thread_local std::vector<int> tl_order;
thread_local std::vector<double> tl_metric;

// Indices sorted by descending metric, lowest index first among ties.
std::span<const int> rank_users(std::span<const double> metric)
{
    tl_order.resize(metric.size());
    std::iota(tl_order.begin(), tl_order.end(), 0);
    std::stable_sort(tl_order.begin(), tl_order.end(),
                     [&](int a, int b) { return metric[a] > metric[b]; });
    return tl_order;
}

}  // namespace

Schedule rus_select(const ChannelRealization& real, double alpha, RandomStream& rng)
{
    const int K = real.num_users();
    tl_order.resize(K);
    std::iota(tl_order.begin(), tl_order.end(), 0);
    for (int i = K - 1; i > 0; --i)  // Fisher-Yates
        std::swap(tl_order[i], tl_order[rng.uniform_below(i + 1)]);
    return pick_pair(real, alpha, tl_order);
}

Schedule mus_select(const ChannelRealization& real, const UserPopulation& pop,
                    double alpha)
{
    const int K = real.num_users();
    tl_metric.resize(K);
    for (int k = 0; k < K; ++k)
        tl_metric[k] = pop.gains[k] * norm2(real.h[k]);
    return pick_pair(real, alpha, rank_users(tl_metric));
}

Schedule cus_select(const ChannelRealization& real, double alpha)
{
    const int K = real.num_users();
    tl_metric.resize(K);
    for (int k = 0; k < K; ++k)
        tl_metric[k] = norm2(real.h[k]);
    return pick_pair(real, alpha, rank_users(tl_metric));
}

Schedule select_users(Scheme scheme, const ChannelRealization& real,
                      const UserPopulation& pop, double alpha, RandomStream& rng)
{
    switch (scheme) {
        case Scheme::RUS: return rus_select(real, alpha, rng);
        case Scheme::MUS: return mus_select(real, pop, alpha);
        case Scheme::CUS: return cus_select(real, alpha);
    }
    throw std::logic_error("select_users: unknown scheme");
}

}  // namespace sosim
