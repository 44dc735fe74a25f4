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

#include "sosim/beamforming.hpp"

#include <cmath>

namespace sosim {

namespace {

cvec2 normalized(const cvec2& v)
{
    const double n = std::sqrt(norm2(v));
    if (n == 0.0)
        throw degenerate_channel_error("beamforming: zero channel vector");
    return {v[0] / n, v[1] / n};
}

struct ScheduledUsers {
    std::array<int, 2> idx;
    int count;
};

ScheduledUsers scheduled_users(const Schedule& sched)
{
    if (sched.mode == Mode::MU)
        return {{sched.first, *sched.second}, 2};
    return {{sched.first, 0}, 1};
}

}  // namespace

BeamSet mrt_weights(const Schedule& sched, const ChannelRealization& real)
{
    const auto users = scheduled_users(sched);
    BeamSet beams;
    beams.w.reserve(users.count);
    for (int i = 0; i < users.count; ++i)
        beams.w.push_back(normalized(real.h[users.idx[i]]));
    return beams;
}

BeamSet zf_weights(const Schedule& sched, const ChannelRealization& real)
{
    if (sched.mode == Mode::SU)
        return mrt_weights(sched, real);

    const auto users = scheduled_users(sched);
    BeamSet beams;
    beams.w.reserve(2);
    for (int i = 0; i < 2; ++i) {
        const cvec2& own = real.h[users.idx[i]];
        const cvec2& other = real.h[users.idx[1 - i]];
        // orthogonal complement of `other` in C^2
        const cvec2 w = normalized({std::conj(other[1]), -std::conj(other[0])});
        if (std::norm(hdot(own, w)) == 0.0)
            throw degenerate_channel_error("zf_weights: parallel channels");
        beams.w.push_back(w);
    }
    return beams;
}

BeamSet make_weights(Beamformer bf, const Schedule& sched,
                     const ChannelRealization& real)
{
    return bf == Beamformer::MRT ? mrt_weights(sched, real) : zf_weights(sched, real);
}

std::vector<double> sinr(const Schedule& sched, const BeamSet& beams,
                         const UserPopulation& pop, const ChannelRealization& real)
{
    const auto users = scheduled_users(sched);
    const auto noise = effective_noise(pop, sched.mode);
    std::vector<double> out;
    out.reserve(users.count);
    for (int i = 0; i < users.count; ++i) {
        const cvec2& h_i = real.h[users.idx[i]];
        const double g_i = pop.gains[users.idx[i]];
        const double signal = g_i * std::norm(hdot(h_i, beams.w[i]));
        double interference = 0.0;
        for (int j = 0; j < users.count; ++j)
            if (j != i)
                interference += g_i * std::norm(hdot(h_i, beams.w[j]));
        out.push_back(signal / (noise.sigma2_eff + interference));
    }
    return out;
}

double instantaneous_sum_rate(std::span<const double> sinrs)
{
    double rate = 0.0;
    for (double s : sinrs)
        rate += std::log1p(s);
    return rate;
}

}  // namespace sosim
