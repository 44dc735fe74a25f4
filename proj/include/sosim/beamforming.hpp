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

#ifndef SOSIM_BEAMFORMING_HPP
#define SOSIM_BEAMFORMING_HPP

#include <span>
#include <stdexcept>
#include <vector>

#include "sosim/channel.hpp"
#include "sosim/schedulers.hpp"

namespace sosim {

enum class Beamformer { MRT, ZF };

/// Unit-norm beam per scheduled user, ordered (pi(1), pi(2)).
struct BeamSet {
    std::vector<cvec2> w;
};

struct degenerate_channel_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Maximum-ratio transmission: w_i = h_i/||h_i||.
BeamSet mrt_weights(const Schedule& sched, const ChannelRealization& real);

/// Zero-forcing: in MU mode each beam lies in the 1-dimensional orthogonal
/// complement of the partner channel, so cross terms vanish exactly; in SU
/// mode this reduces to MRT. Throws degenerate_channel_error when the two
/// channels are parallel.
BeamSet zf_weights(const Schedule& sched, const ChannelRealization& real);

BeamSet make_weights(Beamformer bf, const Schedule& sched,
                     const ChannelRealization& real);

/// Per-scheduled-user SINR g_i |h_i^H w_i|^2 / (sigma2_eff + g_i sum_{j != i}
/// |h_i^H w_j|^2), with the effective noise determined by the mode's power
/// share rho = P_t/|U|.
std::vector<double> sinr(const Schedule& sched, const BeamSet& beams,
                         const UserPopulation& pop, const ChannelRealization& real);

/// sum_i ln(1 + SINR_i), in nats.
double instantaneous_sum_rate(std::span<const double> sinrs);

}  // namespace sosim

#endif  // SOSIM_BEAMFORMING_HPP
