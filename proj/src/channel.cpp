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

#include "sosim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace sosim {

void UserPopulation::validate() const
{
    if (num_users < 1)
        throw std::invalid_argument("UserPopulation: need at least one user");
    if (static_cast<int>(gains.size()) != num_users)
        throw std::invalid_argument("UserPopulation: gains size must equal num_users");
    for (double g : gains)
        if (!(g > 0.0) || !std::isfinite(g))
            throw std::invalid_argument("UserPopulation: gains must be positive and finite");
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("UserPopulation: sigma2 must be positive");
    if (!(total_power > 0.0))
        throw std::invalid_argument("UserPopulation: total_power must be positive");
}

EffectiveNoise effective_noise(const UserPopulation& pop, Mode mode)
{
    const double rho = mode == Mode::SU ? pop.total_power : pop.total_power / 2.0;
    return {rho, pop.sigma2 / rho};
}

std::vector<double> path_loss_from_distances(std::span<const double> distances_km,
                                             double d0_km, double exponent)
{
    if (!(d0_km > 0.0))
        throw std::domain_error("path_loss_from_distances: d0 must be positive");
    if (!(exponent > 0.0))
        throw std::domain_error("path_loss_from_distances: exponent must be positive");
    std::vector<double> gains;
    gains.reserve(distances_km.size());
    for (double d : distances_km) {
        if (!(d > 0.0))
            throw std::domain_error("path_loss_from_distances: distances must be positive");
        gains.push_back(std::pow(d / d0_km, -exponent));
    }
    return gains;
}

std::vector<double> default_layout(int num_users)
{
    if (num_users < 1)
        throw std::domain_error("default_layout: need at least one user");
    if (num_users == 1)
        return {1.0};
    std::vector<double> d(num_users);
    const double step = 1.0 / (num_users - 1);  // from 0.5 to 1.5 km
    for (int k = 0; k < num_users; ++k)
        d[k] = 0.5 + k * step;
    return d;
}

ChannelRealization draw_channel(RandomStream& rng, int num_users)
{
    ChannelRealization real;
    draw_channel_into(rng, num_users, real);
    return real;
}

void draw_channel_into(RandomStream& rng, int num_users, ChannelRealization& real)
{
    real.h.resize(num_users);
    for (auto& hk : real.h) {
        hk[0] = rng.complex_normal();
        hk[1] = rng.complex_normal();
    }
}

double received_snr(double g_k, const cvec2& h_k, double sigma2_eff)
{
    return g_k * norm2(h_k) / sigma2_eff;
}

double so_coherence(const cvec2& h_a, const cvec2& h_b)
{
    const double na = norm2(h_a);
    const double nb = norm2(h_b);
    if (na == 0.0 || nb == 0.0)
        throw std::domain_error("so_coherence: zero channel vector");
    return std::norm(hdot(h_a, h_b)) / (na * nb);
}

}  // namespace sosim
