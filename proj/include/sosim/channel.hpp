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

#ifndef SOSIM_CHANNEL_HPP
#define SOSIM_CHANNEL_HPP

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "sosim/rng.hpp"

namespace sosim {

/// Channel vector between the 2-antenna base station and one user.
using cvec2 = std::array<std::complex<double>, 2>;

/// a^H b
inline std::complex<double> hdot(const cvec2& a, const cvec2& b)
{
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

/// Squared Euclidean norm.
inline double norm2(const cvec2& v)
{
    return std::norm(v[0]) + std::norm(v[1]);
}

/// Transmission to one user (full power) or to a semi-orthogonal pair
/// (power split evenly).
enum class Mode { SU, MU };

/// Static description of the cell: user count, per-user large-scale gains,
/// noise power and the total transmit power budget.
struct UserPopulation {
    int num_users = 0;             // K
    std::vector<double> gains;     // linear large-scale gain g_k per user
    double sigma2 = 1.0;           // receiver noise power
    double total_power = 2.0;      // P_t (power per antenna = P_t/2)

    void validate() const;  // throws std::invalid_argument
};

/// One fading block: a 2-entry channel vector per user.
struct ChannelRealization {
    std::vector<cvec2> h;

    int num_users() const { return static_cast<int>(h.size()); }
};

/// Per-mode symbol power share rho = P_t/|U| and the resulting effective
/// noise sigma2/rho seen inside the SINR.
struct EffectiveNoise {
    double rho;
    double sigma2_eff;
};

EffectiveNoise effective_noise(const UserPopulation& pop, Mode mode);

/// g_k = (d_k/d0)^{-exponent} for distances in km.
std::vector<double> path_loss_from_distances(std::span<const double> distances_km,
                                             double d0_km = 1.0,
                                             double exponent = 4.0);

/// K user distances evenly spaced over [0.5, 1.5] km (a single user sits
/// at the midpoint).
std::vector<double> default_layout(int num_users);

/// Draws 2K i.i.d. CN(0,1) entries from the given stream.
ChannelRealization draw_channel(RandomStream& rng, int num_users);

/// Same draw into an existing realization (resized as needed); lets tight
/// simulation loops reuse the buffer.
void draw_channel_into(RandomStream& rng, int num_users, ChannelRealization& real);

/// Instantaneous received SNR  g_k ||h_k||^2 / sigma2_eff.
double received_snr(double g_k, const cvec2& h_k, double sigma2_eff);

/// Squared normalized inner product |a^H b|^2 / (||a||^2 ||b||^2) in [0,1];
/// 0 for orthogonal vectors, 1 for parallel ones. The semi-orthogonality
/// test is so_coherence(h_a, h_b) <= alpha^2.
double so_coherence(const cvec2& h_a, const cvec2& h_b);

}  // namespace sosim

#endif  // SOSIM_CHANNEL_HPP
