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

#ifndef SOSIM_ANALYTIC_RATES_HPP
#define SOSIM_ANALYTIC_RATES_HPP

#include "sosim/beamforming.hpp"
#include "sosim/channel.hpp"
#include "sosim/numerics.hpp"
#include "sosim/schedulers.hpp"

namespace sosim {

/// Ergodic-rate decomposition for one (scheme, beamformer, alpha) triple,
/// all rates in nats. The assembly identity
///   sum_rate = lambda r_s + (1 - lambda)(r_m1 + r_m2)
/// holds by construction, with lambda = (1 - alpha^2)^(K-1).
struct RateBreakdown {
    double lambda = 1.0;   // SU-mode probability
    double r_s = 0.0;      // rate of the selected user in SU mode
    double r_m1 = 0.0;     // rate of pi(1) in MU mode
    double r_m2 = 0.0;     // rate of pi(2) in MU mode
    double sum_rate = 0.0;
};

/// (1 - alpha^2)^(K-1): no semi-orthogonal partner exists for pi(1).
double su_mode_probability(double alpha, int num_users);

/// Inner integral over the conditional beam-coupling variable Y:
///   MRT: int_0^{alpha^2} ln(1 + (1/x + y)^{-1}) dy
///   ZF : int_{1-alpha^2}^1 ln(1 + x y) dy
/// evaluated in closed form. x > 0, alpha in (0, 1].
double upsilon(Beamformer bf, double x, double alpha);

// --- random user selection ------------------------------------------------

/// SU-mode rate, identical under MRT and ZF:
/// 1 + (1/K) sum_k G(c_k)(c_k - 1) with c_k = sigma2_eff/g_k.
double rus_rate_su(const UserPopulation& pop);

/// MU-mode per-user rate (pi(1) and pi(2) have the same law under random
/// selection); closed form in G. alpha in (0, 1].
double rus_rate_mu(Beamformer bf, double alpha, const UserPopulation& pop);

// --- max-gain user selection ------------------------------------------------

double mus_rate_su(const UserPopulation& pop, const QuadratureSpec& spec = {});
double mus_rate_mu_first(Beamformer bf, double alpha, const UserPopulation& pop,
                         const QuadratureSpec& spec = {});
double mus_rate_mu_second(Beamformer bf, double alpha, const UserPopulation& pop,
                          const QuadratureSpec& spec = {});

/// All three max-gain rates for identical per-user gains, via the reduced
/// single-product integrals. Matches the general expressions with
/// g_k == gain for every k.
struct HomogeneousRates {
    double r_s;
    double r_m1;
    double r_m2;
};
HomogeneousRates mus_rates_homogeneous(Beamformer bf, double alpha, double gain,
                                       int num_users, double sigma2,
                                       const QuadratureSpec& spec = {},
                                       double total_power = 2.0);

// --- CDF-based user selection ----------------------------------------------

double cus_rate_su(const UserPopulation& pop, const QuadratureSpec& spec = {});
double cus_rate_mu_first(Beamformer bf, double alpha, const UserPopulation& pop,
                         const QuadratureSpec& spec = {});
double cus_rate_mu_second(Beamformer bf, double alpha, const UserPopulation& pop,
                          const QuadratureSpec& spec = {});

// -----------------------------------------------------------------------------

/// Full ergodic sum-rate for any scheme/beamformer. alpha = 0 and K = 1
/// short-circuit to the SU-only rate (the MU weight vanishes there).
RateBreakdown ergodic_sum_rate(Scheme scheme, Beamformer bf, double alpha,
                               const UserPopulation& pop,
                               const QuadratureSpec& spec = {});

}  // namespace sosim

#endif  // SOSIM_ANALYTIC_RATES_HPP
