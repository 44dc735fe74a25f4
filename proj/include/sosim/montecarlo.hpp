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

#ifndef SOSIM_MONTECARLO_HPP
#define SOSIM_MONTECARLO_HPP

#include <cstdint>

#include "sosim/analytic_rates.hpp"
#include "sosim/beamforming.hpp"
#include "sosim/channel.hpp"
#include "sosim/schedulers.hpp"

namespace sosim {

/// One simulation request. Trials are independent: trial t draws from the
/// counter-based stream (seed, t), so results are bit-identical no matter
/// how trials are distributed over threads.
struct SimConfig {
    std::int64_t trials = 1;
    std::uint64_t seed = 1;
    Scheme scheme = Scheme::RUS;
    Beamformer bf = Beamformer::MRT;
    double alpha = 0.5;
    UserPopulation pop;
    int threads = 0;  // 0 = use all hardware threads

    void validate() const;
};

/// Empirical summary of a batch of trials.
struct Estimate {
    double mean = 0.0;       // mean instantaneous sum-rate, nats
    double std_error = 0.0;  // sample std / sqrt(trials); 0 when trials < 2
    std::int64_t trials = 0;
    std::int64_t su_count = 0;
    std::int64_t mu_count = 0;
    std::int64_t redraws = 0;  // degenerate-channel rejections (measure zero)
    std::vector<std::int64_t> pi1_counts;  // times user k was pi(1)
    std::vector<std::int64_t> pi2_counts;  // times user k was pi(2)
    std::vector<double> per_user_rate;     // mean rate earned by user k per trial
};

/// draw -> select -> beamform -> SINR -> sum-rate, averaged over trials.
Estimate simulate_ergodic(const SimConfig& cfg);

/// Unconstrained scheduling benchmark: per trial the best instantaneous
/// sum-rate over every singleton (full power) and every unordered pair
/// (split power) under the given beamformer, with no semi-orthogonality
/// restriction.
Estimate exhaustive_optimal(const UserPopulation& pop, Beamformer bf,
                            std::int64_t trials, std::uint64_t seed,
                            int threads = 0);

/// Kolmogorov-Smirnov statistics of the conditional beam couplings over
/// MU-mode trials: Y_mrt against U[0, alpha^2] and Y_zf against
/// U[1-alpha^2, 1].
struct DistributionReport {
    double ks_y_mrt = 0.0;
    double ks_y_zf = 0.0;
    std::int64_t mu_samples = 0;
    double ks_critical_1pct = 0.0;  // for the observed sample size
};

/// Requires an MU-capable config (alpha > 0, K >= 2) and at least 1000
/// observed MU trials; throws std::runtime_error otherwise.
DistributionReport empirical_distribution_checks(const SimConfig& cfg);

}  // namespace sosim

#endif  // SOSIM_MONTECARLO_HPP
