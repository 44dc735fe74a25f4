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

#ifndef SOSIM_ALPHA_OPT_HPP
#define SOSIM_ALPHA_OPT_HPP

#include <span>
#include <vector>

#include "sosim/analytic_rates.hpp"

namespace sosim {

/// Maximizer of the analytic ergodic sum-rate over alpha in [0, 1].
struct AlphaStar {
    double alpha = 0.0;
    double rate = 0.0;            // objective value at alpha, nats
    int evaluations = 0;          // objective evaluations spent
    double grid_resolution = 0.0; // coarse scan step used
};

/// Coarse grid scan (default step 0.02) followed by golden-section
/// refinement of the bracketing interval down to width `refine_tol`.
/// Returns the best point seen; with a single user any alpha is optimal
/// and alpha = 0 is returned.
AlphaStar optimize_alpha(Scheme scheme, Beamformer bf, const UserPopulation& pop,
                         const QuadratureSpec& spec = {}, double grid_step = 0.02,
                         double refine_tol = 1e-4);

enum class SweepAxis { SnrDb, Users };

struct SweepRow {
    double value = 0.0;        // the swept quantity (dB or user count)
    AlphaStar star;
    double expected_so = 0.0;  // (K-1) alpha*^2, mean semi-orthogonal candidates
};

/// One optimize_alpha result per axis value. Sweeping SNR rescales the
/// noise power (sigma2 = P_t / snr); sweeping the user count regenerates
/// the even 0.5-1.5 km layout for each K.
std::vector<SweepRow> sweep(SweepAxis axis, std::span<const double> values,
                            Scheme scheme, Beamformer bf,
                            const UserPopulation& pop_template,
                            const QuadratureSpec& spec = {});

/// alpha* for the true heterogeneous population vs. the alpha* obtained
/// when every gain is set to one, both evaluated on the true objective.
struct HomogeneousComparison {
    double alpha_star = 0.0;
    double alpha_star_homo = 0.0;
    double rate_at_star = 0.0;
    double rate_at_homo = 0.0;
};

HomogeneousComparison compare_homogeneous(Scheme scheme, Beamformer bf,
                                          const UserPopulation& pop,
                                          const QuadratureSpec& spec = {});

}  // namespace sosim

#endif  // SOSIM_ALPHA_OPT_HPP
