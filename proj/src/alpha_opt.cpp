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

#include "sosim/alpha_opt.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace sosim {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // 1/golden ratio

struct Tracker {
    double best_alpha = 0.0;
    double best_rate = -1.0;
    int evaluations = 0;
};

double evaluate(Scheme scheme, Beamformer bf, double alpha,
                const UserPopulation& pop, const QuadratureSpec& spec,
                Tracker& tracker)
{
    const double rate = ergodic_sum_rate(scheme, bf, alpha, pop, spec).sum_rate;
    ++tracker.evaluations;
    if (rate > tracker.best_rate) {
        tracker.best_rate = rate;
        tracker.best_alpha = alpha;
    }
    return rate;
}

}  // namespace

AlphaStar optimize_alpha(Scheme scheme, Beamformer bf, const UserPopulation& pop,
                         const QuadratureSpec& spec, double grid_step,
                         double refine_tol)
{
    pop.validate();
    if (!(grid_step > 0.0) || grid_step > 1.0)
        throw std::invalid_argument("optimize_alpha: grid_step must lie in (0, 1]");
    if (!(refine_tol > 0.0))
        throw std::invalid_argument("optimize_alpha: refine_tol must be positive");

    if (pop.num_users == 1) {
        // objective is constant in alpha; report the SU-only rate at 0
        const RateBreakdown rb = ergodic_sum_rate(scheme, bf, 0.0, pop, spec);
        return {0.0, rb.sum_rate, 1, grid_step};
    }

    Tracker tracker;
    std::vector<double> grid;
    for (double a = 0.0; a < 1.0 + 1e-12; a += grid_step)
        grid.push_back(std::min(a, 1.0));
    if (grid.back() < 1.0)
        grid.push_back(1.0);

    std::vector<double> values(grid.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        values[i] = evaluate(scheme, bf, grid[i], pop, spec, tracker);
        if (values[i] > values[best])
            best = i;
    }

    // discrete sign changes of the forward differences; more than one
    // direction flip means the coarse objective is not unimodal
    int flips = 0;
    for (std::size_t i = 2; i < grid.size(); ++i) {
        const double d_prev = values[i - 1] - values[i - 2];
        const double d_cur = values[i] - values[i - 1];
        if (d_prev > 0 && d_cur < 0)
            ++flips;
    }
    if (flips > 1)
        std::cerr << "optimize_alpha: objective not unimodal on the coarse grid ("
                  << flips << " peaks)\n";

    // golden-section refinement inside the bracketing interval
    double lo = grid[best > 0 ? best - 1 : 0];
    double hi = grid[std::min(best + 1, grid.size() - 1)];
    double x1 = hi - (hi - lo) * kInvPhi;
    double x2 = lo + (hi - lo) * kInvPhi;
    double f1 = evaluate(scheme, bf, x1, pop, spec, tracker);
    double f2 = evaluate(scheme, bf, x2, pop, spec, tracker);
    while (hi - lo > refine_tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + (hi - lo) * kInvPhi;
            f2 = evaluate(scheme, bf, x2, pop, spec, tracker);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - (hi - lo) * kInvPhi;
            f1 = evaluate(scheme, bf, x1, pop, spec, tracker);
        }
    }

    // continuity guard against quadrature noise around the reported point
    const double probe = 1e-3;
    for (double a : {tracker.best_alpha - probe, tracker.best_alpha + probe}) {
        if (a <= 0.0 || a > 1.0)
            continue;
        const double r = ergodic_sum_rate(scheme, bf, a, pop, spec).sum_rate;
        if (std::abs(r - tracker.best_rate) > 0.05 * std::abs(tracker.best_rate) + 1e-6)
            std::cerr << "optimize_alpha: objective jumps near alpha* (" << tracker.best_rate
                      << " vs " << r << " at " << a << "); quadrature noise?\n";
    }

    return {tracker.best_alpha, tracker.best_rate, tracker.evaluations, grid_step};
}

std::vector<SweepRow> sweep(SweepAxis axis, std::span<const double> values,
                            Scheme scheme, Beamformer bf,
                            const UserPopulation& pop_template,
                            const QuadratureSpec& spec)
{
    if (values.empty())
        throw std::invalid_argument("sweep: need at least one axis value");
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (double v : values) {
        UserPopulation pop = pop_template;
        if (axis == SweepAxis::SnrDb) {
            pop.sigma2 = pop.total_power / std::pow(10.0, v / 10.0);
        } else {
            const int K = static_cast<int>(v);
            if (K < 1 || static_cast<double>(K) != v)
                throw std::invalid_argument("sweep: user counts must be positive integers");
            pop.num_users = K;
            pop.gains = path_loss_from_distances(default_layout(K));
        }
        SweepRow row;
        row.value = v;
        row.star = optimize_alpha(scheme, bf, pop, spec);
        row.expected_so = (pop.num_users - 1) * row.star.alpha * row.star.alpha;
        rows.push_back(row);
    }
    return rows;
}

HomogeneousComparison compare_homogeneous(Scheme scheme, Beamformer bf,
                                          const UserPopulation& pop,
                                          const QuadratureSpec& spec)
{
    pop.validate();
    UserPopulation homo = pop;
    std::fill(homo.gains.begin(), homo.gains.end(), 1.0);

    const AlphaStar star = optimize_alpha(scheme, bf, pop, spec);
    const AlphaStar star_homo = optimize_alpha(scheme, bf, homo, spec);

    HomogeneousComparison cmp;
    cmp.alpha_star = star.alpha;
    cmp.rate_at_star = star.rate;
    cmp.alpha_star_homo = star_homo.alpha;
    cmp.rate_at_homo =
        ergodic_sum_rate(scheme, bf, star_homo.alpha, pop, spec).sum_rate;
    return cmp;
}

}  // namespace sosim
