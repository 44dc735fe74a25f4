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

#ifndef SOSIM_COMBINATORICS_HPP
#define SOSIM_COMBINATORICS_HPP

#include <stdexcept>
#include <vector>

#include "sosim/channel.hpp"

namespace sosim {

/// Thrown when an operation would enumerate more than 2^(kMaxComboUsers-1)
/// combination rows; the order-statistic expansion is exponential in the
/// user count by construction.
struct guard_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxComboUsers = 16;

/// The two combination matrices used by the rank-i order-statistic
/// expansion for user k (0-based indices): row m of `included` is one way
/// to choose which K-i of the other users fall below rank i, and row m of
/// `excluded` is its complement among {0..K-1}\{k}. Rows are stored
/// flattened, lexicographically ordered, each row internally ascending.
struct ComboPair {
    int row_count = 0;
    int included_width = 0;  // K - i
    int excluded_width = 0;  // i - 1
    std::vector<int> included;
    std::vector<int> excluded;

    int included_at(int row, int col) const { return included[row * included_width + col]; }
    int excluded_at(int row, int col) const { return excluded[row * excluded_width + col]; }
};

/// Combination matrices for rank i in [2, K] and user k in [0, K-1].
/// K is capped at kMaxComboUsers (guard_error above).
ComboPair combo_matrices(int num_users, int rank, int user);

/// PDF of the rank-th largest of the K independent received SNRs, whose
/// per-user CDFs are gamma(2, sigma2_eff x / g_k). rank = 1 is the maximum.
double order_stat_pdf(double x, int rank, const UserPopulation& pop,
                      double sigma2_eff);

/// Probability that the second selected user is the rank-th strongest,
/// conditioned on MU mode: alpha^2 (1-alpha^2)^(rank-2) / (1-lambda).
double rank_selection_prob(int rank, double alpha, int num_users);

}  // namespace sosim

#endif  // SOSIM_COMBINATORICS_HPP
