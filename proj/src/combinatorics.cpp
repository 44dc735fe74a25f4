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

#include "sosim/combinatorics.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "sosim/numerics.hpp"

namespace sosim {

namespace {

// Lexicographic subsets of {0..n-1} of size r, flattened. Cached per (n, r)
// since the same table serves every user after index remapping.
const std::vector<int>& subset_table(int n, int r)
{
    static std::map<std::pair<int, int>, std::vector<int>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);

    auto [it, inserted] = cache.try_emplace({n, r});
    if (!inserted)
        return it->second;

    std::vector<int>& flat = it->second;
    std::vector<int> pick(r);
    for (int i = 0; i < r; ++i)
        pick[i] = i;
    while (true) {
        flat.insert(flat.end(), pick.begin(), pick.end());
        int i = r - 1;
        while (i >= 0 && pick[i] == n - r + i)
            --i;
        if (i < 0)
            break;
        ++pick[i];
        for (int j = i + 1; j < r; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    if (r == 0)
        flat.clear();  // a single empty row; nothing to store
    return flat;
}

long long binomial(int n, int r)
{
    if (r < 0 || r > n)
        return 0;
    long long v = 1;
    for (int i = 1; i <= r; ++i)
        v = v * (n - r + i) / i;
    return v;
}

}  // namespace

ComboPair combo_matrices(int num_users, int rank, int user)
{
    if (num_users < 2)
        throw std::domain_error("combo_matrices: need at least two users");
    if (num_users > kMaxComboUsers)
        throw guard_error("combo_matrices: user count exceeds the enumeration guard (" +
                          std::to_string(kMaxComboUsers) + ")");
    if (rank < 2 || rank > num_users)
        throw std::domain_error("combo_matrices: rank must lie in [2, K]");
    if (user < 0 || user >= num_users)
        throw std::domain_error("combo_matrices: user index out of range");

    // users other than `user`, in ascending order
    std::vector<int> others;
    others.reserve(num_users - 1);
    for (int j = 0; j < num_users; ++j)
        if (j != user)
            others.push_back(j);

    const int n = num_users - 1;
    const int r = num_users - rank;
    const auto& table = subset_table(n, r);

    ComboPair combos;
    combos.row_count = static_cast<int>(binomial(n, r));
    combos.included_width = r;
    combos.excluded_width = rank - 1;
    combos.included.reserve(static_cast<std::size_t>(combos.row_count) * r);
    combos.excluded.reserve(static_cast<std::size_t>(combos.row_count) * (rank - 1));

    std::vector<char> in_row(n);
    for (int m = 0; m < combos.row_count; ++m) {
        std::fill(in_row.begin(), in_row.end(), 0);
        for (int j = 0; j < r; ++j) {
            const int pos = table[m * r + j];
            in_row[pos] = 1;
            combos.included.push_back(others[pos]);
        }
        for (int pos = 0; pos < n; ++pos)
            if (!in_row[pos])
                combos.excluded.push_back(others[pos]);
    }
    return combos;
}

double order_stat_pdf(double x, int rank, const UserPopulation& pop,
                      double sigma2_eff)
{
    pop.validate();
    const int K = pop.num_users;
    if (rank < 1 || rank > K)
        throw std::domain_error("order_stat_pdf: rank must lie in [1, K]");
    if (!(x >= 0.0))
        throw std::domain_error("order_stat_pdf: x must be nonnegative");
    if (K > kMaxComboUsers)
        throw guard_error("order_stat_pdf: user count exceeds the enumeration guard");

    std::vector<double> cdf(K), pdf(K);
    for (int k = 0; k < K; ++k) {
        const double a = sigma2_eff / pop.gains[k];
        cdf[k] = lower_gamma2(a * x);
        pdf[k] = a * a * x * std::exp(-a * x);
    }

    if (rank == 1) {  // maximum: d/dx prod_k F_k
        double total = 0.0;
        for (int k = 0; k < K; ++k) {
            double prod = pdf[k];
            for (int j = 0; j < K; ++j)
                if (j != k)
                    prod *= cdf[j];
            total += prod;
        }
        return total;
    }

    double total = 0.0;
    for (int k = 0; k < K; ++k) {
        const ComboPair combos = combo_matrices(K, rank, k);
        double sum = 0.0;
        for (int m = 0; m < combos.row_count; ++m) {
            double term = 1.0;
            for (int j = 0; j < combos.included_width; ++j)
                term *= cdf[combos.included_at(m, j)];
            for (int j = 0; j < combos.excluded_width; ++j)
                term *= 1.0 - cdf[combos.excluded_at(m, j)];
            sum += term;
        }
        total += pdf[k] * sum;
    }
    return total;
}

double rank_selection_prob(int rank, double alpha, int num_users)
{
    if (num_users < 2)
        throw std::domain_error("rank_selection_prob: need at least two users");
    if (rank < 2 || rank > num_users)
        throw std::domain_error("rank_selection_prob: rank must lie in [2, K]");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::domain_error("rank_selection_prob: alpha must lie in (0, 1]");
    const double a2 = alpha * alpha;
    const double lambda = std::pow(1.0 - a2, num_users - 1);
    return a2 * std::pow(1.0 - a2, rank - 2) / (1.0 - lambda);
}

}  // namespace sosim
