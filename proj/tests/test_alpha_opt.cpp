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

#include <cmath>

#include "doctest.h"
#include "sosim/alpha_opt.hpp"
#include "testutil.hpp"

using namespace sosim;

namespace {

UserPopulation even_population(int K, double sigma2)
{
    return {K, path_loss_from_distances(default_layout(K)), sigma2, 2.0};
}

}  // namespace

TEST_CASE("single user: objective is flat, alpha 0 by convention")
{
    const UserPopulation one{1, {1.0}, 2.0, 2.0};
    const auto star = optimize_alpha(Scheme::MUS, Beamformer::ZF, one);
    CHECK(star.alpha == 0.0);
    CHECK(star.rate == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("optimizer beats every coarse grid point")
{
    const auto pop = even_population(4, 0.5);
    for (auto scheme : {Scheme::RUS, Scheme::CUS}) {
        const auto star = optimize_alpha(scheme, Beamformer::MRT, pop);
        CHECK(star.evaluations > 51);
        for (double a = 0.0; a <= 1.0 + 1e-12; a += 0.02) {
            const double r =
                ergodic_sum_rate(scheme, Beamformer::MRT, std::min(a, 1.0), pop)
                    .sum_rate;
            CHECK(star.rate >= r - 1e-12);
        }
        // reported rate belongs to the reported alpha
        CHECK(star.rate ==
              doctest::Approx(
                  ergodic_sum_rate(scheme, Beamformer::MRT, star.alpha, pop).sum_rate)
                  .epsilon(1e-10));
    }
}

TEST_CASE("objective is smooth near the optimum")
{
    const auto pop = even_population(4, 0.2);
    const auto star = optimize_alpha(Scheme::RUS, Beamformer::ZF, pop);
    for (double d : {-1e-3, 1e-3}) {
        const double a = star.alpha + d;
        if (a <= 0.0 || a > 1.0)
            continue;
        const double r = ergodic_sum_rate(Scheme::RUS, Beamformer::ZF, a, pop).sum_rate;
        CHECK(std::abs(r - star.rate) < 0.01 * star.rate);
    }
}

TEST_CASE("sweep over a single SNR point equals optimize_alpha")
{
    const auto pop = even_population(3, 1.0);
    const double values[] = {10.0};
    const auto rows = sweep(SweepAxis::SnrDb, values, Scheme::CUS, Beamformer::ZF, pop);
    REQUIRE(rows.size() == 1);
    UserPopulation at10 = pop;
    at10.sigma2 = pop.total_power / 10.0;
    const auto direct = optimize_alpha(Scheme::CUS, Beamformer::ZF, at10);
    CHECK(rows[0].star.alpha == doctest::Approx(direct.alpha).epsilon(1e-12));
    CHECK(rows[0].star.rate == doctest::Approx(direct.rate).epsilon(1e-12));
    CHECK(rows[0].expected_so ==
          doctest::Approx(2.0 * direct.alpha * direct.alpha).epsilon(1e-12));
}

TEST_CASE("sweep over the user axis regenerates the layout")
{
    const auto pop = even_population(3, 0.2);
    const double values[] = {2.0, 5.0};
    const auto rows = sweep(SweepAxis::Users, values, Scheme::RUS, Beamformer::ZF, pop);
    REQUIRE(rows.size() == 2);
    UserPopulation five = pop;
    five.num_users = 5;
    five.gains = path_loss_from_distances(default_layout(5));
    const auto direct = optimize_alpha(Scheme::RUS, Beamformer::ZF, five);
    CHECK(rows[1].star.alpha == doctest::Approx(direct.alpha).epsilon(1e-12));

    const double bad[] = {2.5};
    CHECK_THROWS_AS(sweep(SweepAxis::Users, bad, Scheme::RUS, Beamformer::ZF, pop),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        sweep(SweepAxis::Users, std::span<const double>{}, Scheme::RUS,
              Beamformer::ZF, pop),
        std::invalid_argument);
}

TEST_CASE("homogeneous comparison degenerates on homogeneous populations")
{
    UserPopulation flat{4, std::vector<double>(4, 1.0), 0.5, 2.0};
    const auto cmp = compare_homogeneous(Scheme::RUS, Beamformer::MRT, flat);
    CHECK(std::abs(cmp.alpha_star - cmp.alpha_star_homo) <= 0.02 + 1e-12);
    CHECK(cmp.rate_at_homo <= cmp.rate_at_star + 1e-9);
    CHECK(cmp.rate_at_star == doctest::Approx(cmp.rate_at_homo).epsilon(1e-6));
}

TEST_CASE("the true optimum is never beaten by the unit-gain surrogate")
{
    const auto pop = even_population(5, 0.2);
    for (auto bf : {Beamformer::MRT, Beamformer::ZF}) {
        const auto cmp = compare_homogeneous(Scheme::RUS, bf, pop);
        CHECK(cmp.rate_at_homo <= cmp.rate_at_star + 1e-9);
    }
}
