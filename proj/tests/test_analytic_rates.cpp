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
#include "sosim/analytic_rates.hpp"
#include "sosim/montecarlo.hpp"
#include "testutil.hpp"

using namespace sosim;

namespace {

UserPopulation even_population(int K, double sigma2)
{
    return {K, path_loss_from_distances(default_layout(K)), sigma2, 2.0};
}

UserPopulation flat_population(int K, double gain, double sigma2)
{
    return {K, std::vector<double>(K, gain), sigma2, 2.0};
}

}  // namespace

TEST_CASE("SU-mode probability")
{
    CHECK(su_mode_probability(0.0, 7) == 1.0);
    CHECK(su_mode_probability(1.0, 2) == 0.0);
    CHECK(su_mode_probability(1.0, 1) == 1.0);
    CHECK(su_mode_probability(std::sqrt(0.5), 2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(su_mode_probability(1.5, 3), std::domain_error);
}

TEST_CASE("upsilon kernels: frozen values")
{
    CHECK(upsilon(Beamformer::MRT, 1.0, 1.0) ==
          doctest::Approx(3.0 * std::log(3.0) - 4.0 * std::log(2.0)).epsilon(1e-13));
    CHECK(upsilon(Beamformer::ZF, 1.0, 1.0) ==
          doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-13));
    // the ZF window collapses as alpha -> 0
    CHECK(std::abs(upsilon(Beamformer::ZF, 2.0, 1e-6)) < 1e-11);

    CHECK_THROWS_AS(upsilon(Beamformer::MRT, 0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(upsilon(Beamformer::ZF, 1.0, 0.0), std::domain_error);
}

TEST_CASE("upsilon equals the inner Y-integral (independent Simpson oracle)")
{
    for (double x : {0.08, 0.6, 2.5, 11.0, 60.0}) {
        for (double alpha : {0.25, 0.55, 0.85, 1.0}) {
            const double a2 = alpha * alpha;
            const double mrt_ref = testutil::simpson(
                [&](double y) { return std::log1p(1.0 / (1.0 / x + y)); }, 0.0, a2);
            const double zf_ref = testutil::simpson(
                [&](double y) { return std::log1p(x * y); }, 1.0 - a2, 1.0);
            CHECK(std::abs(upsilon(Beamformer::MRT, x, alpha) - mrt_ref) <= 1e-9);
            CHECK(std::abs(upsilon(Beamformer::ZF, x, alpha) - zf_ref) <= 1e-9);
        }
    }
}

TEST_CASE("random selection, SU closed form")
{
    // (sigma2_eff/g - 1) factor vanishes: exactly 1 nat
    CHECK(rus_rate_su(UserPopulation{1, {1.0}, 2.0, 2.0}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // sigma2_eff = 2 case: 1 + G(2)
    CHECK(rus_rate_su(UserPopulation{1, {1.0}, 4.0, 2.0}) ==
          doctest::Approx(1.0 + testutil::kG_two).epsilon(1e-12));

    // the K-user value is the mean of the single-user values
    const auto pop = even_population(5, 1.7);
    double mean = 0.0;
    for (int k = 0; k < 5; ++k)
        mean += rus_rate_su(UserPopulation{1, {pop.gains[k]}, 1.7, 2.0});
    CHECK(rus_rate_su(pop) == doctest::Approx(mean / 5.0).epsilon(1e-13));
}

TEST_CASE("random selection, MU closed forms at alpha = 1")
{
    const UserPopulation pop{2, {1.0, 1.0}, 1.0, 2.0};
    CHECK(rus_rate_mu(Beamformer::MRT, 1.0, pop) ==
          doctest::Approx(2.0 * testutil::kG_one - 2.0 * testutil::kG_half)
              .epsilon(1e-12));
    CHECK(rus_rate_mu(Beamformer::ZF, 1.0, pop) ==
          doctest::Approx(-testutil::kG_one).epsilon(1e-12));
    CHECK_THROWS_AS(rus_rate_mu(Beamformer::ZF, 0.0, pop), std::domain_error);
}

TEST_CASE("random selection MU rates: closed form vs quadrature route")
{
    // E[ups(S)/alpha^2] over the single-user S density must reproduce the
    // G-based closed forms
    for (double alpha : {0.4, 0.8, 1.0}) {
        for (double sigma2 : {0.4, 1.0, 3.0}) {
            const UserPopulation pop{2, {1.3, 0.6}, sigma2, 2.0};
            const double a2 = alpha * alpha;
            for (auto bf : {Beamformer::MRT, Beamformer::ZF}) {
                double quad = 0.0;
                for (double g : pop.gains) {
                    const double a = sigma2 / g;  // MU-mode effective noise over gain
                    quad += integrate_semi_infinite([&](double x) {
                        return upsilon(bf, x, alpha) * a * a * x * std::exp(-a * x);
                    });
                }
                quad /= pop.gains.size() * a2;
                CHECK(rus_rate_mu(bf, alpha, pop) ==
                      doctest::Approx(quad).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("max-gain selection, SU rate")
{
    // K = 1 reduces to the single-user closed form
    CHECK(mus_rate_su(UserPopulation{1, {1.0}, 2.0, 2.0}) ==
          doctest::Approx(1.0).epsilon(1e-9));

    // identical gains match the homogeneous expression
    const auto flat = flat_population(4, 2.0, 1.1);
    const auto homo = mus_rates_homogeneous(Beamformer::ZF, 0.5, 2.0, 4, 1.1);
    CHECK(mus_rate_su(flat) == doctest::Approx(homo.r_s).epsilon(1e-9));
}

TEST_CASE("homogeneous reduction of the max-gain rate expressions")
{
    const double gain = 1.0, sigma2 = 0.632;
    for (int K : {2, 4}) {
        const auto flat = flat_population(K, gain, sigma2);
        for (double alpha : {0.3, 1.0}) {
            for (auto bf : {Beamformer::MRT, Beamformer::ZF}) {
                const auto homo = mus_rates_homogeneous(bf, alpha, gain, K, sigma2);
                CHECK(std::abs(mus_rate_su(flat) - homo.r_s) <= 1e-8);
                CHECK(std::abs(mus_rate_mu_first(bf, alpha, flat) - homo.r_m1) <= 1e-8);
                CHECK(std::abs(mus_rate_mu_second(bf, alpha, flat) - homo.r_m2) <= 1e-8);
            }
        }
    }
}

TEST_CASE("first-user max-gain rate grows with every gain")
{
    const double alpha = 0.6, sigma2 = 1.0;
    const std::vector<double> base{1.0, 0.7, 0.4};
    for (auto bf : {Beamformer::MRT, Beamformer::ZF}) {
        const double ref = mus_rate_mu_first(
            bf, alpha, UserPopulation{3, base, sigma2, 2.0});
        for (std::size_t k = 0; k < base.size(); ++k) {
            auto bumped = base;
            bumped[k] *= 1.5;
            const double up = mus_rate_mu_first(
                bf, alpha, UserPopulation{3, bumped, sigma2, 2.0});
            CHECK(up >= ref - 1e-10);
        }
    }
}

TEST_CASE("CDF-based selection matches max-gain under identical gains")
{
    const auto flat = flat_population(3, 1.4, 0.9);
    CHECK(cus_rate_su(flat) == doctest::Approx(mus_rate_su(flat)).epsilon(1e-8));
    for (auto bf : {Beamformer::MRT, Beamformer::ZF}) {
        for (double alpha : {0.45, 0.9}) {
            CHECK(cus_rate_mu_first(bf, alpha, flat) ==
                  doctest::Approx(mus_rate_mu_first(bf, alpha, flat)).epsilon(1e-8));
            CHECK(cus_rate_mu_second(bf, alpha, flat) ==
                  doctest::Approx(mus_rate_mu_second(bf, alpha, flat)).epsilon(1e-8));
        }
    }
}

TEST_CASE("CDF-based SU rate reduces for a single user")
{
    CHECK(cus_rate_su(UserPopulation{1, {1.0}, 2.0, 2.0}) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("candidate-count mixture weights sum to one")
{
    for (int K : {2, 3, 7}) {
        for (double alpha : {0.3, 0.8, 1.0}) {
            const double a2 = alpha * alpha;
            const double lambda = std::pow(1.0 - a2, K - 1);
            double binom = 1.0;  // C(K-2, m-1)
            double total = 0.0;
            for (int m = 1; m <= K - 1; ++m) {
                total += binom * (K - 1.0) / m * std::pow(a2, m) *
                         std::pow(1.0 - a2, K - 1 - m) / (1.0 - lambda);
                binom = binom * (K - 1 - m) / m;
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("MU-mode rates require at least two users and positive alpha")
{
    const UserPopulation one{1, {1.0}, 1.0, 2.0};
    CHECK_THROWS_AS(mus_rate_mu_first(Beamformer::MRT, 0.5, one), std::domain_error);
    CHECK_THROWS_AS(cus_rate_mu_first(Beamformer::MRT, 0.5, one), std::domain_error);
    const auto pop = even_population(3, 1.0);
    CHECK_THROWS_AS(mus_rate_mu_second(Beamformer::ZF, 0.0, pop), std::domain_error);
    CHECK_THROWS_AS(cus_rate_mu_second(Beamformer::ZF, 0.0, pop), std::domain_error);
}

TEST_CASE("sum-rate assembly and limits")
{
    const auto pop = even_population(4, 0.5);
    for (auto scheme : {Scheme::RUS, Scheme::MUS, Scheme::CUS}) {
        // alpha = 0: SU only
        const auto rb0 = ergodic_sum_rate(scheme, Beamformer::MRT, 0.0, pop);
        CHECK(rb0.lambda == 1.0);
        CHECK(rb0.sum_rate == rb0.r_s);
        CHECK(rb0.r_m1 == 0.0);

        const auto rb = ergodic_sum_rate(scheme, Beamformer::ZF, 0.65, pop);
        CHECK(rb.lambda ==
              doctest::Approx(su_mode_probability(0.65, 4)).epsilon(1e-14));
        CHECK(rb.sum_rate ==
              doctest::Approx(rb.lambda * rb.r_s +
                              (1.0 - rb.lambda) * (rb.r_m1 + rb.r_m2))
                  .epsilon(1e-14));
        CHECK(rb.r_m1 >= rb.r_m2);  // first selection dominates
    }

    // K = 1: all schemes agree
    const UserPopulation one{1, {0.8}, 1.0, 2.0};
    const double r_rus = ergodic_sum_rate(Scheme::RUS, Beamformer::MRT, 0.7, one).sum_rate;
    const double r_mus = ergodic_sum_rate(Scheme::MUS, Beamformer::MRT, 0.7, one).sum_rate;
    const double r_cus = ergodic_sum_rate(Scheme::CUS, Beamformer::MRT, 0.7, one).sum_rate;
    CHECK(r_rus == doctest::Approx(r_mus).epsilon(1e-9));
    CHECK(r_rus == doctest::Approx(r_cus).epsilon(1e-9));

    // identical gains: MUS and CUS coincide
    const auto flat = flat_population(3, 1.0, 1.0);
    const auto mus = ergodic_sum_rate(Scheme::MUS, Beamformer::MRT, 0.5, flat);
    const auto cus = ergodic_sum_rate(Scheme::CUS, Beamformer::MRT, 0.5, flat);
    CHECK(std::abs(mus.sum_rate - cus.sum_rate) <= 1e-8);
    CHECK(std::abs(mus.r_m2 - cus.r_m2) <= 1e-8);
}

TEST_CASE("analytic rates agree with Monte Carlo" * doctest::timeout(300))
{
    // one spot check per scheme; the full grid runs in the acceptance suite
    struct Point {
        Scheme scheme;
        Beamformer bf;
        int K;
        double sigma2;
        double alpha;
    };
    const Point points[] = {
        {Scheme::RUS, Beamformer::MRT, 3, 2.0, 0.5},
        {Scheme::MUS, Beamformer::ZF, 3, 0.2, 0.7},
        {Scheme::CUS, Beamformer::ZF, 4, 0.632, 0.5},
        {Scheme::CUS, Beamformer::MRT, 2, 2.0, 0.3},
    };
    for (const auto& p : points) {
        const auto pop = even_population(p.K, p.sigma2);
        const auto rb = ergodic_sum_rate(p.scheme, p.bf, p.alpha, pop);
        SimConfig cfg;
        cfg.trials = 1000000;
        cfg.seed = 20260810;
        cfg.scheme = p.scheme;
        cfg.bf = p.bf;
        cfg.alpha = p.alpha;
        cfg.pop = pop;
        const auto est = simulate_ergodic(cfg);
        CHECK(std::abs(est.mean - rb.sum_rate) < 4.0 * est.std_error);
    }
}
