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

#include "sosim/analytic_rates.hpp"

#include <cmath>
#include <vector>

#include "sosim/combinatorics.hpp"

namespace sosim {

namespace {

// (1+u) ln(1+u), the antiderivative building block shared by both
// closed-form upsilon kernels; T(0) = 0.
inline double xlogx1(double u)
{
    return u > 0.0 ? (1.0 + u) * std::log1p(u) : 0.0;
}

void require_alpha_mu(double alpha)
{
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::domain_error("MU-mode rate: alpha must lie in (0, 1]");
}

void require_mu_capable(const UserPopulation& pop)
{
    if (pop.num_users < 2)
        throw std::domain_error("MU-mode rate: need at least two users");
}

// Per-user inverse SNR scale a_k = sigma2_eff / g_k for the given mode.
std::vector<double> snr_scales(const UserPopulation& pop, Mode mode)
{
    const double s2 = effective_noise(pop, mode).sigma2_eff;
    std::vector<double> a(pop.num_users);
    for (int k = 0; k < pop.num_users; ++k)
        a[k] = s2 / pop.gains[k];
    return a;
}

}  // namespace

double su_mode_probability(double alpha, int num_users)
{
    if (alpha < 0.0 || alpha > 1.0)
        throw std::domain_error("su_mode_probability: alpha must lie in [0, 1]");
    if (num_users < 1)
        throw std::domain_error("su_mode_probability: need at least one user");
    return std::pow(1.0 - alpha * alpha, num_users - 1);
}

double upsilon(Beamformer bf, double x, double alpha)
{
    if (!(x > 0.0))
        throw std::domain_error("upsilon: x must be positive");
    require_alpha_mu(alpha);
    const double a2 = alpha * alpha;
    if (bf == Beamformer::MRT)
        return (xlogx1(x + a2 * x) - xlogx1(x) - xlogx1(a2 * x)) / x;
    return (xlogx1(x) - xlogx1((1.0 - a2) * x)) / x - a2;
}

// --- RUS ---------------------------------------------------------------------

double rus_rate_su(const UserPopulation& pop)
{
    pop.validate();
    const auto c = snr_scales(pop, Mode::SU);
    double sum = 0.0;
    for (double ck : c)
        sum += g_function(ck) * (ck - 1.0);
    return 1.0 + sum / pop.num_users;
}

double rus_rate_mu(Beamformer bf, double alpha, const UserPopulation& pop)
{
    pop.validate();
    require_mu_capable(pop);
    require_alpha_mu(alpha);
    const double a2 = alpha * alpha;
    const auto a = snr_scales(pop, Mode::MU);
    double sum = 0.0;
    for (double ak : a) {
        if (bf == Beamformer::MRT) {
            sum += g_function(ak / a2) + g_function(ak) / a2 -
                   (a2 + 1.0) / a2 * g_function(ak / (1.0 + a2));
        } else {
            // the (1-a2) G(ak/(1-a2)) term vanishes in the alpha -> 1 limit
            const double lead =
                a2 < 1.0 ? (1.0 - a2) / a2 * g_function(ak / (1.0 - a2)) : 0.0;
            sum += lead - g_function(ak) / a2;
        }
    }
    return sum / pop.num_users;
}

// --- MUS ---------------------------------------------------------------------

double mus_rate_su(const UserPopulation& pop, const QuadratureSpec& spec)
{
    pop.validate();
    const auto c = snr_scales(pop, Mode::SU);
    // E[ln(1 + max_k S_k)] after the substitution u = e^x - 1
    auto integrand = [&c](double u) {
        double prod = 1.0;
        for (double ck : c)
            prod *= lower_gamma2(ck * u);
        return (1.0 - prod) / (1.0 + u);
    };
    return integrate_semi_infinite(integrand, spec);
}

double mus_rate_mu_first(Beamformer bf, double alpha, const UserPopulation& pop,
                         const QuadratureSpec& spec)
{
    pop.validate();
    require_mu_capable(pop);
    require_alpha_mu(alpha);
    const double a2 = alpha * alpha;
    const auto a = snr_scales(pop, Mode::MU);
    const int K = pop.num_users;

    // density of the strongest received SNR against the Y-averaged rate kernel
    auto integrand = [&](double x) {
        std::vector<double> cdf(K);
        for (int k = 0; k < K; ++k)
            cdf[k] = lower_gamma2(a[k] * x);
        double sum = 0.0;
        for (int k = 0; k < K; ++k) {
            double term = a[k] * a[k] * x * std::exp(-a[k] * x);
            for (int j = 0; j < K; ++j)
                if (j != k)
                    term *= cdf[j];
            sum += term;
        }
        return upsilon(bf, x, alpha) * sum;
    };
    return integrate_semi_infinite(integrand, spec) / a2;
}

double mus_rate_mu_second(Beamformer bf, double alpha, const UserPopulation& pop,
                          const QuadratureSpec& spec)
{
    pop.validate();
    require_mu_capable(pop);
    require_alpha_mu(alpha);
    const double a2 = alpha * alpha;
    const auto a = snr_scales(pop, Mode::MU);
    const int K = pop.num_users;
    const double lambda = su_mode_probability(alpha, K);

    // rank weights Pr{pi(2) is rank i | MU} with the 1/alpha^2 of the
    // Y-average already cancelled against the alpha^2 in the numerator
    std::vector<double> weight(K + 1);
    for (int i = 2; i <= K; ++i)
        weight[i] = std::pow(1.0 - a2, i - 2) / (1.0 - lambda);

    // combination matrices for every (rank, user), built once
    std::vector<std::vector<ComboPair>> combos(K + 1);
    for (int i = 2; i <= K; ++i) {
        combos[i].reserve(K);
        for (int k = 0; k < K; ++k)
            combos[i].push_back(combo_matrices(K, i, k));
    }

    auto integrand = [&](double x) {
        std::vector<double> cdf(K), density(K);
        for (int k = 0; k < K; ++k) {
            cdf[k] = lower_gamma2(a[k] * x);
            density[k] = a[k] * a[k] * x * std::exp(-a[k] * x);
        }
        double total = 0.0;
        for (int i = 2; i <= K; ++i) {
            double rank_sum = 0.0;
            for (int k = 0; k < K; ++k) {
                const ComboPair& cp = combos[i][k];
                double user_sum = 0.0;
                for (int m = 0; m < cp.row_count; ++m) {
                    double term = 1.0;
                    for (int j = 0; j < cp.included_width; ++j)
                        term *= cdf[cp.included_at(m, j)];
                    for (int j = 0; j < cp.excluded_width; ++j)
                        term *= 1.0 - cdf[cp.excluded_at(m, j)];
                    user_sum += term;
                }
                rank_sum += density[k] * user_sum;
            }
            total += weight[i] * rank_sum;
        }
        return upsilon(bf, x, alpha) * total;
    };
    return integrate_semi_infinite(integrand, spec);
}

HomogeneousRates mus_rates_homogeneous(Beamformer bf, double alpha, double gain,
                                       int num_users, double sigma2,
                                       const QuadratureSpec& spec,
                                       double total_power)
{
    UserPopulation pop{num_users, std::vector<double>(num_users, gain), sigma2,
                       total_power};
    pop.validate();
    const int K = num_users;
    const double csu = effective_noise(pop, Mode::SU).sigma2_eff / gain;

    HomogeneousRates rates{};
    rates.r_s = integrate_semi_infinite(
        [csu, K](double u) {
            return (1.0 - std::pow(lower_gamma2(csu * u), K)) / (1.0 + u);
        },
        spec);

    if (K < 2) {
        rates.r_m1 = 0.0;
        rates.r_m2 = 0.0;
        return rates;
    }
    require_alpha_mu(alpha);
    const double a2 = alpha * alpha;
    const double a = effective_noise(pop, Mode::MU).sigma2_eff / gain;
    const double lambda = su_mode_probability(alpha, K);

    rates.r_m1 = K / a2 *
                 integrate_semi_infinite(
                     [&](double x) {
                         return upsilon(bf, x, alpha) * a * a * x * std::exp(-a * x) *
                                std::pow(lower_gamma2(a * x), K - 1);
                     },
                     spec);

    // binomial expansion of {[1 - alpha^2 Gamma]^(K-1) - gamma^(K-1)}/(1-alpha^2),
    // which stays finite at alpha = 1
    std::vector<double> binom(K);
    binom[0] = 1.0;
    for (int j = 1; j < K; ++j)
        binom[j] = binom[j - 1] * (K - j) / j;

    rates.r_m2 = K / (1.0 - lambda) *
                 integrate_semi_infinite(
                     [&](double x) {
                         const double F = lower_gamma2(a * x);
                         const double Fc = 1.0 - F;
                         double bracket = 0.0;
                         double pow_fc = 1.0;  // Fc^j
                         for (int j = 1; j < K; ++j) {
                             pow_fc *= Fc;
                             bracket += binom[j] * std::pow(1.0 - a2, j - 1) * pow_fc *
                                        std::pow(F, K - 1 - j);
                         }
                         return upsilon(bf, x, alpha) * a * a * x * std::exp(-a * x) *
                                bracket;
                     },
                     spec);
    return rates;
}

// --- CUS ---------------------------------------------------------------------

double cus_rate_su(const UserPopulation& pop, const QuadratureSpec& spec)
{
    pop.validate();
    const auto c = snr_scales(pop, Mode::SU);
    const int K = pop.num_users;
    auto integrand = [&](double x) {
        double sum = 0.0;
        for (double ck : c)
            sum += ck * ck * x * std::exp(-ck * x) *
                   std::pow(lower_gamma2(ck * x), K - 1);
        return std::log1p(x) * sum;
    };
    return integrate_semi_infinite(integrand, spec);
}

double cus_rate_mu_first(Beamformer bf, double alpha, const UserPopulation& pop,
                         const QuadratureSpec& spec)
{
    pop.validate();
    require_mu_capable(pop);
    require_alpha_mu(alpha);
    const double a2 = alpha * alpha;
    const auto a = snr_scales(pop, Mode::MU);
    const int K = pop.num_users;
    auto integrand = [&](double x) {
        double sum = 0.0;
        for (double ak : a)
            sum += ak * ak * x * std::exp(-ak * x) *
                   std::pow(lower_gamma2(ak * x), K - 1);
        return upsilon(bf, x, alpha) * sum;
    };
    return integrate_semi_infinite(integrand, spec) / a2;
}

double cus_rate_mu_second(Beamformer bf, double alpha, const UserPopulation& pop,
                          const QuadratureSpec& spec)
{
    pop.validate();
    require_mu_capable(pop);
    require_alpha_mu(alpha);
    const double a2 = alpha * alpha;
    const auto a = snr_scales(pop, Mode::MU);
    const int K = pop.num_users;
    const double lambda = su_mode_probability(alpha, K);

    // c_m = Pr{m semi-orthogonal candidates | MU}; sums to 1 over m = 1..K-1
    std::vector<double> c_m(K);
    {
        double binom = 1.0;  // C(K-2, m-1)
        for (int m = 1; m <= K - 1; ++m) {
            c_m[m] = binom * (K - 1.0) / m * std::pow(a2, m) *
                     std::pow(1.0 - a2, K - 1 - m) / (1.0 - lambda);
            binom = binom * (K - 1 - m) / m;
        }
    }

    auto integrand = [&](double x) {
        double total = 0.0;
        for (int k = 0; k < K; ++k) {
            const double F = lower_gamma2(a[k] * x);
            const double density = a[k] * a[k] * x * std::exp(-a[k] * x);
            // F^(K-1) and the running F^(m-1) for the rank mixture
            const double f_top = std::pow(F, K - 1);
            double f_pow = 1.0;  // F^(m-1)
            double mix = 0.0;
            for (int m = 1; m <= K - 1; ++m) {
                const double psi = f_top + (m * f_pow - K * f_top) / (K - m);
                mix += c_m[m] * psi;
                f_pow *= F;
            }
            total += density * mix;
        }
        return upsilon(bf, x, alpha) * total;
    };
    // the Y-average contributes the 1/alpha^2 normalization, as in the
    // first-user expression
    return integrate_semi_infinite(integrand, spec) / a2;
}

// -----------------------------------------------------------------------------

RateBreakdown ergodic_sum_rate(Scheme scheme, Beamformer bf, double alpha,
                               const UserPopulation& pop,
                               const QuadratureSpec& spec)
{
    pop.validate();
    if (alpha < 0.0 || alpha > 1.0)
        throw std::domain_error("ergodic_sum_rate: alpha must lie in [0, 1]");

    RateBreakdown out;
    switch (scheme) {
        case Scheme::RUS: out.r_s = rus_rate_su(pop); break;
        case Scheme::MUS: out.r_s = mus_rate_su(pop, spec); break;
        case Scheme::CUS: out.r_s = cus_rate_su(pop, spec); break;
    }

    if (alpha == 0.0 || pop.num_users == 1) {
        out.lambda = 1.0;
        out.sum_rate = out.r_s;
        return out;
    }

    out.lambda = su_mode_probability(alpha, pop.num_users);
    switch (scheme) {
        case Scheme::RUS:
            out.r_m1 = rus_rate_mu(bf, alpha, pop);
            out.r_m2 = out.r_m1;
            break;
        case Scheme::MUS:
            out.r_m1 = mus_rate_mu_first(bf, alpha, pop, spec);
            out.r_m2 = mus_rate_mu_second(bf, alpha, pop, spec);
            break;
        case Scheme::CUS:
            out.r_m1 = cus_rate_mu_first(bf, alpha, pop, spec);
            out.r_m2 = cus_rate_mu_second(bf, alpha, pop, spec);
            break;
    }
    out.sum_rate = out.lambda * out.r_s + (1.0 - out.lambda) * (out.r_m1 + out.r_m2);
    return out;
}

}  // namespace sosim
