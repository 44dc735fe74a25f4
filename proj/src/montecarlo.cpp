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

#include "sosim/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace sosim {

namespace {

// Trials are processed in fixed-size blocks and block results are reduced
// in block order, so the floating-point result does not depend on the
// number of worker threads.
constexpr std::int64_t kBlockSize = 8192;

struct BlockStats {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::int64_t su = 0;
    std::int64_t mu = 0;
    std::int64_t redraws = 0;
    std::vector<std::int64_t> pi1, pi2;
    std::vector<double> user_rate;
    std::vector<double> y_mrt, y_zf;  // only filled when collecting couplings

    explicit BlockStats(int num_users)
        : pi1(num_users, 0), pi2(num_users, 0), user_rate(num_users, 0.0) {}
};

int resolve_threads(int requested, std::int64_t blocks)
{
    int n = requested > 0 ? requested
                          : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1)
        n = 1;
    return static_cast<int>(std::min<std::int64_t>(n, blocks));
}

// Runs fn(trial_index, block_stats) for every trial, in parallel over blocks.
template <class TrialFn>
std::vector<BlockStats> run_trials(std::int64_t trials, int num_users, int threads,
                                   TrialFn&& fn)
{
    const std::int64_t blocks = (trials + kBlockSize - 1) / kBlockSize;
    std::vector<BlockStats> stats(blocks, BlockStats(num_users));
    const int workers = resolve_threads(threads, blocks);

    std::atomic<std::int64_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::int64_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= blocks)
                return;
            const std::int64_t begin = b * kBlockSize;
            const std::int64_t end = std::min(trials, begin + kBlockSize);
            for (std::int64_t t = begin; t < end; ++t)
                fn(t, stats[b]);
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }
    return stats;
}

Estimate reduce(const std::vector<BlockStats>& stats, std::int64_t trials,
                int num_users)
{
    Estimate est;
    est.trials = trials;
    est.pi1_counts.assign(num_users, 0);
    est.pi2_counts.assign(num_users, 0);
    est.per_user_rate.assign(num_users, 0.0);
    double sum = 0.0, sum_sq = 0.0;
    for (const BlockStats& b : stats) {
        sum += b.sum;
        sum_sq += b.sum_sq;
        est.su_count += b.su;
        est.mu_count += b.mu;
        est.redraws += b.redraws;
        for (int k = 0; k < num_users; ++k) {
            est.pi1_counts[k] += b.pi1[k];
            est.pi2_counts[k] += b.pi2[k];
            est.per_user_rate[k] += b.user_rate[k];
        }
    }
    est.mean = sum / trials;
    if (trials > 1) {
        const double var = (sum_sq - trials * est.mean * est.mean) / (trials - 1);
        est.std_error = std::sqrt(std::max(var, 0.0) / trials);
    }
    for (double& r : est.per_user_rate)
        r /= trials;
    return est;
}

// Channel draw plus scheduling, redrawing from the next substream on the
// (measure-zero) degenerate realizations that ZF cannot serve. The
// realization points at per-thread scratch valid until the next call.
struct TrialOutcome {
    const ChannelRealization* real;
    Schedule sched;
    std::array<double, 2> sinrs;
    int scheduled;
    double rate;
};

TrialOutcome run_one(const SimConfig& cfg, std::int64_t trial, BlockStats& acc)
{
    thread_local ChannelRealization real;
    for (std::uint32_t attempt = 0;; ++attempt) {
        RandomStream rng(cfg.seed, static_cast<std::uint64_t>(trial), attempt);
        draw_channel_into(rng, cfg.pop.num_users, real);
        const Schedule sched = select_users(cfg.scheme, real, cfg.pop, cfg.alpha, rng);
        try {
            const BeamSet beams = make_weights(cfg.bf, sched, real);
            const auto sinrs = sinr(sched, beams, cfg.pop, real);
            TrialOutcome out{&real, sched, {0.0, 0.0},
                             static_cast<int>(sinrs.size()), 0.0};
            for (int i = 0; i < out.scheduled; ++i)
                out.sinrs[i] = sinrs[i];
            out.rate = instantaneous_sum_rate(sinrs);
            return out;
        } catch (const degenerate_channel_error&) {
            ++acc.redraws;
        }
    }
}

}  // namespace

void SimConfig::validate() const
{
    pop.validate();
    if (trials < 1)
        throw std::invalid_argument("SimConfig: trials must be >= 1");
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("SimConfig: alpha must lie in [0, 1]");
}

Estimate simulate_ergodic(const SimConfig& cfg)
{
    cfg.validate();
    const int K = cfg.pop.num_users;
    auto stats = run_trials(cfg.trials, K, cfg.threads, [&](std::int64_t t, BlockStats& acc) {
        const TrialOutcome out = run_one(cfg, t, acc);
        acc.sum += out.rate;
        acc.sum_sq += out.rate * out.rate;
        ++acc.pi1[out.sched.first];
        acc.user_rate[out.sched.first] += std::log1p(out.sinrs[0]);
        if (out.sched.mode == Mode::MU) {
            ++acc.mu;
            ++acc.pi2[*out.sched.second];
            acc.user_rate[*out.sched.second] += std::log1p(out.sinrs[1]);
        } else {
            ++acc.su;
        }
    });
    return reduce(stats, cfg.trials, K);
}

Estimate exhaustive_optimal(const UserPopulation& pop, Beamformer bf,
                            std::int64_t trials, std::uint64_t seed, int threads)
{
    pop.validate();
    if (trials < 1)
        throw std::invalid_argument("exhaustive_optimal: trials must be >= 1");
    const int K = pop.num_users;

    auto stats = run_trials(trials, K, threads, [&](std::int64_t t, BlockStats& acc) {
        for (std::uint32_t attempt = 0;; ++attempt) {
            RandomStream rng(seed, static_cast<std::uint64_t>(t), attempt);
            const ChannelRealization real = draw_channel(rng, K);

            double best_rate = -1.0;
            Schedule best;
            std::vector<double> best_sinrs;
            bool degenerate = false;

            for (int k = 0; k < K && !degenerate; ++k) {
                Schedule cand{Mode::SU, k, std::nullopt};
                const auto s = sinr(cand, make_weights(bf, cand, real), pop, real);
                const double rate = instantaneous_sum_rate(s);
                if (rate > best_rate) {
                    best_rate = rate;
                    best = cand;
                    best_sinrs = s;
                }
            }
            for (int i = 0; i < K && !degenerate; ++i) {
                for (int j = i + 1; j < K; ++j) {
                    Schedule cand{Mode::MU, i, j};
                    try {
                        const auto s = sinr(cand, make_weights(bf, cand, real), pop, real);
                        const double rate = instantaneous_sum_rate(s);
                        if (rate > best_rate) {
                            best_rate = rate;
                            best = cand;
                            best_sinrs = s;
                        }
                    } catch (const degenerate_channel_error&) {
                        degenerate = true;
                        break;
                    }
                }
            }
            if (degenerate) {
                ++acc.redraws;
                continue;
            }

            acc.sum += best_rate;
            acc.sum_sq += best_rate * best_rate;
            ++acc.pi1[best.first];
            acc.user_rate[best.first] += std::log1p(best_sinrs[0]);
            if (best.mode == Mode::MU) {
                ++acc.mu;
                ++acc.pi2[*best.second];
                acc.user_rate[*best.second] += std::log1p(best_sinrs[1]);
            } else {
                ++acc.su;
            }
            return;
        }
    });
    return reduce(stats, trials, K);
}

DistributionReport empirical_distribution_checks(const SimConfig& cfg)
{
    cfg.validate();
    if (!(cfg.alpha > 0.0) || cfg.pop.num_users < 2)
        throw std::invalid_argument(
            "empirical_distribution_checks: config cannot reach MU mode");
    const int K = cfg.pop.num_users;
    const double a2 = cfg.alpha * cfg.alpha;

    auto stats = run_trials(cfg.trials, K, cfg.threads, [&](std::int64_t t, BlockStats& acc) {
        const TrialOutcome out = run_one(cfg, t, acc);
        if (out.sched.mode != Mode::MU)
            return;
        acc.y_mrt.push_back(so_coherence(out.real->h[out.sched.first],
                                         out.real->h[*out.sched.second]));
        const BeamSet zf = zf_weights(out.sched, *out.real);
        const cvec2& h1 = out.real->h[out.sched.first];
        acc.y_zf.push_back(std::norm(hdot(h1, zf.w[0])) / norm2(h1));
    });

    std::vector<double> y_mrt, y_zf;
    for (const BlockStats& b : stats) {
        y_mrt.insert(y_mrt.end(), b.y_mrt.begin(), b.y_mrt.end());
        y_zf.insert(y_zf.end(), b.y_zf.begin(), b.y_zf.end());
    }
    const std::int64_t n = static_cast<std::int64_t>(y_mrt.size());
    if (n < 1000)
        throw std::runtime_error(
            "empirical_distribution_checks: fewer than 1000 MU samples");

    auto ks_statistic = [n](std::vector<double>& sample, auto cdf) {
        std::sort(sample.begin(), sample.end());
        double d = 0.0;
        for (std::int64_t i = 0; i < n; ++i) {
            const double F = cdf(sample[i]);
            d = std::max(d, std::abs(F - static_cast<double>(i) / n));
            d = std::max(d, std::abs(static_cast<double>(i + 1) / n - F));
        }
        return d;
    };

    DistributionReport report;
    report.mu_samples = n;
    report.ks_y_mrt = ks_statistic(y_mrt, [a2](double y) {
        return std::clamp(y / a2, 0.0, 1.0);
    });
    report.ks_y_zf = ks_statistic(y_zf, [a2](double y) {
        return std::clamp((y - (1.0 - a2)) / a2, 0.0, 1.0);
    });
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    report.ks_critical_1pct = 1.62762 / (sqrt_n + 0.12 + 0.11 / sqrt_n);
    return report;
}

}  // namespace sosim
