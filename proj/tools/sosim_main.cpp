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
//
// Batch experiment runner. Subcommands:
//   analytic   closed-form/quadrature rate components over an alpha grid
//   simulate   Monte-Carlo estimate of the same quantities
//   optimize   alpha* per SNR or user-count axis value
//   fairness   per-user selection frequencies and rates
//   selftest   quick internal consistency checks
// All results are CSV on stdout (or --out PATH); diagnostics go to stderr.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sosim/alpha_opt.hpp"
#include "sosim/analytic_rates.hpp"
#include "sosim/combinatorics.hpp"
#include "sosim/montecarlo.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitGuard = 4;

struct Options {
    std::string scheme = "mus";
    std::string bf = "zf";
    std::optional<double> alpha;
    std::string alpha_grid;  // LO:STEP:HI
    int users = 10;
    std::vector<double> distances;
    std::vector<double> gains;
    std::optional<double> snr_db;
    std::optional<double> sigma2;
    std::string users_list;   // optimize only: comma-separated K values
    std::string snr_db_list;  // optimize only: comma-separated dB values
    long long trials = 1000000;
    unsigned long long seed = 1;
    std::string out;
    bool bits = false;
    bool compare_homo = false;
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int threads = 0;
    bool dump_config = false;
};

sosim::Scheme parse_scheme(const std::string& s)
{
    if (s == "rus") return sosim::Scheme::RUS;
    if (s == "mus") return sosim::Scheme::MUS;
    if (s == "cus") return sosim::Scheme::CUS;
    throw std::invalid_argument("--scheme: expected rus|mus|cus, got '" + s + "'");
}

sosim::Beamformer parse_bf(const std::string& s)
{
    if (s == "mrt") return sosim::Beamformer::MRT;
    if (s == "zf") return sosim::Beamformer::ZF;
    throw std::invalid_argument("--bf: expected mrt|zf, got '" + s + "'");
}

std::vector<double> parse_alpha_grid(const std::string& text)
{
    double lo = 0.0, step = 0.0, hi = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> lo >> c1 >> step >> c2 >> hi) || c1 != ':' || c2 != ':' ||
        step <= 0.0 || hi < lo)
        throw std::invalid_argument("--alpha-grid expects LO:STEP:HI with STEP > 0");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double a = lo + i * step;
        if (a > hi + 1e-12)
            break;
        grid.push_back(std::min(a, hi));
    }
    return grid;
}

std::vector<double> parse_csv_list(const std::string& text, const char* flag)
{
    std::vector<double> values;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(flag) + ": bad number '" + item + "'");
        }
    }
    if (values.empty())
        throw std::invalid_argument(std::string(flag) + ": empty list");
    return values;
}

// Flat key=value config lines, injected as --key=value tokens ahead of the
// explicit command-line arguments (which therefore win).
std::vector<std::string> load_config_tokens(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file: " + path);
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config: empty key in '" + line + "'");
        tokens.push_back("--" + key + "=" + value);
    }
    return tokens;
}

// 17 significant digits: doubles survive a print/parse round trip
std::string fmt(double v)
{
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

// Echo the effective configuration as config-file lines; feeding them back
// through --config reproduces the run.
void echo_config(const Options& opt, bool optimize_cmd, std::ostream& os)
{
    os << "scheme=" << opt.scheme << "\n";
    os << "bf=" << opt.bf << "\n";
    if (!opt.alpha_grid.empty())
        os << "alpha-grid=" << opt.alpha_grid << "\n";
    else if (opt.alpha)
        os << "alpha=" << fmt(*opt.alpha) << "\n";
    auto join = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + fmt(v[i]);
        return s;
    };
    if (!opt.gains.empty())
        os << "gains=" << join(opt.gains) << "\n";
    else if (!opt.distances.empty())
        os << "distances=" << join(opt.distances) << "\n";
    else if (optimize_cmd && !opt.users_list.empty())
        os << "users=" << opt.users_list << "\n";
    else if (!optimize_cmd)
        os << "users=" << opt.users << "\n";
    if (opt.sigma2)
        os << "sigma2=" << fmt(*opt.sigma2) << "\n";
    else if (optimize_cmd && !opt.snr_db_list.empty())
        os << "snr-db=" << opt.snr_db_list << "\n";
    else if (!optimize_cmd && opt.snr_db)
        os << "snr-db=" << fmt(*opt.snr_db) << "\n";
    os << "trials=" << opt.trials << "\n";
    os << "seed=" << opt.seed << "\n";
    os << "abs-tol=" << fmt(opt.abs_tol) << "\n";
    os << "rel-tol=" << fmt(opt.rel_tol) << "\n";
    os << "threads=" << opt.threads << "\n";
    if (opt.bits)
        os << "bits=1\n";
    if (opt.compare_homo)
        os << "compare-homogeneous=1\n";
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_)
                throw std::invalid_argument("cannot open output file: " + path);
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

    void header(const std::vector<std::string>& cols)
    {
        std::ostream& os = stream();
        for (std::size_t i = 0; i < cols.size(); ++i)
            os << (i ? "," : "") << cols[i];
        os << "\n";
    }

    void row(const std::vector<std::string>& cells)
    {
        std::ostream& os = stream();
        for (std::size_t i = 0; i < cells.size(); ++i)
            os << (i ? "," : "") << cells[i];
        os << "\n";
    }

private:
    std::ofstream file_;
};

sosim::UserPopulation build_population(const Options& opt)
{
    sosim::UserPopulation pop;
    if (!opt.gains.empty() && !opt.distances.empty())
        throw std::invalid_argument("give either --distances or --gains, not both");
    if (!opt.gains.empty()) {
        pop.gains = opt.gains;
    } else if (!opt.distances.empty()) {
        pop.gains = sosim::path_loss_from_distances(opt.distances);
    } else {
        pop.gains = sosim::path_loss_from_distances(sosim::default_layout(opt.users));
    }
    pop.num_users = static_cast<int>(pop.gains.size());
    pop.total_power = 2.0;
    if (opt.snr_db && opt.sigma2)
        throw std::invalid_argument("give either --snr-db or --sigma2, not both");
    if (opt.sigma2)
        pop.sigma2 = *opt.sigma2;
    else
        pop.sigma2 = pop.total_power / std::pow(10.0, opt.snr_db.value_or(10.0) / 10.0);
    pop.validate();
    return pop;
}

std::vector<double> alpha_values(const Options& opt)
{
    if (opt.alpha && !opt.alpha_grid.empty())
        throw std::invalid_argument("give either --alpha or --alpha-grid, not both");
    if (!opt.alpha_grid.empty())
        return parse_alpha_grid(opt.alpha_grid);
    return {opt.alpha.value_or(0.5)};
}

double to_units(double nats, bool bits)
{
    return bits ? nats / std::log(2.0) : nats;
}

int cmd_analytic(const Options& opt)
{
    const auto pop = build_population(opt);
    const sosim::QuadratureSpec spec{opt.abs_tol, opt.rel_tol, 2000};
    const auto scheme = parse_scheme(opt.scheme);
    const auto bf = parse_bf(opt.bf);

    CsvWriter csv(opt.out);
    csv.header({"alpha", "lambda", "r_s", "r_m1", "r_m2", "sum_rate"});
    for (double a : alpha_values(opt)) {
        const auto rb = sosim::ergodic_sum_rate(scheme, bf, a, pop, spec);
        csv.row({fmt(a), fmt(rb.lambda), fmt(to_units(rb.r_s, opt.bits)),
                 fmt(to_units(rb.r_m1, opt.bits)), fmt(to_units(rb.r_m2, opt.bits)),
                 fmt(to_units(rb.sum_rate, opt.bits))});
    }
    return kExitOk;
}

int cmd_simulate(const Options& opt)
{
    const auto pop = build_population(opt);
    const int K = pop.num_users;

    std::vector<std::string> cols{"alpha", "mean", "stderr", "trials", "su_frac"};
    for (int k = 0; k < K; ++k) {
        cols.push_back("pi1_freq_" + std::to_string(k));
        cols.push_back("pi2_freq_" + std::to_string(k));
        cols.push_back("rate_" + std::to_string(k));
    }
    CsvWriter csv(opt.out);
    csv.header(cols);

    for (double a : alpha_values(opt)) {
        sosim::SimConfig cfg;
        cfg.trials = opt.trials;
        cfg.seed = opt.seed;
        cfg.scheme = parse_scheme(opt.scheme);
        cfg.bf = parse_bf(opt.bf);
        cfg.alpha = a;
        cfg.pop = pop;
        cfg.threads = opt.threads;
        if (cfg.trials == 1)
            std::cerr << "simulate: single trial, standard error reported as 0\n";
        const auto est = sosim::simulate_ergodic(cfg);
        std::vector<std::string> cells{
            fmt(a), fmt(to_units(est.mean, opt.bits)),
            fmt(to_units(est.std_error, opt.bits)),
            std::to_string(est.trials),
            fmt(static_cast<double>(est.su_count) / est.trials)};
        for (int k = 0; k < K; ++k) {
            cells.push_back(fmt(static_cast<double>(est.pi1_counts[k]) / est.trials));
            cells.push_back(fmt(static_cast<double>(est.pi2_counts[k]) / est.trials));
            cells.push_back(fmt(to_units(est.per_user_rate[k], opt.bits)));
        }
        csv.row(cells);
    }
    return kExitOk;
}

int cmd_optimize(const Options& opt)
{
    const sosim::QuadratureSpec spec{opt.abs_tol, opt.rel_tol, 2000};
    const auto scheme = parse_scheme(opt.scheme);
    const auto bf = parse_bf(opt.bf);

    const std::vector<double> user_values =
        opt.users_list.empty() ? std::vector<double>{10.0}
                               : parse_csv_list(opt.users_list, "--users");
    std::vector<double> snr_values;
    if (!opt.snr_db_list.empty())
        snr_values = parse_csv_list(opt.snr_db_list, "--snr-db");

    // the axis with several values is swept; the other fixes the template
    const bool users_axis = user_values.size() > 1;
    if (users_axis && snr_values.size() > 1)
        throw std::invalid_argument("optimize: sweep either --users or --snr-db, not both");

    if (!snr_values.empty() && opt.sigma2)
        throw std::invalid_argument("give either --snr-db or --sigma2, not both");

    Options base = opt;
    base.users = static_cast<int>(user_values.front());
    if (static_cast<double>(base.users) != user_values.front() || base.users < 1)
        throw std::invalid_argument("--users: counts must be positive integers");
    if (!snr_values.empty())
        base.snr_db = snr_values.front();
    const auto pop = build_population(base);

    std::vector<double> values;
    sosim::SweepAxis axis;
    if (users_axis) {
        axis = sosim::SweepAxis::Users;
        values = user_values;
    } else {
        axis = sosim::SweepAxis::SnrDb;
        values = snr_values.empty()
                     ? std::vector<double>{10.0 * std::log10(pop.total_power / pop.sigma2)}
                     : snr_values;
    }

    std::vector<std::string> cols{"axis", "value", "alpha_star", "rate", "expected_so"};
    if (opt.compare_homo) {
        cols.push_back("alpha_star_homo");
        cols.push_back("rate_homo");
    }
    CsvWriter csv(opt.out);
    csv.header(cols);

    const char* axis_name = users_axis ? "users" : "snr_db";
    const auto rows = sosim::sweep(axis, values, scheme, bf, pop, spec);
    for (const auto& row : rows) {
        std::vector<std::string> cells{axis_name, fmt(row.value), fmt(row.star.alpha),
                                       fmt(to_units(row.star.rate, opt.bits)),
                                       fmt(row.expected_so)};
        if (opt.compare_homo) {
            sosim::UserPopulation p = pop;
            if (users_axis) {
                p.num_users = static_cast<int>(row.value);
                p.gains = sosim::path_loss_from_distances(
                    sosim::default_layout(p.num_users));
            } else {
                p.sigma2 = p.total_power / std::pow(10.0, row.value / 10.0);
            }
            const auto cmp = sosim::compare_homogeneous(scheme, bf, p, spec);
            cells.push_back(fmt(cmp.alpha_star_homo));
            cells.push_back(fmt(to_units(cmp.rate_at_homo, opt.bits)));
        }
        csv.row(cells);
    }
    return kExitOk;
}

int cmd_fairness(const Options& opt)
{
    const auto pop = build_population(opt);
    sosim::SimConfig cfg;
    cfg.trials = opt.trials;
    cfg.seed = opt.seed;
    cfg.scheme = parse_scheme(opt.scheme);
    cfg.bf = parse_bf(opt.bf);
    cfg.alpha = opt.alpha.value_or(0.5);
    cfg.pop = pop;
    cfg.threads = opt.threads;
    const auto est = sosim::simulate_ergodic(cfg);

    CsvWriter csv(opt.out);
    csv.header({"user", "gain", "pi1_freq", "pi2_freq", "mean_rate"});
    double pi1 = 0.0, pi2 = 0.0, rate = 0.0;
    for (int k = 0; k < pop.num_users; ++k) {
        const double f1 = static_cast<double>(est.pi1_counts[k]) / est.trials;
        const double f2 = static_cast<double>(est.pi2_counts[k]) / est.trials;
        const double r = to_units(est.per_user_rate[k], opt.bits);
        pi1 += f1;
        pi2 += f2;
        rate += r;
        csv.row({std::to_string(k), fmt(pop.gains[k]), fmt(f1), fmt(f2), fmt(r)});
    }
    // aggregate row: total pi1 is 1, total pi2 the MU fraction, total rate
    // the ergodic sum-rate
    csv.row({"-1", fmt(0.0), fmt(pi1), fmt(pi2), fmt(rate)});
    return kExitOk;
}

int cmd_selftest(const Options& opt)
{
    using namespace sosim;
    int failures = 0;
    auto check = [&failures](bool ok, const std::string& what) {
        std::cerr << (ok ? "ok   " : "FAIL ") << what << "\n";
        if (!ok)
            ++failures;
    };

    check(std::abs(lower_gamma2(1.0) + upper_gamma2(1.0) - 1.0) < 1e-15,
          "incomplete gamma complementarity");
    check(std::abs(integrate_semi_infinite([](double x) { return x * std::exp(-x); }) -
                   1.0) < 1e-9,
          "quadrature normalization");
    {
        const double direct = integrate([](double y) { return std::log1p(y); },
                                        0.0, 1.0);
        check(std::abs(upsilon(Beamformer::ZF, 1.0, 1.0) - direct) < 1e-9,
              "upsilon kernel vs direct quadrature");
    }
    {
        UserPopulation pop{1, {1.0}, 2.0, 2.0};
        check(std::abs(rus_rate_su(pop) - 1.0) < 1e-12, "single-user closed form");
    }
    {
        UserPopulation pop{4, path_loss_from_distances(default_layout(4)), 0.2, 2.0};
        const auto rb = ergodic_sum_rate(Scheme::MUS, Beamformer::ZF, 0.5, pop, {});
        const double assembled =
            rb.lambda * rb.r_s + (1.0 - rb.lambda) * (rb.r_m1 + rb.r_m2);
        check(std::abs(rb.sum_rate - assembled) < 1e-14, "rate assembly identity");
        SimConfig cfg{200000, 7, Scheme::MUS, Beamformer::ZF, 0.5, pop, opt.threads};
        const auto est = simulate_ergodic(cfg);
        check(std::abs(est.mean - rb.sum_rate) < 5.0 * est.std_error,
              "analytic vs Monte-Carlo sum-rate");
        const auto est2 = simulate_ergodic(cfg);
        check(est.mean == est2.mean && est.std_error == est2.std_error,
              "simulation determinism");
    }
    {
        double total = 0.0;
        for (int i = 2; i <= 5; ++i)
            total += rank_selection_prob(i, 0.6, 5);
        check(std::abs(total - 1.0) < 1e-12, "rank-probability normalization");
    }
    std::cerr << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return failures == 0 ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"ergodic sum-rate toolkit for semi-orthogonal user selection"};
    app.require_subcommand(1);

    Options opt;
    std::string config_path_help;  // --config is expanded before parsing
    auto add_common = [&](CLI::App* cmd, bool optimize_cmd) {
        cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        cmd->add_option("--config", config_path_help, "key=value config file");
        cmd->add_option("--scheme", opt.scheme, "rus|mus|cus");
        cmd->add_option("--bf", opt.bf, "mrt|zf");
        cmd->add_option("--alpha", opt.alpha, "orthogonality threshold in [0,1]");
        cmd->add_option("--alpha-grid", opt.alpha_grid, "LO:STEP:HI alpha grid");
        if (optimize_cmd) {
            cmd->add_option("--users", opt.users_list, "comma-separated user counts");
            cmd->add_option("--snr-db", opt.snr_db_list, "comma-separated transmit SNRs in dB");
        } else {
            cmd->add_option("--users", opt.users, "number of users (even 0.5-1.5 km layout)");
            cmd->add_option("--snr-db", opt.snr_db, "transmit SNR in dB (P_t/sigma2)");
        }
        cmd->add_option("--distances", opt.distances, "user distances in km")
            ->delimiter(',');
        cmd->add_option("--gains", opt.gains, "linear path gains")->delimiter(',');
        cmd->add_option("--sigma2", opt.sigma2, "noise power");
        cmd->add_option("--trials", opt.trials, "Monte-Carlo trials");
        cmd->add_option("--seed", opt.seed, "RNG seed");
        cmd->add_option("--out", opt.out, "output CSV path (default stdout)");
        cmd->add_flag("--bits", opt.bits, "report rates in bits instead of nats");
        cmd->add_flag("--compare-homogeneous", opt.compare_homo,
                      "also optimize with unit gains");
        cmd->add_option("--abs-tol", opt.abs_tol, "quadrature absolute tolerance");
        cmd->add_option("--rel-tol", opt.rel_tol, "quadrature relative tolerance");
        cmd->add_option("--threads", opt.threads, "worker threads (0 = all)");
        cmd->add_flag("--dump-config", opt.dump_config,
                      "print the effective config and exit");
    };

    CLI::App* analytic = app.add_subcommand("analytic", "closed-form rate components");
    CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo rate estimate");
    CLI::App* optimize = app.add_subcommand("optimize", "alpha* over an SNR or K axis");
    CLI::App* fairness = app.add_subcommand("fairness", "per-user selection statistics");
    CLI::App* selftest = app.add_subcommand("selftest", "internal consistency checks");
    add_common(analytic, false);
    add_common(simulate, false);
    add_common(optimize, true);
    add_common(fairness, false);
    add_common(selftest, false);

    // expand --config PATH into its key=value tokens, keeping explicit
    // arguments after them so the command line takes precedence
    std::vector<std::string> args;
    try {
        for (int i = 1; i < argc; ++i) {
            const std::string arg = argv[i];
            if (arg == "--config") {
                if (i + 1 >= argc)
                    throw std::invalid_argument("--config needs a file path");
                const auto tokens = load_config_tokens(argv[++i]);
                args.insert(args.begin() + (args.empty() ? 0 : 1), tokens.begin(),
                            tokens.end());
            } else if (arg.rfind("--config=", 0) == 0) {
                const auto tokens = load_config_tokens(arg.substr(9));
                args.insert(args.begin() + (args.empty() ? 0 : 1), tokens.begin(),
                            tokens.end());
            } else {
                args.push_back(arg);
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        std::vector<const char*> cargs{argv[0]};
        for (const auto& a : args)
            cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (opt.dump_config) {
            echo_config(opt, optimize->parsed(), std::cout);
            return kExitOk;
        }
        if (analytic->parsed())
            return cmd_analytic(opt);
        if (simulate->parsed())
            return cmd_simulate(opt);
        if (optimize->parsed())
            return cmd_optimize(opt);
        if (fairness->parsed())
            return cmd_fairness(opt);
        if (selftest->parsed())
            return cmd_selftest(opt);
    } catch (const sosim::guard_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const sosim::quadrature_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitConfig;
}
