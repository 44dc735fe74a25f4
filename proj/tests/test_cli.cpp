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
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

const std::string kCli = SOSIM_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string output;  // stdout only
};

RunResult run(const std::string& args)
{
    const std::string out_path = "cli_stdout.tmp";
    const std::string cmd = kCli + " " + args + " > " + out_path + " 2> cli_stderr.tmp";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    int code = -1;
    if (status != -1 && WIFEXITED(status))
        code = WEXITSTATUS(status);
    return {code, buf.str()};
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("analytic: fixed header and degenerate grid")
{
    const auto res = run("analytic --scheme mus --bf zf --alpha-grid 0:0.5:0 "
                         "--users 3 --snr-db 10");
    CHECK(res.exit_code == 0);
    const auto rows = parse_csv(res.output);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"alpha", "lambda", "r_s", "r_m1",
                                              "r_m2", "sum_rate"});
    CHECK(rows[1][0] == "0");
    CHECK(rows[1][1] == "1");               // lambda = 1 at alpha = 0
    CHECK(rows[1][2] == rows[1][5]);        // sum rate equals r_s
}

TEST_CASE("analytic: random selection has symmetric MU rates")
{
    const auto res = run("analytic --scheme rus --bf mrt --alpha-grid 0.1:0.1:1 "
                         "--users 4 --snr-db 10");
    CHECK(res.exit_code == 0);
    const auto rows = parse_csv(res.output);
    REQUIRE(rows.size() > 2);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i][3] == rows[i][4]);
}

TEST_CASE("simulate: byte-identical output for a fixed seed")
{
    const std::string args =
        "simulate --scheme cus --bf zf --alpha 0.6 --users 3 --snr-db 10 "
        "--trials 40000 --seed 7 --out ";
    CHECK(run(args + "sim_a.csv").exit_code == 0);
    CHECK(run(args + "sim_b.csv --threads 1").exit_code == 0);
    CHECK(run(args + "sim_c.csv --threads 5").exit_code == 0);
    const auto a = slurp("sim_a.csv");
    CHECK(!a.empty());
    CHECK(a == slurp("sim_b.csv"));
    CHECK(a == slurp("sim_c.csv"));
}

TEST_CASE("simulate: explicit gains and bits conversion")
{
    const auto nats = run("simulate --scheme rus --bf mrt --alpha 0.5 "
                          "--gains 1.0,2.0 --sigma2 1.0 --trials 5000 --seed 3");
    const auto bits = run("simulate --scheme rus --bf mrt --alpha 0.5 "
                          "--gains 1.0,2.0 --sigma2 1.0 --trials 5000 --seed 3 --bits");
    CHECK(nats.exit_code == 0);
    CHECK(bits.exit_code == 0);
    const double mean_nats = std::stod(parse_csv(nats.output)[1][1]);
    const double mean_bits = std::stod(parse_csv(bits.output)[1][1]);
    CHECK(mean_bits == doctest::Approx(mean_nats / std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("optimize: one row per axis value")
{
    const auto res = run("optimize --scheme rus --bf zf --snr-db 0,10 --users 3");
    CHECK(res.exit_code == 0);
    const auto rows = parse_csv(res.output);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"axis", "value", "alpha_star", "rate",
                                              "expected_so"});
    CHECK(rows[1][0] == "snr_db");
    CHECK(rows[1][1] == "0");
    CHECK(rows[2][1] == "10");
}

TEST_CASE("optimize: homogeneous comparison columns appear on request")
{
    const auto res = run("optimize --scheme rus --bf mrt --snr-db 10 --users 4 "
                         "--compare-homogeneous");
    CHECK(res.exit_code == 0);
    const auto rows = parse_csv(res.output);
    REQUIRE(rows.size() == 2);
    REQUIRE(rows[0].size() == 7);
    CHECK(rows[0][5] == "alpha_star_homo");
    const double rate = std::stod(rows[1][3]);
    const double rate_homo = std::stod(rows[1][6]);
    CHECK(rate_homo <= rate + 1e-9);
}

TEST_CASE("fairness: per-user rows plus aggregate")
{
    const auto res = run("fairness --scheme rus --bf zf --alpha 0.5 --users 4 "
                         "--snr-db 10 --trials 40000 --seed 11");
    CHECK(res.exit_code == 0);
    const auto rows = parse_csv(res.output);
    REQUIRE(rows.size() == 6);  // header + 4 users + aggregate
    CHECK(rows[0] == std::vector<std::string>{"user", "gain", "pi1_freq", "pi2_freq",
                                              "mean_rate"});
    CHECK(rows[5][0] == "-1");
    CHECK(std::stod(rows[5][2]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("simulate: a single trial reports zero standard error")
{
    const auto res = run("simulate --scheme rus --bf mrt --alpha 0.5 --users 2 "
                         "--snr-db 10 --trials 1 --seed 1");
    CHECK(res.exit_code == 0);
    const auto rows = parse_csv(res.output);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][2] == "0");
}

TEST_CASE("config file reproduces command-line runs")
{
    {
        std::ofstream cfg("run.cfg");
        cfg << "scheme=mus\nbf=zf\nalpha=0.4\nusers=3\nsnr-db=10\n"
               "trials=20000\nseed=5\n";
    }
    CHECK(run("simulate --config run.cfg --out cfg_run.csv").exit_code == 0);
    CHECK(run("simulate --scheme mus --bf zf --alpha 0.4 --users 3 --snr-db 10 "
              "--trials 20000 --seed 5 --out flag_run.csv")
              .exit_code == 0);
    CHECK(slurp("cfg_run.csv") == slurp("flag_run.csv"));

    // command line overrides the file
    CHECK(run("simulate --config run.cfg --seed 6 --out cfg_run6.csv").exit_code == 0);
    CHECK(slurp("cfg_run6.csv") != slurp("flag_run.csv"));
    CHECK(run("simulate --scheme mus --bf zf --alpha 0.4 --users 3 --snr-db 10 "
              "--trials 20000 --seed 6 --out flag_run6.csv")
              .exit_code == 0);
    CHECK(slurp("cfg_run6.csv") == slurp("flag_run6.csv"));
}

TEST_CASE("an echoed config re-parses to an identical run")
{
    const std::string flags =
        "simulate --scheme cus --bf mrt --alpha 0.7 --distances 0.5,0.9,1.4 "
        "--sigma2 0.8 --trials 15000 --seed 9";
    const auto echoed = run(flags + " --dump-config");
    CHECK(echoed.exit_code == 0);
    CHECK(!echoed.output.empty());
    {
        std::ofstream cfg("echo.cfg");
        cfg << echoed.output;
    }
    CHECK(run(flags + " --out direct.csv").exit_code == 0);
    CHECK(run("simulate --config echo.cfg --out echoed.csv").exit_code == 0);
    CHECK(slurp("direct.csv") == slurp("echoed.csv"));
}

TEST_CASE("exit codes")
{
    CHECK(run("analytic --scheme xyz --alpha 0.5 --users 2").exit_code == 2);
    CHECK(run("analytic --users 2 --alpha 0.5 --snr-db 10 --sigma2 1").exit_code == 2);
    CHECK(run("simulate --users 2 --alpha 2.0 --trials 10").exit_code == 2);
    CHECK(run("analytic --scheme mus --users 20 --alpha 0.5").exit_code == 4);
    CHECK(run("selftest --trials 1000").exit_code == 0);
    CHECK(run("nonsense").exit_code == 2);
}
