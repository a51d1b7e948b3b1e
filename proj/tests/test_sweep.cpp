// SPDX-License-Identifier: Apache-2.0
//
// otfs-outage: outage-probability simulation for OTFS over delay-Doppler channels
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

#include "otfs/sweep.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace otfs;

namespace {

ExperimentConfig tiny_config() {
    ExperimentConfig cfg;
    cfg.M = 4;
    cfg.N = 4;
    cfg.P = 2;
    cfg.K = 1;
    cfg.l_max = 3;
    cfg.k_max = 3;
    cfg.distortions = {0.1, 0.5};
    cfg.snr_db = {0.0, 6.0};
    cfg.trials = 24;
    cfg.seed = 99;
    return cfg;
}

std::string csv_of(const ExperimentConfig &cfg) {
    std::ostringstream os;
    write_csv(run_sweep(cfg), os);
    return os.str();
}

} // namespace

TEST_SUITE("sweep") {

TEST_CASE("snr spec parsing") {
    const auto range = parse_snr_spec("0:20:2");
    REQUIRE(range.size() == 11);
    CHECK(range.front() == 0.0);
    CHECK(range.back() == 20.0);

    const auto list = parse_snr_spec("1.5, 3, 7");
    REQUIRE(list.size() == 3);
    CHECK(list[1] == 3.0);

    CHECK_THROWS_AS(parse_snr_spec("5:1:2"), ConfigError);
    CHECK_THROWS_AS(parse_snr_spec("0:10"), ConfigError);
    CHECK_THROWS_AS(parse_snr_spec("a:b:c"), ConfigError);
}

TEST_CASE("config validation names the violated precondition") {
    ExperimentConfig cfg = tiny_config();
    cfg.P = 170;
    cfg.l_max = 8;
    cfg.k_max = 8;
    try {
        cfg.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError &e) {
        const std::string msg = e.what();
        CHECK(msg.find("grid capacity") != std::string::npos);
        CHECK(msg.find("153") != std::string::npos);
    }

    ExperimentConfig dec = tiny_config();
    dec.snr_db = {0.0, 0.0};
    CHECK_THROWS_AS(dec.validate(), ConfigError);

    ExperimentConfig bad_d = tiny_config();
    bad_d.distortions = {0.7};
    CHECK_THROWS_AS(bad_d.validate(), ConfigError);
}

TEST_CASE("config file parsing with overridable keys") {
    const std::string path = "test_sweep_config.tmp";
    {
        std::ofstream out(path);
        out << "# comment line\n";
        out << "M = 8\n";
        out << "N = 8\n";
        out << "P = 3\n";
        out << "distortion = 0.05, 0.1\n";
        out << "snr = 0:4:2\n";
        out << "trials = 10\n";
        out << "seed = 7\n";
        out << "out = somewhere.csv\n";
    }
    const ExperimentConfig cfg = load_config(path);
    CHECK(cfg.M == 8);
    CHECK(cfg.P == 3);
    REQUIRE(cfg.distortions.size() == 2);
    CHECK(cfg.distortions[1] == 0.1);
    REQUIRE(cfg.snr_db.size() == 3);
    CHECK(cfg.trials == 10);
    CHECK(cfg.output_path == "somewhere.csv");
    std::remove(path.c_str());

    {
        std::ofstream out(path);
        out << "unknown_key = 1\n";
    }
    CHECK_THROWS_AS(load_config(path), ConfigError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_config("no_such_file.cfg"), ConfigError);
}

TEST_CASE("run_sweep emits rows in sweep order with valid intervals") {
    const ExperimentConfig cfg = tiny_config();
    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 4); // 2 distortions x 2 SNR points

    CHECK(rows[0].distortion == 0.1);
    CHECK(rows[0].snr_db == 0.0);
    CHECK(rows[1].snr_db == 6.0);
    CHECK(rows[2].distortion == 0.5);

    for (const auto &r : rows) {
        CHECK(r.estimate.ci_low <= r.estimate.p_hat + 1e-15);
        CHECK(r.estimate.p_hat <= r.estimate.ci_high + 1e-15);
        CHECK(r.estimate.lower_bound >= 0.0);
        CHECK(r.estimate.lower_bound <= 1.0);
    }

    // D = 0.5 means rate 0: no outage and a zero bound at every SNR.
    CHECK(rows[2].estimate.p_hat == 0.0);
    CHECK(rows[2].estimate.lower_bound == 0.0);
    CHECK(rows[3].estimate.p_hat == 0.0);

    // The bound is monotone nonincreasing in SNR within each distortion group.
    CHECK(rows[1].estimate.lower_bound <= rows[0].estimate.lower_bound);
}

TEST_CASE("a row can be replayed from its seed") {
    const ExperimentConfig cfg = tiny_config();
    const auto rows = run_sweep(cfg);
    const auto &row = rows[1];
    const LossyTarget t = rate_from_distortion(row.distortion, cfg.K);
    const OutageEstimate replay =
        monte_carlo_outage(cfg.grid(), cfg.P, cfg.l_max, cfg.k_max,
                           std::pow(10.0, row.snr_db / 10.0), t, cfg.trials, row.row_seed);
    CHECK(replay.outages == row.estimate.outages);
}

TEST_CASE("csv output is byte-identical across worker counts") {
    ExperimentConfig cfg = tiny_config();
    cfg.workers = 1;
    const std::string csv1 = csv_of(cfg);
    cfg.workers = 4;
    const std::string csv4 = csv_of(cfg);
    cfg.workers = 8;
    const std::string csv8 = csv_of(cfg);
    CHECK(csv1 == csv4);
    CHECK(csv1 == csv8);

    // Header and schema.
    std::istringstream is(csv1);
    std::string header;
    std::getline(is, header);
    CHECK(header ==
          "snr_db,distortion,trials,outages,p_out_mc,ci_low,ci_high,p_out_lower_bound,seed");

    // A different master seed must change at least the seed column.
    cfg.seed = 100;
    CHECK(csv_of(cfg) != csv1);
}

TEST_CASE("verify_report runs clean on a small campaign") {
    ExperimentConfig cfg = tiny_config();
    cfg.M = 8;
    cfg.N = 8;
    cfg.P = 4;
    cfg.l_max = 3;
    cfg.k_max = 3;
    const VerifyReport rep = verify_report(cfg, 50);
    CHECK(rep.ok());
    CHECK(rep.campaigns == 50);
    CHECK(rep.prop1_pass == 50);
    CHECK(rep.prop2_pass == 50);
    CHECK(rep.chain_pass == 50);
    CHECK(rep.omega_checks == 50);
    CHECK(rep.max_slack <= 0.0);
    const std::string text = rep.text();
    CHECK(text.find("prop1        : 50/50") != std::string::npos);
    CHECK(text.find("violations: none") != std::string::npos);
}

TEST_CASE("self test flags an injected corruption") {
    const ExperimentConfig cfg = tiny_config();
    CHECK(self_test_detects_corruption(cfg));
}

} // TEST_SUITE
