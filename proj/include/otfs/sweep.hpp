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

#pragma once

#include "otfs/bound_verify.hpp"
#include "otfs/outage.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace otfs {

/// Full description of an SNR sweep or verification campaign. Defaults mirror
/// the reference setup: 16x16 frame, 5 paths, delays in [0,8], Dopplers in
/// [-8,8], 15 kHz subcarrier spacing, 0-20 dB in 2 dB steps, 2000 trials per
/// point.
struct ExperimentConfig {
    int M = 16;
    int N = 16;
    int P = 5;
    int K = 1;
    std::vector<double> distortions = {0.05};
    int l_max = 8;
    int k_max = 8;
    double delta_f = 15e3;
    double carrier_freq = 4e9; // provenance only; no computational effect
    std::vector<double> snr_db = {0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
    std::uint64_t trials = 2000;
    std::uint64_t seed = 1;
    unsigned workers = 0; // 0 = hardware concurrency
    bool heavy = false;   // 32x32 frame preset
    std::string output_path = "sweep.csv";

    GridParams grid() const;

    /// Throws ConfigError naming the violated precondition.
    void validate() const;

    /// Applies the heavy-mode preset (M = N = 32) when the flag is set.
    void apply_heavy();
};

/// Parses a flat key=value config file ('#' starts a comment). Unknown keys
/// are rejected so typos cannot silently fall back to defaults.
ExperimentConfig load_config(const std::string &path);

/// "start:stop:step" (inclusive stop, dB) or a comma-separated list.
std::vector<double> parse_snr_spec(const std::string &spec);

/// Comma-separated distortion list.
std::vector<double> parse_distortion_list(const std::string &spec);

/// One sweep point. row_seed is the substream seed that reproduces the point:
/// monte_carlo_outage(..., seed = row_seed) with the same config replays it.
struct SweepRow {
    double snr_db = 0.0;
    double distortion = 0.0;
    OutageEstimate estimate;
    std::uint64_t row_seed = 0;
};

/// Runs the Monte-Carlo sweep over every (distortion, SNR) pair. Rows are
/// emitted distortion-major in config order; the master seed fully determines
/// every row regardless of worker count.
std::vector<SweepRow> run_sweep(const ExperimentConfig &cfg);

/// CSV schema: snr_db,distortion,trials,outages,p_out_mc,ci_low,ci_high,
/// p_out_lower_bound,seed. Floats carry 10 significant digits.
void write_csv(const std::vector<SweepRow> &rows, std::ostream &out);

/// Outcome of a proposition/structure verification campaign.
struct VerifyReport {
    std::uint64_t campaigns = 0;
    std::uint64_t prop1_pass = 0;
    std::uint64_t prop2_pass = 0;
    std::uint64_t chain_pass = 0;
    std::uint64_t equality_cases = 0;
    std::uint64_t beta_groups = 0;
    std::uint64_t beta_outside_assumption = 0; // |k_diff| >= N, still checked
    std::uint64_t omega_checks = 0;
    std::uint64_t xi_checks = 0;
    double max_slack = 0.0;   // max(log_lhs - log_rhs); negative = margin
    double max_aux_dev = 0.0; // worst structural deviation observed
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    std::string text() const;
};

/// Draws `campaigns` random realizations (SNR uniform in 0-30 dB per
/// realization) and checks both propositions, the combined chain, the zero
/// diagonal of Omega and the beta antisymmetry groups on each. Violations
/// carry the per-campaign seed for replay.
VerifyReport verify_report(const ExperimentConfig &cfg, std::uint64_t campaigns);

/// Negative control: corrupts a Gram decomposition and confirms the
/// proposition comparison flags it. Returns true when the corruption is
/// detected.
bool self_test_detects_corruption(const ExperimentConfig &cfg);

} // namespace otfs
