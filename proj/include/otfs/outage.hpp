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

#include "otfs/dd_channel.hpp"
#include "otfs/rate_distortion.hpp"

#include <cstdint>
#include <utility>

namespace otfs {

/// Monte-Carlo outage estimate with its Wilson 95% interval and the paired
/// closed-form lower bound.
struct OutageEstimate {
    std::uint64_t trials = 0;
    std::uint64_t outages = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double lower_bound = 0.0;
};

/// True iff the instantaneous capacity falls strictly below the target rate.
/// Ties (capacity exactly equal to the rate) count as non-outage.
bool outage_indicator(const GridParams &grid, const ChannelRealization &ch, double gamma,
                      const LossyTarget &target);

/// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z);

/// CDF of a chi-square variable with 2P degrees of freedom evaluated at 2x:
/// 1 - exp(-x) * sum_{i<P} x^i / i!. Evaluated as the regularized lower
/// incomplete gamma function so that deep-tail values (x << P) keep full
/// relative accuracy and large x cannot overflow the term recursion.
double chi_square_tail_sum(int P, double x);

/// Closed-form outage lower bound: the probability that the total path gain
/// energy falls below snr_threshold(target)/gamma, i.e.
/// chi_square_tail_sum(P, P*g/gamma). Returns 0 when the target rate is zero;
/// returns 1 for gamma <= 0 with a positive threshold (limit convention).
double lower_bound(int P, double gamma, const LossyTarget &target);

/// Estimates the outage probability over independent channel draws.
///
/// Trial t runs on its own substream seeded by hash_combine(seed, t), and the
/// outage count is an order-independent sum, so the result is identical for
/// any worker count. workers = 0 uses the hardware concurrency.
OutageEstimate monte_carlo_outage(const GridParams &grid, int P, int l_max, int k_max,
                                  double gamma, const LossyTarget &target, std::uint64_t trials,
                                  std::uint64_t seed, unsigned workers = 0);

} // namespace otfs
