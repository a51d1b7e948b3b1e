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

#include "otfs/outage.hpp"

#include "otfs/spectral.hpp"

#include <cmath>
#include <exception>
#include <thread>
#include <vector>

namespace otfs {

bool outage_indicator(const GridParams &grid, const ChannelRealization &ch, double gamma,
                      const LossyTarget &target) {
    return capacity(grid, ch, gamma) < target.rate;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials < 1)
        throw std::invalid_argument("wilson_interval: trials must be >= 1");
    if (successes > trials)
        throw std::invalid_argument("wilson_interval: successes exceed trials");
    if (!(z > 0.0))
        throw std::invalid_argument("wilson_interval: z must be positive");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2n = z * z / n;
    const double center = (p + 0.5 * z2n) / (1.0 + z2n);
    const double half = z / (1.0 + z2n) * std::sqrt(p * (1.0 - p) / n + 0.25 * z2n / n);
    const double lo = std::max(0.0, center - half);
    const double hi = std::min(1.0, center + half);
    return {lo, hi};
}

double chi_square_tail_sum(int P, double x) {
    if (P < 1)
        throw std::invalid_argument("chi_square_tail_sum: P must be >= 1");
    if (!(x >= 0.0))
        throw std::invalid_argument("chi_square_tail_sum: x must be >= 0");
    if (x == 0.0)
        return 0.0;

    // log((P-1)!) without touching lgamma (keeps the function re-entrant).
    double log_fact = 0.0;
    for (int i = 2; i < P; ++i)
        log_fact += std::log(static_cast<double>(i));

    if (x < P + 1.0) {
        // Lower-incomplete-gamma series: accurate even when the result is in
        // the deep tail (x << P), where 1 - exp(-x)*sum would cancel.
        double ap = P;
        double del = 1.0 / ap;
        double sum = del;
        for (int it = 0; it < 2000; ++it) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (del < sum * 1e-17)
                break;
        }
        const double v = sum * std::exp(-x + P * std::log(x) - log_fact);
        return v < 1.0 ? v : 1.0;
    }

    // Complement sum Q = exp(-x) * sum_{i<P} x^i/i!; the result 1 - Q is well
    // conditioned here since x >= P+1 keeps Q away from 1. For large x each
    // term is formed in log space so x^i/i! never overflows.
    double q = 0.0;
    if (x > 30.0) {
        const double lx = std::log(x);
        double log_term = -x; // i = 0
        for (int i = 0; i < P; ++i) {
            if (i > 0)
                log_term += lx - std::log(static_cast<double>(i));
            q += std::exp(log_term);
        }
    } else {
        double term = std::exp(-x);
        for (int i = 0; i < P; ++i) {
            if (i > 0)
                term *= x / i;
            q += term;
        }
    }
    const double v = 1.0 - q;
    return v > 0.0 ? (v < 1.0 ? v : 1.0) : 0.0;
}

double lower_bound(int P, double gamma, const LossyTarget &target) {
    if (P < 1)
        throw std::invalid_argument("lower_bound: P must be >= 1");
    const double g = snr_threshold(target);
    if (g <= 0.0)
        return 0.0;
    if (gamma <= 0.0)
        return 1.0; // zero SNR with a positive rate: outage is certain
    return chi_square_tail_sum(P, P * g / gamma);
}

namespace {

unsigned resolve_workers(unsigned requested) {
    if (requested > 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

} // namespace

OutageEstimate monte_carlo_outage(const GridParams &grid, int P, int l_max, int k_max,
                                  double gamma, const LossyTarget &target, std::uint64_t trials,
                                  std::uint64_t seed, unsigned workers) {
    if (trials < 1)
        throw std::invalid_argument("monte_carlo_outage: trials must be >= 1");
    grid.validate();
    if (gamma < 0.0)
        throw std::invalid_argument("monte_carlo_outage: gamma must be >= 0");

    const unsigned w =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), trials));
    std::vector<std::uint64_t> counts(w, 0);
    std::vector<std::exception_ptr> errors(w);

    auto run_strided = [&](unsigned wi) {
        try {
            std::uint64_t hits = 0;
            for (std::uint64_t t = wi; t < trials; t += w) {
                Rng rng(hash_combine(seed, t));
                const ChannelRealization ch = sample_realization(P, l_max, k_max, rng);
                if (outage_indicator(grid, ch, gamma, target))
                    ++hits;
            }
            counts[wi] = hits;
        } catch (...) {
            errors[wi] = std::current_exception();
        }
    };

    if (w == 1) {
        run_strided(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(w);
        for (unsigned wi = 0; wi < w; ++wi)
            pool.emplace_back(run_strided, wi);
        for (auto &th : pool)
            th.join();
    }
    for (auto &err : errors)
        if (err)
            std::rethrow_exception(err);

    OutageEstimate est;
    est.trials = trials;
    for (auto c : counts)
        est.outages += c;
    est.p_hat = static_cast<double>(est.outages) / static_cast<double>(trials);
    const auto ci = wilson_interval(est.outages, trials, 1.96);
    est.ci_low = ci.first;
    est.ci_high = ci.second;
    est.lower_bound = lower_bound(P, gamma, target);
    return est;
}

} // namespace otfs
