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

#include "otfs/rate_distortion.hpp"

#include <cmath>

namespace otfs {

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("binary_entropy: p must be in [0, 1]");
    if (p == 0.0 || p == 1.0)
        return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double inv_binary_entropy(double v) {
    if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("inv_binary_entropy: value must be in [0, 1]");
    if (v == 0.0)
        return 0.0;
    if (v == 1.0)
        return 0.5;
    double lo = 0.0, hi = 0.5;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        (binary_entropy(mid) < v ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

LossyTarget rate_from_distortion(double D, int K) {
    if (!(D >= 0.0 && D <= 0.5))
        throw std::invalid_argument("rate_from_distortion: distortion must be in [0, 1/2]");
    if (K < 1)
        throw std::invalid_argument("rate_from_distortion: K must be >= 1");
    LossyTarget t;
    t.distortion = D;
    t.bits_per_symbol = K;
    t.compression_rate = 1.0 - binary_entropy(D);
    t.rate = K * t.compression_rate;
    return t;
}

double snr_threshold(const LossyTarget &target) {
    if (target.rate < 0.0)
        throw std::invalid_argument("snr_threshold: rate must be >= 0");
    return std::exp2(target.rate) - 1.0;
}

} // namespace otfs
