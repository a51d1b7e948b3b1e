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

#include "otfs/common.hpp"

namespace otfs {

/// A lossy transmission target for a binary source under Hamming distortion:
/// rate and distortion are tied by R = K * (1 - H_b(D)).
struct LossyTarget {
    double distortion = 0.0;       // D in [0, 1/2]
    double rate = 0.0;             // R in [0, K], bits/symbol
    int bits_per_symbol = 1;       // K
    double compression_rate = 0.0; // R / K
};

/// Binary entropy -p*log2(p) - (1-p)*log2(1-p) with 0*log(0) = 0.
double binary_entropy(double p);

/// Inverse of binary_entropy on [0, 1/2], by bisection (absolute error
/// below 1e-12).
double inv_binary_entropy(double v);

/// Target for transmitting a 2^K-ary stream within Hamming distortion D.
LossyTarget rate_from_distortion(double D, int K);

/// Capacity threshold g = 2^R - 1; the outage bound compares the total path
/// gain energy against g divided by the operating SNR.
double snr_threshold(const LossyTarget &target);

} // namespace otfs
