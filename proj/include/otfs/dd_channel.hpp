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
#include "otfs/rng.hpp"

#include <vector>

namespace otfs {

/// OTFS frame geometry. M subcarriers by N time slots, critically sampled
/// (T * delta_f == 1), carrying 2^K-ary symbols.
struct GridParams {
    int M = 16;
    int N = 16;
    double delta_f = 15e3; // subcarrier spacing [Hz]
    double T = 1.0 / 15e3; // slot duration [s]
    int K = 1;             // bits per symbol

    int frame_size() const { return M * N; }

    /// Builds a critically sampled grid (T = 1/delta_f).
    static GridParams make(int M, int N, double delta_f, int K);

    /// Throws std::invalid_argument unless M,N,K >= 1, delta_f > 0 and
    /// T*delta_f == 1 within 1e-9.
    void validate() const;
};

/// One resolvable propagation path: complex gain at an integer delay-Doppler
/// grid cell.
struct PathSpec {
    Complex gain;
    int delay_idx = 0;   // [0, l_max]
    int doppler_idx = 0; // [-k_max, k_max]
};

/// A multipath channel draw. Paths must occupy pairwise distinct
/// (delay, Doppler) cells.
struct ChannelRealization {
    std::vector<PathSpec> paths;

    int path_count() const { return static_cast<int>(paths.size()); }

    /// Sum of |h_i|^2 over all paths.
    double gain_energy() const;

    /// Throws std::invalid_argument if empty or if two paths share a cell.
    void validate() const;
};

/// Effective delay-Doppler channel matrix together with the realization that
/// generated it.
struct DDMatrix {
    CMatrix entries; // MN x MN
    ChannelRealization realization;
};

/// Draws P path gains (i.i.d. circularly-symmetric complex Gaussian, variance
/// 1/(2P) per real dimension, so the expected total gain energy is 1) on
/// distinct cells sampled uniformly without replacement from the
/// (l_max+1) x (2*k_max+1) delay-Doppler grid.
ChannelRealization sample_realization(int P, int l_max, int k_max, Rng &rng);

/// l-th power of the forward cyclic shift (Pi e_j = e_{j+1 mod mn}).
/// Accepts 0 <= l <= mn; Pi^0 = Pi^mn = I.
RMatrix permutation_power(int mn, int l);

/// k-th power of the Doppler phase ramp Delta = diag{alpha^b} with
/// alpha = exp(j*2*pi/mn). Accepts |k| <= mn; unitary, Delta^(-k) = (Delta^k)^H.
CMatrix doppler_power(int mn, int k);

/// Assembles H_DD = sum_i h_i (F_N (x) I_M) Pi^{l_i} Delta^{k_i} (F_N^H (x) I_M)
/// by direct placement of the MN nonzeros each path contributes; O(P*MN).
DDMatrix build_dd_matrix(const GridParams &grid, const ChannelRealization &ch);

/// y = H x + w.
CVector apply_channel(const DDMatrix &H, const CVector &x, const CVector &noise);

namespace detail {

/// Adds coeff * (F_N (x) I_M) Delta^a Pi^d Delta^c (F_N^H (x) I_M) to G.
///
/// Writing column indices as q = n_q*M + m_q, the product has exactly one
/// nonzero per column, at row p = n_p*M + m_p with
///   m_p = (m_q + d) mod M,   n_p = (n_q + a + c) mod N,
/// of value  alpha^(c*m_q + a*m_p) * exp(j*2*pi*t*(a - n_p)/N),
/// where t = floor((m_q + d)/M) counts the slot wrap of the cyclic delay
/// shift. All phase integers are reduced modulo MN (resp. N) before the
/// complex exponential is formed so arguments stay in [0, 2*pi).
void add_dft_sandwich(CMatrix &G, Complex coeff, int M, int N, long a, long d, long c);

} // namespace detail

} // namespace otfs
