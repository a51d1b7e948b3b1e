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

#include "otfs/dd_channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

namespace otfs {

GridParams GridParams::make(int M, int N, double delta_f, int K) {
    GridParams g;
    g.M = M;
    g.N = N;
    g.delta_f = delta_f;
    g.T = 1.0 / delta_f;
    g.K = K;
    g.validate();
    return g;
}

void GridParams::validate() const {
    if (M < 1 || N < 1)
        throw std::invalid_argument("GridParams: M and N must be >= 1");
    if (K < 1)
        throw std::invalid_argument("GridParams: K must be >= 1");
    if (!(delta_f > 0.0) || !(T > 0.0))
        throw std::invalid_argument("GridParams: delta_f and T must be positive");
    if (std::abs(T * delta_f - 1.0) > 1e-9)
        throw std::invalid_argument("GridParams: grid must be critically sampled (T*delta_f = 1)");
}

double ChannelRealization::gain_energy() const {
    double e = 0.0;
    for (const auto &p : paths)
        e += std::norm(p.gain);
    return e;
}

void ChannelRealization::validate() const {
    if (paths.empty())
        throw std::invalid_argument("ChannelRealization: at least one path required");
    std::set<std::pair<int, int>> cells;
    for (const auto &p : paths) {
        if (!cells.insert({p.delay_idx, p.doppler_idx}).second)
            throw std::invalid_argument("ChannelRealization: duplicate (delay, Doppler) cell");
    }
}

ChannelRealization sample_realization(int P, int l_max, int k_max, Rng &rng) {
    if (P < 1)
        throw std::invalid_argument("sample_realization: path count must be >= 1");
    if (l_max < 0 || k_max < 0)
        throw std::invalid_argument("sample_realization: l_max and k_max must be >= 0");
    const long cols = 2L * k_max + 1;
    const long cells = (l_max + 1L) * cols;
    if (P > cells)
        throw std::invalid_argument("sample_realization: path count exceeds delay-Doppler grid capacity");

    // Partial Fisher-Yates: the first P slots end up a uniform sample without
    // replacement.
    std::vector<long> idx(static_cast<std::size_t>(cells));
    std::iota(idx.begin(), idx.end(), 0L);
    for (int p = 0; p < P; ++p) {
        const auto j = p + static_cast<long>(rng.uniform_index(static_cast<std::uint64_t>(cells - p)));
        std::swap(idx[static_cast<std::size_t>(p)], idx[static_cast<std::size_t>(j)]);
    }

    const double sigma = std::sqrt(1.0 / (2.0 * P));
    ChannelRealization ch;
    ch.paths.reserve(static_cast<std::size_t>(P));
    for (int p = 0; p < P; ++p) {
        PathSpec ps;
        ps.delay_idx = static_cast<int>(idx[static_cast<std::size_t>(p)] / cols);
        ps.doppler_idx = static_cast<int>(idx[static_cast<std::size_t>(p)] % cols) - k_max;
        ps.gain = rng.complex_normal(sigma);
        ch.paths.push_back(ps);
    }
    return ch;
}

RMatrix permutation_power(int mn, int l) {
    if (mn < 1)
        throw std::invalid_argument("permutation_power: dimension must be >= 1");
    if (l < 0 || l > mn)
        throw std::invalid_argument("permutation_power: shift must be in [0, mn]");
    RMatrix P = RMatrix::Zero(mn, mn);
    for (int c = 0; c < mn; ++c)
        P((c + l) % mn, c) = 1.0;
    return P;
}

CMatrix doppler_power(int mn, int k) {
    if (mn < 1)
        throw std::invalid_argument("doppler_power: dimension must be >= 1");
    if (k < -mn || k > mn)
        throw std::invalid_argument("doppler_power: |k| must be <= mn");
    CMatrix D = CMatrix::Zero(mn, mn);
    for (long b = 0; b < mn; ++b) {
        const long r = ((b * k) % mn + mn) % mn;
        D(b, b) = std::polar(1.0, kTwoPi * static_cast<double>(r) / mn);
    }
    return D;
}

namespace detail {

void add_dft_sandwich(CMatrix &G, Complex coeff, int M, int N, long a, long d, long c) {
    const long mn = static_cast<long>(M) * N;
    const long dr = ((d % mn) + mn) % mn;
    const long s = (((a + c) % N) + N) % N; // slot offset of the row index
    for (long q = 0; q < mn; ++q) {
        const long m_q = q % M;
        const long n_q = q / M;
        const long m_p = (m_q + dr) % M;
        const long t = (m_q + dr) / M;
        const long n_p = (n_q + s) % N;
        const long p = n_p * M + m_p;
        long r1 = ((c * m_q + a * m_p) % mn + mn) % mn;
        long r2 = ((t % N) * (((a - n_p) % N) + N)) % N;
        const double angle = kTwoPi * (static_cast<double>(r1) / mn + static_cast<double>(r2) / N);
        G(p, q) += coeff * std::polar(1.0, angle);
    }
}

} // namespace detail

DDMatrix build_dd_matrix(const GridParams &grid, const ChannelRealization &ch) {
    grid.validate();
    ch.validate();
    const int mn = grid.frame_size();
    for (const auto &p : ch.paths) {
        if (p.delay_idx < 0 || p.delay_idx >= mn)
            throw std::invalid_argument("build_dd_matrix: delay index out of range");
        if (p.doppler_idx <= -mn || p.doppler_idx >= mn)
            throw std::invalid_argument("build_dd_matrix: Doppler index out of range");
    }

    DDMatrix H;
    H.entries = CMatrix::Zero(mn, mn);
    H.realization = ch;
    for (const auto &p : ch.paths)
        detail::add_dft_sandwich(H.entries, p.gain, grid.M, grid.N, 0, p.delay_idx, p.doppler_idx);
    return H;
}

CVector apply_channel(const DDMatrix &H, const CVector &x, const CVector &noise) {
    const auto mn = H.entries.rows();
    if (H.entries.cols() != mn || x.size() != mn || noise.size() != mn)
        throw std::invalid_argument("apply_channel: dimension mismatch");
    return H.entries * x + noise;
}

} // namespace otfs
