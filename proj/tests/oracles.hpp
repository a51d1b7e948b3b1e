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
//
// Test-only reference implementations. Everything here is deliberately
// literal (explicit Kronecker products, repeated matrix multiplication,
// composite quadrature) and shares no code with the production paths it
// cross-checks.

#pragma once

#include "otfs/common.hpp"
#include "otfs/dd_channel.hpp"

#include <cmath>

namespace oracle {

using otfs::CMatrix;
using otfs::Complex;

/// Normalized n-point DFT matrix, F(m, k) = exp(-j*2*pi*m*k/n)/sqrt(n).
inline CMatrix dft_matrix(int n) {
    CMatrix F(n, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k)
            F(m, k) = std::polar(s, -otfs::kTwoPi * m * k / n);
    return F;
}

inline CMatrix kron(const CMatrix &A, const CMatrix &B) {
    CMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

/// B^e by repeated multiplication; negative exponents use the adjoint
/// (B is unitary everywhere this is used).
inline CMatrix matrix_power_literal(const CMatrix &B, int e) {
    const auto n = B.rows();
    CMatrix R = CMatrix::Identity(n, n);
    const CMatrix step = e >= 0 ? B : CMatrix(B.adjoint());
    for (int i = 0; i < std::abs(e); ++i)
        R = R * step;
    return R;
}

/// Literal assembly of the effective delay-Doppler matrix: explicit DFT
/// Kronecker factors, shift and phase matrices raised by repeated
/// multiplication, then summed path by path.
inline CMatrix dd_matrix_dense(const otfs::GridParams &grid, const otfs::ChannelRealization &ch) {
    const int mn = grid.frame_size();
    const CMatrix FI = kron(dft_matrix(grid.N), CMatrix::Identity(grid.M, grid.M));
    const CMatrix FIH = FI.adjoint();

    CMatrix shift = CMatrix::Zero(mn, mn);
    for (int c = 0; c < mn; ++c)
        shift((c + 1) % mn, c) = 1.0;
    CMatrix phase = CMatrix::Zero(mn, mn);
    for (int b = 0; b < mn; ++b)
        phase(b, b) = std::polar(1.0, otfs::kTwoPi * b / mn);

    CMatrix H = CMatrix::Zero(mn, mn);
    for (const auto &p : ch.paths)
        H += p.gain * FI * matrix_power_literal(shift, p.delay_idx) *
             matrix_power_literal(phase, p.doppler_idx) * FIH;
    return H;
}

/// Natural log |det(A)| through a partial-pivot LU factorization.
inline double log_abs_det_lu(const CMatrix &A) {
    Eigen::PartialPivLU<CMatrix> lu(A);
    double s = 0.0;
    const auto &m = lu.matrixLU();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        s += std::log(std::abs(m(i, i)));
    return s;
}

/// CDF of a chi-square variable with 2P degrees of freedom at 2x, by
/// composite Simpson quadrature of the density. The integrand is written in
/// log form so deep-tail values keep relative accuracy.
inline double chi_square_cdf_quad(int P, double x, int intervals = 20000) {
    if (x <= 0.0)
        return 0.0;
    double log_norm = 0.0; // log(2^P * Gamma(P))
    for (int i = 2; i < P; ++i)
        log_norm += std::log(static_cast<double>(i));
    log_norm += P * std::log(2.0);

    const double hi = 2.0 * x;
    const double h = hi / intervals;
    auto pdf = [&](double t) {
        if (t <= 0.0)
            return P == 1 ? std::exp(-0.5 * t - log_norm) : 0.0;
        return std::exp((P - 1) * std::log(t) - 0.5 * t - log_norm);
    };
    double sum = pdf(0.0) + pdf(hi);
    for (int i = 1; i < intervals; ++i)
        sum += pdf(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

/// Inverse binary entropy found by scanning a dense grid on [0, 1/2] for the
/// bracketing pair, then interpolating linearly. Resolution-limited on
/// purpose; independent of the production bisection.
inline double inv_entropy_scan(double v, int points = 2000000) {
    auto hb = [](double p) {
        if (p <= 0.0 || p >= 1.0)
            return 0.0;
        return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
    };
    if (v <= 0.0)
        return 0.0;
    if (v >= 1.0)
        return 0.5;
    double prev_p = 0.0, prev_h = 0.0;
    for (int i = 1; i <= points; ++i) {
        const double p = 0.5 * i / points;
        const double h = hb(p);
        if (h >= v) {
            const double w = (v - prev_h) / (h - prev_h);
            return prev_p + w * (p - prev_p);
        }
        prev_p = p;
        prev_h = h;
    }
    return 0.5;
}

} // namespace oracle
