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

#include "otfs/spectral.hpp"

#include <cmath>

namespace otfs {

namespace {

void check_inputs(const GridParams &grid, const ChannelRealization &ch) {
    grid.validate();
    ch.validate();
    const int mn = grid.frame_size();
    for (const auto &p : ch.paths) {
        if (p.delay_idx < 0 || p.delay_idx >= mn)
            throw std::invalid_argument("gram: delay index out of range");
        if (p.doppler_idx <= -mn || p.doppler_idx >= mn)
            throw std::invalid_argument("gram: Doppler index out of range");
    }
}

// Cross term of the ordered path pair (i, i'): conj(h_i) h_i' times the
// DFT-sandwiched Delta^{-k_i} Pi^{l_i'-l_i} Delta^{k_i'}.
void add_cross_term(CMatrix &G, const PathSpec &pi, const PathSpec &pj, int M, int N) {
    const Complex coeff = std::conj(pi.gain) * pj.gain;
    detail::add_dft_sandwich(G, coeff, M, N, -pi.doppler_idx,
                             static_cast<long>(pj.delay_idx) - pi.delay_idx, pj.doppler_idx);
}

} // namespace

CMatrix gram_matrix(const GridParams &grid, const ChannelRealization &ch) {
    check_inputs(grid, ch);
    const int mn = grid.frame_size();
    CMatrix G = ch.gain_energy() * CMatrix::Identity(mn, mn);
    const int P = ch.path_count();
    for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j)
            if (i != j)
                add_cross_term(G, ch.paths[static_cast<std::size_t>(i)],
                               ch.paths[static_cast<std::size_t>(j)], grid.M, grid.N);
    return G;
}

GramDecomposition gram_components(const GridParams &grid, const ChannelRealization &ch) {
    check_inputs(grid, ch);
    const int mn = grid.frame_size();
    GramDecomposition d;
    d.h_a = ch.gain_energy() * CMatrix::Identity(mn, mn);
    d.h_b1 = CMatrix::Zero(mn, mn);
    d.h_b2 = CMatrix::Zero(mn, mn);
    const int P = ch.path_count();
    for (int i = 0; i < P; ++i) {
        for (int j = 0; j < P; ++j) {
            if (i == j)
                continue;
            const auto &pi = ch.paths[static_cast<std::size_t>(i)];
            const auto &pj = ch.paths[static_cast<std::size_t>(j)];
            add_cross_term(pi.delay_idx == pj.delay_idx ? d.h_b1 : d.h_b2, pi, pj, grid.M, grid.N);
        }
    }
    return d;
}

RVector gram_eigenvalues(const GridParams &grid, const ChannelRealization &ch) {
    const CMatrix G = gram_matrix(grid, ch);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(G, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double capacity_from_eigenvalues(const RVector &eigs, double gamma, int frame_size) {
    if (gamma < 0.0)
        throw std::invalid_argument("capacity: gamma must be >= 0");
    if (frame_size < 1 || eigs.size() != frame_size)
        throw std::invalid_argument("capacity: eigenvalue count does not match frame size");
    const double scale = eigs.size() > 0 ? eigs.cwiseAbs().maxCoeff() : 0.0;
    const double tol = 1e-10 * scale;
    double bits = 0.0;
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        double lambda = eigs(i);
        if (lambda < 0.0) {
            if (lambda < -tol)
                throw std::invalid_argument("capacity: matrix is not positive semidefinite");
            lambda = 0.0;
        }
        bits += std::log1p(gamma * lambda) / kLn2;
    }
    bits /= frame_size;
    return bits > 0.0 ? bits : 0.0;
}

double log_det_psd(const CMatrix &G, double gamma) {
    if (G.rows() != G.cols())
        throw std::invalid_argument("log_det_psd: matrix must be square");
    if (gamma < 0.0)
        throw std::invalid_argument("log_det_psd: gamma must be >= 0");
    const double scale = G.norm();
    if ((G - G.adjoint()).norm() > 1e-8 * scale)
        throw std::invalid_argument("log_det_psd: matrix is not Hermitian within tolerance");

    Eigen::SelfAdjointEigenSolver<CMatrix> es(G, Eigen::EigenvaluesOnly);
    const RVector eigs = es.eigenvalues();
    const double tol = 1e-10 * scale;
    double bits = 0.0;
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        double lambda = eigs(i);
        if (lambda < 0.0) {
            if (lambda < -tol)
                throw std::invalid_argument("log_det_psd: matrix is not positive semidefinite");
            lambda = 0.0;
        }
        bits += std::log1p(gamma * lambda) / kLn2;
    }
    return bits > 0.0 ? bits : 0.0;
}

double capacity(const GridParams &grid, const ChannelRealization &ch, double gamma) {
    if (gamma < 0.0)
        throw std::invalid_argument("capacity: gamma must be >= 0");
    return capacity_from_eigenvalues(gram_eigenvalues(grid, ch), gamma, grid.frame_size());
}

} // namespace otfs
