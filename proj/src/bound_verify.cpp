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

#include "otfs/bound_verify.hpp"

#include "otfs/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace otfs {

namespace {

bool power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

double log_slack() { return std::log1p(kDetRelSlack); }

// Natural log of det(I + gamma*A) for Hermitian PSD A.
double nat_log_det(const CMatrix &A, double gamma) { return log_det_psd(A, gamma) * kLn2; }

// Accumulates the same-delay cross terms of one ordered pair onto xi2.
void add_pair_ramp(RVector &xi2, double two_gamma_mag, int k_diff, double theta, int mn) {
    for (long b = 0; b < mn; ++b) {
        const long r = ((b * k_diff) % mn + mn) % mn;
        xi2(b) += two_gamma_mag * std::cos(kTwoPi * static_cast<double>(r) / mn + theta);
    }
}

} // namespace

BetaSequence beta_sequence(int mn, int k_diff, double theta, double magnitude) {
    if (!power_of_two(mn))
        throw UnsupportedStructure("beta_sequence: MN must be a power of two");
    if (k_diff == 0)
        throw std::invalid_argument("beta_sequence: k_diff must be nonzero");
    if (k_diff <= -mn || k_diff >= mn)
        throw std::invalid_argument("beta_sequence: |k_diff| must be < MN");

    BetaSequence seq;
    seq.k_diff = k_diff;
    seq.theta = theta;
    seq.magnitude = magnitude;
    long a2 = 1;
    long a1 = k_diff;
    while (a1 % 2 == 0) {
        a1 /= 2;
        a2 *= 2;
    }
    seq.a1 = a1;
    seq.a2 = a2;
    seq.values.resize(static_cast<std::size_t>(mn));
    for (long b = 0; b < mn; ++b) {
        const long r = ((b * k_diff) % mn + mn) % mn;
        seq.values[static_cast<std::size_t>(b)] =
            std::cos(kTwoPi * static_cast<double>(r) / mn + theta);
    }
    return seq;
}

double XiDiagonal::log_det() const {
    double s = 0.0;
    for (Eigen::Index b = 0; b < xi2.size(); ++b)
        s += std::log(xi1 + xi2(b));
    return s;
}

double XiDiagonal::min_entry() const {
    return xi2.size() > 0 ? xi1 + xi2.minCoeff() : xi1;
}

XiDiagonal xi_of(const GridParams &grid, const ChannelRealization &ch, double gamma) {
    grid.validate();
    ch.validate();
    if (gamma < 0.0)
        throw std::invalid_argument("xi_of: gamma must be >= 0");
    const int mn = grid.frame_size();

    XiDiagonal xi;
    xi.xi1 = 1.0 + gamma * ch.gain_energy();
    xi.xi2 = RVector::Zero(mn);
    const int P = ch.path_count();
    for (int i = 0; i < P - 1; ++i) {
        for (int j = i + 1; j < P; ++j) {
            const auto &pi = ch.paths[static_cast<std::size_t>(i)];
            const auto &pj = ch.paths[static_cast<std::size_t>(j)];
            if (pi.delay_idx != pj.delay_idx)
                continue;
            const Complex cross = std::conj(pi.gain) * pj.gain;
            add_pair_ramp(xi.xi2, 2.0 * gamma * std::abs(cross), pj.doppler_idx - pi.doppler_idx,
                          std::arg(cross), mn);
        }
    }

    // Cross-validate the product form against the dense determinant.
    const GramDecomposition comp = gram_components(grid, ch);
    const double dense = nat_log_det(comp.h_a + comp.h_b1, gamma);
    const double dev = std::abs(dense - xi.log_det());
    if (dev > 1e-8) {
        std::ostringstream msg;
        msg << "xi_of: diagonal product disagrees with dense determinant (log dev " << dev << ")";
        throw std::runtime_error(msg.str());
    }
    return xi;
}

CMatrix omega_of(const GridParams &grid, const ChannelRealization &ch, double gamma) {
    grid.validate();
    ch.validate();
    if (gamma < 0.0)
        throw std::invalid_argument("omega_of: gamma must be >= 0");
    const int mn = grid.frame_size();

    CMatrix omega = CMatrix::Zero(mn, mn);
    const int P = ch.path_count();
    for (int i = 0; i < P; ++i) {
        for (int j = 0; j < P; ++j) {
            if (i == j)
                continue;
            const auto &pi = ch.paths[static_cast<std::size_t>(i)];
            const auto &pj = ch.paths[static_cast<std::size_t>(j)];
            const long d = pj.delay_idx - pi.delay_idx;
            if (d == 0)
                continue;
            // Lambda = Delta^{-k_i} Pi^{d} Delta^{k_j}: one entry per column,
            // never on the diagonal because 0 < d mod MN < MN.
            const Complex coeff = gamma * std::conj(pi.gain) * pj.gain;
            const long dr = ((d % mn) + mn) % mn;
            for (long c = 0; c < mn; ++c) {
                const long r = (c + dr) % mn;
                const long ph =
                    (((static_cast<long>(pj.doppler_idx) * c -
                       static_cast<long>(pi.doppler_idx) * r) %
                      mn) +
                     mn) %
                    mn;
                omega(r, c) += coeff * std::polar(1.0, kTwoPi * static_cast<double>(ph) / mn);
            }
        }
    }
    return omega;
}

PropositionCheck verify_prop1(const GridParams &grid, const ChannelRealization &ch, double gamma) {
    const GramDecomposition comp = gram_components(grid, ch);
    const int mn = grid.frame_size();

    PropositionCheck res;
    res.log_lhs = nat_log_det(comp.h_a + comp.h_b1, gamma);
    res.log_rhs = mn * std::log1p(gamma * ch.gain_energy());
    res.holds = res.log_lhs <= res.log_rhs + log_slack();
    res.equality = std::abs(res.log_lhs - res.log_rhs) <= 1e-12 * std::max(1.0, std::abs(res.log_rhs));

    if (power_of_two(grid.M) && power_of_two(grid.N)) {
        const XiDiagonal xi = xi_of(grid, ch, gamma); // throws if the product form disagrees
        res.xi_route_checked = true;
        res.max_aux_dev = std::abs(xi.log_det() - res.log_lhs);
        res.aux_ok = res.max_aux_dev <= 1e-8 && xi.min_entry() > 0.0;
    }
    return res;
}

PropositionCheck verify_prop2(const GridParams &grid, const ChannelRealization &ch, double gamma) {
    const GramDecomposition comp = gram_components(grid, ch);
    const CMatrix gram = comp.sum();

    PropositionCheck res;
    res.log_lhs = nat_log_det(gram, gamma);
    res.log_rhs = nat_log_det(comp.h_a + comp.h_b1, gamma);
    res.holds = res.log_lhs <= res.log_rhs + log_slack();
    res.equality = std::abs(res.log_lhs - res.log_rhs) <= 1e-12 * std::max(1.0, std::abs(res.log_rhs));

    // Route through the similarity-transformed domain: Xi + Omega must be
    // positive definite, carry the spectrum of I + gamma*Gram, and obey the
    // diagonal-dominance determinant bound det(Xi + Omega) <= det(Xi).
    const XiDiagonal xi = xi_of(grid, ch, gamma);
    CMatrix s = omega_of(grid, ch, gamma);
    for (Eigen::Index b = 0; b < s.rows(); ++b)
        s(b, b) += Complex(xi.xi1 + xi.xi2(b), 0.0);

    Eigen::SelfAdjointEigenSolver<CMatrix> es(s, Eigen::EigenvaluesOnly);
    const RVector lam_s = es.eigenvalues();
    res.xi_route_checked = true;
    res.aux_ok = lam_s(0) > 0.0;

    double log_det_s = 0.0;
    for (Eigen::Index b = 0; b < lam_s.size(); ++b)
        log_det_s += std::log(lam_s(b));
    res.aux_ok = res.aux_ok && log_det_s <= xi.log_det() + log_slack();

    Eigen::SelfAdjointEigenSolver<CMatrix> eg(gram, Eigen::EigenvaluesOnly);
    const RVector lam_g = eg.eigenvalues();
    double max_dev = std::abs(log_det_s - res.log_lhs);
    for (Eigen::Index b = 0; b < lam_s.size(); ++b) {
        const double ref = 1.0 + gamma * std::max(0.0, lam_g(b));
        max_dev = std::max(max_dev, std::abs(lam_s(b) - ref) / ref);
    }
    res.max_aux_dev = max_dev;
    res.aux_ok = res.aux_ok && max_dev <= 1e-8;
    return res;
}

} // namespace otfs
