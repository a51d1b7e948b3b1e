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
#include "otfs/dd_channel.hpp"

namespace otfs {

/// Three-part split of the Gram matrix H_DD^H H_DD:
///   h_a  -- total gain energy times the identity,
///   h_b1 -- cross terms of path pairs sharing a delay index,
///   h_b2 -- cross terms of path pairs with different delay indices.
/// h_a + h_b1 + h_b2 reproduces the Gram matrix; h_b1 and h_b2 are Hermitian.
struct GramDecomposition {
    CMatrix h_a;
    CMatrix h_b1;
    CMatrix h_b2;

    CMatrix sum() const { return h_a + h_b1 + h_b2; }
};

/// H_DD^H H_DD assembled directly from the path list, O(P^2 * MN).
CMatrix gram_matrix(const GridParams &grid, const ChannelRealization &ch);

GramDecomposition gram_components(const GridParams &grid, const ChannelRealization &ch);

/// Eigenvalues of the Gram matrix, ascending. One decomposition serves every
/// SNR point of a sweep.
RVector gram_eigenvalues(const GridParams &grid, const ChannelRealization &ch);

/// log2 det(I + gamma*G) for Hermitian PSD G, via the eigenvalues of G.
/// Eigenvalues in [-1e-10*||G||_F, 0) are treated as rounding noise and
/// clamped to zero; anything more negative rejects the input. Matrices with
/// ||G - G^H||_F > 1e-8*||G||_F are rejected rather than symmetrized.
double log_det_psd(const CMatrix &G, double gamma);

/// Normalized capacity in bits/symbol from precomputed Gram eigenvalues:
/// (1/frame_size) * sum_j log2(1 + gamma*lambda_j).
double capacity_from_eigenvalues(const RVector &eigs, double gamma, int frame_size);

/// Normalized instantaneous capacity (1/MN) log2 det(I + gamma*H_DD^H H_DD).
double capacity(const GridParams &grid, const ChannelRealization &ch, double gamma);

} // namespace otfs
