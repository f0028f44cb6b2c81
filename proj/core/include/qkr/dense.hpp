/* Copyright 2026 The qkr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Brute-force matrix propagation, kept independent of the spectral path so
// the two can check each other.

#include "qkr/config.hpp"
#include "qkr/wavefunction.hpp"

#include <Eigen/Dense>

namespace qkr {

struct DenseKick {
    /// U[n, m] = (-i)^(n-m) J_(n-m)(phi), rows and columns m in [-M, M].
    Eigen::MatrixXcd matrix;
    /// Smallest d with sum_{|k| > d} J_k(phi)^2 below 1e-20: how far one
    /// kick spreads a rung.
    int reach = 0;
    /// max |U^H U - 1| entrywise over the columns |m| <= M - reach, whose
    /// images fit on the ladder; over all columns when there are none.
    double unitarity_error = 0.0;
    /// Set when truncation breaks unitarity by more than 1e-8.
    bool truncation_warning = false;
};

/// Kick operator as an explicit (2M+1) x (2M+1) matrix. phi may be negative.
DenseKick kick_matrix(double phi, int half_width);

inline constexpr int kDenseHalfWidthCap = 512;

/// Same contract as evolve() but by matrix-vector products on a fixed ladder
/// of config.half_width. Throws SizeGuardError above kDenseHalfWidthCap.
MomentumWavefunction evolve_dense(const SimConfig& config);

} // namespace qkr
