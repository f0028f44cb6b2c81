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

#include "qkr/dense.hpp"

#include "qkr/bessel.hpp"
#include "qkr/error.hpp"
#include "qkr/propagator.hpp"

#include <cmath>
#include <string>

namespace qkr {

namespace {

// (-i)^k for integer k.
complex minus_i_pow(int k)
{
    switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
    }
}

constexpr double kTailMass = 1e-20;

} // namespace

DenseKick kick_matrix(double phi, int half_width)
{
    if (half_width < 1) {
        throw DomainError("kick_matrix: half width must be >= 1");
    }
    if (half_width > kDenseHalfWidthCap) {
        throw SizeGuardError("kick_matrix: M=" + std::to_string(half_width) + " above dense cap");
    }
    const int dim = 2 * half_width + 1;
    const int max_order = 2 * half_width;
    // J_k(-x) = (-1)^k J_k(x)
    const auto jn = bessel_j_sequence(max_order, std::abs(phi));
    const bool negate_odd = phi < 0.0;

    DenseKick out;
    out.matrix.resize(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            const int k = r - c;
            const int order = std::abs(k);
            double j = jn[static_cast<std::size_t>(order)];
            if (k < 0 && order % 2 != 0) {
                j = -j;
            }
            if (negate_odd && order % 2 != 0) {
                j = -j;
            }
            out.matrix(r, c) = minus_i_pow(k) * j;
        }
    }

    double tail = 0.0;
    out.reach = max_order;
    for (int k = max_order; k >= 0; --k) {
        tail += 2.0 * jn[static_cast<std::size_t>(k)] * jn[static_cast<std::size_t>(k)];
        if (tail > kTailMass) {
            break;
        }
        out.reach = k;
    }
    const int first = out.reach <= half_width ? out.reach : 0;
    const auto inner = out.matrix.middleCols(first, dim - 2 * first);
    const Eigen::MatrixXcd gram = inner.adjoint() * inner;
    out.unitarity_error = (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    out.truncation_warning = out.unitarity_error > 1e-8;
    return out;
}

MomentumWavefunction evolve_dense(const SimConfig& config)
{
    config.validate();
    const int M = config.half_width;
    if (M > kDenseHalfWidthCap) {
        throw SizeGuardError("evolve_dense: M=" + std::to_string(M) + " above dense cap of "
                             + std::to_string(kDenseHalfWidthCap));
    }
    const int dim = 2 * M + 1;
    const auto kick = kick_matrix(config.phi_d, M).matrix;

    const FreePhaseSpec free = free_phase_of(config);
    Eigen::VectorXcd flight(dim);
    for (int m = -M; m <= M; ++m) {
        flight(m + M) = std::polar(1.0, -free.phase(m));
    }

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi(M) = 1.0;
    for (int k = 1; k <= config.kicks; ++k) {
        if (k > 1) {
            psi = flight.cwiseProduct(psi);
        }
        psi = kick * psi;
    }

    std::vector<complex> amps(psi.data(), psi.data() + dim);
    return MomentumWavefunction(M, std::move(amps));
}

} // namespace qkr
