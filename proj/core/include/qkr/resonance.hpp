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

#include "qkr/wavefunction.hpp"

#include <vector>

namespace qkr {

/// First-order change in position density produced by one slightly detuned
/// free flight. Values are in 1/radian and scale linearly with epsilon.
struct CorrectionField {
    SpatialGrid grid;
    std::vector<double> values;
    double epsilon = 0.0;
    /// Bessel argument k * phi_d of the resonant state entering the flight.
    double bessel_argument = 0.0;
};

/// Position density to first order in epsilon, after a given number of kicks.
struct PerturbativeDensity {
    SpatialGrid grid;
    std::vector<double> values;
    int kicks = 0;
    double epsilon = 0.0;
};

/// Exactly resonant state after t kicks: psi(m) = (-i)^m J_m(t phi_d).
///
/// Throws LeakageError if the ladder truncates more than 1e-10 of the norm.
MomentumWavefunction resonant_state(int t, double phi_d, int half_width);

/// Correction from the free flight that follows the k-th kick:
///
///   C(X) = (1/pi) sum_m sum_{n>m} Re[ e^{i(m-n)X} (n^2 - m^2) 2 pi i eps
///                                     i^n J_n(a) (-i)^m J_m(a) ],  a = k phi_d.
///
/// The double sum is regrouped by n - m, so the cost is O(M^2 + M n_points).
CorrectionField correction_term(int k, double phi_d, double epsilon, const SpatialGrid& grid, int half_width);

/// 1/(2 pi) + sum of the corrections from the kicks-1 free flights between
/// the kicks. The kick itself leaves the position density unchanged, so only
/// flights contribute.
PerturbativeDensity perturbative_density(int kicks, double phi_d, double epsilon, const SpatialGrid& grid,
                                         int half_width);

} // namespace qkr
