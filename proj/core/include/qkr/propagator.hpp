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

#include "qkr/config.hpp"
#include "qkr/wavefunction.hpp"

namespace qkr {

enum class KickSign : int {
    normal = 1,    // exp(-i phi cos X)
    reversed = -1, // exp(+i phi cos X)
};

/// Position-space phase kick exp(-i sign phi cos X).
struct KickOperator {
    double phi = 0.0;
    KickSign sign = KickSign::normal;
};

/// Phase convention for the free flight between two kicks.
class FreePhaseSpec {
public:
    enum class Mode { resonant_relative, general };

    /// theta_m = 2 pi l m^2 epsilon; the exactly resonant part 2 pi l m^2 is
    /// dropped as the identity. Computed straight from epsilon, never as the
    /// difference of two large phases.
    static FreePhaseSpec resonant_relative(int l, double epsilon);

    /// theta_m = hbar_s m^2 / 2, reduced modulo 2 pi in extended precision.
    static FreePhaseSpec general(double hbar_s);

    Mode mode() const noexcept { return mode_; }
    int l() const noexcept { return l_; }
    double epsilon() const noexcept { return epsilon_; }
    double hbar_s() const noexcept { return hbar_s_; }

    /// Phase theta_m such that the free flight multiplies psi(m) by
    /// exp(-i theta_m).
    double phase(int m) const;

    /// True when every phase is zero (resonant-relative with epsilon = 0).
    bool is_identity() const noexcept { return mode_ == Mode::resonant_relative && epsilon_ == 0.0; }

private:
    Mode mode_ = Mode::resonant_relative;
    int l_ = 1;
    double epsilon_ = 0.0;
    double hbar_s_ = 0.0;
};

/// Free-flight spec implied by a run configuration.
FreePhaseSpec free_phase_of(const SimConfig& config);

/// Multiply by the kick phase in position space on the default grid for the
/// ladder. Throws LeakageError if the kicked state reaches the ladder edges.
MomentumWavefunction apply_kick(const MomentumWavefunction& wf, const KickOperator& op);
MomentumWavefunction apply_kick(const MomentumWavefunction& wf, const KickOperator& op, const SpatialGrid& grid);

/// psi(m) <- exp(-i theta_m) psi(m).
MomentumWavefunction apply_free(const MomentumWavefunction& wf, const FreePhaseSpec& spec);

/// N kicks of strength phi_d separated by N - 1 free flights, starting from
/// the zero-momentum state; the result is the state right after the N-th
/// kick. The ladder is doubled and the run restarted whenever the edge
/// occupancy trips the truncation bound, so the returned half width may
/// exceed config.half_width. Throws LeakageError (with the kick index) if the
/// ladder cannot grow further.
MomentumWavefunction evolve(const SimConfig& config);

/// Fidelity F = |<0|psi>|^2 after evolve(config) followed immediately by a
/// reversed kick of strength kicks * phi_d.
double fidelity_protocol(const SimConfig& config);
double fidelity_protocol(int kicks, double phi_d, double epsilon, int l = 1);

} // namespace qkr
