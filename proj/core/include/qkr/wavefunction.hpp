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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qkr {

using complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Amplitudes psi(m) on the truncated integer momentum ladder m in [-M, M].
///
/// Storage is index-shifted: amplitude of momentum m lives at index m + M.
/// The physical momentum P = m * hbar_s is never stored.
class MomentumWavefunction {
public:
    MomentumWavefunction() = default;

    /// All-zero ladder with the given half width (M >= 1).
    explicit MomentumWavefunction(int half_width);
    MomentumWavefunction(int half_width, std::vector<complex> amps);

    int half_width() const noexcept { return half_width_; }
    std::size_t size() const noexcept { return amps_.size(); }

    complex operator()(int m) const { return amps_[index(m)]; }
    complex& operator()(int m) { return amps_[index(m)]; }

    std::span<const complex> amplitudes() const noexcept { return amps_; }
    std::span<complex> amplitudes() noexcept { return amps_; }

    double norm_squared() const noexcept;

    /// |psi(-M)|^2 + |psi(M)|^2.
    double edge_occupancy() const noexcept;

    /// Truncation health: edge occupancy below `bound`.
    bool truncation_healthy(double bound = kLeakageBound) const noexcept
    {
        return edge_occupancy() < bound;
    }

    /// Copy onto a ladder of a different half width, zero-padding or
    /// dropping the outermost rungs.
    MomentumWavefunction resized(int half_width) const;

    static constexpr double kLeakageBound = 1e-14;

private:
    std::size_t index(int m) const;

    int half_width_ = 0;
    std::vector<complex> amps_;
};

/// Uniform nodes X_j = 2 pi j / n on [0, 2 pi).
class SpatialGrid {
public:
    explicit SpatialGrid(int n_points);

    int size() const noexcept { return n_; }
    double spacing() const noexcept { return kTwoPi / n_; }
    double node(int j) const noexcept { return kTwoPi * j / n_; }

    /// n_points >= 2 (2M + 1).
    bool resolves(int half_width) const noexcept
    {
        return n_ >= 2 * (2 * half_width + 1);
    }

    /// Smallest power of two that is >= 4 (M + 1).
    static SpatialGrid for_half_width(int half_width);

    friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;

private:
    int n_;
};

/// Samples Psi(X_j) of the position-space wavefunction.
class PositionWavefunction {
public:
    PositionWavefunction(SpatialGrid grid, std::vector<complex> values);

    const SpatialGrid& grid() const noexcept { return grid_; }
    std::span<const complex> values() const noexcept { return values_; }
    std::span<complex> values() noexcept { return values_; }

    /// (2 pi / n) sum_j |Psi(X_j)|^2.
    double norm_squared() const noexcept;

private:
    SpatialGrid grid_;
    std::vector<complex> values_;
};

/// psi(m) = delta_{m,0}.
MomentumWavefunction init_momentum_eigenstate(int half_width);

/// Psi(X_j) = (2 pi)^{-1/2} sum_m psi(m) exp(i m X_j).
///
/// Throws GridTooSmallError when the grid does not resolve the ladder.
PositionWavefunction to_position(const MomentumWavefunction& wf, const SpatialGrid& grid);

/// Inverse of to_position for band-limited states:
/// psi(m) = (2 pi)^{-1/2} (2 pi / n) sum_j Psi(X_j) exp(-i m X_j).
MomentumWavefunction to_momentum(const PositionWavefunction& pwf, int half_width);

} // namespace qkr
