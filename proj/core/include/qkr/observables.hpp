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

#include <optional>
#include <span>
#include <vector>

namespace qkr {

/// Probability values on a position grid (1/radian) or on the momentum
/// ladder (probability mass per rung).
class Density {
public:
    enum class Kind { position, momentum };

    static Density position(const SpatialGrid& grid, std::vector<double> values);
    static Density momentum(int half_width, std::vector<double> values);

    Kind kind() const noexcept { return kind_; }
    std::span<const double> values() const noexcept { return values_; }

    /// Grid for position densities; throws for momentum densities.
    const SpatialGrid& grid() const;
    /// Ladder half width for momentum densities; throws for position densities.
    int half_width() const;

    /// Integral (position) or sum (momentum).
    double total() const noexcept;

private:
    Density(Kind kind, std::optional<SpatialGrid> grid, int half_width, std::vector<double> values);

    Kind kind_;
    std::optional<SpatialGrid> grid_;
    int half_width_ = 0;
    std::vector<double> values_;
};

/// Sampled curve with strictly increasing abscissa, at least five points.
class Profile {
public:
    Profile(std::vector<double> abscissa, std::vector<double> ordinate);

    std::span<const double> abscissa() const noexcept { return x_; }
    std::span<const double> ordinate() const noexcept { return y_; }
    std::size_t size() const noexcept { return x_.size(); }

private:
    std::vector<double> x_;
    std::vector<double> y_;
};

Density position_density(const PositionWavefunction& pwf);
Density momentum_density(const MomentumWavefunction& wf);

/// Width of a position density on the circle.
///
/// The density is rotated so its largest bin sits at X = pi (ties go to the
/// lowest index), then the ordinary standard deviation is taken on [0, 2 pi)
/// treating each node value as constant over a bin of width dX centred on
/// the node. The uniform density gives exactly pi / sqrt(3).
///
/// Throws DegenerateDensityError when the mass is below 1 - 1e-6.
double sigma_x(const Density& d);

/// (hbar_s^2 / 2) sum_m m^2 |psi(m)|^2.
double mean_energy(const MomentumWavefunction& wf, double hbar_s);

/// Full width at half level of a peaked profile.
///
/// The peak is the largest sample. With no override the half level is
/// (peak + min(first, last)) / 2; crossings are the first samples strictly
/// below the level walking outward from the peak, refined by linear
/// interpolation. Throws NoCrossingError if either side never drops below.
double fwhm(const Profile& p, std::optional<double> half_level = std::nullopt);

/// Sum |a - b| for momentum densities, integral |a - b| dX for position.
double l1_distance(const Density& a, const Density& b);

} // namespace qkr
