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

#include "qkr/wavefunction.hpp"

#include "qkr/error.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace qkr {

namespace {

std::size_t wrap(int m, int n)
{
    const int r = m % n;
    return static_cast<std::size_t>(r < 0 ? r + n : r);
}

} // namespace

MomentumWavefunction::MomentumWavefunction(int half_width)
    : half_width_(half_width)
{
    if (half_width < 1) {
        throw DomainError("momentum ladder half width must be >= 1, got " + std::to_string(half_width));
    }
    amps_.assign(static_cast<std::size_t>(2 * half_width + 1), complex{});
}

MomentumWavefunction::MomentumWavefunction(int half_width, std::vector<complex> amps)
    : half_width_(half_width), amps_(std::move(amps))
{
    if (half_width < 1) {
        throw DomainError("momentum ladder half width must be >= 1, got " + std::to_string(half_width));
    }
    if (amps_.size() != static_cast<std::size_t>(2 * half_width + 1)) {
        throw DomainError("amplitude count does not match 2M+1");
    }
}

std::size_t MomentumWavefunction::index(int m) const
{
    if (m < -half_width_ || m > half_width_) {
        throw DomainError("momentum index " + std::to_string(m) + " outside ladder");
    }
    return static_cast<std::size_t>(m + half_width_);
}

double MomentumWavefunction::norm_squared() const noexcept
{
    double s = 0.0;
    for (const auto& a : amps_) {
        s += std::norm(a);
    }
    return s;
}

double MomentumWavefunction::edge_occupancy() const noexcept
{
    if (amps_.empty()) {
        return 0.0;
    }
    return std::norm(amps_.front()) + std::norm(amps_.back());
}

MomentumWavefunction MomentumWavefunction::resized(int half_width) const
{
    MomentumWavefunction out(half_width);
    const int keep = std::min(half_width, half_width_);
    for (int m = -keep; m <= keep; ++m) {
        out(m) = (*this)(m);
    }
    return out;
}

SpatialGrid::SpatialGrid(int n_points)
    : n_(n_points)
{
    if (n_points < 1) {
        throw DomainError("grid needs at least one node");
    }
}

SpatialGrid SpatialGrid::for_half_width(int half_width)
{
    int n = 1;
    while (n < 4 * (half_width + 1)) {
        n *= 2;
    }
    return SpatialGrid(n);
}

PositionWavefunction::PositionWavefunction(SpatialGrid grid, std::vector<complex> values)
    : grid_(grid), values_(std::move(values))
{
    if (values_.size() != static_cast<std::size_t>(grid_.size())) {
        throw DomainError("sample count does not match grid size");
    }
}

double PositionWavefunction::norm_squared() const noexcept
{
    double s = 0.0;
    for (const auto& v : values_) {
        s += std::norm(v);
    }
    return s * grid_.spacing();
}

MomentumWavefunction init_momentum_eigenstate(int half_width)
{
    MomentumWavefunction wf(half_width);
    wf(0) = 1.0;
    return wf;
}

PositionWavefunction to_position(const MomentumWavefunction& wf, const SpatialGrid& grid)
{
    const int M = wf.half_width();
    if (!grid.resolves(M)) {
        throw GridTooSmallError("grid of " + std::to_string(grid.size()) + " points cannot resolve ladder M="
                                + std::to_string(M));
    }
    const int n = grid.size();
    std::vector<complex> buf(static_cast<std::size_t>(n));
    for (int m = -M; m <= M; ++m) {
        buf[wrap(m, n)] = wf(m);
    }
    detail::backward_dft(buf);
    const double scale = 1.0 / std::sqrt(kTwoPi);
    for (auto& v : buf) {
        v *= scale;
    }
    return PositionWavefunction(grid, std::move(buf));
}

MomentumWavefunction to_momentum(const PositionWavefunction& pwf, int half_width)
{
    const auto& grid = pwf.grid();
    if (half_width < 1) {
        throw DomainError("momentum ladder half width must be >= 1");
    }
    if (!grid.resolves(half_width)) {
        throw GridTooSmallError("ladder M=" + std::to_string(half_width) + " exceeds the Nyquist margin of a "
                                + std::to_string(grid.size()) + "-point grid");
    }
    const int n = grid.size();
    std::vector<complex> buf(pwf.values().begin(), pwf.values().end());
    detail::forward_dft(buf);
    const double scale = std::sqrt(kTwoPi) / n;
    MomentumWavefunction out(half_width);
    for (int m = -half_width; m <= half_width; ++m) {
        out(m) = buf[wrap(m, n)] * scale;
    }
    return out;
}

} // namespace qkr
