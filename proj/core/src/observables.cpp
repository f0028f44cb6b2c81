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

#include "qkr/observables.hpp"

#include "qkr/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace qkr {

Density::Density(Kind kind, std::optional<SpatialGrid> grid, int half_width, std::vector<double> values)
    : kind_(kind), grid_(grid), half_width_(half_width), values_(std::move(values))
{
}

Density Density::position(const SpatialGrid& grid, std::vector<double> values)
{
    if (values.size() != static_cast<std::size_t>(grid.size())) {
        throw DomainError("density length does not match grid");
    }
    return Density(Kind::position, grid, 0, std::move(values));
}

Density Density::momentum(int half_width, std::vector<double> values)
{
    if (half_width < 1 || values.size() != static_cast<std::size_t>(2 * half_width + 1)) {
        throw DomainError("density length does not match ladder");
    }
    return Density(Kind::momentum, std::nullopt, half_width, std::move(values));
}

const SpatialGrid& Density::grid() const
{
    if (!grid_) {
        throw DomainError("momentum density has no spatial grid");
    }
    return *grid_;
}

int Density::half_width() const
{
    if (kind_ != Kind::momentum) {
        throw DomainError("position density has no ladder");
    }
    return half_width_;
}

double Density::total() const noexcept
{
    double s = 0.0;
    for (double v : values_) {
        s += v;
    }
    return kind_ == Kind::position ? s * grid_->spacing() : s;
}

Profile::Profile(std::vector<double> abscissa, std::vector<double> ordinate)
    : x_(std::move(abscissa)), y_(std::move(ordinate))
{
    if (x_.size() != y_.size()) {
        throw DomainError("profile abscissa and ordinate lengths differ");
    }
    if (x_.size() < 5) {
        throw DomainError("profile needs at least 5 samples");
    }
    for (std::size_t i = 1; i < x_.size(); ++i) {
        if (!(x_[i] > x_[i - 1])) {
            throw DomainError("profile abscissa must be strictly increasing");
        }
    }
}

Density position_density(const PositionWavefunction& pwf)
{
    std::vector<double> v;
    v.reserve(pwf.values().size());
    for (const auto& c : pwf.values()) {
        v.push_back(std::norm(c));
    }
    return Density::position(pwf.grid(), std::move(v));
}

Density momentum_density(const MomentumWavefunction& wf)
{
    std::vector<double> v;
    v.reserve(wf.size());
    for (const auto& c : wf.amplitudes()) {
        v.push_back(std::norm(c));
    }
    return Density::momentum(wf.half_width(), std::move(v));
}

double sigma_x(const Density& d)
{
    if (d.kind() != Density::Kind::position) {
        throw DomainError("sigma_x needs a position density");
    }
    const double mass = d.total();
    if (!(mass >= 1.0 - 1e-6)) {
        throw DegenerateDensityError("sigma_x: total mass " + std::to_string(mass) + " below 1 - 1e-6");
    }
    const auto values = d.values();
    const int n = static_cast<int>(values.size());
    const double dx = d.grid().spacing();
    const auto peak = static_cast<int>(std::max_element(values.begin(), values.end()) - values.begin());
    const int shift = n / 2 - peak; // peak lands on node n/2, X = pi

    auto shifted = [&](int j) {
        const int src = ((j - shift) % n + n) % n;
        return values[static_cast<std::size_t>(src)];
    };

    double mean = 0.0;
    for (int j = 0; j < n; ++j) {
        mean += j * dx * shifted(j) * dx;
    }
    double var = 0.0;
    for (int j = 0; j < n; ++j) {
        const double dev = j * dx - mean;
        var += dev * dev * shifted(j) * dx;
    }
    // within-bin variance of a piecewise-constant density
    var += mass * dx * dx / 12.0;
    return std::sqrt(var);
}

double mean_energy(const MomentumWavefunction& wf, double hbar_s)
{
    const int M = wf.half_width();
    double s = 0.0;
    for (int m = -M; m <= M; ++m) {
        s += static_cast<double>(m) * m * std::norm(wf(m));
    }
    return 0.5 * hbar_s * hbar_s * s;
}

double fwhm(const Profile& p, std::optional<double> half_level)
{
    const auto x = p.abscissa();
    const auto y = p.ordinate();
    const std::size_t n = y.size();
    const auto peak = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    const double level = half_level.value_or(0.5 * (y[peak] + std::min(y.front(), y.back())));

    // first index strictly below the level, walking from the peak in `step`
    auto crossing = [&](int step) -> double {
        auto i = static_cast<std::ptrdiff_t>(peak);
        for (;;) {
            const auto j = i + step;
            if (j < 0 || j >= static_cast<std::ptrdiff_t>(n)) {
                throw NoCrossingError(std::string("profile never falls below half level on the ")
                                      + (step < 0 ? "left" : "right") + "; scan range too narrow");
            }
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            if (y[uj] < level) {
                const double t = (y[ui] - level) / (y[ui] - y[uj]);
                return x[ui] + t * (x[uj] - x[ui]);
            }
            i = j;
        }
    };

    return crossing(+1) - crossing(-1);
}

double l1_distance(const Density& a, const Density& b)
{
    if (a.kind() != b.kind()) {
        throw SupportMismatchError("l1_distance: position vs momentum density");
    }
    if (a.kind() == Density::Kind::position ? !(a.grid() == b.grid()) : a.half_width() != b.half_width()) {
        throw SupportMismatchError("l1_distance: densities live on different supports");
    }
    double s = 0.0;
    const auto va = a.values();
    const auto vb = b.values();
    for (std::size_t i = 0; i < va.size(); ++i) {
        s += std::abs(va[i] - vb[i]);
    }
    return a.kind() == Density::Kind::position ? s * a.grid().spacing() : s;
}

} // namespace qkr
