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

#include "qkr/config.hpp"

#include "qkr/error.hpp"
#include "qkr/wavefunction.hpp"

#include <cmath>
#include <string>

namespace qkr {

int SimConfig::default_half_width(int kicks, double phi_d)
{
    return static_cast<int>(std::ceil(kicks * std::abs(phi_d))) + 32;
}

int SimConfig::default_n_points(int half_width)
{
    return SpatialGrid::for_half_width(half_width).size();
}

SimConfig SimConfig::make(int kicks, double phi_d, double epsilon, int l)
{
    SimConfig c;
    c.kicks = kicks;
    c.phi_d = phi_d;
    c.epsilon = epsilon;
    c.l = l;
    c.half_width = default_half_width(kicks, phi_d);
    c.n_points = default_n_points(c.half_width);
    return c;
}

void SimConfig::validate() const
{
    if (!std::isfinite(phi_d) || phi_d <= 0.0) {
        throw DomainError("phi_d must be a positive real");
    }
    if (!std::isfinite(epsilon) || std::abs(epsilon) >= kEpsilonLimit) {
        throw DomainError("epsilon must satisfy |epsilon| < 0.5, got " + std::to_string(epsilon));
    }
    if (l < 1) {
        throw DomainError("resonance order l must be a positive integer");
    }
    if (kicks < 0) {
        throw DomainError("kick count must be non-negative");
    }
    if (half_width < 1) {
        throw DomainError("half_width must be >= 1");
    }
    if (n_points < 2 * (2 * half_width + 1)) {
        throw GridTooSmallError("n_points=" + std::to_string(n_points) + " below Nyquist margin for M="
                                + std::to_string(half_width));
    }
    if (hbar_s && (!std::isfinite(*hbar_s) || *hbar_s <= 0.0)) {
        throw DomainError("hbar_s must be a positive real");
    }
}

} // namespace qkr
