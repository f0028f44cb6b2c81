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

#include "qkr/resonance.hpp"

#include "qkr/bessel.hpp"
#include "qkr/error.hpp"

#include <cmath>
#include <string>

namespace qkr {

namespace {

constexpr double kBesselFloor = 1e-16;
constexpr double kNormDeficitLimit = 1e-10;

complex i_pow(int k)
{
    switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

void check_args(double phi_d, int half_width)
{
    if (!std::isfinite(phi_d) || phi_d < 0.0) {
        throw DomainError("phi_d must be a non-negative real");
    }
    if (half_width < 1) {
        throw DomainError("half width must be >= 1");
    }
}

// J_m(a) for m in [-M, M], indexed m + M.
std::vector<double> bessel_ladder(double a, int half_width)
{
    const auto pos = bessel_j_sequence(half_width, a);
    std::vector<double> out(static_cast<std::size_t>(2 * half_width + 1));
    for (int m = 0; m <= half_width; ++m) {
        const double v = pos[static_cast<std::size_t>(m)];
        out[static_cast<std::size_t>(half_width + m)] = v;
        out[static_cast<std::size_t>(half_width - m)] = (m % 2 == 0) ? v : -v;
    }
    return out;
}

} // namespace

MomentumWavefunction resonant_state(int t, double phi_d, int half_width)
{
    if (t < 0) {
        throw DomainError("resonant_state: t must be non-negative");
    }
    check_args(phi_d, half_width);
    const auto jn = bessel_ladder(t * phi_d, half_width);
    MomentumWavefunction wf(half_width);
    for (int m = -half_width; m <= half_width; ++m) {
        const complex phase = std::conj(i_pow(m)); // (-i)^m
        wf(m) = phase * jn[static_cast<std::size_t>(m + half_width)];
    }
    const double deficit = std::abs(1.0 - wf.norm_squared());
    if (deficit > kNormDeficitLimit) {
        throw LeakageError("resonant_state: ladder M=" + std::to_string(half_width) + " truncates norm by "
                           + std::to_string(deficit));
    }
    return wf;
}

CorrectionField correction_term(int k, double phi_d, double epsilon, const SpatialGrid& grid, int half_width)
{
    if (k < 1) {
        throw DomainError("correction_term: k must be >= 1");
    }
    if (!std::isfinite(epsilon)) {
        throw DomainError("correction_term: epsilon must be finite");
    }
    check_args(phi_d, half_width);
    if (!grid.resolves(half_width)) {
        throw GridTooSmallError("correction_term: grid too small for M=" + std::to_string(half_width));
    }

    const double a = k * phi_d;
    const auto jn = bessel_ladder(a, half_width);
    const double norm = [&] {
        double s = 0.0;
        for (double v : jn) {
            s += v * v;
        }
        return s;
    }();
    if (std::abs(1.0 - norm) > kNormDeficitLimit) {
        throw LeakageError("correction_term: ladder M=" + std::to_string(half_width)
                           + " truncates the resonant state");
    }

    const int M = half_width;
    const int n = grid.size();

    // z_d = 2 pi i * i^d * sum_m (n^2 - m^2) J_n J_m with n = m + d; epsilon
    // is applied last so the field is exactly linear in it.
    std::vector<complex> z(static_cast<std::size_t>(2 * M + 1), complex{});
    for (int d = 1; d <= 2 * M; ++d) {
        double s = 0.0;
        for (int m = -M; m + d <= M; ++m) {
            const double jm = jn[static_cast<std::size_t>(m + M)];
            const double jnn = jn[static_cast<std::size_t>(m + d + M)];
            if (std::abs(jm) < kBesselFloor || std::abs(jnn) < kBesselFloor) {
                continue;
            }
            const double nn = static_cast<double>(m + d);
            const double mm = static_cast<double>(m);
            s += (nn * nn - mm * mm) * jnn * jm;
        }
        z[static_cast<std::size_t>(d)] = complex(0.0, kTwoPi) * i_pow(d) * s;
    }

    std::vector<double> cos_table(static_cast<std::size_t>(n));
    std::vector<double> sin_table(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        cos_table[static_cast<std::size_t>(j)] = std::cos(grid.node(j));
        sin_table[static_cast<std::size_t>(j)] = std::sin(grid.node(j));
    }

    CorrectionField field{grid, std::vector<double>(static_cast<std::size_t>(n), 0.0), epsilon, a};
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int d = 1; d <= 2 * M; ++d) {
            const complex zd = z[static_cast<std::size_t>(d)];
            if (zd == complex{}) {
                continue;
            }
            // Re[e^{-i d X} z] = Re z cos(dX) + Im z sin(dX)
            const auto idx = static_cast<std::size_t>((static_cast<long long>(d) * j) % n);
            acc += zd.real() * cos_table[idx] + zd.imag() * sin_table[idx];
        }
        field.values[static_cast<std::size_t>(j)] = epsilon * (acc / kPi);
    }
    return field;
}

PerturbativeDensity perturbative_density(int kicks, double phi_d, double epsilon, const SpatialGrid& grid,
                                         int half_width)
{
    if (kicks < 0) {
        throw DomainError("perturbative_density: kicks must be non-negative");
    }
    check_args(phi_d, half_width);
    PerturbativeDensity out{grid, std::vector<double>(static_cast<std::size_t>(grid.size()), 1.0 / kTwoPi),
                            kicks, epsilon};
    for (int k = 1; k < kicks; ++k) {
        const auto c = correction_term(k, phi_d, epsilon, grid, half_width);
        for (std::size_t j = 0; j < out.values.size(); ++j) {
            out.values[j] += c.values[j];
        }
    }
    return out;
}

} // namespace qkr
