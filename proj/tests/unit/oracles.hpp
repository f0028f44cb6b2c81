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

// Reference computations for the tests. Each one takes a different route
// from the library code it checks: plain series, direct O(n^2) sums,
// brute-force quadrature.

#include "qkr/wavefunction.hpp"

#include <cmath>
#include <complex>
#include <algorithm>
#include <random>
#include <vector>

namespace qkr::oracle {

/// J_n(x) from the truncated power series sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!).
/// Fine for small x; cancellation ruins it past x ~ 10.
inline double bessel_series(int n, double x)
{
    const int order = n < 0 ? -n : n;
    const double half = 0.5 * x;
    double term = 1.0;
    for (int i = 1; i <= order; ++i) {
        term *= half / i;
    }
    double sum = 0.0;
    for (int k = 0; k < 200; ++k) {
        sum += term;
        term *= -half * half / ((k + 1.0) * (k + 1.0 + order));
        if (std::abs(term) < 1e-300) {
            break;
        }
    }
    return (n < 0 && order % 2 != 0) ? -sum : sum;
}

/// Series for small x, libstdc++'s std::cyl_bessel_j beyond that.
inline double bessel_reference(int n, double x)
{
    if (x <= 5.0) {
        return bessel_series(n, x);
    }
    const int order = n < 0 ? -n : n;
    const double v = std::cyl_bessel_j(static_cast<double>(order), x);
    return (n < 0 && order % 2 != 0) ? -v : v;
}

/// Psi(X_j) by the literal double sum.
inline std::vector<complex> direct_to_position(const MomentumWavefunction& wf, int n_points)
{
    std::vector<complex> out(static_cast<std::size_t>(n_points));
    const int M = wf.half_width();
    for (int j = 0; j < n_points; ++j) {
        const double x = kTwoPi * j / n_points;
        complex s{};
        for (int m = -M; m <= M; ++m) {
            s += wf(m) * std::polar(1.0, m * x);
        }
        out[static_cast<std::size_t>(j)] = s / std::sqrt(kTwoPi);
    }
    return out;
}

/// Normalised state with random complex amplitudes on |m| <= support.
inline MomentumWavefunction random_state(int half_width, int support, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    MomentumWavefunction wf(half_width);
    double norm = 0.0;
    for (int m = -support; m <= support; ++m) {
        wf(m) = complex(g(rng), g(rng));
        norm += std::norm(wf(m));
    }
    for (auto& a : wf.amplitudes()) {
        a /= std::sqrt(norm);
    }
    return wf;
}

inline double max_abs_diff(const MomentumWavefunction& a, const MomentumWavefunction& b)
{
    const int M = std::min(a.half_width(), b.half_width());
    double d = 0.0;
    for (int m = -M; m <= M; ++m) {
        d = std::max(d, std::abs(a(m) - b(m)));
    }
    // amplitudes outside the common ladder count in full
    for (int m = M + 1; m <= a.half_width(); ++m) {
        d = std::max({d, std::abs(a(m)), std::abs(a(-m))});
    }
    for (int m = M + 1; m <= b.half_width(); ++m) {
        d = std::max({d, std::abs(b(m)), std::abs(b(-m))});
    }
    return d;
}

/// (-i)^m J_m(x), the closed-form resonant amplitude.
inline complex resonant_amplitude(int m, double x)
{
    static const complex minus_i(0.0, -1.0);
    const int r = ((m % 4) + 4) % 4;
    const complex phase = r == 0 ? complex(1, 0) : r == 1 ? minus_i : r == 2 ? complex(-1, 0) : complex(0, 1);
    return phase * bessel_reference(m, x);
}

} // namespace qkr::oracle
