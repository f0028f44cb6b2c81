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

#include "qkr/bessel.hpp"

#include "qkr/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qkr {

namespace {

constexpr int kMaxOrder = 10000;
constexpr double kMaxArgument = 1000.0;
constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleFactor = 1e-250;
constexpr double kSeriesBelow = 1e-6;

void check_domain(int n, double x)
{
    if (!std::isfinite(x) || x < 0.0 || x > kMaxArgument) {
        throw DomainError("bessel_j: argument " + std::to_string(x) + " outside [0, 1000]");
    }
    if (n > kMaxOrder || n < -kMaxOrder) {
        throw DomainError("bessel_j: order " + std::to_string(n) + " outside [-10000, 10000]");
    }
}

} // namespace

// Miller's algorithm: recur downward from an order far past both n_max and x,
// where J is negligible, then normalise with J_0 + 2 sum_k J_{2k} = 1.
std::vector<double> bessel_j_sequence(int n_max, double x)
{
    check_domain(n_max, x);
    if (n_max < 0) {
        throw DomainError("bessel_j_sequence: n_max must be non-negative");
    }

    std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }
    if (x < kSeriesBelow) {
        // two-term series; the dropped term is O((x/2)^4)
        const double half = 0.5 * x;
        double lead = 1.0; // (x/2)^n / n!
        for (int n = 0; n <= n_max; ++n) {
            out[static_cast<std::size_t>(n)] = lead * (1.0 - half * half / (n + 1));
            lead *= half / (n + 1);
        }
        return out;
    }

    const double reach = std::max(static_cast<double>(n_max), x);
    int start = static_cast<int>(std::ceil(reach + 20.0 + 10.0 * std::sqrt(reach)));
    start += start % 2;

    double next = 0.0; // J_{k+1}
    double curr = 1e-300; // J_k, arbitrary seed
    double norm = 0.0;
    const double two_over_x = 2.0 / x;

    for (int k = start; k > 0; --k) {
        const double prev = k * two_over_x * curr - next; // J_{k-1}
        next = curr;
        curr = prev;
        // curr now holds J_{k-1}
        const int order = k - 1;
        if (order <= n_max) {
            out[static_cast<std::size_t>(order)] = curr;
        }
        if (order > 0 && order % 2 == 0) {
            norm += 2.0 * curr;
        }
        if (std::abs(curr) > kRescaleAbove) {
            curr *= kRescaleFactor;
            next *= kRescaleFactor;
            norm *= kRescaleFactor;
            const int hi = std::min(n_max, start);
            for (int j = order; j <= hi; ++j) {
                out[static_cast<std::size_t>(j)] *= kRescaleFactor;
            }
        }
    }
    norm += curr; // J_0

    for (double& v : out) {
        v /= norm;
    }
    return out;
}

double bessel_j(int n, double x)
{
    check_domain(n, x);
    const int order = n < 0 ? -n : n;
    const double value = bessel_j_sequence(order, x)[static_cast<std::size_t>(order)];
    return (n < 0 && order % 2 != 0) ? -value : value;
}

} // namespace qkr
