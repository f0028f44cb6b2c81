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

#include "qkr/observables.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace qkr {

enum class ScanMode {
    position, // sigma_X of the final position density
    fidelity, // fidelity_protocol value
};

const char* to_string(ScanMode mode) noexcept;

struct ScanOptions {
    /// Samples per scan; odd so that epsilon = 0 is on the grid.
    int points = 65;
    /// Worker threads for independent epsilon points. Results do not depend
    /// on this value.
    int threads = 1;
    /// Largest epsilon auto_range may return.
    double range_cap = 0.25;
};

struct EpsilonScan {
    int kicks = 0;
    double phi_d = 0.0;
    int l = 1;
    ScanMode mode = ScanMode::position;
    std::vector<double> epsilons;
    std::vector<double> values;

    Profile profile() const { return Profile(epsilons, values); }
};

struct PowerLawFit {
    double gamma = 0.0;     // slope of log(width) vs log(N)
    double intercept = 0.0; // log(width) at N = 1
    double r_squared = 0.0;

    double operator()(double n) const;
};

struct WidthScaling {
    ScanMode mode = ScanMode::position;
    std::vector<int> kicks;
    std::vector<double> widths;
    std::vector<double> ranges; // epsilon_max used for each scan
    double gamma = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;

    PowerLawFit fit() const { return {gamma, intercept, r_squared}; }
};

struct ComparisonRow {
    int kicks = 0;
    double position_width = 0.0;
    double fidelity_width = 0.0;
    /// position / fidelity at the same kick count.
    double ratio = 0.0;
    /// position width over the fidelity fit at kicks / 2, i.e. the same total
    /// pulse budget once the reversed pulses are counted.
    double equal_budget_ratio = 0.0;
};

struct ModeComparison {
    WidthScaling position;
    WidthScaling fidelity;
    std::vector<ComparisonRow> rows;
    /// First kick count in the list where the position width exceeds the
    /// fidelity width.
    std::optional<int> crossover;
    /// Kick count where the two fitted power laws intersect.
    double fit_crossover = 0.0;
};

/// Single simulation at one epsilon.
double scan_value(int kicks, double phi_d, int l, ScanMode mode, double epsilon);

/// Uniform symmetric epsilon grid on [-epsilon_max, epsilon_max] with an odd
/// number of points (>= 33), one simulation per point.
EpsilonScan scan_epsilon(int kicks, double phi_d, int l, ScanMode mode, double epsilon_max, int points,
                         int threads = 1);

/// Half level used for a scan: 1/2 for fidelity profiles whose edges reach
/// below it, otherwise (peak + lower edge) / 2.
std::optional<double> half_level_for(const EpsilonScan& scan);

/// fwhm of the scan's profile under half_level_for.
double scan_width(const EpsilonScan& scan);

/// Scan half-range that brackets the resonance, found by doubling from
/// 0.1 / N^2.
///
/// Fidelity mode stops once both edges are below 1/2. Position mode stops
/// once doubling no longer lowers the edge sigma_X, so the scan ends on the
/// floor of the profile and fwhm's half level sits midway between peak and
/// floor. Throws RangeCapError past `cap`.
double auto_range(int kicks, double phi_d, int l, ScanMode mode, double cap = 0.25);

/// Same stopping rules on an arbitrary profile function.
double auto_range(const std::function<double(double)>& profile, int kicks, ScanMode mode, double cap = 0.25);

/// Least-squares line through (log N, log width).
PowerLawFit fit_power_law(const std::vector<double>& kicks, const std::vector<double>& widths);

/// Width per kick count (auto_range, scan, fwhm) and its power-law fit.
/// Throws FitRefusedError when r_squared < 0.9.
WidthScaling width_scaling(const std::vector<int>& kicks, double phi_d, int l, ScanMode mode,
                           const ScanOptions& options = {});

/// Both modes over the same kick counts.
ModeComparison compare_modes(const std::vector<int>& kicks, double phi_d, int l, const ScanOptions& options = {});

} // namespace qkr
