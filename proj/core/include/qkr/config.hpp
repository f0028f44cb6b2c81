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

#include <optional>

namespace qkr {

/// Run parameters shared by every simulation entry point.
///
/// Units are scaled: epsilon is the fractional deviation of the kick period
/// from the Talbot time, and phi_d is the effective kick strength K / hbar_s.
struct SimConfig {
    double phi_d = 0.485;
    double epsilon = 0.0;
    int l = 1;
    int kicks = 0;
    int half_width = 0;
    int n_points = 0;

    /// When set, free flights use the general phase hbar_s m^2 / 2 instead of
    /// the resonance-relative phase 2 pi l m^2 epsilon.
    std::optional<double> hbar_s;

    /// Config with the default truncation and grid for the given kicks and
    /// kick strength.
    static SimConfig make(int kicks, double phi_d, double epsilon, int l = 1);

    /// ceil(kicks * phi_d) + 32.
    static int default_half_width(int kicks, double phi_d);

    /// Smallest power of two >= 4 (M + 1).
    static int default_n_points(int half_width);

    /// Throws DomainError when any field is out of range.
    void validate() const;

    /// |epsilon| must stay below this; the free phase aliases past it.
    static constexpr double kEpsilonLimit = 0.5;
};

} // namespace qkr
