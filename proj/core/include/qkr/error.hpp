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

#include <stdexcept>
#include <string>

namespace qkr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arguments outside the documented domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Spatial grid too coarse for the momentum ladder it is paired with.
class GridTooSmallError : public Error {
public:
    using Error::Error;
};

/// Occupancy at the ladder edges exceeds the truncation bound.
class LeakageError : public Error {
public:
    LeakageError(const std::string& what, int period = -1)
        : Error(what), period_(period) {}

    /// Kick index (1-based) at which the leakage was detected, or -1.
    int period() const noexcept { return period_; }

private:
    int period_;
};

/// Dense oracle asked to build a matrix above its size cap.
class SizeGuardError : public Error {
public:
    using Error::Error;
};

/// Probability mass too far from one to define a width.
class DegenerateDensityError : public Error {
public:
    using Error::Error;
};

/// Support mismatch between two densities.
class SupportMismatchError : public Error {
public:
    using Error::Error;
};

/// A profile never drops below its half level on one side of the peak.
class NoCrossingError : public Error {
public:
    using Error::Error;
};

/// auto_range ran past its cap without meeting the stopping rule.
class RangeCapError : public Error {
public:
    using Error::Error;
};

/// Power-law fit rejected because r_squared is below the acceptance floor.
class FitRefusedError : public Error {
public:
    using Error::Error;
};

} // namespace qkr
