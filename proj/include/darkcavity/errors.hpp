// Copyright 2026 The darkcavity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace darkcavity {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Matrix or vector shapes that do not fit the model (M > N, wrong drive count, ...).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Invalid physical parameters or configuration values.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A linear solve could not be trusted.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double condition_estimate)
        : Error(what), condition_estimate_(condition_estimate) {}

    /// Reciprocal condition estimate of the failed system (0 when unknown).
    double condition_estimate() const noexcept { return condition_estimate_; }

private:
    double condition_estimate_;
};

/// The stationary state is not unique on the reachable subspace.
class DegeneracyError : public Error {
public:
    DegeneracyError(const std::string& what, long kernel_dimension)
        : Error(what), kernel_dimension_(kernel_dimension) {}

    long kernel_dimension() const noexcept { return kernel_dimension_; }

private:
    long kernel_dimension_;
};

/// A driven collective cavity mode has no atomic partner to cancel it.
class NoDarkStateError : public Error {
public:
    using Error::Error;
};

/// Drive at or above the collective threshold 4*eta/(N*g) = 1.
class ThresholdError : public Error {
public:
    using Error::Error;
};

/// Requested dimension exceeds the dense-solve budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Unreadable input or unwritable output.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace darkcavity
