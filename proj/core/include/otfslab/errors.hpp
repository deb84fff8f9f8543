// SPDX-License-Identifier: Apache-2.0
//
// otfslab - OTFS/OFDM link-level simulation and BER analysis over Nakagami-m fading
// Copyright (C) 2026 The otfslab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace otfs {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

// Invalid or inconsistent configuration.
class ConfigError : public Error {
  public:
    using Error::Error;
};

// Inputs are valid individually but the requested closed form degenerates,
// e.g. coincident Gamma scales or an interference-free SINR model.
class DegeneracyError : public ConfigError {
  public:
    using ConfigError::ConfigError;
};

// Matrix / vector dimensions do not agree.
class ShapeError : public Error {
  public:
    using Error::Error;
};

// Exhaustive search space exceeds the configured hypothesis cap.
class CapacityError : public Error {
  public:
    CapacityError(double required, double allowed);
    double required() const noexcept { return required_; }
    double allowed() const noexcept { return allowed_; }

  private:
    double required_;
    double allowed_;
};

// Iterative numerics failed to reach the requested tolerance.
class NumericError : public Error {
  public:
    NumericError(const std::string& what, double estimate, double error_bound)
        : Error(what), estimate_(estimate), error_bound_(error_bound) {}
    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

  private:
    double estimate_;
    double error_bound_;
};

// A BER point has no observed errors, so a log-slope is undefined.
class InsufficientErrors : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

inline CapacityError::CapacityError(double required, double allowed)
    : Error("ML search space of " + std::to_string(required) + " hypotheses exceeds the cap of " +
            std::to_string(allowed)),
      required_(required), allowed_(allowed) {}

} // namespace otfs
