/*
   Copyright 2026 The epspin Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace epspin {

/// Base for all library errors that are not plain precondition failures.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical invariant (trace, Hermiticity, positivity, steady-state
/// uniqueness, ...) was violated beyond its tolerance. The CLI maps this
/// to exit code 3.
class InvariantViolation : public Error {
public:
    InvariantViolation(std::string invariant, const std::string& detail)
        : Error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

    const std::string& invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

/// Malformed or inconsistent scenario configuration (CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace epspin
