// SPDX-License-Identifier: Apache-2.0
//
// dasrate: ergodic sum-rate analysis and mode selection for distributed antenna systems
// Copyright (C) 2026 The dasrate authors
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

#ifndef DASRATE_ERRORS_HPP
#define DASRATE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dasrate
{

// Every error raised by the library derives from Error. The CLI maps each
// subclass to its own exit status.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function (e.g. E1 at x <= 0).
class DomainError : public Error
{
public:
    using Error::Error;
};

// An enumeration or count would exceed the configured budget or integer range.
class CapacityError : public Error
{
public:
    using Error::Error;
};

// Partial-fraction evaluation impossible: two gains coincide even after the guard.
class DegeneracyError : public Error
{
public:
    using Error::Error;
};

// Adaptive quadrature or root search did not reach its tolerance.
class NumericalFailure : public Error
{
public:
    using Error::Error;
};

// Malformed input: config files, mode labels, SNR grids, option values.
class UsageError : public Error
{
public:
    using Error::Error;
};

} // namespace dasrate

#endif
