// SPDX-License-Identifier: Apache-2.0
//
// dyncache: shared-cache coded caching for dynamic MISO downlinks
// Copyright (C) 2026 The dyncache authors
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

#include <stdexcept>
#include <string>

namespace dyncache {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A configuration breaks one of the design inequalities. The message names it.
class ConstraintViolation : public Error {
  public:
    using Error::Error;
};

/// P * gamma is not an integer.
class NonIntegerTBar : public Error {
  public:
    using Error::Error;
};

/// Every profile is empty.
class EmptyNetwork : public Error {
  public:
    using Error::Error;
};

/// A per-(user, mini-file) subpacket counter ran past S while scheduling.
class CounterExhausted : public Error {
  public:
    using Error::Error;
};

/// DoF requested for a schedule without transmissions.
class DivByZero : public Error {
  public:
    using Error::Error;
};

/// The dual fixed-point iteration hit its iteration cap.
class NonConvergence : public Error {
  public:
    using Error::Error;
};

/// Beamformer search found no feasible target rate at all.
class InfeasibleZero : public Error {
  public:
    using Error::Error;
};

/// Zero-forcing constraints cannot be met with the available antennas.
class RankDeficiency : public Error {
  public:
    using Error::Error;
};

/// Bad command line or configuration file input.
class UsageError : public Error {
  public:
    using Error::Error;
};

/// Output could not be written.
class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace dyncache
