// Copyright 2026 The proctensor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace proctensor {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (bad labels, mismatched
/// dimensions, non-unitary input, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The requested instance is too large for the configured dimension cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A numerical invariant failed beyond tolerance (e.g. a density matrix
/// with a negative eigenvalue).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Filesystem or format problem while reading/writing artifacts.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace proctensor
