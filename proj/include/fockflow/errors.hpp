// Copyright 2026 The fockflow Authors
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

#ifndef FOCKFLOW_ERRORS_HPP
#define FOCKFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fockflow {

/// Invalid argument passed to a public API (bad dimensions, out-of-range
/// values, inconsistent photon counts, ...).
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A state was looked up in a basis that does not contain it.
class NotFoundError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A serialized file is malformed (bad magic, version, truncation, trailing
/// bytes or inconsistent record data).
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An exact integer quantity does not fit the 64-bit counters used here.
class OverflowError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Numeric validation failed, e.g. a matrix is not unitary within tolerance.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Cross-structure consistency is broken, e.g. an index map references a
/// parent state missing from the parent basis.
class StructuralError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace fockflow

#endif
