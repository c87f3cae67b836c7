/**
 * Copyright 2026 The thermsub Authors
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

namespace thermsub {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A denominator Pochhammer symbol vanishes before the series terminates.
class SingularParameterError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Requested order exceeds a configured truncation cap.
class TruncationError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Computation would exceed a hard resource cap.
class ResourceError : public Error {
public:
  using Error::Error;
};

/// Input data incompatible with the model (e.g. zero likelihood).
class DataError : public Error {
public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
public:
  using Error::Error;
};

namespace detail {

template <class E = DomainError>
inline void require(bool condition, const std::string& message) {
  if (!condition) throw E(message);
}

} // namespace detail
} // namespace thermsub
