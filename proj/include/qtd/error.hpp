// Copyright 2026 The qtdpinn Authors
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

namespace qtd {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain (arccos of |x| > 1, sqrt of a
/// negative number, division by zero, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A size cap was exceeded (circuit width, matrix size, tensor size).
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Malformed arguments: wrong parameter count, mismatched lengths, bad
/// qubit indices.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IndexCollisionError : public Error {
 public:
  using Error::Error;
};

/// Raised when counting resources under a CNOT+single-qubit gate set on a
/// circuit that still contains controlled gates.
class NeedsLoweringError : public Error {
 public:
  using Error::Error;
};

class UnsupportedLoweringError : public Error {
 public:
  using Error::Error;
};

/// A polynomial violates its sup-norm precondition.
class BoundError : public Error {
 public:
  using Error::Error;
};

class SynthesisError : public Error {
 public:
  using Error::Error;
};

class DegenerateControlError : public Error {
 public:
  using Error::Error;
};

class AggregationError : public Error {
 public:
  using Error::Error;
};

/// Training stopped on a non-finite gradient or loss.
class TrainingAbort : public Error {
 public:
  TrainingAbort(const std::string& what, int epoch)
      : Error(what + " (epoch " + std::to_string(epoch) + ")"), epoch_(epoch) {}
  int epoch() const noexcept { return epoch_; }

 private:
  int epoch_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtd
