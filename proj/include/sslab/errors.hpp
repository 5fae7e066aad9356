// Copyright (c) 2026 The sslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SSLAB_ERRORS_HPP
#define SSLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sslab {

/// Base class for all sslab errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// A user-supplied evaluator returned a non-finite value.
class EvalError : public Error {
 public:
  explicit EvalError(const std::string& msg) : Error(msg) {}
};

/// Two fields do not share the same grid or parameters.
class GridMismatch : public Error {
 public:
  explicit GridMismatch(const std::string& msg) : Error(msg) {}
};

/// An operation that requires a nonzero field received a (numerically) zero one.
class NullField : public Error {
 public:
  explicit NullField(const std::string& msg) : Error(msg) {}
};

/// A normalization precondition (unit norm) is violated.
class NormalizationError : public Error {
 public:
  explicit NormalizationError(const std::string& msg) : Error(msg) {}
};

/// Iterative refinement failed to reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

/// A root-bracketing scan found no sign change.
class BracketError : public Error {
 public:
  explicit BracketError(const std::string& msg) : Error(msg) {}
};

/// A field does not satisfy the structural requirements of an operation.
class UnsupportedField : public Error {
 public:
  explicit UnsupportedField(const std::string& msg) : Error(msg) {}
};

/// Dense/sparse linear algebra failure (factorization, eigensolve).
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& msg) : Error(msg) {}
};

}  // namespace sslab

#endif  // SSLAB_ERRORS_HPP
