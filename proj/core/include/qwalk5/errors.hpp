// Copyright 2026 The qwalk5 Authors
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

#ifndef QWALK5_ERRORS_HPP_
#define QWALK5_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qwalk5 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An initial spinor whose squared norm is not 1.
class NormError : public Error {
 public:
  using Error::Error;
};

/// Eigendecomposition residual too large.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// Gram-Schmidt met a (numerically) linearly dependent vector.
class RankError : public Error {
 public:
  using Error::Error;
};

/// The eigenvalue-1 eigenspace is not one-dimensional at the requested k.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// Too many quadrature nodes had to be dropped as degenerate.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Output that cannot be rendered, e.g. a heatmap of an all-zero grid.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed or missing command-line input. what() is a one-line reason.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace qwalk5

#endif  // QWALK5_ERRORS_HPP_
