// Copyright 2026 The ndpseq Authors.
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

#ifndef NDPSEQ_ERROR_HPP
#define NDPSEQ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ndpseq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input data or configuration failed validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Vector lengths disagree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A weighted batch carries no usable mass (all weights zero or non-finite).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// The requested query has no exact/closed-form evaluation.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Unknown scenario or resource name.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ndpseq

#endif  // NDPSEQ_ERROR_HPP
