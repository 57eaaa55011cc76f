/*
 * Copyright 2026 The fsv Authors
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

namespace fsv {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A ray or pixel lies outside the camera's usable field of view.
class OutOfFieldOfView : public Error {
 public:
  using Error::Error;
};

/// Perspective projection of a point with non-positive forward depth.
class BehindCamera : public Error {
 public:
  using Error::Error;
};

/// An iterative solver failed to converge or produced a non-finite value.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Shapes of two containers that must agree do not.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input data (files, frames, boxes).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Schema violation in a JSON document, carrying a JSON-pointer-style path.
class SchemaError : public DataError {
 public:
  SchemaError(std::string path, const std::string& message)
      : DataError(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace fsv
