/*
 * Copyright 2026 The cdeforest Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CDEFOREST_ERROR_H_
#define CDEFOREST_ERROR_H_

#include <stdexcept>
#include <string>

namespace cdeforest {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: wrong shapes, out-of-range hyperparameters.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A value fell outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The data cannot support the requested estimate (e.g. constant response).
class DegenerateData : public Error {
 public:
  using Error::Error;
};

// A valid but unsupported combination of options.
class Unsupported : public Error {
 public:
  using Error::Error;
};

// A persisted model could not be read back.
class LoadError : public Error {
 public:
  using Error::Error;
};

}  // namespace cdeforest

#endif  // CDEFOREST_ERROR_H_
