/*
 * Copyright 2026 The fbgame Authors
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

namespace fbgame {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad dimension, negative rate, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The requested feedback rates exhaust the downlink bandwidth.
class InfeasibleProfile : public Error {
 public:
  using Error::Error;
};

/// Zero-forcing inversion requested on a (numerically) rank-deficient channel.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// An infinite series did not reach its truncation tolerance within the term cap.
class SeriesDivergence : public Error {
 public:
  using Error::Error;
};

}  // namespace fbgame
