/*
 * Copyright 2026 The shapwa Authors.
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

#ifndef SHAPWA_ERROR_HPP_
#define SHAPWA_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace shapwa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (JSON, literals, CLI values).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed objects that do not fit together: alphabet or length
// mismatch, index out of range, non-stochastic rows.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Requests that are well-formed but deliberately not supported.
class Unsupported : public DomainError {
 public:
  using DomainError::DomainError;
};

// An exhaustive enumeration would exceed the configured size guard.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// Conditional expectation on an event of probability zero.
class ZeroProbabilityEvent : public DomainError {
 public:
  ZeroProbabilityEvent(const std::string& what, std::string coalition)
      : DomainError(what), coalition_(std::move(coalition)) {}
  const std::string& coalition() const { return coalition_; }

 private:
  std::string coalition_;
};

}  // namespace shapwa

#endif  // SHAPWA_ERROR_HPP_
