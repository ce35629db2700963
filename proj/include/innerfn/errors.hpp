// Copyright 2026 The innerfn Authors
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

namespace innerfn {

// Base for every error raised by the library. Each subclass corresponds to a
// distinct failure mode so callers (and the CLI exit-code mapping) can switch
// on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RamificationError : public Error {
 public:
  using Error::Error;
};

class BoundaryError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class TermBudgetError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class SeparationError : public Error {
 public:
  using Error::Error;
};

class DegreeError : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class ApproximationError : public Error {
 public:
  using Error::Error;
};

class StagnationError : public Error {
 public:
  using Error::Error;
};

class PositivityError : public Error {
 public:
  using Error::Error;
};

class InvariantError : public Error {
 public:
  using Error::Error;
};

// Invalid run configuration; `field()` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace innerfn
