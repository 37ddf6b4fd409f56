// Copyright 2026 The Negotiation Authors
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

#ifndef NEGOTIATION_ERRORS_HPP_
#define NEGOTIATION_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace negotiation {

class NegotiationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point lies outside the region where a utility is defined.
class DomainError : public NegotiationError {
 public:
  using NegotiationError::NegotiationError;
};

// A gradient (or sampled direction) with zero norm where a direction is needed.
class DegenerateGradientError : public NegotiationError {
 public:
  using NegotiationError::NegotiationError;
};

// The utility does not have the perfect-competition shape an operation needs.
class UnsupportedShapeError : public NegotiationError {
 public:
  using NegotiationError::NegotiationError;
};

// Parameter recovery is singular at the sampled point; try another point.
class UnresolvableError : public NegotiationError {
 public:
  using NegotiationError::NegotiationError;
};

// Invalid configuration values or construction arguments.
class ConfigError : public NegotiationError {
 public:
  using NegotiationError::NegotiationError;
};

// Scenario text that cannot be parsed. `key()` names the offending key.
class ScenarioParseError : public NegotiationError {
 public:
  ScenarioParseError(std::string key, const std::string& what)
      : NegotiationError(what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace negotiation

#endif  // NEGOTIATION_ERRORS_HPP_
