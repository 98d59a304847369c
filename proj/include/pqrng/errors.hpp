// Copyright 2026 The pqrng Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PQRNG_ERRORS_HPP_
#define PQRNG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace pqrng {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter lies outside its documented domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A truncated series hit its hard cap before the tail bound was met.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double achieved_tail_mass)
      : Error(what), achieved_tail_mass_(achieved_tail_mass) {}

  double achieved_tail_mass() const noexcept { return achieved_tail_mass_; }

 private:
  double achieved_tail_mass_;
};

// Operation is not defined for the given distribution kind.
class UnsupportedKindError : public Error {
 public:
  using Error::Error;
};

// Input too large (work guard) or too short (statistical tests).
class SizeError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input (bitstreams, configs, pmf files).
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pqrng

#endif  // PQRNG_ERRORS_HPP_
