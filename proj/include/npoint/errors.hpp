// Copyright 2026 The npoint Authors
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

#ifndef NPOINT_ERRORS_HPP_
#define NPOINT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace npoint {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownGenerator : public Error {
 public:
  using Error::Error;
};

class RegistryMismatch : public Error {
 public:
  using Error::Error;
};

class RankMismatch : public Error {
 public:
  using Error::Error;
};

class SlotOutOfRange : public Error {
 public:
  using Error::Error;
};

class SingularPropagator : public Error {
 public:
  using Error::Error;
};

class AsymmetricPropagator : public Error {
 public:
  using Error::Error;
};

class InsufficientKernelData : public Error {
 public:
  using Error::Error;
};

class NonTerminatingSeries : public Error {
 public:
  using Error::Error;
};

class ModeMismatch : public Error {
 public:
  using Error::Error;
};

class NonTreeInput : public Error {
 public:
  using Error::Error;
};

class OracleCap : public Error {
 public:
  using Error::Error;
};

class ModelError : public Error {
 public:
  enum class Kind { parse, asymmetric, singular, role_mismatch, missing_role, invalid };

  ModelError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace npoint

#endif  // NPOINT_ERRORS_HPP_
