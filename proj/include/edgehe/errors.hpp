/*
 * Copyright 2026 The edgehe Authors.
 *
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

#ifndef EDGEHE_ERRORS_HPP_
#define EDGEHE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace edgehe {

// Base class for every error raised by the library. Each subclass maps to
// one failure class so the CLI can translate it into a distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoPrimeFound : public Error {
 public:
  using Error::Error;
};

class SpongeFinalized : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

class ConfigMismatch : public Error {
 public:
  using Error::Error;
};

class ScheduleViolation : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class ParamsMismatch : public Error {
 public:
  using Error::Error;
};

// Raised when coefficient-domain and NTT-domain operands are mixed.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

class ScaleOverflow : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class InvalidFrame : public Error {
 public:
  using Error::Error;
};

}  // namespace edgehe

#endif  // EDGEHE_ERRORS_HPP_
