// Copyright 2026 The EventQA Authors.
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

#ifndef EVENTQA_ERRORS_H_
#define EVENTQA_ERRORS_H_

#include <stdexcept>
#include <string>

namespace eventqa {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input does not have the expected structure (bad JSON, bad TSV row, ...).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a data invariant, e.g. an answer offset
// that does not point at the answer text.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Caller supplied invalid arguments or configuration.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An external service (translator, model server) failed. Retryable.
class TransportError : public Error {
 public:
  using Error::Error;
};

// A model backend failed or is unknown at run time.
class BackendError : public Error {
 public:
  using Error::Error;
};

}  // namespace eventqa

#endif  // EVENTQA_ERRORS_H_
