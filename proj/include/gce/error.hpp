// Copyright 2026 The Authors.
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

#ifndef GCE_ERROR_HPP_
#define GCE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace gce {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Schema violations: constant numeric features, duplicate labels, bad arity.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Malformed input files and rows.
class DataError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration values or combinations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace gce

#endif  // GCE_ERROR_HPP_
