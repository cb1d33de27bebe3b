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

#ifndef GCE_CSV_HPP_
#define GCE_CSV_HPP_

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace gce::csv {

// Comma-separated records with RFC 4180 quoting. CRLF line endings and a
// UTF-8 byte-order mark on the first line are accepted.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Next record, or nullopt at end of input. Throws DataError on an
  // unterminated quoted field.
  std::optional<std::vector<std::string>> next();

  // 1-based physical line number where the last returned record started.
  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t record_line_ = 0;
};

// Quotes a field if it contains a comma, quote or newline.
std::string escape(const std::string& field);

}  // namespace gce::csv

#endif  // GCE_CSV_HPP_
