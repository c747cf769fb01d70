// Copyright 2026 The Geoparse Authors.
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

#ifndef GEOPARSE_CSV_H_
#define GEOPARSE_CSV_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace geoparse {

// RFC 4180 reader: comma separated, double-quoted fields may contain commas,
// doubled quotes and newlines.
class CsvReader {
 public:
  explicit CsvReader(std::istream &in) : in_(in) {}

  // Next record, or nullopt at end of input. On a malformed record (an
  // unterminated quote) returns nullopt and sets error().
  std::optional<std::vector<std::string>> Next();

  // Physical line on which the last returned record started (1-based).
  size_t record_line() const { return record_line_; }
  const std::string &error() const { return error_; }

 private:
  std::istream &in_;
  size_t line_ = 0;
  size_t record_line_ = 0;
  std::string error_;
};

}  // namespace geoparse

#endif  // GEOPARSE_CSV_H_
