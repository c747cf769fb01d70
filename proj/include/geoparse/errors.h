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

#ifndef GEOPARSE_ERRORS_H_
#define GEOPARSE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoparse {

// Input that parses but violates a data contract (bad record, bad geometry,
// bad annotation).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or unwritable files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A problem with one record of a line-oriented file. Line numbers are 1-based.
struct RecordError {
  size_t line = 0;
  std::string message;
};

// Result of a loader that keeps going past bad records.
template <typename T>
struct LoadResult {
  std::vector<T> records;
  std::vector<RecordError> errors;
};

std::string FormatRecordError(const RecordError &error);

}  // namespace geoparse

#endif  // GEOPARSE_ERRORS_H_
