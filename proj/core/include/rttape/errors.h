// Copyright 2026 The rttape Authors. All Rights Reserved.
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

#ifndef RTTAPE_ERRORS_H_
#define RTTAPE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rttape {

// Malformed or inconsistent input data (CLI exit code 2).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parse failure with the byte offset where scanning gave up.
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : DataError(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// A translation / post-editing engine failed (CLI exit code 3).
class BackendError : public std::runtime_error {
 public:
  BackendError(const std::string& what, std::size_t begin, std::size_t end)
      : std::runtime_error(what + " [lines " + std::to_string(begin) + ", " +
                           std::to_string(end) + ")"),
        begin_(begin),
        end_(end) {}

  // Half-open index range of the failing batch.
  std::size_t begin() const { return begin_; }
  std::size_t end() const { return end_; }

 private:
  std::size_t begin_;
  std::size_t end_;
};

}  // namespace rttape

#endif  // RTTAPE_ERRORS_H_
