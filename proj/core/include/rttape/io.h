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

#ifndef RTTAPE_IO_H_
#define RTTAPE_IO_H_

#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rttape {

// Reads '\n'-terminated lines from a plain or gzip-compressed file (detected
// by content, not extension). A trailing '\r' is kept; the terminator is not.
class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& path);
  ~LineReader();
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  // Returns false at end of input.
  bool Next(std::string& line);

  std::size_t line_number() const { return line_number_; }

 private:
  bool Fill();

  void* gz_;
  std::string path_;
  std::vector<char> buf_;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
  bool eof_ = false;
  std::size_t line_number_ = 0;
};

// Writes lines with '\n' terminators; gzip-compresses if the path ends in
// ".gz". The path "-" means stdout.
class LineWriter {
 public:
  explicit LineWriter(const std::filesystem::path& path);
  ~LineWriter();
  LineWriter(const LineWriter&) = delete;
  LineWriter& operator=(const LineWriter&) = delete;

  void Write(std::string_view line);
  void Close();

 private:
  void* gz_ = nullptr;
  std::FILE* file_ = nullptr;
  bool owns_file_ = false;
  std::string path_;
};

std::vector<std::string> ReadLines(const std::filesystem::path& path);
void WriteLines(const std::filesystem::path& path,
                const std::vector<std::string>& lines);

std::string ReadFile(const std::filesystem::path& path);
// Writes via a temporary sibling and rename, so readers never see a partial
// file.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view data);

}  // namespace rttape

#endif  // RTTAPE_IO_H_
