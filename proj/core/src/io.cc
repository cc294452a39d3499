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

#include "rttape/io.h"

#include <unistd.h>
#include <zlib.h>

#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "rttape/errors.h"

namespace rttape {

namespace fs = std::filesystem;

LineReader::LineReader(const fs::path& path) : path_(path.string()), buf_(1 << 16) {
  if (path_ == "-") {
    gz_ = gzdopen(dup(STDIN_FILENO), "rb");
  } else {
    gz_ = gzopen(path_.c_str(), "rb");
  }
  if (gz_ == nullptr) throw DataError("cannot open " + path_);
}

LineReader::~LineReader() {
  if (gz_ != nullptr) gzclose(static_cast<gzFile>(gz_));
}

bool LineReader::Fill() {
  if (eof_) return false;
  if (pos_ > 0) {
    std::memmove(buf_.data(), buf_.data() + pos_, end_ - pos_);
    end_ -= pos_;
    pos_ = 0;
  }
  if (end_ == buf_.size()) buf_.resize(buf_.size() * 2);
  const int n = gzread(static_cast<gzFile>(gz_), buf_.data() + end_,
                       static_cast<unsigned>(buf_.size() - end_));
  if (n < 0) {
    int err = 0;
    throw DataError("read error in " + path_ + ": " +
                    gzerror(static_cast<gzFile>(gz_), &err));
  }
  if (n == 0) eof_ = true;
  end_ += static_cast<std::size_t>(n);
  return n > 0;
}

bool LineReader::Next(std::string& line) {
  for (;;) {
    const char* begin = buf_.data() + pos_;
    const void* nl = std::memchr(begin, '\n', end_ - pos_);
    if (nl != nullptr) {
      const auto len = static_cast<std::size_t>(static_cast<const char*>(nl) - begin);
      line.assign(begin, len);
      pos_ += len + 1;
      ++line_number_;
      return true;
    }
    if (!Fill()) {
      if (pos_ == end_) return false;
      line.assign(buf_.data() + pos_, end_ - pos_);
      pos_ = end_;
      ++line_number_;
      return true;
    }
  }
}

LineWriter::LineWriter(const fs::path& path) : path_(path.string()) {
  if (path_ == "-") {
    file_ = stdout;
  } else if (path.extension() == ".gz") {
    gz_ = gzopen(path_.c_str(), "wb");
    if (gz_ == nullptr) throw DataError("cannot write " + path_);
  } else {
    file_ = std::fopen(path_.c_str(), "wb");
    if (file_ == nullptr) throw DataError("cannot write " + path_);
    owns_file_ = true;
  }
}

LineWriter::~LineWriter() {
  try {
    Close();
  } catch (...) {
  }
}

void LineWriter::Write(std::string_view line) {
  if (gz_ != nullptr) {
    if (!line.empty() &&
        gzwrite(static_cast<gzFile>(gz_), line.data(),
                static_cast<unsigned>(line.size())) == 0) {
      throw DataError("write error in " + path_);
    }
    gzputc(static_cast<gzFile>(gz_), '\n');
  } else {
    if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() ||
        std::fputc('\n', file_) == EOF) {
      throw DataError("write error in " + path_);
    }
  }
}

void LineWriter::Close() {
  if (gz_ != nullptr) {
    gzclose(static_cast<gzFile>(gz_));
    gz_ = nullptr;
  }
  if (file_ != nullptr) {
    const bool failed = owns_file_ ? std::fclose(file_) != 0 : std::fflush(file_) != 0;
    file_ = nullptr;
    if (failed) throw DataError("write error in " + path_);
  }
}

std::vector<std::string> ReadLines(const fs::path& path) {
  LineReader reader(path);
  std::vector<std::string> lines;
  std::string line;
  while (reader.Next(line)) lines.push_back(line);
  return lines;
}

void WriteLines(const fs::path& path, const std::vector<std::string>& lines) {
  LineWriter writer(path);
  for (const auto& l : lines) writer.Write(l);
  writer.Close();
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void WriteFileAtomic(const fs::path& path, std::string_view data) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." +
         std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw DataError("write error in " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace rttape
