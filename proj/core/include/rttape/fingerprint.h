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

#ifndef RTTAPE_FINGERPRINT_H_
#define RTTAPE_FINGERPRINT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace rttape {

// 128-bit digest of exact line bytes, used as a dedup key.
struct Fingerprint128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  bool operator==(const Fingerprint128&) const = default;
};

struct Fingerprint128Hash {
  std::size_t operator()(const Fingerprint128& f) const { return f.lo ^ f.hi; }
};

Fingerprint128 LineFingerprint(std::string_view bytes);

// Lowercase hex SHA-256, for cache keys and run manifests.
std::string Sha256Hex(std::string_view bytes);

// Incremental SHA-256 over several pieces.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void Update(std::string_view bytes);
  std::string HexDigest();

 private:
  void* ctx_;
};

std::string FileSha256Hex(const std::filesystem::path& path);

}  // namespace rttape

#endif  // RTTAPE_FINGERPRINT_H_
