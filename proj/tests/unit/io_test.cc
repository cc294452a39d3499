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


#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "rttape/errors.h"
#include "rttape/fingerprint.h"
#include "rttape/io.h"
#include "support/test_util.h"

namespace rttape {
namespace {

using Strings = std::vector<std::string>;

TEST(LineIo, PlainAndGzipRoundTrip) {
  testing::TempDir tmp;
  const Strings lines = {"eins", "", "drei\r", "ü \u2014 ✓", std::string(100000, 'x')};
  for (const char* name : {"plain.txt", "packed.txt.gz"}) {
    WriteLines(tmp / name, lines);
    EXPECT_EQ(ReadLines(tmp / name), lines) << name;
  }
  // gzip is detected by content
  std::filesystem::rename(tmp / "packed.txt.gz", tmp / "packed.bin");
  EXPECT_EQ(ReadLines(tmp / "packed.bin"), lines);
}

TEST(LineIo, MissingTerminatorAndMissingFile) {
  testing::TempDir tmp;
  WriteFileAtomic(tmp / "f.txt", "a\nb");
  EXPECT_EQ(ReadLines(tmp / "f.txt"), (Strings{"a", "b"}));
  EXPECT_THROW(ReadLines(tmp / "nope.txt"), DataError);
}

TEST(Fingerprint, KnownDigests) {
  EXPECT_EQ(Sha256Hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Sha256Hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(LineFingerprint("a"), LineFingerprint("a"));
  EXPECT_NE(LineFingerprint("a"), LineFingerprint("a\n"));
}

}  // namespace
}  // namespace rttape
