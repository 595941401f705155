// Copyright 2026 The finrel Authors.
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

#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "finrel/error.h"
#include "finrel/io.h"
#include "finrel/text.h"

namespace finrel {
namespace {

TEST(Text, FoldCaseIsAsciiOnly) {
  EXPECT_EQ(text::fold_case("JuMIA"), "jumia");
  EXPECT_EQ(text::fold_case("\xC3\x89tat"), "\xC3\x89tat");  // "État"
}

TEST(Text, WhitespaceHelpers) {
  EXPECT_EQ(text::trim("  a b \t"), "a b");
  EXPECT_EQ(text::trim(" \n "), "");
  EXPECT_EQ(text::split_whitespace("  a\tb  c "),
            (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(text::split_whitespace("   ").empty());
  EXPECT_EQ(text::normalize_whitespace(" Kuda \t Bank "), "Kuda Bank");
}

TEST(Text, DecodeUtf8) {
  EXPECT_EQ(text::decode_utf8("\xE2\x82\xAC" "41"), U"€41");
  EXPECT_EQ(text::decode_utf8("\xF0\x9F\x98\x80"), U"\U0001F600");
  EXPECT_EQ(text::decode_utf8("a\xFFz"), U"a�z");
  EXPECT_EQ(text::decode_utf8("\xE2\x82"), U"��");
  EXPECT_EQ(text::decode_utf8("\xC3" "a"), U"�a");
  EXPECT_EQ(text::decode_utf8(""), U"");
}

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("finrel_io_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

TEST_F(IoTest, AtomicWriteReplacesAndLeavesNoTemporary) {
  const auto p = path("out.txt");
  write_file_atomic(p, "first");
  write_file_atomic(p, "second\n");
  EXPECT_EQ(read_file(p), "second\n");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir_)) {
    ++entries;
  }
  EXPECT_EQ(entries, 1u);
}

TEST_F(IoTest, AtomicWriteIntoMissingDirectoryFails) {
  EXPECT_THROW(write_file_atomic(path("nope/out.txt"), "x"), Error);
  EXPECT_FALSE(std::filesystem::exists(path("nope")));
}

TEST_F(IoTest, ForEachLineNumbersLinesAndStripsCarriageReturns) {
  const auto p = path("lines.txt");
  {
    std::ofstream f(p, std::ios::binary);
    f << "a\r\n\nc";
  }
  std::vector<std::pair<std::string, std::size_t>> seen;
  for_each_line(p, [&](std::string_view line, std::size_t no) {
    seen.emplace_back(std::string(line), no);
  });
  ASSERT_EQ(seen.size(), 3u);
  EXPECT_EQ(seen[0], (std::pair<std::string, std::size_t>{"a", 1}));
  EXPECT_EQ(seen[1], (std::pair<std::string, std::size_t>{"", 2}));
  EXPECT_EQ(seen[2], (std::pair<std::string, std::size_t>{"c", 3}));
}

TEST_F(IoTest, MissingFileThrows) {
  EXPECT_THROW(read_file(path("missing")), Error);
  EXPECT_THROW(for_each_line(path("missing"), [](std::string_view, std::size_t) {}),
               Error);
}

}  // namespace
}  // namespace finrel
