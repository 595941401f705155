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

#ifndef FINREL_TEXT_H_
#define FINREL_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace finrel::text {

// ASCII case folding. Bytes >= 0x80 pass through unchanged, so UTF-8
// sequences are never split.
std::string fold_case(std::string_view s);

std::string_view trim(std::string_view s);

// Splits on runs of ASCII whitespace; no empty pieces.
std::vector<std::string> split_whitespace(std::string_view s);

// Trims and collapses internal whitespace runs to a single space.
std::string normalize_whitespace(std::string_view s);

// Decodes UTF-8 into code points. Invalid bytes decode to U+FFFD one byte
// at a time, so every input has a defined decoding.
std::u32string decode_utf8(std::string_view s);

}  // namespace finrel::text

#endif  // FINREL_TEXT_H_
