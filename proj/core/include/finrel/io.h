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

#ifndef FINREL_IO_H_
#define FINREL_IO_H_

#include <functional>
#include <string>
#include <string_view>

namespace finrel {

std::string read_file(const std::string& path);

// Calls fn(line, 1-based line number) for every line of the file. Throws
// Error if the file cannot be opened.
void for_each_line(const std::string& path,
                   const std::function<void(std::string_view, std::size_t)>& fn);

// Writes contents to a sibling temporary file and renames it over path, so
// readers never observe a partially written file.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace finrel

#endif  // FINREL_IO_H_
