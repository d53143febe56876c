// huper/cli/io.h

// Copyright 2026  HuPER authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef HUPER_CLI_IO_H_
#define HUPER_CLI_IO_H_

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "huper/error.h"

namespace huper {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
bool file_exists(const std::string& path);

// Fixed 6-decimal rendering used for every float the CLI emits; infinities
// render as "inf"/"-inf".
std::string fixed6(double v);

// FNV-1a 64-bit digest, hex-rendered; used for manifests, not security.
std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t v);

// One utterance per line: "<utt-id>\t<token token ...>".
using TranscriptLines =
    std::vector<std::pair<std::string, std::vector<std::string>>>;
TranscriptLines parse_transcripts(const std::string& text);

// Records every file it reads so manifests can list input digests.
class InputSet {
 public:
  std::string read(const std::string& path);
  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;  // (path, hex digest), read order
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Order-preserving parallel map; output[i] = fn(i). Worker count never
// affects the result bytes.
std::vector<std::string> parallel_map(
    int jobs, std::size_t count,
    const std::function<std::string(std::size_t)>& fn);

}  // namespace huper

#endif  // HUPER_CLI_IO_H_
