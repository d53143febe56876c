// cli/io.cc

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

#include "huper/cli/io.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "huper/text_util.h"

namespace huper {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open for reading: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot open for writing: " + path);
  }
  out << content;
  if (!out) {
    throw Error(ErrorCode::kIo, "short write: " + path);
  }
}

bool file_exists(const std::string& path) {
  std::error_code ec;
  return std::filesystem::exists(path, ec);
}

std::string fixed6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

TranscriptLines parse_transcripts(const std::string& text) {
  TranscriptLines out;
  int line_no = 0;
  for (const auto& raw : split_lines(text)) {
    ++line_no;
    if (strip(raw).empty() || strip(raw)[0] == '#') continue;
    auto tab = raw.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kParse,
                  "transcript line " + std::to_string(line_no) +
                      ": expected '<utt-id>\\t<tokens>'");
    }
    std::string id = strip(raw.substr(0, tab));
    if (id.empty()) {
      throw Error(ErrorCode::kParse, "transcript line " +
                                         std::to_string(line_no) +
                                         ": empty utterance id");
    }
    out.emplace_back(std::move(id), split_ws(raw.substr(tab + 1)));
  }
  return out;
}

std::string InputSet::read(const std::string& path) {
  std::string content = read_file(path);
  entries_.emplace_back(path, hex64(fnv1a(content)));
  return content;
}

std::vector<std::string> parallel_map(
    int jobs, std::size_t count,
    const std::function<std::string(std::size_t)>& fn) {
  std::vector<std::string> out(count);
  if (count == 0) return out;
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= count) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min<std::size_t>(jobs, count);
  pool.reserve(n);
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace huper
