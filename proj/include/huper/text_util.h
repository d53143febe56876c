// huper/text_util.h

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

#ifndef HUPER_TEXT_UTIL_H_
#define HUPER_TEXT_UTIL_H_

#include <charconv>
#include <cstdlib>
#include <string>
#include <vector>

#include "huper/error.h"

namespace huper {

inline std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      if (pos < text.size()) lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

// Splits on runs of spaces/tabs; no empty fields.
inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r'))
      ++i;
    std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > b) fields.push_back(s.substr(b, i - b));
  }
  return fields;
}

// Splits on a single delimiter; keeps empty fields.
inline std::vector<std::string> split_on(const std::string& s, char delim) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    std::size_t d = s.find(delim, pos);
    if (d == std::string::npos) {
      fields.push_back(s.substr(pos));
      break;
    }
    fields.push_back(s.substr(pos, d - pos));
    pos = d + 1;
  }
  return fields;
}

inline int parse_int(const std::string& s, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParse,
                std::string("bad ") + what + ": '" + s + "'");
  }
  return value;
}

inline double parse_double(const std::string& s, const char* what) {
  char* end = nullptr;
  errno = 0;
  double value = std::strtod(s.c_str(), &end);
  if (errno != 0 || end != s.c_str() + s.size() || s.empty()) {
    throw Error(ErrorCode::kParse,
                std::string("bad ") + what + ": '" + s + "'");
  }
  return value;
}

}  // namespace huper

#endif  // HUPER_TEXT_UTIL_H_
