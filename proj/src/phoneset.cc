// phoneset.cc

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

#include "huper/phoneset.h"

#include <cstdlib>
#include <sstream>

#include "huper/text_util.h"

namespace huper {

PhoneInventory::PhoneInventory(std::vector<std::string> labels,
                               int blank_index)
    : labels_(std::move(labels)), blank_index_(blank_index) {
  if (labels_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "inventory must be non-empty");
  }
  for (int i = 0; i < static_cast<int>(labels_.size()); ++i) {
    if (labels_[i].empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "empty label at index " + std::to_string(i));
    }
    if (!index_.emplace(labels_[i], i).second) {
      throw Error(ErrorCode::kDuplicateSymbol,
                  "duplicate label: " + labels_[i]);
    }
  }
  if (blank_index_ < 0 || blank_index_ >= size() ||
      labels_[blank_index_] != kBlankLabel) {
    throw Error(ErrorCode::kMissingBlank,
                "blank_index does not name the literal " +
                    std::string(kBlankLabel) + " token");
  }
}

int PhoneInventory::index(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) {
    throw Error(ErrorCode::kUnknownLabel, "unknown phone label: " + label);
  }
  return it->second;
}

const FeatureVector& FeatureTable::features(const std::string& label) const {
  auto it = entries_.find(label);
  if (it == entries_.end()) {
    throw Error(ErrorCode::kUnknownLabel,
                "phone has no feature vector: " + label);
  }
  return it->second;
}

PhoneInventory load_inventory(const std::string& text) {
  std::vector<std::pair<int, std::string>> rows;
  int line_no = 0;
  for (const auto& raw : split_lines(text)) {
    ++line_no;
    std::string line = strip(raw);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_ws(line);
    if (fields.size() != 2) {
      throw Error(ErrorCode::kParse, "symbol table line " +
                                         std::to_string(line_no) +
                                         ": expected '<index> <label>'");
    }
    int idx = parse_int(fields[0], "symbol index");
    if (idx < 0) {
      throw Error(ErrorCode::kParse,
                  "negative symbol index at line " + std::to_string(line_no));
    }
    rows.emplace_back(idx, fields[1]);
  }
  if (rows.empty()) {
    throw Error(ErrorCode::kParse, "symbol table has no entries");
  }
  std::vector<std::string> labels(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& [idx, label] : rows) {
    if (idx >= static_cast<int>(rows.size())) {
      throw Error(ErrorCode::kIndexGap,
                  "symbol indices are not contiguous 0..V-1 (saw " +
                      std::to_string(idx) + " among " +
                      std::to_string(rows.size()) + " entries)");
    }
    if (seen[idx]) {
      throw Error(ErrorCode::kDuplicateSymbol,
                  "duplicate symbol index " + std::to_string(idx));
    }
    seen[idx] = true;
    labels[idx] = label;
  }
  int blank = -1;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    if (labels[i] == kBlankLabel) blank = i;
  }
  if (blank < 0) {
    throw Error(ErrorCode::kMissingBlank,
                std::string("symbol table lacks the ") + kBlankLabel +
                    " entry");
  }
  return PhoneInventory(std::move(labels), blank);
}

std::string render_inventory(const PhoneInventory& inv) {
  std::ostringstream out;
  for (int i = 0; i < inv.size(); ++i) {
    out << i << ' ' << inv.label(i) << '\n';
  }
  return out.str();
}

FeatureTable load_feature_table(const std::string& text) {
  std::unordered_map<std::string, FeatureVector> entries;
  int line_no = 0;
  for (const auto& raw : split_lines(text)) {
    ++line_no;
    std::string line = strip(raw);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_ws(line);
    if (fields.size() != 2) {
      throw Error(ErrorCode::kParse,
                  "feature table line " + std::to_string(line_no) +
                      ": expected '<label> <bits>'");
    }
    auto bits = split_on(fields[1], ',');
    if (bits.size() != kFeatureDim) {
      throw Error(ErrorCode::kBadFeatureVector,
                  "feature vector for " + fields[0] + " has " +
                      std::to_string(bits.size()) + " components, want 24");
    }
    FeatureVector v{};
    for (int i = 0; i < kFeatureDim; ++i) {
      if (bits[i] == "0") {
        v[i] = 0;
      } else if (bits[i] == "1") {
        v[i] = 1;
      } else {
        throw Error(ErrorCode::kBadFeatureVector,
                    "feature component must be 0 or 1, got '" + bits[i] +
                        "' for " + fields[0]);
      }
    }
    if (!entries.emplace(fields[0], v).second) {
      throw Error(ErrorCode::kDuplicateSymbol,
                  "duplicate feature entry: " + fields[0]);
    }
  }
  return FeatureTable(std::move(entries));
}

LabelMapping load_mapping(const std::string& text,
                          const PhoneInventory& dest) {
  LabelMapping m;
  int line_no = 0;
  for (const auto& raw : split_lines(text)) {
    ++line_no;
    if (strip(raw).empty() || strip(raw)[0] == '#') continue;
    auto fields = split_on(raw, '\t');
    if (fields.size() != 2) {
      throw Error(ErrorCode::kParse, "mapping line " +
                                         std::to_string(line_no) +
                                         ": expected '<foreign>\\t<target|->'");
    }
    std::string foreign = strip(fields[0]);
    std::string target = strip(fields[1]);
    if (foreign.empty() || target.empty()) {
      throw Error(ErrorCode::kParse,
                  "empty field in mapping line " + std::to_string(line_no));
    }
    if (target == "-") {
      m.drop_set.insert(foreign);
    } else {
      if (!dest.has(target)) {
        throw Error(ErrorCode::kUnknownLabel,
                    "mapping target not in destination inventory: " + target);
      }
      m.pairs[foreign] = target;
    }
  }
  return m;
}

double feature_distance(const std::string& p, const std::string& q,
                        const FeatureTable& table) {
  const FeatureVector& fp = table.features(p);
  const FeatureVector& fq = table.features(q);
  int diff = 0;
  for (int i = 0; i < kFeatureDim; ++i) {
    diff += (fp[i] != fq[i]) ? 1 : 0;
  }
  return static_cast<double>(diff) / kFeatureDim;
}

std::vector<std::string> apply_mapping(const std::vector<std::string>& seq,
                                       const LabelMapping& m) {
  std::vector<std::string> out;
  out.reserve(seq.size());
  for (const auto& label : seq) {
    auto it = m.pairs.find(label);
    if (it != m.pairs.end()) {
      out.push_back(it->second);
    } else if (m.drop_set.count(label)) {
      // dropped
    } else {
      throw Error(ErrorCode::kUnmappedLabel, "unmapped label: " + label);
    }
  }
  return out;
}

}  // namespace huper
