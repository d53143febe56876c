// huper/phoneset.h

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

#ifndef HUPER_PHONESET_H_
#define HUPER_PHONESET_H_

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "huper/error.h"

namespace huper {

// Reserved label for the CTC blank symbol.
inline constexpr const char* kBlankLabel = "<blk>";

// Dimension of the binary distinctive-feature vectors.
inline constexpr int kFeatureDim = 24;

using FeatureVector = std::array<std::uint8_t, kFeatureDim>;

// Phone inventory: contiguous indices 0..V-1, unique labels, one reserved
// blank. Immutable after construction.
class PhoneInventory {
 public:
  PhoneInventory(std::vector<std::string> labels, int blank_index);

  int size() const { return static_cast<int>(labels_.size()); }
  int blank_index() const { return blank_index_; }
  const std::string& label(int index) const { return labels_.at(index); }
  const std::vector<std::string>& labels() const { return labels_; }

  bool has(const std::string& label) const {
    return index_.find(label) != index_.end();
  }
  // Throws kUnknownLabel for labels outside the inventory.
  int index(const std::string& label) const;

  bool operator==(const PhoneInventory& other) const = default;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  int blank_index_;
};

// Phone label -> 24-bit binary feature vector. Unknown labels are an error,
// never a silent default; the blank is deliberately not required.
class FeatureTable {
 public:
  FeatureTable() = default;
  explicit FeatureTable(
      std::unordered_map<std::string, FeatureVector> entries)
      : entries_(std::move(entries)) {}

  bool has(const std::string& label) const {
    return entries_.find(label) != entries_.end();
  }
  const FeatureVector& features(const std::string& label) const;
  std::size_t size() const { return entries_.size(); }
  const std::unordered_map<std::string, FeatureVector>& entries() const {
    return entries_;
  }

 private:
  std::unordered_map<std::string, FeatureVector> entries_;
};

// Many-to-one relabeling across inventories; labels in drop_set are removed.
struct LabelMapping {
  std::unordered_map<std::string, std::string> pairs;
  std::unordered_set<std::string> drop_set;
};

// Parses a symbol-table document: one "<index> <label>" per line, '#'
// comments ignored. Indices 0..V-1 must each appear exactly once and the
// blank label must be present.
PhoneInventory load_inventory(const std::string& text);

// Inverse of load_inventory; load_inventory(render_inventory(inv)) == inv.
std::string render_inventory(const PhoneInventory& inv);

// Parses a feature-table document: "<label> <24 comma-separated 0/1>".
FeatureTable load_feature_table(const std::string& text);

// Parses a mapping document: "<foreign>\t<target|->" ('-' drops the label).
// Every target must exist in the destination inventory.
LabelMapping load_mapping(const std::string& text, const PhoneInventory& dest);

// Normalized Hamming distance (1/24) * sum |feat(p) - feat(q)|, in [0,1].
double feature_distance(const std::string& p, const std::string& q,
                        const FeatureTable& table);

// Rewrites labels through m; dropped labels are removed, order preserved.
// Labels neither mapped nor dropped are an error.
std::vector<std::string> apply_mapping(const std::vector<std::string>& seq,
                                       const LabelMapping& m);

}  // namespace huper

#endif  // HUPER_PHONESET_H_
