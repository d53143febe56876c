// huper/fst.h

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

#ifndef HUPER_FST_H_
#define HUPER_FST_H_

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "huper/phoneset.h"

namespace huper {

// Reserved epsilon id; real symbols start at 1.
inline constexpr int kEps = 0;
inline constexpr const char* kEpsLabel = "<eps>";

// Id <-> name table for machine labels. Id 0 is always <eps>; a table built
// from a PhoneInventory maps inventory index i to id i+1.
class SymbolTable {
 public:
  SymbolTable() { names_.push_back(kEpsLabel); ids_[kEpsLabel] = 0; }

  int add(const std::string& name);
  bool has(const std::string& name) const { return ids_.count(name) > 0; }
  int find(const std::string& name) const;  // throws kUnknownLabel
  const std::string& name(int id) const;
  int size() const { return static_cast<int>(names_.size()); }

  bool operator==(const SymbolTable& other) const {
    return names_ == other.names_;
  }

  static std::shared_ptr<const SymbolTable> from_inventory(
      const PhoneInventory& inv);
  static std::shared_ptr<const SymbolTable> from_names(
      const std::vector<std::string>& names);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
};

struct Arc {
  int ilabel = kEps;
  int olabel = kEps;
  double weight = 0.0;
  int next = 0;
};

// Weighted transducer over the tropical semiring: weights are nonnegative
// finite costs, path cost = sum of arc weights plus final weight.
struct Wfst {
  int start = 0;
  std::vector<std::vector<Arc>> arcs;  // per-state arc lists
  std::map<int, double> finals;        // state -> final weight
  std::shared_ptr<const SymbolTable> isyms;
  std::shared_ptr<const SymbolTable> osyms;

  int num_states() const { return static_cast<int>(arcs.size()); }
  int add_state() {
    arcs.emplace_back();
    return num_states() - 1;
  }
  void add_arc(int src, const Arc& arc) { arcs[src].push_back(arc); }
  void set_final(int state, double weight) { finals[state] = weight; }
  bool is_final(int state) const { return finals.count(state) > 0; }
};

// Checks structural invariants: valid ids, nonnegative finite weights,
// symbol ids inside the attached tables. Throws on violation.
void validate_wfst(const Wfst& f);

bool same_syms(const std::shared_ptr<const SymbolTable>& a,
               const std::shared_ptr<const SymbolTable>& b);

struct DecodePath {
  std::vector<int> ilabels;  // EPS removed
  std::vector<int> olabels;  // EPS removed
  double cost = 0.0;
};

// Renders ids through a table.
std::vector<std::string> render_labels(const std::vector<int>& ids,
                                       const SymbolTable& syms);

// Chain acceptor for a fixed label sequence, weight 0.
Wfst linear_acceptor(const std::vector<int>& labels,
                     std::shared_ptr<const SymbolTable> syms);

// Composition with the standard three-state epsilon filter: accepts
// {(x, z) : exists y with (x,y) in a and (y,z) in b} at added weights, with
// exactly one derivation per underlying path pair. Output is trimmed.
Wfst compose(const Wfst& a, const Wfst& b);

// Removes states that are unreachable from the start or cannot reach a
// final state. Preserves the weighted language; if the language is empty
// the result is a single start state with no finals.
Wfst trim(const Wfst& f);

// Minimum-cost accepting path under (min, +). Requires nonnegative weights
// (kNegativeWeight) and a nonempty language (kEmptyLanguage). Ties resolve
// deterministically by exploration order over (state id, arc order).
DecodePath shortest_path(const Wfst& f);

// AT&T-style text dump: "<src> <dst> <ilabel> <olabel> <weight>" arc lines
// followed by "<state> <final-weight>" lines; labels rendered by name.
std::string wfst_to_text(const Wfst& f);

}  // namespace huper

#endif  // HUPER_FST_H_
