// fst.cc

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

#include "huper/fst.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <queue>
#include <sstream>

namespace huper {

int SymbolTable::add(const std::string& name) {
  auto it = ids_.find(name);
  if (it != ids_.end()) return it->second;
  int id = static_cast<int>(names_.size());
  names_.push_back(name);
  ids_[name] = id;
  return id;
}

int SymbolTable::find(const std::string& name) const {
  auto it = ids_.find(name);
  if (it == ids_.end()) {
    throw Error(ErrorCode::kUnknownLabel, "symbol not in table: " + name);
  }
  return it->second;
}

const std::string& SymbolTable::name(int id) const {
  if (id < 0 || id >= size()) {
    throw Error(ErrorCode::kUnknownLabel,
                "symbol id out of range: " + std::to_string(id));
  }
  return names_[id];
}

std::shared_ptr<const SymbolTable> SymbolTable::from_inventory(
    const PhoneInventory& inv) {
  auto table = std::make_shared<SymbolTable>();
  for (int i = 0; i < inv.size(); ++i) table->add(inv.label(i));
  return table;
}

std::shared_ptr<const SymbolTable> SymbolTable::from_names(
    const std::vector<std::string>& names) {
  auto table = std::make_shared<SymbolTable>();
  for (const auto& n : names) table->add(n);
  return table;
}

bool same_syms(const std::shared_ptr<const SymbolTable>& a,
               const std::shared_ptr<const SymbolTable>& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void validate_wfst(const Wfst& f) {
  const int n = f.num_states();
  if (n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "machine has no states");
  }
  if (f.start < 0 || f.start >= n) {
    throw Error(ErrorCode::kInvalidArgument, "start state out of range");
  }
  for (const auto& [state, weight] : f.finals) {
    if (state < 0 || state >= n) {
      throw Error(ErrorCode::kInvalidArgument, "final state out of range");
    }
    if (!(weight >= 0.0) || !std::isfinite(weight)) {
      throw Error(ErrorCode::kNegativeWeight,
                  "final weights must be finite and nonnegative");
    }
  }
  for (int s = 0; s < n; ++s) {
    for (const auto& arc : f.arcs[s]) {
      if (arc.next < 0 || arc.next >= n) {
        throw Error(ErrorCode::kInvalidArgument, "arc target out of range");
      }
      if (!(arc.weight >= 0.0) || !std::isfinite(arc.weight)) {
        throw Error(ErrorCode::kNegativeWeight,
                    "arc weights must be finite and nonnegative");
      }
      if (f.isyms && (arc.ilabel < 0 || arc.ilabel >= f.isyms->size())) {
        throw Error(ErrorCode::kUnknownLabel, "arc ilabel outside table");
      }
      if (f.osyms && (arc.olabel < 0 || arc.olabel >= f.osyms->size())) {
        throw Error(ErrorCode::kUnknownLabel, "arc olabel outside table");
      }
    }
  }
}

std::vector<std::string> render_labels(const std::vector<int>& ids,
                                       const SymbolTable& syms) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(syms.name(id));
  return out;
}

Wfst linear_acceptor(const std::vector<int>& labels,
                     std::shared_ptr<const SymbolTable> syms) {
  Wfst f;
  f.isyms = syms;
  f.osyms = std::move(syms);
  f.add_state();
  f.start = 0;
  int cur = 0;
  for (int label : labels) {
    int next = f.add_state();
    f.add_arc(cur, {label, label, 0.0, next});
    cur = next;
  }
  f.set_final(cur, 0.0);
  return f;
}

Wfst trim(const Wfst& f) {
  const int n = f.num_states();
  // Forward reachability.
  std::vector<bool> fwd(n, false);
  std::deque<int> queue{f.start};
  fwd[f.start] = true;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (const auto& arc : f.arcs[s]) {
      if (!fwd[arc.next]) {
        fwd[arc.next] = true;
        queue.push_back(arc.next);
      }
    }
  }
  // Backward reachability from finals.
  std::vector<std::vector<int>> preds(n);
  for (int s = 0; s < n; ++s) {
    for (const auto& arc : f.arcs[s]) preds[arc.next].push_back(s);
  }
  std::vector<bool> bwd(n, false);
  for (const auto& [state, weight] : f.finals) {
    (void)weight;
    if (!bwd[state]) {
      bwd[state] = true;
      queue.push_back(state);
    }
  }
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int p : preds[s]) {
      if (!bwd[p]) {
        bwd[p] = true;
        queue.push_back(p);
      }
    }
  }
  std::vector<int> remap(n, -1);
  int kept = 0;
  for (int s = 0; s < n; ++s) {
    if (fwd[s] && bwd[s]) remap[s] = kept++;
  }
  Wfst out;
  out.isyms = f.isyms;
  out.osyms = f.osyms;
  if (remap[f.start] < 0) {
    // Empty language: a bare start state.
    out.add_state();
    out.start = 0;
    return out;
  }
  out.arcs.resize(kept);
  out.start = remap[f.start];
  for (int s = 0; s < n; ++s) {
    if (remap[s] < 0) continue;
    for (const auto& arc : f.arcs[s]) {
      if (remap[arc.next] < 0) continue;
      out.add_arc(remap[s],
                  {arc.ilabel, arc.olabel, arc.weight, remap[arc.next]});
    }
  }
  for (const auto& [state, weight] : f.finals) {
    if (remap[state] >= 0) out.set_final(remap[state], weight);
  }
  return out;
}

namespace {

// Filter states of the three-state epsilon filter: 0 permits every move,
// 1 permits only A-side epsilon output moves, 2 only B-side epsilon input
// moves; a matched (non-eps) pair resets to 0. Exactly one interleaving of
// epsilon moves survives per path pair.
constexpr int kFilterFree = 0;
constexpr int kFilterAOnly = 1;
constexpr int kFilterBOnly = 2;

struct PairKey {
  std::int64_t encode(int qa, int qb, int filter, int nb) const {
    return (static_cast<std::int64_t>(qa) * nb + qb) * 3 + filter;
  }
};

}  // namespace

Wfst compose(const Wfst& a, const Wfst& b) {
  if (!same_syms(a.osyms, b.isyms)) {
    throw Error(ErrorCode::kSymbolTableMismatch,
                "compose: A.osyms must equal B.isyms");
  }
  validate_wfst(a);
  validate_wfst(b);

  // Index B arcs by ilabel for match lookup.
  const int nb = b.num_states();
  std::vector<std::vector<std::pair<int, int>>> b_by_ilabel(nb);
  for (int s = 0; s < nb; ++s) {
    for (int i = 0; i < static_cast<int>(b.arcs[s].size()); ++i) {
      b_by_ilabel[s].emplace_back(b.arcs[s][i].ilabel, i);
    }
    std::stable_sort(b_by_ilabel[s].begin(), b_by_ilabel[s].end(),
                     [](const auto& x, const auto& y) {
                       return x.first < y.first;
                     });
  }
  auto b_matches = [&](int state, int label) {
    const auto& v = b_by_ilabel[state];
    auto lo = std::lower_bound(
        v.begin(), v.end(), std::make_pair(label, -1));
    std::vector<int> idx;
    for (auto it = lo; it != v.end() && it->first == label; ++it) {
      idx.push_back(it->second);
    }
    std::sort(idx.begin(), idx.end());
    return idx;
  };

  Wfst out;
  out.isyms = a.isyms;
  out.osyms = b.osyms;
  PairKey key;
  std::unordered_map<std::int64_t, int> ids;
  std::deque<std::array<int, 3>> queue;
  auto state_id = [&](int qa, int qb, int filter) {
    auto k = key.encode(qa, qb, filter, nb);
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    int id = out.add_state();
    ids[k] = id;
    queue.push_back({qa, qb, filter});
    return id;
  };
  out.start = state_id(a.start, b.start, kFilterFree);

  while (!queue.empty()) {
    auto [qa, qb, filter] = queue.front();
    queue.pop_front();
    const int src = ids[key.encode(qa, qb, filter, nb)];

    // Matched non-epsilon pairs (allowed from every filter state).
    for (const auto& ea : a.arcs[qa]) {
      if (ea.olabel == kEps) continue;
      for (int bi : b_matches(qb, ea.olabel)) {
        const Arc& eb = b.arcs[qb][bi];
        out.add_arc(src, {ea.ilabel, eb.olabel, ea.weight + eb.weight,
                          state_id(ea.next, eb.next, kFilterFree)});
      }
    }
    // Joint epsilon move (both machines advance), only from the free state.
    if (filter == kFilterFree) {
      for (const auto& ea : a.arcs[qa]) {
        if (ea.olabel != kEps) continue;
        for (int bi : b_matches(qb, kEps)) {
          const Arc& eb = b.arcs[qb][bi];
          out.add_arc(src, {ea.ilabel, eb.olabel, ea.weight + eb.weight,
                            state_id(ea.next, eb.next, kFilterFree)});
        }
      }
    }
    // A advances alone on an epsilon-output arc.
    if (filter == kFilterFree || filter == kFilterAOnly) {
      for (const auto& ea : a.arcs[qa]) {
        if (ea.olabel != kEps) continue;
        out.add_arc(src, {ea.ilabel, kEps, ea.weight,
                          state_id(ea.next, qb, kFilterAOnly)});
      }
    }
    // B advances alone on an epsilon-input arc.
    if (filter == kFilterFree || filter == kFilterBOnly) {
      for (int bi : b_matches(qb, kEps)) {
        const Arc& eb = b.arcs[qb][bi];
        out.add_arc(src, {kEps, eb.olabel, eb.weight,
                          state_id(qa, eb.next, kFilterBOnly)});
      }
    }
    auto fa = a.finals.find(qa);
    auto fb = b.finals.find(qb);
    if (fa != a.finals.end() && fb != b.finals.end()) {
      out.set_final(src, fa->second + fb->second);
    }
  }
  return trim(out);
}

DecodePath shortest_path(const Wfst& f) {
  validate_wfst(f);
  const int n = f.num_states();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<std::pair<int, int>> parent(n, {-1, -1});  // (prev state, arc)
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  dist[f.start] = 0.0;
  heap.push({0.0, f.start});
  std::vector<bool> done(n, false);
  while (!heap.empty()) {
    auto [d, s] = heap.top();
    heap.pop();
    if (done[s]) continue;
    done[s] = true;
    for (int i = 0; i < static_cast<int>(f.arcs[s].size()); ++i) {
      const Arc& arc = f.arcs[s][i];
      const double nd = d + arc.weight;
      if (nd < dist[arc.next]) {
        dist[arc.next] = nd;
        parent[arc.next] = {s, i};
        heap.push({nd, arc.next});
      }
    }
  }
  int best_final = -1;
  double best_cost = kInf;
  for (const auto& [state, weight] : f.finals) {
    const double total = dist[state] + weight;
    if (total < best_cost) {
      best_cost = total;
      best_final = state;
    }
  }
  if (best_final < 0) {
    throw Error(ErrorCode::kEmptyLanguage,
                "shortest_path: no accepting path");
  }
  std::vector<std::pair<int, int>> back;  // (state, arc index into parent)
  int cur = best_final;
  while (cur != f.start || parent[cur].first >= 0) {
    auto [prev, arc_idx] = parent[cur];
    if (prev < 0) break;
    back.emplace_back(prev, arc_idx);
    cur = prev;
  }
  std::reverse(back.begin(), back.end());
  DecodePath path;
  path.cost = best_cost;
  for (const auto& [state, arc_idx] : back) {
    const Arc& arc = f.arcs[state][arc_idx];
    if (arc.ilabel != kEps) path.ilabels.push_back(arc.ilabel);
    if (arc.olabel != kEps) path.olabels.push_back(arc.olabel);
  }
  return path;
}

std::string wfst_to_text(const Wfst& f) {
  std::ostringstream out;
  char buf[32];
  auto iname = [&](int id) {
    return f.isyms ? f.isyms->name(id) : std::to_string(id);
  };
  auto oname = [&](int id) {
    return f.osyms ? f.osyms->name(id) : std::to_string(id);
  };
  for (int s = 0; s < f.num_states(); ++s) {
    for (const auto& arc : f.arcs[s]) {
      std::snprintf(buf, sizeof(buf), "%.6f", arc.weight);
      out << s << ' ' << arc.next << ' ' << iname(arc.ilabel) << ' '
          << oname(arc.olabel) << ' ' << buf << '\n';
    }
  }
  for (const auto& [state, weight] : f.finals) {
    std::snprintf(buf, sizeof(buf), "%.6f", weight);
    out << state << ' ' << buf << '\n';
  }
  return out.str();
}

}  // namespace huper
