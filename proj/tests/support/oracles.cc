// tests/support/oracles.cc

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

#include "tests/support/oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace huper::testsupport {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

}  // namespace

namespace {

double edit_rec(const std::vector<std::string>& hyp,
                const std::vector<std::string>& ref, const FeatureTable& table,
                std::size_t i, std::size_t j,
                std::unordered_map<std::size_t, double>* memo) {
  if (i == ref.size() && j == hyp.size()) return 0.0;
  const std::size_t key = i * (hyp.size() + 1) + j;
  if (memo) {
    auto it = memo->find(key);
    if (it != memo->end()) return it->second;
  }
  double best = kInf;
  if (i < ref.size()) {
    best = std::min(best,
                    1.0 + edit_rec(hyp, ref, table, i + 1, j, memo));
  }
  if (j < hyp.size()) {
    best = std::min(best,
                    1.0 + edit_rec(hyp, ref, table, i, j + 1, memo));
  }
  if (i < ref.size() && j < hyp.size()) {
    const double step = (ref[i] == hyp[j])
                            ? 0.0
                            : feature_distance(ref[i], hyp[j], table);
    best = std::min(best, step + edit_rec(hyp, ref, table, i + 1, j + 1,
                                          memo));
  }
  if (memo) (*memo)[key] = best;
  return best;
}

}  // namespace

double oracle_edit_cost(const std::vector<std::string>& hyp,
                        const std::vector<std::string>& ref,
                        const FeatureTable& table) {
  std::unordered_map<std::size_t, double> memo;
  return edit_rec(hyp, ref, table, 0, 0, &memo);
}

double oracle_edit_cost_enum(const std::vector<std::string>& hyp,
                             const std::vector<std::string>& ref,
                             const FeatureTable& table) {
  return edit_rec(hyp, ref, table, 0, 0, nullptr);
}

double oracle_ctc_forward(const PosteriorMatrix& p,
                          const std::vector<std::string>& y) {
  const PhoneInventory& inv = p.inventory();
  std::vector<int> want;
  for (const auto& s : y) want.push_back(inv.index(s));
  const int T = p.frames();
  const int V = p.symbols();
  const int blank = inv.blank_index();
  std::vector<int> path(T, 0);
  double total = -kInf;
  while (true) {
    // Collapse: repeats first, then blanks.
    std::vector<int> collapsed;
    int prev = -1;
    for (int t = 0; t < T; ++t) {
      if (path[t] != prev && path[t] != blank) collapsed.push_back(path[t]);
      prev = path[t];
    }
    if (collapsed == want) {
      double lp = 0.0;
      for (int t = 0; t < T; ++t) {
        lp += std::log(std::max(p.row(t)[path[t]], kProbFloor));
      }
      total = log_add(total, lp);
    }
    // Next V-ary counter value.
    int pos = T - 1;
    while (pos >= 0 && path[pos] == V - 1) {
      path[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++path[pos];
  }
  return total;
}

namespace {

void enumerate_paths(const Wfst& f, int state, std::vector<int>* is,
                     std::vector<int>* os, double cost, Language* out) {
  auto fit = f.finals.find(state);
  if (fit != f.finals.end()) {
    auto key = std::make_pair(*is, *os);
    const double total = cost + fit->second;
    auto it = out->find(key);
    if (it == out->end() || total < it->second) (*out)[key] = total;
  }
  for (const auto& arc : f.arcs[state]) {
    if (arc.ilabel != kEps) is->push_back(arc.ilabel);
    if (arc.olabel != kEps) os->push_back(arc.olabel);
    enumerate_paths(f, arc.next, is, os, cost + arc.weight, out);
    if (arc.ilabel != kEps) is->pop_back();
    if (arc.olabel != kEps) os->pop_back();
  }
}

}  // namespace

Language enumerate_language(const Wfst& f) {
  Language out;
  std::vector<int> is, os;
  enumerate_paths(f, f.start, &is, &os, 0.0, &out);
  return out;
}

Language compose_language_bruteforce(const Wfst& a, const Wfst& b) {
  Language la = enumerate_language(a);
  Language lb = enumerate_language(b);
  Language out;
  for (const auto& [pa, ca] : la) {
    for (const auto& [pb, cb] : lb) {
      if (pa.second != pb.first) continue;
      auto key = std::make_pair(pa.first, pb.second);
      const double cost = ca + cb;
      auto it = out.find(key);
      if (it == out.end() || cost < it->second) out[key] = cost;
    }
  }
  return out;
}

bool languages_equal(const Language& a, const Language& b, double tol) {
  if (a.size() != b.size()) return false;
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (std::abs(ia->second - ib->second) > tol) return false;
  }
  return true;
}

Wfst random_acyclic_wfst(std::mt19937_64& rng, int max_states, int n_labels,
                         std::shared_ptr<const SymbolTable> isyms,
                         std::shared_ptr<const SymbolTable> osyms) {
  std::uniform_int_distribution<int> n_states(2, max_states);
  std::uniform_int_distribution<int> label(0, n_labels);  // 0 = eps
  std::uniform_int_distribution<int> w3(0, 2);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Wfst f;
  f.isyms = std::move(isyms);
  f.osyms = std::move(osyms);
  const int n = n_states(rng);
  for (int s = 0; s < n; ++s) f.add_state();
  f.start = 0;
  for (int s = 0; s < n - 1; ++s) {
    const int arcs = static_cast<int>(unif(rng) * 3.2);
    for (int k = 0; k < arcs; ++k) {
      std::uniform_int_distribution<int> target(s + 1, n - 1);
      f.add_arc(s, {label(rng), label(rng), 0.5 * w3(rng), target(rng)});
    }
  }
  for (int s = 0; s < n; ++s) {
    if (unif(rng) < 0.35 || s == n - 1) f.set_final(s, 0.5 * w3(rng));
  }
  return f;
}

double oracle_shortest_cost(const Wfst& f) {
  Language lang = enumerate_language(f);
  double best = kInf;
  for (const auto& [key, cost] : lang) best = std::min(best, cost);
  return best;
}

namespace {

struct DysfluentMemoKey {
  int ci, ri, j, last;
  bool operator==(const DysfluentMemoKey&) const = default;
};

struct DysfluentMemoHash {
  std::size_t operator()(const DysfluentMemoKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.ci);
    h = h * 131 + k.ri;
    h = h * 131 + k.j;
    h = h * 131 + (k.last + 1);
    return h;
  }
};

struct DysfluentContext {
  const std::vector<std::string>* realized;
  const std::vector<std::string>* canonical;
  const DysfluentPenalties* pen;
  const std::vector<std::string>* alphabet;
  const FeatureTable* features;
  std::unordered_map<DysfluentMemoKey, double, DysfluentMemoHash> memo;

  double sub_cost(const std::string& from, const std::string& to) const {
    if (pen->feature_weighted) {
      return pen->feature_scale * feature_distance(from, to, *features);
    }
    return pen->sub_cost;
  }

  // last indexes into alphabet; -1 means no repeatable phone.
  double solve(int ci, int ri, int j, int last) {
    const auto& r = *realized;
    const auto& c = *canonical;
    if (ri == static_cast<int>(r.size())) {
      return pen->del_cost * (static_cast<int>(c.size()) - ci);
    }
    DysfluentMemoKey key{ci, ri, j, last};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    // Every move strictly consumes canonical or realized symbols, so the
    // recursion is acyclic.
    double best = kInf;
    const int alpha_index = [&] {
      for (std::size_t a = 0; a < alphabet->size(); ++a) {
        if ((*alphabet)[a] == r[ri]) return static_cast<int>(a);
      }
      return -1;
    }();
    if (alpha_index < 0) {
      memo[key] = kInf;
      return kInf;  // realized phone outside the constraint alphabet
    }
    if (ci < static_cast<int>(c.size())) {
      if (r[ri] == c[ci]) {
        best = std::min(best, solve(ci + 1, ri + 1, 0, alpha_index));
      } else {
        best = std::min(best, sub_cost(c[ci], r[ri]) +
                                  solve(ci + 1, ri + 1, 0, alpha_index));
      }
      best = std::min(best, pen->del_cost + solve(ci + 1, ri, 0, -1));
    }
    if (j < pen->max_consec_ins) {
      best = std::min(best,
                      pen->ins_cost + solve(ci, ri + 1, j + 1, alpha_index));
    }
    if (last >= 0 && (*alphabet)[last] == r[ri]) {
      best = std::min(best, pen->rep_cost + solve(ci, ri + 1, j, last));
    }
    memo[key] = best;
    return best;
  }
};

}  // namespace

double oracle_dysfluent_cost(const std::vector<std::string>& realized,
                             const std::vector<std::string>& canonical,
                             const DysfluentPenalties& pen,
                             const std::vector<std::string>& alphabet,
                             const FeatureTable* features) {
  DysfluentContext ctx{&realized, &canonical, &pen, &alphabet, features, {}};
  return ctx.solve(0, 0, 0, -1);
}

}  // namespace huper::testsupport
