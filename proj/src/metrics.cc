// metrics.cc

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

#include "huper/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace huper {

namespace {

constexpr double kUnitCost = 1.0;

enum class Step : std::uint8_t { kNone, kMatch, kSub, kDel, kIns };

}  // namespace

EditAlignment edit_alignment(const std::vector<std::string>& hyp,
                             const std::vector<std::string>& ref,
                             const SubCostFn& sub_cost) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  // cost[i][j]: min cost aligning ref[0..i) with hyp[0..j).
  std::vector<std::vector<double>> cost(n + 1,
                                        std::vector<double>(m + 1, 0.0));
  std::vector<std::vector<Step>> step(n + 1,
                                      std::vector<Step>(m + 1, Step::kNone));
  for (std::size_t i = 1; i <= n; ++i) {
    cost[i][0] = cost[i - 1][0] + kUnitCost;
    step[i][0] = Step::kDel;
  }
  for (std::size_t j = 1; j <= m; ++j) {
    cost[0][j] = cost[0][j - 1] + kUnitCost;
    step[0][j] = Step::kIns;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const bool match = ref[i - 1] == hyp[j - 1];
      const double diag_step =
          match ? 0.0 : sub_cost(ref[i - 1], hyp[j - 1]);
      const double c_diag = cost[i - 1][j - 1] + diag_step;
      const double c_del = cost[i - 1][j] + kUnitCost;
      const double c_ins = cost[i][j - 1] + kUnitCost;
      double best = std::min({c_diag, c_del, c_ins});
      cost[i][j] = best;
      // Tie order: Match > Substitute > Delete > Insert.
      if (c_diag == best) {
        step[i][j] = match ? Step::kMatch : Step::kSub;
      } else if (c_del == best) {
        step[i][j] = Step::kDel;
      } else {
        step[i][j] = Step::kIns;
      }
    }
  }
  EditAlignment out;
  out.total_cost = cost[n][m];
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    switch (step[i][j]) {
      case Step::kMatch:
        out.ops.push_back({EditOpKind::kMatch, ref[i - 1], hyp[j - 1], 0.0});
        --i;
        --j;
        break;
      case Step::kSub:
        out.ops.push_back({EditOpKind::kSubstitute, ref[i - 1], hyp[j - 1],
                           sub_cost(ref[i - 1], hyp[j - 1])});
        --i;
        --j;
        break;
      case Step::kDel:
        out.ops.push_back({EditOpKind::kDelete, ref[i - 1], "", kUnitCost});
        --i;
        break;
      case Step::kIns:
        out.ops.push_back({EditOpKind::kInsert, "", hyp[j - 1], kUnitCost});
        --j;
        break;
      case Step::kNone:
        throw Error(ErrorCode::kInvalidArgument, "corrupt backtrace");
    }
  }
  std::reverse(out.ops.begin(), out.ops.end());
  return out;
}

EditAlignment weighted_edit_distance(const std::vector<std::string>& hyp,
                                     const std::vector<std::string>& ref,
                                     const FeatureTable& table) {
  // Validate up front so unknown phones fail before any DP work.
  for (const auto& p : ref) table.features(p);
  for (const auto& q : hyp) table.features(q);
  return edit_alignment(hyp, ref,
                        [&table](const std::string& p, const std::string& q) {
                          return feature_distance(p, q, table);
                        });
}

PferResult pfer(const std::vector<std::string>& hyp,
                const std::vector<std::string>& ref,
                const FeatureTable& table) {
  if (ref.empty()) {
    throw Error(ErrorCode::kEmptyReference, "pfer: empty reference");
  }
  EditAlignment a = weighted_edit_distance(hyp, ref, table);
  PferResult r;
  r.distance = a.total_cost;
  r.ref_len = static_cast<int>(ref.size());
  r.pfer = r.distance / r.ref_len;
  return r;
}

double corpus_pfer(
    const std::vector<std::pair<std::vector<std::string>,
                                std::vector<std::string>>>& hyp_ref_pairs,
    const FeatureTable& table, CorpusMode mode) {
  if (hyp_ref_pairs.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "corpus_pfer: empty corpus");
  }
  if (mode == CorpusMode::kMacro) {
    double sum = 0.0;
    for (const auto& [hyp, ref] : hyp_ref_pairs) {
      sum += pfer(hyp, ref, table).pfer;
    }
    return sum / static_cast<double>(hyp_ref_pairs.size());
  }
  double dist = 0.0;
  long len = 0;
  for (const auto& [hyp, ref] : hyp_ref_pairs) {
    dist += weighted_edit_distance(hyp, ref, table).total_cost;
    len += static_cast<long>(ref.size());
  }
  if (len == 0) {
    throw Error(ErrorCode::kEmptyReference,
                "corpus_pfer: total reference length is zero");
  }
  return dist / static_cast<double>(len);
}

namespace {

// Average (fractional) ranks, 1-based.
std::vector<double> average_ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    throw Error(ErrorCode::kDegenerateRanks,
                "rank correlation undefined on constant input");
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "spearman: input lengths differ");
  }
  if (a.size() < 2) {
    throw Error(ErrorCode::kDegenerateRanks,
                "spearman: need at least two observations");
  }
  return pearson(average_ranks(a), average_ranks(b));
}

namespace {

double cosine_distance(const std::vector<double>& a,
                       const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "cosine distance undefined for zero-norm centroid");
  }
  return 1.0 - dot / std::sqrt(na * nb);
}

}  // namespace

double centroid_rsa(
    const std::vector<std::pair<std::vector<double>, std::string>>& segments,
    const FeatureTable& table) {
  if (segments.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "centroid_rsa: no segments");
  }
  const std::size_t dim = segments.front().first.size();
  // Ordered map keeps the phone order (and hence the upper triangle)
  // deterministic.
  std::map<std::string, std::pair<std::vector<double>, int>> acc;
  for (const auto& [emb, label] : segments) {
    if (emb.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "centroid_rsa: embedding dimensions differ");
    }
    table.features(label);
    auto& slot = acc[label];
    if (slot.first.empty()) slot.first.assign(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) slot.first[i] += emb[i];
    slot.second += 1;
  }
  if (acc.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "centroid_rsa: need at least two distinct phones");
  }
  std::vector<std::string> labels;
  std::vector<std::vector<double>> centroids;
  for (auto& [label, slot] : acc) {
    labels.push_back(label);
    for (auto& x : slot.first) x /= slot.second;
    centroids.push_back(std::move(slot.first));
  }
  std::vector<double> emb_d, ref_d;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      emb_d.push_back(cosine_distance(centroids[i], centroids[j]));
      ref_d.push_back(feature_distance(labels[i], labels[j], table));
    }
  }
  return spearman(emb_d, ref_d);
}

}  // namespace huper
