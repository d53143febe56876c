// huper/metrics.h

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

#ifndef HUPER_METRICS_H_
#define HUPER_METRICS_H_

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "huper/phoneset.h"

namespace huper {

enum class EditOpKind { kMatch, kSubstitute, kDelete, kInsert };

// One alignment step. ref is set for Match/Substitute/Delete, hyp for
// Match/Substitute/Insert; replaying the ref sides reproduces the reference
// and the hyp sides reproduce the hypothesis.
struct EditOp {
  EditOpKind kind;
  std::string ref;
  std::string hyp;
  double cost = 0.0;
};

struct EditAlignment {
  std::vector<EditOp> ops;
  double total_cost = 0.0;
};

struct PferResult {
  double distance = 0.0;
  int ref_len = 0;
  double pfer = 0.0;
};

enum class CorpusMode { kMacro, kMicro };

// Substitution-cost callback: cost of rewriting ref phone p as hyp phone q.
using SubCostFn = std::function<double(const std::string&,
                                       const std::string&)>;

// Minimum-cost alignment under sub=sub_cost, ins=del=1, match(p==q)=0.
// Ties in the backtrace resolve Match > Substitute > Delete > Insert.
EditAlignment edit_alignment(const std::vector<std::string>& hyp,
                             const std::vector<std::string>& ref,
                             const SubCostFn& sub_cost);

// Feature-weighted edit alignment: substitutions cost the normalized Hamming
// distance between the phones' 24-bit feature vectors.
EditAlignment weighted_edit_distance(const std::vector<std::string>& hyp,
                                     const std::vector<std::string>& ref,
                                     const FeatureTable& table);

// Length-normalized feature-weighted edit distance. ref must be non-empty.
PferResult pfer(const std::vector<std::string>& hyp,
                const std::vector<std::string>& ref,
                const FeatureTable& table);

// macro = mean of per-utterance pfer; micro = sum distances / sum ref lens.
double corpus_pfer(
    const std::vector<std::pair<std::vector<std::string>,
                                std::vector<std::string>>>& hyp_ref_pairs,
    const FeatureTable& table, CorpusMode mode);

// Spearman rank correlation with average ranks for ties. Throws
// kDegenerateRanks when either input has no rank variation or fewer than
// two entries.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

// Centroid representational similarity: mean-pool embeddings per phone,
// cosine-distance the centroids, and rank-correlate against feature
// distances over the matched upper triangles.
double centroid_rsa(
    const std::vector<std::pair<std::vector<double>, std::string>>& segments,
    const FeatureTable& table);

}  // namespace huper

#endif  // HUPER_METRICS_H_
