// huper/emissions.h

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

#ifndef HUPER_EMISSIONS_H_
#define HUPER_EMISSIONS_H_

#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "huper/phoneset.h"

namespace huper {

// Probabilities are floored at this value before any log so that log scores
// of topologically feasible paths stay finite.
inline constexpr double kProbFloor = 1e-12;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Per-frame phone posteriors (T x V, V includes the blank column). Rows are
// renormalized at load when their sum is within 1e-4 of one; anything worse
// is rejected. Immutable after construction.
class PosteriorMatrix {
 public:
  PosteriorMatrix(std::vector<double> data, int frames,
                  std::shared_ptr<const PhoneInventory> inventory,
                  std::string utt_id);

  int frames() const { return frames_; }
  int symbols() const { return symbols_; }
  std::span<const double> row(int t) const {
    return {data_.data() + static_cast<std::size_t>(t) * symbols_,
            static_cast<std::size_t>(symbols_)};
  }
  const PhoneInventory& inventory() const { return *inventory_; }
  std::shared_ptr<const PhoneInventory> inventory_ptr() const {
    return inventory_;
  }
  const std::string& utt_id() const { return utt_id_; }

 private:
  std::vector<double> data_;
  int frames_;
  int symbols_;
  std::shared_ptr<const PhoneInventory> inventory_;
  std::string utt_id_;
};

struct FrameDistortion {
  double margin = 0.0;   // top-two posterior gap
  double entropy = 0.0;  // normalized entropy
  double score = 0.0;    // clip(0.5*(1-m) + 0.5*h, 0, 1)
};

struct DistortionProfile {
  std::vector<FrameDistortion> per_frame;
  double score = 0.0;  // mean of per-frame scores
};

struct DistortionOptions {
  // When true, the entropy normalizer uses log(V-1), dropping the blank
  // column from the count (the default keeps the full V).
  bool entropy_excludes_blank = false;
};

// Parses one posterior document: "HUPER-POST v1", then "T=<t> V=<v>"
// (optionally followed by "id=<utt>"), then T rows of V decimals.
PosteriorMatrix load_posteriors(
    const std::string& text,
    std::shared_ptr<const PhoneInventory> inventory,
    const std::string& default_id = "");

// Parses a concatenated archive with "---" separator lines.
std::vector<PosteriorMatrix> load_posterior_archive(
    const std::string& text,
    std::shared_ptr<const PhoneInventory> inventory,
    const std::string& default_id_prefix = "utt");

// Canonical serialization; load_posteriors(save_posteriors(P)) reproduces P
// and re-saving reproduces the bytes.
std::string save_posteriors(const PosteriorMatrix& p);

FrameDistortion frame_distortion(std::span<const double> row,
                                 const DistortionOptions& opts = {});

DistortionProfile utterance_distortion(const PosteriorMatrix& p,
                                       const DistortionOptions& opts = {});

// Collapse adjacent repeats, then remove blanks.
std::vector<int> ctc_collapse(const std::vector<int>& frame_labels,
                              int blank_index);

// Maximal run of identical per-frame argmax labels ([begin, end) frames).
struct ArgmaxRun {
  int label;
  int begin;
  int end;
};

// Per-frame argmax (ties to the lowest index) grouped into maximal runs.
std::vector<ArgmaxRun> argmax_runs(const PosteriorMatrix& p);

// Greedy CTC decode: argmax, collapse repeats, drop blanks.
std::vector<std::string> ctc_best_path(const PosteriorMatrix& p);

// Log marginal probability of label sequence y under the CTC alignment
// topology, via the forward algorithm in log space. Returns -inf when no
// alignment of y fits in the available frames.
double ctc_forward_logprob(const PosteriorMatrix& p,
                           const std::vector<std::string>& y);

// Per-phone normalized preference score:
//   logP(y_can)/|y_can| - logP(y_real)/|y_real|.
// Positive favors the canonical sequence. Throws kNoEvidence when both
// sequences are infeasible.
double delta_norm(const PosteriorMatrix& p,
                  const std::vector<std::string>& y_can,
                  const std::vector<std::string>& y_real);

}  // namespace huper

#endif  // HUPER_EMISSIONS_H_
