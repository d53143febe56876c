// huper/selflearn.h

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

#ifndef HUPER_SELFLEARN_H_
#define HUPER_SELFLEARN_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "huper/drrc.h"
#include "huper/emissions.h"
#include "huper/metrics.h"

namespace huper {

// Rule-based merge of a canonical sequence with a teacher hypothesis via a
// unit-cost alignment: matches keep the phone; substituted or inserted
// teacher phones survive when their confidence clears the threshold;
// a canonical phone the teacher skipped is dropped when the mean confidence
// of the adjacent teacher phones clears the threshold.
std::vector<std::string> align_correct(
    const std::vector<std::string>& canonical,
    const std::vector<std::string>& teacher,
    const std::vector<double>& confidence, double threshold);

// Synthetic sequence task for the self-learning loop: utterances are frame
// sequences of Gaussian acoustic features whose realized phones derive from
// a canonical sequence by systematic deletions.
struct ToyTaskSpec {
  int phones = 6;           // non-blank phones, labeled q1..qN
  int feat_dim = 8;
  int frames_per_phone = 3;
  int blank_frames = 1;     // blank frames appended after each phone
  double noise_sd = 0.7;
  int canon_len_min = 4;
  int canon_len_max = 9;
  // 0-based phone ids systematically deleted in realization; empty picks
  // {0, 1}.
  std::vector<int> deletable;
  double deletion_prob = 0.9;
  std::uint64_t seed = 7;
};

struct ToyUtterance {
  std::vector<std::vector<double>> frames;     // acoustic features
  std::vector<int> frame_labels;               // true frame inventory indices
  std::vector<std::string> realized;           // spoken phones
  std::vector<std::string> canonical;          // G2P-surrogate phones
};

struct ToyCorpus {
  std::shared_ptr<const PhoneInventory> inventory;
  FeatureTable features;  // random distinct vectors; for PFER only
  std::vector<ToyUtterance> labeled;          // D
  std::vector<ToyUtterance> transcript_only;  // D'
  std::vector<ToyUtterance> heldout;
};

ToyCorpus make_toy_corpus(const ToyTaskSpec& spec, int n_labeled,
                          int n_transcript, int n_heldout);

// Frame posteriors for an utterance under a frame-classifier learner.
PosteriorMatrix learner_emissions(const Learner& learner,
                                  const ToyUtterance& utt,
                                  std::shared_ptr<const PhoneInventory> inv,
                                  const std::string& utt_id);

enum class CorrectorMode { kTeacherOnly, kCanonicalOnly, kAlignMerge };

struct SelfLearnOptions {
  int rounds = 2;
  CorrectorMode mode = CorrectorMode::kAlignMerge;
  double threshold = 0.5;
  bool mix_labeled = true;  // train each round on the pseudo set plus D
  int train_steps = 400;
  double train_rate = 0.8;
};

struct SelfLearnResult {
  std::vector<Learner> models;          // f^(0..R)
  std::vector<double> heldout_pfer;     // per model
  // Pseudo labels per round (rounds x transcript items), for inspection.
  std::vector<std::vector<std::vector<std::string>>> round_labels;
};

// The iterative self-learning loop: f^(0) trains on the labeled set; each
// round decodes teacher hypotheses on the transcript-only set, corrects
// them against the canonical sequences, and retrains.
SelfLearnResult self_learning(const ToyCorpus& corpus,
                              const SelfLearnOptions& opts);

}  // namespace huper

#endif  // HUPER_SELFLEARN_H_
