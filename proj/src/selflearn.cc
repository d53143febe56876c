// selflearn.cc

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

#include "huper/selflearn.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace huper {

std::vector<std::string> align_correct(
    const std::vector<std::string>& canonical,
    const std::vector<std::string>& teacher,
    const std::vector<double>& confidence, double threshold) {
  if (confidence.size() != teacher.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "one confidence per teacher phone required");
  }
  EditAlignment alignment = edit_alignment(
      teacher, canonical,
      [](const std::string&, const std::string&) { return 1.0; });
  std::vector<std::string> out;
  std::size_t tpos = 0;
  for (const auto& op : alignment.ops) {
    switch (op.kind) {
      case EditOpKind::kMatch:
        out.push_back(op.ref);
        ++tpos;
        break;
      case EditOpKind::kSubstitute:
        out.push_back(confidence[tpos] >= threshold ? op.hyp : op.ref);
        ++tpos;
        break;
      case EditOpKind::kInsert:
        if (confidence[tpos] >= threshold) out.push_back(op.hyp);
        ++tpos;
        break;
      case EditOpKind::kDelete: {
        double sum = 0.0;
        int count = 0;
        if (tpos > 0) {
          sum += confidence[tpos - 1];
          ++count;
        }
        if (tpos < confidence.size()) {
          sum += confidence[tpos];
          ++count;
        }
        const double neighborhood = count ? sum / count : 0.0;
        if (neighborhood < threshold) out.push_back(op.ref);
        break;
      }
    }
  }
  return out;
}

namespace {

std::vector<std::vector<double>> draw_means(int count, int dim, double norm,
                                            std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<double>> means(count, std::vector<double>(dim));
  for (auto& mu : means) {
    double len = 0.0;
    for (auto& v : mu) {
      v = gauss(rng);
      len += v * v;
    }
    len = std::sqrt(std::max(len, 1e-12));
    for (auto& v : mu) v *= norm / len;
  }
  return means;
}

FeatureTable random_feature_table(const std::vector<std::string>& labels,
                                  std::mt19937_64& rng) {
  std::unordered_map<std::string, FeatureVector> entries;
  std::uniform_int_distribution<int> bit(0, 1);
  std::unordered_map<std::string, bool> seen;
  for (const auto& label : labels) {
    FeatureVector v{};
    std::string key;
    do {
      key.clear();
      for (int i = 0; i < kFeatureDim; ++i) {
        v[i] = static_cast<std::uint8_t>(bit(rng));
        key.push_back('0' + v[i]);
      }
    } while (seen.count(key));
    seen[key] = true;
    entries[label] = v;
  }
  return FeatureTable(std::move(entries));
}

}  // namespace

ToyCorpus make_toy_corpus(const ToyTaskSpec& spec, int n_labeled,
                          int n_transcript, int n_heldout) {
  if (spec.phones < 2 || spec.feat_dim < 1 || spec.frames_per_phone < 1 ||
      spec.canon_len_min < 1 || spec.canon_len_max < spec.canon_len_min) {
    throw Error(ErrorCode::kInvalidArgument, "bad toy task spec");
  }
  std::vector<int> deletable = spec.deletable;
  if (deletable.empty()) deletable = {0, 1};
  for (int d : deletable) {
    if (d < 0 || d >= spec.phones) {
      throw Error(ErrorCode::kInvalidArgument, "deletable phone out of range");
    }
  }

  ToyCorpus corpus;
  std::vector<std::string> labels{kBlankLabel};
  for (int i = 0; i < spec.phones; ++i) {
    labels.push_back("q" + std::to_string(i + 1));
  }
  corpus.inventory = std::make_shared<PhoneInventory>(labels, 0);

  std::mt19937_64 rng(spec.seed);
  corpus.features = random_feature_table(
      std::vector<std::string>(labels.begin() + 1, labels.end()), rng);
  // Index 0 is the blank's acoustic class.
  auto means = draw_means(spec.phones + 1, spec.feat_dim, 3.0, rng);

  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> phone_pick(0, spec.phones - 1);
  std::uniform_int_distribution<int> len_pick(spec.canon_len_min,
                                              spec.canon_len_max);

  auto make_utt = [&]() {
    ToyUtterance utt;
    const int len = len_pick(rng);
    std::vector<int> canon;
    for (int i = 0; i < len; ++i) {
      int p = phone_pick(rng);
      while (!canon.empty() && p == canon.back()) p = phone_pick(rng);
      canon.push_back(p);
    }
    std::vector<int> realized;
    for (int p : canon) {
      const bool deletable_phone =
          std::find(deletable.begin(), deletable.end(), p) != deletable.end();
      if (deletable_phone && unif(rng) < spec.deletion_prob) continue;
      realized.push_back(p);
    }
    if (realized.empty()) realized.push_back(canon.front());
    for (int p : canon) utt.canonical.push_back(corpus.inventory->label(p + 1));
    for (int p : realized) {
      utt.realized.push_back(corpus.inventory->label(p + 1));
      for (int f = 0; f < spec.frames_per_phone; ++f) {
        std::vector<double> x(spec.feat_dim);
        for (int d = 0; d < spec.feat_dim; ++d) {
          x[d] = means[p + 1][d] + spec.noise_sd * gauss(rng);
        }
        utt.frames.push_back(std::move(x));
        utt.frame_labels.push_back(p + 1);
      }
      for (int f = 0; f < spec.blank_frames; ++f) {
        std::vector<double> x(spec.feat_dim);
        for (int d = 0; d < spec.feat_dim; ++d) {
          x[d] = means[0][d] + spec.noise_sd * gauss(rng);
        }
        utt.frames.push_back(std::move(x));
        utt.frame_labels.push_back(0);
      }
    }
    return utt;
  };
  for (int i = 0; i < n_labeled; ++i) corpus.labeled.push_back(make_utt());
  for (int i = 0; i < n_transcript; ++i) {
    corpus.transcript_only.push_back(make_utt());
  }
  for (int i = 0; i < n_heldout; ++i) corpus.heldout.push_back(make_utt());
  return corpus;
}

PosteriorMatrix learner_emissions(const Learner& learner,
                                  const ToyUtterance& utt,
                                  std::shared_ptr<const PhoneInventory> inv,
                                  const std::string& utt_id) {
  std::vector<double> data;
  data.reserve(utt.frames.size() * inv->size());
  for (const auto& frame : utt.frames) {
    auto p = learner.predict(frame);
    data.insert(data.end(), p.begin(), p.end());
  }
  return PosteriorMatrix(std::move(data),
                         static_cast<int>(utt.frames.size()), std::move(inv),
                         utt_id);
}

namespace {

// Frame-level targets for a phone sequence: expand each phone to its
// nominal frame budget (plus trailing blanks) and resample to T frames.
std::vector<int> expand_to_frames(const std::vector<std::string>& seq,
                                  const PhoneInventory& inv,
                                  int frames_per_phone, int blank_frames,
                                  int total_frames) {
  std::vector<int> expanded;
  for (const auto& label : seq) {
    const int idx = inv.index(label);
    for (int f = 0; f < frames_per_phone; ++f) expanded.push_back(idx);
    for (int f = 0; f < blank_frames; ++f) {
      expanded.push_back(inv.blank_index());
    }
  }
  if (expanded.empty()) expanded.push_back(inv.blank_index());
  std::vector<int> out(total_frames);
  for (int t = 0; t < total_frames; ++t) {
    const std::size_t src = static_cast<std::size_t>(
        static_cast<long double>(t) * expanded.size() / total_frames);
    out[t] = expanded[std::min(src, expanded.size() - 1)];
  }
  return out;
}

struct FrameBatch {
  std::vector<std::vector<double>> xs;
  std::vector<std::vector<double>> targets;
};

void append_frames(FrameBatch& batch, const ToyUtterance& utt,
                   const std::vector<int>& frame_targets, int classes) {
  for (std::size_t t = 0; t < utt.frames.size(); ++t) {
    batch.xs.push_back(utt.frames[t]);
    std::vector<double> onehot(classes, 0.0);
    onehot[frame_targets[t]] = 1.0;
    batch.targets.push_back(std::move(onehot));
  }
}

struct TeacherDecode {
  std::vector<std::string> phones;
  std::vector<double> confidence;
};

TeacherDecode teacher_decode(const Learner& learner, const ToyUtterance& utt,
                             const std::shared_ptr<const PhoneInventory>& inv) {
  TeacherDecode out;
  PosteriorMatrix emissions = learner_emissions(learner, utt, inv, "t");
  const int blank = inv->blank_index();
  for (const auto& run : argmax_runs(emissions)) {
    if (run.label == blank) continue;
    double mean = 0.0;
    for (int t = run.begin; t < run.end; ++t) {
      mean += emissions.row(t)[run.label];
    }
    out.phones.push_back(inv->label(run.label));
    out.confidence.push_back(mean / (run.end - run.begin));
  }
  return out;
}

double heldout_pfer(const Learner& learner, const ToyCorpus& corpus) {
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>
      pairs;
  for (const auto& utt : corpus.heldout) {
    PosteriorMatrix emissions =
        learner_emissions(learner, utt, corpus.inventory, "h");
    pairs.emplace_back(ctc_best_path(emissions), utt.realized);
  }
  return corpus_pfer(pairs, corpus.features, CorpusMode::kMacro);
}

}  // namespace

SelfLearnResult self_learning(const ToyCorpus& corpus,
                              const SelfLearnOptions& opts) {
  if (corpus.labeled.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "labeled set must be non-empty");
  }
  if (opts.rounds < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one round");
  }
  if (corpus.heldout.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "held-out set must be non-empty");
  }
  const int classes = corpus.inventory->size();
  const int dim = static_cast<int>(corpus.labeled.front().frames[0].size());

  // Nominal per-phone frame budget, recovered from the labeled data.
  int frames_per_phone = 1, blank_frames = 0;
  {
    const auto& utt = corpus.labeled.front();
    const int total = static_cast<int>(utt.frames.size());
    const int phones = static_cast<int>(utt.realized.size());
    int blanks = 0;
    for (int l : utt.frame_labels) {
      if (l == corpus.inventory->blank_index()) ++blanks;
    }
    blank_frames = blanks / phones;
    frames_per_phone = (total - blanks) / phones;
  }

  FrameBatch labeled_batch;
  for (const auto& utt : corpus.labeled) {
    append_frames(labeled_batch, utt, utt.frame_labels, classes);
  }

  SelfLearnResult result;
  Learner f0(classes, dim);
  train_learner(f0, labeled_batch.xs, labeled_batch.targets, opts.train_steps,
                opts.train_rate);
  result.models.push_back(f0);
  result.heldout_pfer.push_back(heldout_pfer(f0, corpus));

  for (int round = 0; round < opts.rounds; ++round) {
    const Learner& teacher = result.models.back();
    FrameBatch batch;
    if (opts.mix_labeled) batch = labeled_batch;
    std::vector<std::vector<std::string>> labels_this_round;
    for (const auto& utt : corpus.transcript_only) {
      std::vector<std::string> pseudo;
      switch (opts.mode) {
        case CorrectorMode::kCanonicalOnly:
          pseudo = utt.canonical;
          break;
        case CorrectorMode::kTeacherOnly: {
          pseudo = teacher_decode(teacher, utt, corpus.inventory).phones;
          break;
        }
        case CorrectorMode::kAlignMerge: {
          TeacherDecode t = teacher_decode(teacher, utt, corpus.inventory);
          pseudo = align_correct(utt.canonical, t.phones, t.confidence,
                                 opts.threshold);
          break;
        }
      }
      auto frame_targets = expand_to_frames(
          pseudo, *corpus.inventory, frames_per_phone, blank_frames,
          static_cast<int>(utt.frames.size()));
      append_frames(batch, utt, frame_targets, classes);
      labels_this_round.push_back(std::move(pseudo));
    }
    Learner next(classes, dim);
    train_learner(next, batch.xs, batch.targets, opts.train_steps,
                  opts.train_rate);
    result.models.push_back(next);
    result.heldout_pfer.push_back(heldout_pfer(next, corpus));
    result.round_labels.push_back(std::move(labels_this_round));
  }
  return result;
}

}  // namespace huper
