// huper/scheduler.h

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

#ifndef HUPER_SCHEDULER_H_
#define HUPER_SCHEDULER_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "huper/graphs.h"
#include "huper/metrics.h"

namespace huper {

// Default switching threshold; tuned on the original evaluation set, so
// treat it as a starting point rather than a universal constant.
inline constexpr double kDefaultTau = 0.573;

struct SchedulerConfig {
  double tau = kDefaultTau;
  int top_k = 1;
  bool skip = false;
  DysfluentPenalties penalties;
  DistortionOptions distortion;
  bool lexicon_alt_prons = false;
};

// Shared read-only decoding resources: one phone/word table pair plus the
// compiled lexicon and grammar machines.
struct DecodingGraphs {
  std::shared_ptr<const SymbolTable> phone_syms;
  std::shared_ptr<const SymbolTable> word_syms;
  Lexicon lexicon;
  Wfst lexicon_fst;
  Wfst grammar_fst;
  const FeatureTable* features = nullptr;  // needed only for feature-weighted
                                           // dysfluent penalties
};

DecodingGraphs build_decoding_graphs(const Lexicon& lex, const NgramTable& lm,
                                     std::shared_ptr<const SymbolTable>
                                         phone_syms,
                                     const FeatureTable* features = nullptr);

enum class Route { kDirect, kRefineWithReference, kRefineWithHypothesis };

const char* route_name(Route r);

struct PerceptionResult {
  std::vector<std::string> phones;
  Route route = Route::kDirect;
  double distortion = 0.0;
  std::optional<std::vector<std::string>> word_hypothesis;
  struct StageCosts {
    std::optional<double> lattice_best;
    std::optional<double> word_decode;
    std::optional<double> refine;
  } costs;
  // Set when a refinement decision could not be completed (empty
  // composition or lexicon gap) and the output fell back to the direct
  // decode. When false, route == kDirect iff distortion <= tau.
  bool fallback = false;
};

// Word decoding through the full constrained search space (lattice, then
// lexicon, then grammar). Throws kEmptyLanguage when no phone path spells
// any word sequence.
std::vector<std::string> decode_words(const PosteriorMatrix& p,
                                      const DecodingGraphs& graphs,
                                      const SchedulerConfig& cfg);

// Distortion-controlled routing: direct lattice decoding at or below tau,
// otherwise dysfluent-constrained refinement around the reference words
// (when given) or the decoded word hypothesis.
PerceptionResult perceive(
    const PosteriorMatrix& p, const DecodingGraphs& graphs,
    const SchedulerConfig& cfg,
    const std::optional<std::vector<std::string>>& reference_words =
        std::nullopt);

using RefineFn =
    std::function<std::vector<std::string>(const PosteriorMatrix&)>;

// Piecewise switch: greedy 1-best at or below tau, refine_fn above it.
std::vector<std::string> switch_decode(const PosteriorMatrix& p, double tau,
                                       const RefineFn& refine_fn,
                                       const DistortionOptions& opts = {});

struct CorpusItem {
  PosteriorMatrix posteriors;
  std::vector<std::string> ref_phones;
  std::optional<std::vector<std::string>> reference_words;
};

struct TauSweepRow {
  double tau = 0.0;
  double pfer = 0.0;
  double refine_rate = 0.0;
};

// Per-utterance route outputs, computed once and thresholded per tau.
struct RouteOutputs {
  double distortion = 0.0;
  std::vector<std::string> direct;
  std::vector<std::string> refined;
  bool fallback = false;
};

RouteOutputs compute_routes(
    const PosteriorMatrix& p, const DecodingGraphs& graphs,
    const SchedulerConfig& cfg,
    const std::optional<std::vector<std::string>>& reference_words);

// Macro PFER of switch_decode plus the refine fraction, per grid value.
std::vector<TauSweepRow> tau_sweep(const std::vector<CorpusItem>& corpus,
                                   const DecodingGraphs& graphs,
                                   const SchedulerConfig& cfg,
                                   const std::vector<double>& grid,
                                   const FeatureTable& table);

}  // namespace huper

#endif  // HUPER_SCHEDULER_H_
