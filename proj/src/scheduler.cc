// scheduler.cc

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

#include "huper/scheduler.h"

#include <algorithm>

namespace huper {

const char* route_name(Route r) {
  switch (r) {
    case Route::kDirect:
      return "Direct";
    case Route::kRefineWithReference:
      return "RefineWithReference";
    case Route::kRefineWithHypothesis:
      return "RefineWithHypothesis";
  }
  return "?";
}

DecodingGraphs build_decoding_graphs(
    const Lexicon& lex, const NgramTable& lm,
    std::shared_ptr<const SymbolTable> phone_syms,
    const FeatureTable* features) {
  DecodingGraphs g;
  g.phone_syms = phone_syms;
  std::vector<std::string> lm_words;
  for (const auto& u : lm.unigrams) lm_words.push_back(u.word);
  g.word_syms = word_table(lex, lm_words);
  g.lexicon = lex;
  g.lexicon_fst = compile_lexicon(lex, phone_syms, g.word_syms);
  g.grammar_fst = compile_ngram_acceptor(lm, g.word_syms);
  g.features = features;
  return g;
}

namespace {

struct DirectDecode {
  std::vector<std::string> phones;
  double cost = 0.0;
};

DirectDecode direct_decode(const Wfst& lattice, const DecodingGraphs& graphs) {
  DecodePath path = shortest_path(lattice);
  return {render_labels(path.ilabels, *graphs.phone_syms), path.cost};
}

struct WordDecode {
  std::vector<std::string> words;
  double cost = 0.0;
};

WordDecode word_decode(const Wfst& lattice, const DecodingGraphs& graphs) {
  Wfst search = compose(compose(lattice, graphs.lexicon_fst),
                        graphs.grammar_fst);
  DecodePath path = shortest_path(search);
  return {render_labels(path.olabels, *graphs.word_syms), path.cost};
}

struct RefineDecode {
  std::vector<std::string> phones;
  double cost = 0.0;
};

RefineDecode refine_decode(const Wfst& lattice,
                           const std::vector<std::string>& guide_words,
                           const DecodingGraphs& graphs,
                           const SchedulerConfig& cfg) {
  Wfst constraint = compile_dysfluent_constraint(
      guide_words, graphs.lexicon, cfg.penalties, graphs.phone_syms,
      graphs.features, cfg.lexicon_alt_prons);
  DecodePath path = shortest_path(compose(lattice, constraint));
  return {render_labels(path.olabels, *graphs.phone_syms), path.cost};
}

bool is_refine_miss(const Error& e) {
  return e.code() == ErrorCode::kEmptyLanguage ||
         e.code() == ErrorCode::kOovWord;
}

}  // namespace

std::vector<std::string> decode_words(const PosteriorMatrix& p,
                                      const DecodingGraphs& graphs,
                                      const SchedulerConfig& cfg) {
  Wfst lattice =
      lattice_from_posteriors(p, cfg.top_k, cfg.skip, graphs.phone_syms);
  return word_decode(lattice, graphs).words;
}

PerceptionResult perceive(
    const PosteriorMatrix& p, const DecodingGraphs& graphs,
    const SchedulerConfig& cfg,
    const std::optional<std::vector<std::string>>& reference_words) {
  PerceptionResult result;
  // The routing signal is computed from the raw posteriors before any
  // route-specific work.
  result.distortion = utterance_distortion(p, cfg.distortion).score;
  Wfst lattice =
      lattice_from_posteriors(p, cfg.top_k, cfg.skip, graphs.phone_syms);

  if (result.distortion <= cfg.tau) {
    DirectDecode direct = direct_decode(lattice, graphs);
    result.phones = std::move(direct.phones);
    result.costs.lattice_best = direct.cost;
    result.route = Route::kDirect;
    return result;
  }

  std::vector<std::string> guide;
  if (reference_words.has_value()) {
    guide = *reference_words;
    result.route = Route::kRefineWithReference;
  } else {
    try {
      WordDecode hyp = word_decode(lattice, graphs);
      result.costs.word_decode = hyp.cost;
      result.word_hypothesis = hyp.words;
      guide = std::move(hyp.words);
      result.route = Route::kRefineWithHypothesis;
    } catch (const Error& e) {
      if (!is_refine_miss(e)) throw;
      guide.clear();
    }
  }
  if (!guide.empty()) {
    try {
      RefineDecode refined = refine_decode(lattice, guide, graphs, cfg);
      result.phones = std::move(refined.phones);
      result.costs.refine = refined.cost;
      return result;
    } catch (const Error& e) {
      if (!is_refine_miss(e)) throw;
    }
  }
  // Refinement could not produce a path; keep the pipeline alive on the
  // direct decode and flag the degradation.
  DirectDecode direct = direct_decode(lattice, graphs);
  result.phones = std::move(direct.phones);
  result.costs.lattice_best = direct.cost;
  result.route = Route::kDirect;
  result.word_hypothesis.reset();
  result.fallback = true;
  return result;
}

std::vector<std::string> switch_decode(const PosteriorMatrix& p, double tau,
                                       const RefineFn& refine_fn,
                                       const DistortionOptions& opts) {
  const double s = utterance_distortion(p, opts).score;
  if (s <= tau) return ctc_best_path(p);
  return refine_fn(p);
}

RouteOutputs compute_routes(
    const PosteriorMatrix& p, const DecodingGraphs& graphs,
    const SchedulerConfig& cfg,
    const std::optional<std::vector<std::string>>& reference_words) {
  RouteOutputs out;
  out.distortion = utterance_distortion(p, cfg.distortion).score;
  out.direct = ctc_best_path(p);
  Wfst lattice =
      lattice_from_posteriors(p, cfg.top_k, cfg.skip, graphs.phone_syms);
  std::vector<std::string> guide;
  if (reference_words.has_value()) {
    guide = *reference_words;
  } else {
    try {
      guide = word_decode(lattice, graphs).words;
    } catch (const Error& e) {
      if (!is_refine_miss(e)) throw;
    }
  }
  if (!guide.empty()) {
    try {
      out.refined = refine_decode(lattice, guide, graphs, cfg).phones;
      return out;
    } catch (const Error& e) {
      if (!is_refine_miss(e)) throw;
    }
  }
  out.refined = out.direct;
  out.fallback = true;
  return out;
}

std::vector<TauSweepRow> tau_sweep(const std::vector<CorpusItem>& corpus,
                                   const DecodingGraphs& graphs,
                                   const SchedulerConfig& cfg,
                                   const std::vector<double>& grid,
                                   const FeatureTable& table) {
  if (corpus.empty() || grid.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "tau_sweep needs a non-empty corpus and grid");
  }
  struct PerUtt {
    double s;
    double pfer_direct;
    double pfer_refined;
  };
  std::vector<PerUtt> rows;
  rows.reserve(corpus.size());
  for (const auto& item : corpus) {
    RouteOutputs r =
        compute_routes(item.posteriors, graphs, cfg, item.reference_words);
    rows.push_back({r.distortion,
                    pfer(r.direct, item.ref_phones, table).pfer,
                    pfer(r.refined, item.ref_phones, table).pfer});
  }
  std::vector<TauSweepRow> table_out;
  table_out.reserve(grid.size());
  for (double tau : grid) {
    double sum = 0.0;
    long refined = 0;
    for (const auto& row : rows) {
      if (row.s <= tau) {
        sum += row.pfer_direct;
      } else {
        sum += row.pfer_refined;
        ++refined;
      }
    }
    table_out.push_back({tau, sum / static_cast<double>(rows.size()),
                         static_cast<double>(refined) /
                             static_cast<double>(rows.size())});
  }
  return table_out;
}

}  // namespace huper
