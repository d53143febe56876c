// huper/graphs.h

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

#ifndef HUPER_GRAPHS_H_
#define HUPER_GRAPHS_H_

#include <optional>
#include <string>
#include <vector>

#include "huper/emissions.h"
#include "huper/fst.h"

namespace huper {

// Confusion-network style phone lattice. Frames are segmented by greedy CTC
// (maximal argmax runs; blank runs delimit segments); each segment carries
// the top_k non-blank alternatives weighted -log(mean in-segment posterior)
// and, with skip=true, an epsilon arc weighted -log(mean blank posterior).
// With top_k=1 and skip=false the best path is exactly ctc_best_path(P).
Wfst lattice_from_posteriors(
    const PosteriorMatrix& p, int top_k, bool skip,
    std::shared_ptr<const SymbolTable> phone_syms = nullptr);

struct LexiconEntry {
  std::string word;
  std::vector<std::string> phones;
};

struct Lexicon {
  std::vector<LexiconEntry> entries;  // file order; repeats = alternatives
  // First-listed pronunciation of a word, in entry order.
  std::vector<std::vector<std::string>> pronunciations(
      const std::string& word) const;
  bool has(const std::string& word) const;
};

// "<word>\t<phone phone ...>" per line; repeated words add pronunciations.
Lexicon parse_lexicon(const std::string& text);

// Word symbol table over lexicon words (entry order) plus any extra names.
std::shared_ptr<const SymbolTable> word_table(
    const Lexicon& lex, const std::vector<std::string>& extra_words = {});

// Closed phone-to-word transducer: each pronunciation is a chain emitting
// its word id on the last arc and returning to the shared start state, so
// any concatenation of pronunciations is accepted at weight 0.
Wfst compile_lexicon(const Lexicon& lex,
                     std::shared_ptr<const SymbolTable> phone_syms,
                     std::shared_ptr<const SymbolTable> word_syms);

// Unigram+bigram table with base-10 log probabilities (ARPA convention).
struct NgramTable {
  struct Unigram {
    double log10_prob;
    std::string word;
    double log10_backoff = 0.0;
  };
  struct Bigram {
    double log10_prob;
    std::string first;
    std::string second;
  };
  std::vector<Unigram> unigrams;
  std::vector<Bigram> bigrams;
};

// ARPA subset: \data\ counts, \1-grams:, \2-grams:, \end\. Positive log10
// probabilities and bigrams over words lacking unigrams are rejected.
NgramTable parse_arpa(const std::string& text);

// Standard backoff topology: a backoff state plus one state per unigram
// context; arc weight -ln(10^log10p) clipped at 0; backoff arcs are
// epsilon-labeled. Every state is final at weight 0.
Wfst compile_ngram_acceptor(const NgramTable& lm,
                            std::shared_ptr<const SymbolTable> word_syms);

struct DysfluentPenalties {
  double sub_cost = 1.0;
  double del_cost = 1.0;
  double ins_cost = 1.5;
  double rep_cost = 0.5;
  int max_consec_ins = 3;
  // When set, substitutions cost feature_scale * feature_distance(p, q)
  // instead of the flat sub_cost.
  bool feature_weighted = false;
  double feature_scale = 4.0;
};

// Phone-space constraint around the canonical pronunciation of U. Accepts
// the canonical string at cost 0; per-position substitutions, deletions,
// bounded runs of insertions, and immediate repeats of the just-consumed
// phone at the configured penalties. Repeats do not advance the canonical
// position and do not count against the insertion bound. A deletion breaks
// repeat adjacency. With use_alt_prons, every listed pronunciation of each
// word enters as a zero-cost parallel chain.
Wfst compile_dysfluent_constraint(
    const std::vector<std::string>& words, const Lexicon& lex,
    const DysfluentPenalties& pen,
    std::shared_ptr<const SymbolTable> phone_syms,
    const FeatureTable* features = nullptr, bool use_alt_prons = false);

}  // namespace huper

#endif  // HUPER_GRAPHS_H_
