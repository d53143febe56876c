// graphs.cc

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

#include "huper/graphs.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "huper/text_util.h"

namespace huper {

Wfst lattice_from_posteriors(const PosteriorMatrix& p, int top_k, bool skip,
                             std::shared_ptr<const SymbolTable> phone_syms) {
  const PhoneInventory& inv = p.inventory();
  if (top_k < 1 || top_k > inv.size() - 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "top_k must be in 1..V-1, got " + std::to_string(top_k));
  }
  if (!phone_syms) phone_syms = SymbolTable::from_inventory(inv);
  const int blank = inv.blank_index();

  Wfst f;
  f.isyms = phone_syms;
  f.osyms = phone_syms;
  f.add_state();
  f.start = 0;
  int cur = 0;
  for (const auto& run : argmax_runs(p)) {
    if (run.label == blank) continue;
    std::vector<double> mean(inv.size(), 0.0);
    for (int t = run.begin; t < run.end; ++t) {
      auto row = p.row(t);
      for (int v = 0; v < inv.size(); ++v) mean[v] += row[v];
    }
    for (auto& m : mean) m /= (run.end - run.begin);
    std::vector<int> order;
    for (int v = 0; v < inv.size(); ++v) {
      if (v != blank) order.push_back(v);
    }
    std::stable_sort(order.begin(), order.end(), [&mean](int a, int b) {
      return mean[a] > mean[b];
    });
    int next = f.add_state();
    for (int k = 0; k < top_k; ++k) {
      const int v = order[k];
      const int sym = phone_syms->find(inv.label(v));
      f.add_arc(cur,
                {sym, sym, -std::log(std::max(mean[v], kProbFloor)), next});
    }
    if (skip) {
      f.add_arc(cur, {kEps, kEps,
                      -std::log(std::max(mean[blank], kProbFloor)), next});
    }
    cur = next;
  }
  f.set_final(cur, 0.0);
  return f;
}

std::vector<std::vector<std::string>> Lexicon::pronunciations(
    const std::string& word) const {
  std::vector<std::vector<std::string>> out;
  for (const auto& e : entries) {
    if (e.word == word) out.push_back(e.phones);
  }
  return out;
}

bool Lexicon::has(const std::string& word) const {
  for (const auto& e : entries) {
    if (e.word == word) return true;
  }
  return false;
}

Lexicon parse_lexicon(const std::string& text) {
  Lexicon lex;
  int line_no = 0;
  for (const auto& raw : split_lines(text)) {
    ++line_no;
    std::string line = strip(raw);
    if (line.empty() || line[0] == '#') continue;
    auto tab = raw.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kParse,
                  "lexicon line " + std::to_string(line_no) +
                      ": expected '<word>\\t<phones>'");
    }
    LexiconEntry entry;
    entry.word = strip(raw.substr(0, tab));
    entry.phones = split_ws(raw.substr(tab + 1));
    if (entry.word.empty()) {
      throw Error(ErrorCode::kParse,
                  "lexicon line " + std::to_string(line_no) + ": empty word");
    }
    if (entry.phones.empty()) {
      throw Error(ErrorCode::kEmptyPronunciation,
                  "empty pronunciation for word " + entry.word);
    }
    lex.entries.push_back(std::move(entry));
  }
  return lex;
}

std::shared_ptr<const SymbolTable> word_table(
    const Lexicon& lex, const std::vector<std::string>& extra_words) {
  auto table = std::make_shared<SymbolTable>();
  for (const auto& e : lex.entries) table->add(e.word);
  for (const auto& w : extra_words) table->add(w);
  return table;
}

Wfst compile_lexicon(const Lexicon& lex,
                     std::shared_ptr<const SymbolTable> phone_syms,
                     std::shared_ptr<const SymbolTable> word_syms) {
  Wfst f;
  f.isyms = phone_syms;
  f.osyms = word_syms;
  f.add_state();
  f.start = 0;
  f.set_final(0, 0.0);
  for (const auto& entry : lex.entries) {
    if (entry.phones.empty()) {
      throw Error(ErrorCode::kEmptyPronunciation,
                  "empty pronunciation for word " + entry.word);
    }
    const int word_id = word_syms->find(entry.word);
    int cur = 0;
    const int n = static_cast<int>(entry.phones.size());
    for (int i = 0; i < n; ++i) {
      if (entry.phones[i] == kBlankLabel) {
        throw Error(ErrorCode::kInvalidArgument,
                    "pronunciations may not contain the blank symbol");
      }
      const int phone_id = phone_syms->find(entry.phones[i]);
      const bool last = (i == n - 1);
      const int next = last ? 0 : f.add_state();
      f.add_arc(cur, {phone_id, last ? word_id : kEps, 0.0, next});
      cur = next;
    }
  }
  return f;
}

namespace {

constexpr double kLn10 = 2.302585092994045684;

enum class ArpaSection { kPreamble, kData, kUnigrams, kBigrams, kDone };

}  // namespace

NgramTable parse_arpa(const std::string& text) {
  NgramTable lm;
  ArpaSection section = ArpaSection::kPreamble;
  long want_uni = -1, want_bi = 0;
  for (const auto& raw : split_lines(text)) {
    std::string line = strip(raw);
    if (line.empty()) continue;
    if (line == "\\data\\") {
      section = ArpaSection::kData;
      continue;
    }
    if (line == "\\1-grams:") {
      section = ArpaSection::kUnigrams;
      continue;
    }
    if (line == "\\2-grams:") {
      section = ArpaSection::kBigrams;
      continue;
    }
    if (line == "\\end\\") {
      section = ArpaSection::kDone;
      continue;
    }
    switch (section) {
      case ArpaSection::kPreamble:
        throw Error(ErrorCode::kMalformedLm,
                    "content before \\data\\: " + line);
      case ArpaSection::kData: {
        auto fields = split_ws(line);
        if (fields.size() != 2 || fields[0] != "ngram") {
          throw Error(ErrorCode::kMalformedLm, "bad \\data\\ line: " + line);
        }
        auto eq = fields[1].find('=');
        if (eq == std::string::npos) {
          throw Error(ErrorCode::kMalformedLm, "bad \\data\\ line: " + line);
        }
        int order = parse_int(fields[1].substr(0, eq), "ngram order");
        long count = parse_int(fields[1].substr(eq + 1), "ngram count");
        if (order == 1) {
          want_uni = count;
        } else if (order == 2) {
          want_bi = count;
        } else {
          throw Error(ErrorCode::kMalformedLm,
                      "only unigram+bigram tables are supported");
        }
        break;
      }
      case ArpaSection::kUnigrams: {
        auto fields = split_ws(line);
        if (fields.size() != 2 && fields.size() != 3) {
          throw Error(ErrorCode::kMalformedLm, "bad unigram line: " + line);
        }
        NgramTable::Unigram u;
        u.log10_prob = parse_double(fields[0], "unigram log10 prob");
        u.word = fields[1];
        if (fields.size() == 3) {
          u.log10_backoff = parse_double(fields[2], "backoff weight");
        }
        if (u.log10_prob > 0.0) {
          throw Error(ErrorCode::kMalformedLm,
                      "unigram probability above one: " + line);
        }
        lm.unigrams.push_back(std::move(u));
        break;
      }
      case ArpaSection::kBigrams: {
        auto fields = split_ws(line);
        if (fields.size() != 3) {
          throw Error(ErrorCode::kMalformedLm, "bad bigram line: " + line);
        }
        NgramTable::Bigram b;
        b.log10_prob = parse_double(fields[0], "bigram log10 prob");
        b.first = fields[1];
        b.second = fields[2];
        if (b.log10_prob > 0.0) {
          throw Error(ErrorCode::kMalformedLm,
                      "bigram probability above one: " + line);
        }
        lm.bigrams.push_back(std::move(b));
        break;
      }
      case ArpaSection::kDone:
        throw Error(ErrorCode::kMalformedLm, "content after \\end\\");
    }
  }
  if (want_uni < 0) {
    throw Error(ErrorCode::kMalformedLm, "missing \\data\\ section");
  }
  if (static_cast<long>(lm.unigrams.size()) != want_uni ||
      static_cast<long>(lm.bigrams.size()) != want_bi) {
    throw Error(ErrorCode::kMalformedLm,
                "\\data\\ counts do not match section contents");
  }
  std::unordered_map<std::string, int> seen;
  for (const auto& u : lm.unigrams) {
    if (!seen.emplace(u.word, 1).second) {
      throw Error(ErrorCode::kMalformedLm, "duplicate unigram: " + u.word);
    }
  }
  for (const auto& b : lm.bigrams) {
    if (!seen.count(b.first) || !seen.count(b.second)) {
      throw Error(ErrorCode::kMalformedLm,
                  "bigram over word without a unigram: " + b.first + " " +
                      b.second);
    }
  }
  return lm;
}

Wfst compile_ngram_acceptor(const NgramTable& lm,
                            std::shared_ptr<const SymbolTable> word_syms) {
  Wfst f;
  f.isyms = word_syms;
  f.osyms = word_syms;
  f.add_state();  // state 0: backoff context, also the start
  f.start = 0;
  f.set_final(0, 0.0);
  std::unordered_map<std::string, int> context;
  auto cost = [](double log10p) {
    return std::max(0.0, -log10p * kLn10);
  };
  for (const auto& u : lm.unigrams) {
    int state = f.add_state();
    context[u.word] = state;
    f.set_final(state, 0.0);
  }
  for (const auto& u : lm.unigrams) {
    int wid;
    try {
      wid = word_syms->find(u.word);
    } catch (const Error&) {
      throw Error(ErrorCode::kOovWord,
                  "LM word missing from the word table: " + u.word);
    }
    const int state = context[u.word];
    f.add_arc(0, {wid, wid, cost(u.log10_prob), state});
    f.add_arc(state, {kEps, kEps, cost(u.log10_backoff), 0});
  }
  for (const auto& b : lm.bigrams) {
    const int wid = word_syms->find(b.second);
    f.add_arc(context[b.first],
              {wid, wid, cost(b.log10_prob), context[b.second]});
  }
  return f;
}

namespace {

// Canonical pronunciation graph: single source/sink DAG of phone arcs.
struct CanonicalGraph {
  struct CArc {
    std::string phone;
    int sym;
    int next;
  };
  std::vector<std::vector<CArc>> states;
  int sink = 0;
  int add_state() {
    states.emplace_back();
    return static_cast<int>(states.size()) - 1;
  }
};

CanonicalGraph build_canonical(const std::vector<std::string>& words,
                               const Lexicon& lex,
                               const SymbolTable& phone_syms,
                               bool use_alt_prons) {
  CanonicalGraph g;
  int join = g.add_state();
  for (const auto& word : words) {
    auto prons = lex.pronunciations(word);
    if (prons.empty()) {
      throw Error(ErrorCode::kOovWord, "word not in lexicon: " + word);
    }
    if (!use_alt_prons) prons.resize(1);
    int next_join = g.add_state();
    for (const auto& pron : prons) {
      int cur = join;
      for (std::size_t i = 0; i < pron.size(); ++i) {
        const int sym = phone_syms.find(pron[i]);
        const bool last = (i + 1 == pron.size());
        const int next = last ? next_join : g.add_state();
        g.states[cur].push_back({pron[i], sym, next});
        cur = next;
      }
    }
    join = next_join;
  }
  g.sink = join;
  return g;
}

}  // namespace

Wfst compile_dysfluent_constraint(
    const std::vector<std::string>& words, const Lexicon& lex,
    const DysfluentPenalties& pen,
    std::shared_ptr<const SymbolTable> phone_syms,
    const FeatureTable* features, bool use_alt_prons) {
  if (words.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "dysfluent constraint needs a non-empty word sequence");
  }
  if (pen.sub_cost < 0 || pen.del_cost < 0 || pen.ins_cost < 0 ||
      pen.rep_cost < 0 || pen.max_consec_ins < 1) {
    throw Error(ErrorCode::kInvalidArgument, "penalties must be nonnegative");
  }
  if (pen.feature_weighted && features == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "feature-weighted substitutions need a feature table");
  }
  CanonicalGraph canon =
      build_canonical(words, lex, *phone_syms, use_alt_prons);

  // Alphabet for substitutions/insertions: every real phone except blank.
  std::vector<int> alphabet;
  for (int id = 1; id < phone_syms->size(); ++id) {
    if (phone_syms->name(id) != kBlankLabel) alphabet.push_back(id);
  }
  auto sub_cost = [&](const std::string& p, const std::string& q) {
    if (pen.feature_weighted) {
      return pen.feature_scale * feature_distance(p, q, *features);
    }
    return pen.sub_cost;
  };

  Wfst f;
  f.isyms = phone_syms;
  f.osyms = phone_syms;
  // State key: (canonical state, consecutive insertions, last consumed
  // phone id or -1). Repeats are self-loops and leave both counters alone.
  const int jmax = pen.max_consec_ins;
  const int last_card = phone_syms->size() + 1;
  auto encode = [&](int cs, int j, int last) {
    return (static_cast<std::int64_t>(cs) * (jmax + 1) + j) * last_card +
           (last + 1);
  };
  std::unordered_map<std::int64_t, int> ids;
  std::deque<std::array<int, 3>> queue;
  auto state_id = [&](int cs, int j, int last) {
    auto k = encode(cs, j, last);
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    int id = f.add_state();
    ids[k] = id;
    queue.push_back({cs, j, last});
    return id;
  };
  f.start = state_id(0, 0, -1);
  while (!queue.empty()) {
    auto [cs, j, last] = queue.front();
    queue.pop_front();
    const int src = ids[encode(cs, j, last)];
    if (last >= 0) {
      f.add_arc(src, {last, last, pen.rep_cost, src});
    }
    if (j < jmax) {
      for (int q : alphabet) {
        f.add_arc(src, {q, q, pen.ins_cost, state_id(cs, j + 1, q)});
      }
    }
    for (const auto& carc : canon.states[cs]) {
      f.add_arc(src, {carc.sym, carc.sym, 0.0, state_id(carc.next, 0,
                                                        carc.sym)});
      for (int q : alphabet) {
        if (q == carc.sym) continue;
        f.add_arc(src, {q, q, sub_cost(carc.phone, phone_syms->name(q)),
                        state_id(carc.next, 0, q)});
      }
      f.add_arc(src, {kEps, kEps, pen.del_cost,
                      state_id(carc.next, 0, -1)});
    }
    if (cs == canon.sink) f.set_final(src, 0.0);
  }
  return f;
}

}  // namespace huper
