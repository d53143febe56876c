// tools/fixture_gen.cc

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
//
// Regenerates the static test fixtures under tests/fixtures. Deterministic:
// rerunning produces identical bytes.

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "huper/cli/io.h"
#include "huper/emissions.h"
#include "tests/support/synthetic_corpus.h"

namespace {

using namespace huper;
namespace ts = huper::testsupport;

// Compact ARPAbet-style inventory: blank + 41 phones.
const char* kArpabet42[] = {
    "<blk>", "AA", "AE", "AH", "AO", "AW", "AX", "AY", "B",  "CH", "D",
    "DH",    "DX", "EH", "ER", "EY", "F",  "G",  "HH", "IH", "IY", "JH",
    "K",     "L",  "M",  "N",  "NG", "OW", "OY", "P",  "R",  "S",  "SH",
    "T",     "TH", "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH"};

std::string render_features(const std::vector<std::string>& labels,
                            const FeatureTable& table) {
  std::ostringstream out;
  for (const auto& label : labels) {
    if (label == kBlankLabel) continue;
    out << label << ' ';
    const auto& v = table.features(label);
    for (int i = 0; i < kFeatureDim; ++i) {
      if (i) out << ',';
      out << static_cast<int>(v[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string render_lexicon(const Lexicon& lex) {
  std::ostringstream out;
  for (const auto& e : lex.entries) {
    out << e.word << '\t';
    for (std::size_t i = 0; i < e.phones.size(); ++i) {
      if (i) out << ' ';
      out << e.phones[i];
    }
    out << '\n';
  }
  return out.str();
}

std::string render_arpa(const NgramTable& lm) {
  std::ostringstream out;
  out << "\\data\\\n";
  out << "ngram 1=" << lm.unigrams.size() << '\n';
  out << "ngram 2=" << lm.bigrams.size() << "\n\n";
  out << "\\1-grams:\n";
  char buf[64];
  for (const auto& u : lm.unigrams) {
    std::snprintf(buf, sizeof(buf), "%.5f %s %.5f", u.log10_prob,
                  u.word.c_str(), u.log10_backoff);
    out << buf << '\n';
  }
  out << "\n\\2-grams:\n";
  for (const auto& b : lm.bigrams) {
    std::snprintf(buf, sizeof(buf), "%.5f %s %s", b.log10_prob,
                  b.first.c_str(), b.second.c_str());
    out << buf << '\n';
  }
  out << "\n\\end\\\n";
  return out.str();
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out.push_back(' ');
    out += v[i];
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string root = argc > 1 ? argv[1] : "tests/fixtures";
  std::filesystem::create_directories(root);
  std::filesystem::create_directories(root + "/toy");

  // 42-symbol inventory plus deterministic random features for it.
  {
    std::ostringstream out;
    std::vector<std::string> labels;
    for (int i = 0; i < 42; ++i) {
      out << i << ' ' << kArpabet42[i] << '\n';
      labels.push_back(kArpabet42[i]);
    }
    write_file(root + "/symbols42.txt", out.str());
    PhoneInventory inv(labels, 0);
    write_file(root + "/features42.txt",
               render_features(labels, ts::toy_features(inv, 42)));
  }

  // Toy decode corpus: inventory, features, lexicon, LM, posteriors,
  // references.
  auto inv = ts::toy_inventory();
  write_file(root + "/toy/symbols.txt", render_inventory(*inv));
  write_file(root + "/toy/features.txt",
             render_features(inv->labels(), ts::toy_features(*inv, 11)));
  Lexicon lex = ts::toy_lexicon();
  write_file(root + "/toy/lexicon.txt", render_lexicon(lex));
  write_file(root + "/toy/lm.arpa", render_arpa(ts::toy_ngram()));

  struct Utt {
    const char* id;
    std::vector<std::string> words;
    std::vector<std::string> realized;
    double noise;
    bool has_reference;
  };
  std::vector<Utt> utts = {
      {"u001", {"bean", "seat"}, {"B", "IY", "N", "S", "IY", "T"}, 0.05,
       false},
      {"u002", {"deal", "sun"}, {"D", "IY", "L", "S", "AH", "N"}, 0.35,
       false},
      {"u003", {"keen", "tan"}, {"K", "IY", "N", "T", "AH", "N"}, 0.82, true},
      {"u004", {"bean", "beet"}, {"B", "IY", "N", "B", "IY", "T"}, 0.45,
       false},
      // Dysfluent: "sun seat" realized with a deleted S and a repeated IY.
      {"u005", {"sun", "seat"}, {"S", "AH", "N", "IY", "IY", "T"}, 0.80,
       true},
  };
  std::mt19937_64 rng(2026);
  std::ostringstream posteriors, ref_words, ref_phones, diag_pairs,
      ctc_labels;
  for (std::size_t i = 0; i < utts.size(); ++i) {
    const auto& u = utts[i];
    ts::TraceOptions opts;
    opts.noise = u.noise;
    PosteriorMatrix p =
        ts::trace_posteriors(u.realized, inv, opts, rng, u.id);
    if (i) posteriors << "---\n";
    posteriors << save_posteriors(p);
    if (u.has_reference) ref_words << u.id << '\t' << join(u.words) << '\n';
    ref_phones << u.id << '\t' << join(u.realized) << '\n';
    ctc_labels << u.id << '\t' << join(u.realized) << '\n';
    // Canonical vs realized contrast for the emission diagnostic.
    std::vector<std::string> canonical;
    for (const auto& w : u.words) {
      auto pron = lex.pronunciations(w).front();
      canonical.insert(canonical.end(), pron.begin(), pron.end());
    }
    diag_pairs << u.id << "\tfixture\t" << join(canonical) << '\t'
               << join(u.realized) << '\n';
  }
  write_file(root + "/toy/posteriors.post", posteriors.str());
  write_file(root + "/toy/references.txt", ref_words.str());
  write_file(root + "/toy/ref_phones.txt", ref_phones.str());
  write_file(root + "/toy/diag_pairs.txt", diag_pairs.str());
  write_file(root + "/toy/ctc_labels.txt", ctc_labels.str());

  // A small single-utterance posterior file for the round-trip test.
  {
    ts::TraceOptions opts;
    opts.noise = 0.3;
    opts.frames_per_phone = 1;
    opts.blank_frames = 0;
    PosteriorMatrix p =
        ts::trace_posteriors({"B", "IY", "N"}, inv, opts, rng, "rt");
    write_file(root + "/toy/roundtrip.post", save_posteriors(p));
  }

  // Pipeline config exercising the full decode path.
  {
    std::ostringstream cfg;
    cfg << "posteriors=posteriors.post\n"
        << "symbols=symbols.txt\n"
        << "features=features.txt\n"
        << "lexicon=lexicon.txt\n"
        << "lm=lm.arpa\n"
        << "references=references.txt\n"
        << "ref-phones=ref_phones.txt\n"
        << "tau=0.573\n"
        << "topk=2\n"
        << "skip-arcs=1\n"
        << "seed=2026\n";
    write_file(root + "/toy/pipeline.conf", cfg.str());
  }
  std::printf("fixtures written under %s\n", root.c_str());
  return 0;
}
