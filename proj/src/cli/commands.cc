// cli/commands.cc

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

#include "huper/cli/commands.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "huper/drrc.h"
#include "huper/selflearn.h"
#include "huper/text_util.h"

namespace huper {

namespace {

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::shared_ptr<const PhoneInventory> load_inventory_file(InputSet& inputs,
                                                          const std::string&
                                                              path) {
  if (path.empty()) {
    throw Error(ErrorCode::kConfigError, "missing required input: symbols");
  }
  return std::make_shared<PhoneInventory>(load_inventory(inputs.read(path)));
}

std::vector<PosteriorMatrix> load_corpus(
    InputSet& inputs, const std::string& path,
    std::shared_ptr<const PhoneInventory> inv) {
  if (path.empty()) {
    throw Error(ErrorCode::kConfigError, "missing required input: posteriors");
  }
  return load_posterior_archive(inputs.read(path), std::move(inv));
}

std::map<std::string, std::vector<std::string>> transcript_map(
    const TranscriptLines& lines) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& [id, tokens] : lines) {
    if (!out.emplace(id, tokens).second) {
      throw Error(ErrorCode::kIdMismatch, "duplicate utterance id: " + id);
    }
  }
  return out;
}

struct GraphBundle {
  std::shared_ptr<const SymbolTable> phone_syms;
  DecodingGraphs graphs;
  FeatureTable features;  // populated only when cfg.features is set
  bool have_features = false;
};

GraphBundle load_graphs(InputSet& inputs, const PipelineConfig& cfg,
                        const PhoneInventory& inv) {
  GraphBundle bundle;
  bundle.phone_syms = SymbolTable::from_inventory(inv);
  if (cfg.lexicon.empty() || cfg.lm.empty()) {
    throw Error(ErrorCode::kConfigError,
                "this command needs both --lexicon and --lm");
  }
  Lexicon lex = parse_lexicon(inputs.read(cfg.lexicon));
  NgramTable lm = parse_arpa(inputs.read(cfg.lm));
  if (!cfg.features.empty()) {
    bundle.features = load_feature_table(inputs.read(cfg.features));
    bundle.have_features = true;
  }
  if (cfg.feature_weighted && !bundle.have_features) {
    throw Error(ErrorCode::kConfigError,
                "feature-weighted penalties need --features");
  }
  bundle.graphs = build_decoding_graphs(
      lex, lm, bundle.phone_syms,
      bundle.have_features ? &bundle.features : nullptr);
  return bundle;
}

}  // namespace

CommandResult cmd_decode_1best(const PipelineConfig& cfg) {
  CommandResult result;
  auto inv = load_inventory_file(result.inputs, cfg.symbols);
  auto corpus = load_corpus(result.inputs, cfg.posteriors, inv);
  DistortionOptions opts{cfg.exclude_blank};
  auto lines = parallel_map(cfg.jobs, corpus.size(), [&](std::size_t i) {
    const auto& p = corpus[i];
    const double s = utterance_distortion(p, opts).score;
    return p.utt_id() + "\tDirect\t" + fixed6(s) + "\t" +
           join(ctc_best_path(p)) + "\n";
  });
  for (auto& line : lines) result.output += line;
  return result;
}

CommandResult cmd_decode_perceiver(const PipelineConfig& cfg) {
  CommandResult result;
  auto inv = load_inventory_file(result.inputs, cfg.symbols);
  GraphBundle bundle = load_graphs(result.inputs, cfg, *inv);
  auto corpus = load_corpus(result.inputs, cfg.posteriors, inv);
  const SchedulerConfig sched = cfg.scheduler();
  std::atomic<int> misses{0};
  auto lines = parallel_map(cfg.jobs, corpus.size(), [&](std::size_t i) {
    const auto& p = corpus[i];
    try {
      return p.utt_id() + "\t" + join(decode_words(p, bundle.graphs, sched)) +
             "\n";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyLanguage) throw;
      misses.fetch_add(1);
      return p.utt_id() + "\t\n";
    }
  });
  for (auto& line : lines) result.output += line;
  result.exit_code = misses.load() > 0 ? 2 : 0;
  return result;
}

CommandResult cmd_schedule(const PipelineConfig& cfg) {
  CommandResult result;
  auto inv = load_inventory_file(result.inputs, cfg.symbols);
  GraphBundle bundle = load_graphs(result.inputs, cfg, *inv);
  auto corpus = load_corpus(result.inputs, cfg.posteriors, inv);
  std::map<std::string, std::vector<std::string>> references;
  if (!cfg.references.empty()) {
    references =
        transcript_map(parse_transcripts(result.inputs.read(cfg.references)));
  }
  const SchedulerConfig sched = cfg.scheduler();
  std::atomic<int> fallbacks{0};
  auto lines = parallel_map(cfg.jobs, corpus.size(), [&](std::size_t i) {
    const auto& p = corpus[i];
    std::optional<std::vector<std::string>> ref;
    auto it = references.find(p.utt_id());
    if (it != references.end()) ref = it->second;
    PerceptionResult r = perceive(p, bundle.graphs, sched, ref);
    if (r.fallback) fallbacks.fetch_add(1);
    return p.utt_id() + "\t" + route_name(r.route) + "\t" +
           fixed6(r.distortion) + "\t" + join(r.phones) + "\n";
  });
  for (auto& line : lines) result.output += line;
  result.exit_code = fallbacks.load() > 0 ? 2 : 0;
  return result;
}

CommandResult cmd_tau_sweep(const PipelineConfig& cfg,
                            const TauSweepArgs& args) {
  CommandResult result;
  auto inv = load_inventory_file(result.inputs, cfg.symbols);
  GraphBundle bundle = load_graphs(result.inputs, cfg, *inv);
  if (!bundle.have_features) {
    throw Error(ErrorCode::kConfigError, "tau-sweep needs --features");
  }
  auto corpus = load_corpus(result.inputs, cfg.posteriors, inv);
  if (cfg.ref_phones.empty()) {
    throw Error(ErrorCode::kConfigError, "tau-sweep needs --ref-phones");
  }
  auto refs =
      transcript_map(parse_transcripts(result.inputs.read(cfg.ref_phones)));
  std::map<std::string, std::vector<std::string>> ref_words;
  if (!cfg.references.empty()) {
    ref_words =
        transcript_map(parse_transcripts(result.inputs.read(cfg.references)));
  }
  std::vector<CorpusItem> items;
  for (auto& p : corpus) {
    auto it = refs.find(p.utt_id());
    if (it == refs.end()) {
      throw Error(ErrorCode::kIdMismatch,
                  "no reference phones for utterance " + p.utt_id());
    }
    CorpusItem item{std::move(p), it->second, std::nullopt};
    auto rw = ref_words.find(item.posteriors.utt_id());
    if (rw != ref_words.end()) item.reference_words = rw->second;
    items.push_back(std::move(item));
  }
  auto rows = tau_sweep(items, bundle.graphs, cfg.scheduler(),
                        parse_grid(args.grid), bundle.features);
  result.output = "tau,pfer,refine_rate\n";
  for (const auto& row : rows) {
    result.output += fixed6(row.tau) + "," + fixed6(row.pfer) + "," +
                     fixed6(row.refine_rate) + "\n";
  }
  return result;
}

CommandResult cmd_pfer(const PipelineConfig& cfg, const PferArgs& args) {
  CommandResult result;
  if (args.hyp.empty() || args.ref.empty() || cfg.features.empty()) {
    throw Error(ErrorCode::kConfigError,
                "pfer needs --hyp, --ref and --features");
  }
  FeatureTable table = load_feature_table(result.inputs.read(cfg.features));
  auto hyp_lines = parse_transcripts(result.inputs.read(args.hyp));
  auto ref_lines = parse_transcripts(result.inputs.read(args.ref));
  LabelMapping mapping;
  bool have_mapping = false;
  if (!cfg.mapping.empty()) {
    if (cfg.symbols.empty()) {
      throw Error(ErrorCode::kConfigError, "--mapping needs --symbols");
    }
    auto inv = load_inventory_file(result.inputs, cfg.symbols);
    mapping = load_mapping(result.inputs.read(cfg.mapping), *inv);
    have_mapping = true;
  }
  auto hyp = transcript_map(hyp_lines);
  if (hyp.size() != hyp_lines.size()) {
    throw Error(ErrorCode::kIdMismatch, "duplicate hypothesis ids");
  }
  std::ostringstream out;
  out << "utt,distance,ref_len,pfer\n";
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>
      pairs;
  std::set<std::string> seen;
  for (const auto& [id, ref_seq] : ref_lines) {
    auto it = hyp.find(id);
    if (it == hyp.end()) {
      throw Error(ErrorCode::kIdMismatch, "no hypothesis for utterance " + id);
    }
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::kIdMismatch, "duplicate reference id: " + id);
    }
    std::vector<std::string> hyp_seq = it->second;
    if (have_mapping) hyp_seq = apply_mapping(hyp_seq, mapping);
    PferResult r = pfer(hyp_seq, ref_seq, table);
    out << id << ',' << fixed6(r.distance) << ',' << r.ref_len << ','
        << fixed6(r.pfer) << '\n';
    pairs.emplace_back(std::move(hyp_seq), ref_seq);
  }
  if (seen.size() != hyp.size()) {
    throw Error(ErrorCode::kIdMismatch,
                "hypothesis file has utterances missing from the reference");
  }
  out << "#macro," << fixed6(corpus_pfer(pairs, table, CorpusMode::kMacro))
      << '\n';
  out << "#micro," << fixed6(corpus_pfer(pairs, table, CorpusMode::kMicro))
      << '\n';
  result.output = out.str();
  return result;
}

CommandResult cmd_distortion(const PipelineConfig& cfg,
                             const DistortionArgs& args) {
  CommandResult result;
  auto inv = load_inventory_file(result.inputs, cfg.symbols);
  auto corpus = load_corpus(result.inputs, cfg.posteriors, inv);
  DistortionOptions opts{cfg.exclude_blank};
  auto lines = parallel_map(cfg.jobs, corpus.size(), [&](std::size_t i) {
    const auto& p = corpus[i];
    DistortionProfile profile = utterance_distortion(p, opts);
    std::string out = p.utt_id() + "\t" + fixed6(profile.score) + "\n";
    if (args.per_frame) {
      for (std::size_t t = 0; t < profile.per_frame.size(); ++t) {
        const auto& f = profile.per_frame[t];
        out += p.utt_id() + "\t" + std::to_string(t) + "\t" +
               fixed6(f.margin) + "\t" + fixed6(f.entropy) + "\t" +
               fixed6(f.score) + "\n";
      }
    }
    return out;
  });
  for (auto& line : lines) result.output += line;
  return result;
}

CommandResult cmd_ctc_score(const PipelineConfig& cfg,
                            const CtcScoreArgs& args) {
  CommandResult result;
  auto inv = load_inventory_file(result.inputs, cfg.symbols);
  auto corpus = load_corpus(result.inputs, cfg.posteriors, inv);
  if (args.labels.empty()) {
    throw Error(ErrorCode::kConfigError, "ctc-score needs --labels");
  }
  auto labels =
      transcript_map(parse_transcripts(result.inputs.read(args.labels)));
  auto lines = parallel_map(cfg.jobs, corpus.size(), [&](std::size_t i) {
    const auto& p = corpus[i];
    auto it = labels.find(p.utt_id());
    if (it == labels.end()) {
      throw Error(ErrorCode::kIdMismatch,
                  "no label sequence for utterance " + p.utt_id());
    }
    return p.utt_id() + "\t" + fixed6(ctc_forward_logprob(p, it->second)) +
           "\n";
  });
  for (auto& line : lines) result.output += line;
  return result;
}

CommandResult cmd_diag(const PipelineConfig& cfg, const DiagArgs& args) {
  CommandResult result;
  auto inv = load_inventory_file(result.inputs, cfg.symbols);
  auto corpus = load_corpus(result.inputs, cfg.posteriors, inv);
  if (args.pairs.empty()) {
    throw Error(ErrorCode::kConfigError, "diag needs --pairs");
  }
  struct PairRow {
    std::string category;
    std::vector<std::string> canonical;
    std::vector<std::string> realized;
  };
  std::map<std::string, PairRow> pair_rows;
  int line_no = 0;
  for (const auto& raw : split_lines(result.inputs.read(args.pairs))) {
    ++line_no;
    if (strip(raw).empty() || strip(raw)[0] == '#') continue;
    auto fields = split_on(raw, '\t');
    if (fields.size() != 4) {
      throw Error(ErrorCode::kParse,
                  "pairs line " + std::to_string(line_no) +
                      ": expected utt\\tcategory\\tcanonical\\trealized");
    }
    pair_rows[strip(fields[0])] = {strip(fields[1]), split_ws(fields[2]),
                                   split_ws(fields[3])};
  }
  std::ostringstream out;
  out << "utt,category,delta_norm\n";
  std::vector<std::string> category_order;
  std::map<std::string, std::vector<double>> per_category;
  int flagged = 0;
  for (const auto& p : corpus) {
    auto it = pair_rows.find(p.utt_id());
    if (it == pair_rows.end()) {
      throw Error(ErrorCode::kIdMismatch,
                  "no diagnostic pair for utterance " + p.utt_id());
    }
    const auto& row = it->second;
    if (!per_category.count(row.category)) {
      category_order.push_back(row.category);
    }
    double delta = 0.0;
    bool usable = true;
    try {
      delta = delta_norm(p, row.canonical, row.realized);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoEvidence) throw;
      usable = false;
      ++flagged;
    }
    out << p.utt_id() << ',' << row.category << ','
        << (usable ? fixed6(delta) : "nan") << '\n';
    auto& bucket = per_category[row.category];
    if (usable) bucket.push_back(delta);
  }
  for (const auto& category : category_order) {
    auto values = per_category[category];
    if (values.empty()) {
      out << '#' << category << ",median,nan,pr_positive,nan\n";
      continue;
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    const double median = (n % 2) ? values[n / 2]
                                  : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    long positive = 0;
    for (double v : values) {
      if (v > 0.0) ++positive;
    }
    out << '#' << category << ",median," << fixed6(median) << ",pr_positive,"
        << fixed6(static_cast<double>(positive) / n) << '\n';
  }
  result.output = out.str();
  result.exit_code = flagged > 0 ? 2 : 0;
  return result;
}

CommandResult cmd_rsa(const PipelineConfig& cfg, const RsaArgs& args) {
  CommandResult result;
  if (args.embeddings.empty() || cfg.features.empty()) {
    throw Error(ErrorCode::kConfigError,
                "rsa needs --embeddings and --features");
  }
  FeatureTable table = load_feature_table(result.inputs.read(cfg.features));
  LabelMapping mapping;
  bool have_mapping = false;
  if (!cfg.mapping.empty()) {
    if (cfg.symbols.empty()) {
      throw Error(ErrorCode::kConfigError, "--mapping needs --symbols");
    }
    auto inv = load_inventory_file(result.inputs, cfg.symbols);
    mapping = load_mapping(result.inputs.read(cfg.mapping), *inv);
    have_mapping = true;
  }
  std::vector<std::pair<std::vector<double>, std::string>> segments;
  int line_no = 0;
  for (const auto& raw : split_lines(result.inputs.read(args.embeddings))) {
    ++line_no;
    if (strip(raw).empty() || strip(raw)[0] == '#') continue;
    auto tab = raw.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kParse,
                  "embedding line " + std::to_string(line_no) +
                      ": expected '<phone>\\t<floats>'");
    }
    std::string label = strip(raw.substr(0, tab));
    if (have_mapping) {
      auto mapped = apply_mapping({label}, mapping);
      if (mapped.empty()) continue;  // dropped label
      label = mapped[0];
    }
    std::vector<double> emb;
    for (const auto& cell : split_on(raw.substr(tab + 1), ',')) {
      emb.push_back(parse_double(strip(cell), "embedding value"));
    }
    segments.emplace_back(std::move(emb), std::move(label));
  }
  result.output = "rho\t" + fixed6(centroid_rsa(segments, table)) + "\n";
  return result;
}

CommandResult cmd_drrc_sim(const PipelineConfig& cfg,
                           const DrrcSimArgs& args) {
  CommandResult result;
  double eta = args.eta.value_or(0.3);
  std::string prop = args.prop.value_or("learned");
  std::string scenario = args.scenario;
  if (!scenario.empty()) {
    if (scenario == "gy") {
      prop = "const:0.5";
      eta = 0.3;
    } else if (scenario == "gY") {
      prop = "const:0.5";
      eta = 0.0;
    } else if (scenario == "Gy") {
      prop = "learned";
      eta = 0.3;
    } else if (scenario == "GY") {
      prop = "true";
      eta = 0.0;
    } else {
      throw Error(ErrorCode::kConfigError,
                  "scenario must be one of gy, gY, Gy, GY");
    }
    if (args.eta.has_value()) eta = *args.eta;
    if (args.prop.has_value()) prop = *args.prop;
  } else {
    scenario = "custom";
  }

  SyntheticSpec spec;
  spec.classes = args.k;
  spec.eta = eta;
  spec.seed = cfg.seed;
  // A separate fully-labeled draw trains the frozen learner under test.
  SyntheticSpec train_spec = spec;
  train_spec.seed = cfg.seed + 101;
  SyntheticData train = synth_generate(train_spec, 5000, false);
  Learner learner(spec.classes, spec.feature_dim);
  {
    std::vector<std::vector<double>> xs;
    std::vector<std::vector<double>> targets;
    for (const auto& w : train.samples) {
      xs.push_back(w.x);
      std::vector<double> onehot(spec.classes, 0.0);
      onehot[*w.y] = 1.0;
      targets.push_back(std::move(onehot));
    }
    train_learner(learner, xs, targets, 200, 0.5);
  }

  SyntheticData data = synth_generate(spec, args.n, true);
  SyntheticSpec eval_spec = spec;
  eval_spec.seed = cfg.seed + 202;
  SyntheticData eval = synth_generate(eval_spec, 100000, false);
  RiskEstimate rtrue = true_label_risk(eval.samples, learner);

  RiskEstimate rhat;
  RhsEstimate rhs;
  if (args.estimator == "naive") {
    rhat = naive_proxy_risk(data.samples, learner);
    std::vector<double> ones(data.samples.size(), 1.0);
    rhs = bias_identity_rhs(data.samples, ones, data.truth, learner);
  } else if (prop == "learned") {
    rhat = cross_fitted_risk(data.samples, learner, args.folds, args.eps);
    rhs = bias_identity_rhs(
        data.samples,
        cross_fitted_propensity(data.samples, spec.classes, args.folds,
                                args.eps),
        data.truth, learner);
  } else if (prop == "true") {
    PropensityModel g(data.truth.g_star, args.eps);
    rhat = cross_fitted_risk(data.samples, learner, args.folds, g);
    rhs = bias_identity_rhs(data.samples, g, data.truth, learner);
  } else if (prop.rfind("const:", 0) == 0) {
    const double p = parse_double(prop.substr(6), "constant propensity");
    PropensityModel g = PropensityModel::constant(p, args.eps);
    rhat = cross_fitted_risk(data.samples, learner, args.folds, g);
    rhs = bias_identity_rhs(data.samples, g, data.truth, learner);
  } else {
    throw Error(ErrorCode::kConfigError,
                "prop must be true, const:<p>, or learned");
  }
  const double se = std::sqrt(rhat.std_error * rhat.std_error +
                              rtrue.std_error * rtrue.std_error);
  std::ostringstream out;
  out << "scenario,n,rhat,rtrue,bias,se,identity_rhs\n";
  out << scenario << ',' << args.n << ',' << fixed6(rhat.value) << ','
      << fixed6(rtrue.value) << ',' << fixed6(rhat.value - rtrue.value) << ','
      << fixed6(se) << ',' << fixed6(rhs.value) << '\n';
  result.output = out.str();
  return result;
}

CommandResult cmd_self_learn(const PipelineConfig& cfg,
                             const SelfLearnArgs& args) {
  CommandResult result;
  ToyTaskSpec spec;
  spec.seed = cfg.seed;
  ToyCorpus corpus = make_toy_corpus(spec, 40, 160, 60);
  SelfLearnOptions opts;
  opts.rounds = args.rounds;
  opts.threshold = args.threshold;
  opts.mix_labeled = args.mix_labeled;
  if (args.corrector == "teacher") {
    opts.mode = CorrectorMode::kTeacherOnly;
  } else if (args.corrector == "canonical") {
    opts.mode = CorrectorMode::kCanonicalOnly;
  } else if (args.corrector == "merge") {
    opts.mode = CorrectorMode::kAlignMerge;
  } else {
    throw Error(ErrorCode::kConfigError,
                "corrector must be teacher, canonical, or merge");
  }
  SelfLearnResult r = self_learning(corpus, opts);
  std::ostringstream out;
  out << "round,heldout_pfer\n";
  for (std::size_t i = 0; i < r.heldout_pfer.size(); ++i) {
    out << i << ',' << fixed6(r.heldout_pfer[i]) << '\n';
  }
  result.output = out.str();
  return result;
}

CommandResult cmd_validate(const PipelineConfig& cfg) {
  CommandResult result;
  std::ostringstream out;
  std::shared_ptr<const PhoneInventory> inv;
  FeatureTable features;
  bool have_features = false;
  auto note = [&out](const std::string& kind, const std::string& path) {
    out << "ok " << kind << ' ' << path << '\n';
  };
  if (!cfg.symbols.empty()) {
    inv = load_inventory_file(result.inputs, cfg.symbols);
    note("symbols", cfg.symbols);
  }
  if (!cfg.features.empty()) {
    features = load_feature_table(result.inputs.read(cfg.features));
    have_features = true;
    note("features", cfg.features);
  }
  if (inv && have_features) {
    for (int i = 0; i < inv->size(); ++i) {
      if (i == inv->blank_index()) continue;
      if (!features.has(inv->label(i))) {
        throw Error(ErrorCode::kUnknownLabel,
                    "inventory/feature mismatch: no features for " +
                        inv->label(i));
      }
    }
  }
  if (!cfg.lexicon.empty()) {
    Lexicon lex = parse_lexicon(result.inputs.read(cfg.lexicon));
    if (inv) {
      for (const auto& e : lex.entries) {
        for (const auto& ph : e.phones) {
          if (!inv->has(ph)) {
            throw Error(ErrorCode::kUnknownLabel,
                        "lexicon phone not in inventory: " + ph);
          }
        }
      }
    }
    note("lexicon", cfg.lexicon);
  }
  if (!cfg.lm.empty()) {
    parse_arpa(result.inputs.read(cfg.lm));
    note("lm", cfg.lm);
  }
  if (!cfg.posteriors.empty()) {
    if (!inv) {
      throw Error(ErrorCode::kConfigError,
                  "validating posteriors needs symbols");
    }
    auto corpus =
        load_posterior_archive(result.inputs.read(cfg.posteriors), inv);
    out << "ok posteriors " << cfg.posteriors << " (" << corpus.size()
        << " utterances)\n";
  }
  if (!cfg.references.empty()) {
    parse_transcripts(result.inputs.read(cfg.references));
    note("references", cfg.references);
  }
  if (!cfg.ref_phones.empty()) {
    parse_transcripts(result.inputs.read(cfg.ref_phones));
    note("ref-phones", cfg.ref_phones);
  }
  if (!cfg.mapping.empty()) {
    if (!inv) {
      throw Error(ErrorCode::kConfigError, "validating mapping needs symbols");
    }
    load_mapping(result.inputs.read(cfg.mapping), *inv);
    note("mapping", cfg.mapping);
  }
  out << "config ok\n";
  result.output = out.str();
  return result;
}

}  // namespace huper
