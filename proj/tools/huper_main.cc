// tools/huper_main.cc

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

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "huper/cli/commands.h"

namespace {

using huper::CommandResult;
using huper::PipelineConfig;

// Runs a command, writes its report (stdout or --out plus a manifest), and
// reports wall time on stderr.
int finish(const std::string& name, const PipelineConfig& cfg,
           const std::function<CommandResult()>& run) {
  const auto t0 = std::chrono::steady_clock::now();
  CommandResult result = run();
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  if (cfg.out.empty()) {
    std::fputs(result.output.c_str(), stdout);
  } else {
    huper::write_file(cfg.out, result.output);
    huper::write_file(cfg.out + ".manifest",
                      huper::render_manifest(name, cfg, result.inputs));
  }
  std::fprintf(stderr, "[huper] %s finished in %lld ms\n", name.c_str(),
               static_cast<long long>(ms));
  return result.exit_code;
}

void add_common(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--out", cfg.out, "output path (default stdout)");
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--jobs", cfg.jobs, "worker threads");
}

void add_posterior_inputs(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--posteriors", cfg.posteriors,
                  "posterior file or --- separated archive");
  cmd->add_option("--symbols", cfg.symbols, "phone symbol table");
}

void add_scheduler_flags(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--tau", cfg.tau, "distortion switching threshold");
  cmd->add_option("--topk", cfg.topk, "lattice alternatives per segment");
  cmd->add_flag("--skip-arcs", cfg.skip_arcs, "epsilon skip arcs");
  cmd->add_option("--sub", cfg.sub, "substitution penalty");
  cmd->add_option("--del", cfg.del, "deletion penalty");
  cmd->add_option("--ins", cfg.ins, "insertion penalty");
  cmd->add_option("--rep", cfg.rep, "repetition penalty");
  cmd->add_option("--max-consec-ins", cfg.max_consec_ins,
                  "insertion run bound");
  cmd->add_flag("--feature-weighted", cfg.feature_weighted,
                "feature-weighted substitution penalties");
  cmd->add_flag("--alt-prons", cfg.alt_prons,
                "alternative pronunciations in the constraint");
  cmd->add_flag("--exclude-blank", cfg.exclude_blank,
                "drop blank from the entropy normalizer");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HuPER phonetic perception toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  // --config gives defaults; explicit flags win. Read it before CLI11 runs.
  PipelineConfig cfg;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        const std::string path = argv[i + 1];
        const auto slash = path.find_last_of('/');
        const std::string base =
            slash == std::string::npos ? "." : path.substr(0, slash);
        cfg = huper::parse_pipeline_config(huper::read_file(path), base);
      } catch (const huper::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
      }
    }
  }
  std::string config_path;
  app.add_option("--config", config_path, "flat key=value config file");

  huper::TauSweepArgs sweep_args;
  huper::PferArgs pfer_args;
  huper::DistortionArgs distortion_args;
  huper::CtcScoreArgs ctc_args;
  huper::DiagArgs diag_args;
  huper::RsaArgs rsa_args;
  huper::DrrcSimArgs drrc_args;
  huper::SelfLearnArgs learn_args;
  double drrc_eta = -1.0;
  std::string drrc_prop;

  auto* decode_1best =
      app.add_subcommand("decode-1best", "greedy CTC decode per utterance");
  add_posterior_inputs(decode_1best, cfg);
  decode_1best->add_flag("--exclude-blank", cfg.exclude_blank,
                         "drop blank from the entropy normalizer");
  add_common(decode_1best, cfg);

  auto* decode_perceiver = app.add_subcommand(
      "decode-perceiver", "word decoding through lexicon and grammar");
  add_posterior_inputs(decode_perceiver, cfg);
  decode_perceiver->add_option("--lexicon", cfg.lexicon, "lexicon file");
  decode_perceiver->add_option("--lm", cfg.lm, "ARPA unigram+bigram file");
  decode_perceiver->add_option("--features", cfg.features, "feature table");
  add_scheduler_flags(decode_perceiver, cfg);
  add_common(decode_perceiver, cfg);

  auto* schedule = app.add_subcommand(
      "schedule", "distortion-controlled multi-path decoding");
  add_posterior_inputs(schedule, cfg);
  schedule->add_option("--lexicon", cfg.lexicon, "lexicon file");
  schedule->add_option("--lm", cfg.lm, "ARPA unigram+bigram file");
  schedule->add_option("--features", cfg.features, "feature table");
  schedule->add_option("--reference", cfg.references,
                       "reference word transcripts");
  add_scheduler_flags(schedule, cfg);
  add_common(schedule, cfg);

  auto* sweep = app.add_subcommand("tau-sweep",
                                   "switching-threshold sweep (CSV)");
  add_posterior_inputs(sweep, cfg);
  sweep->add_option("--lexicon", cfg.lexicon, "lexicon file");
  sweep->add_option("--lm", cfg.lm, "ARPA unigram+bigram file");
  sweep->add_option("--features", cfg.features, "feature table");
  sweep->add_option("--reference", cfg.references,
                    "reference word transcripts");
  sweep->add_option("--ref-phones", cfg.ref_phones,
                    "reference phone transcripts");
  sweep->add_option("--grid", sweep_args.grid, "comma list or start:stop:step");
  add_scheduler_flags(sweep, cfg);
  add_common(sweep, cfg);

  auto* pfer = app.add_subcommand("pfer", "feature-weighted error report");
  pfer->add_option("--hyp", pfer_args.hyp, "hypothesis transcripts");
  pfer->add_option("--ref", pfer_args.ref, "reference transcripts");
  pfer->add_option("--features", cfg.features, "feature table");
  pfer->add_option("--mapping", cfg.mapping, "label mapping file");
  pfer->add_option("--symbols", cfg.symbols, "phone symbol table");
  pfer->add_option("--mode", cfg.mode, "macro or micro");
  add_common(pfer, cfg);

  auto* distortion =
      app.add_subcommand("distortion", "utterance distortion scores");
  add_posterior_inputs(distortion, cfg);
  distortion->add_flag("--frames", distortion_args.per_frame,
                       "also emit per-frame rows");
  distortion->add_flag("--exclude-blank", cfg.exclude_blank,
                       "drop blank from the entropy normalizer");
  add_common(distortion, cfg);

  auto* ctc_score =
      app.add_subcommand("ctc-score", "CTC forward log marginals");
  add_posterior_inputs(ctc_score, cfg);
  ctc_score->add_option("--labels", ctc_args.labels,
                        "label sequences to score");
  add_common(ctc_score, cfg);

  auto* diag = app.add_subcommand(
      "diag", "canonical-vs-realized preference diagnostic");
  add_posterior_inputs(diag, cfg);
  diag->add_option("--pairs", diag_args.pairs,
                   "utt\\tcategory\\tcanonical\\trealized file");
  add_common(diag, cfg);

  auto* rsa = app.add_subcommand("rsa", "centroid RSA rank correlation");
  rsa->add_option("--embeddings", rsa_args.embeddings,
                  "segment embedding file");
  rsa->add_option("--features", cfg.features, "feature table");
  rsa->add_option("--mapping", cfg.mapping, "label mapping file");
  rsa->add_option("--symbols", cfg.symbols, "phone symbol table");
  add_common(rsa, cfg);

  auto* drrc = app.add_subcommand("drrc-sim",
                                  "doubly robust risk correction Monte Carlo");
  drrc->add_option("--k", drrc_args.k, "class count");
  drrc->add_option("--n", drrc_args.n, "sample count");
  drrc->add_option("--eta", drrc_eta, "proxy noise rate");
  drrc->add_option("--prop", drrc_prop, "true | const:<p> | learned");
  drrc->add_option("--folds", drrc_args.folds, "cross-fitting folds");
  drrc->add_option("--eps", drrc_args.eps, "propensity clip floor");
  drrc->add_option("--scenario", drrc_args.scenario, "gy | gY | Gy | GY");
  drrc->add_option("--estimator", drrc_args.estimator, "drrc | naive");
  add_common(drrc, cfg);

  auto* learn =
      app.add_subcommand("self-learn", "iterative pseudo-label training");
  learn->add_option("--rounds", learn_args.rounds, "self-training rounds");
  learn->add_option("--corrector", learn_args.corrector,
                    "teacher | canonical | merge");
  learn->add_option("--threshold", learn_args.threshold,
                    "corrector confidence threshold");
  learn->add_flag("!--no-mix", learn_args.mix_labeled,
                  "train rounds without the labeled set");
  add_common(learn, cfg);

  auto* validate =
      app.add_subcommand("validate", "fail-fast validation of all inputs");
  add_posterior_inputs(validate, cfg);
  validate->add_option("--features", cfg.features, "feature table");
  validate->add_option("--lexicon", cfg.lexicon, "lexicon file");
  validate->add_option("--lm", cfg.lm, "ARPA unigram+bigram file");
  validate->add_option("--reference", cfg.references, "reference transcripts");
  validate->add_option("--ref-phones", cfg.ref_phones,
                       "reference phone transcripts");
  validate->add_option("--mapping", cfg.mapping, "label mapping file");
  add_common(validate, cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    if (decode_1best->parsed()) {
      return finish("decode-1best", cfg,
                    [&] { return huper::cmd_decode_1best(cfg); });
    }
    if (decode_perceiver->parsed()) {
      return finish("decode-perceiver", cfg,
                    [&] { return huper::cmd_decode_perceiver(cfg); });
    }
    if (schedule->parsed()) {
      return finish("schedule", cfg, [&] { return huper::cmd_schedule(cfg); });
    }
    if (sweep->parsed()) {
      return finish("tau-sweep", cfg,
                    [&] { return huper::cmd_tau_sweep(cfg, sweep_args); });
    }
    if (pfer->parsed()) {
      return finish("pfer", cfg,
                    [&] { return huper::cmd_pfer(cfg, pfer_args); });
    }
    if (distortion->parsed()) {
      return finish("distortion", cfg, [&] {
        return huper::cmd_distortion(cfg, distortion_args);
      });
    }
    if (ctc_score->parsed()) {
      return finish("ctc-score", cfg,
                    [&] { return huper::cmd_ctc_score(cfg, ctc_args); });
    }
    if (diag->parsed()) {
      return finish("diag", cfg,
                    [&] { return huper::cmd_diag(cfg, diag_args); });
    }
    if (rsa->parsed()) {
      return finish("rsa", cfg, [&] { return huper::cmd_rsa(cfg, rsa_args); });
    }
    if (drrc->parsed()) {
      if (drrc_eta >= 0.0) drrc_args.eta = drrc_eta;
      if (!drrc_prop.empty()) drrc_args.prop = drrc_prop;
      return finish("drrc-sim", cfg,
                    [&] { return huper::cmd_drrc_sim(cfg, drrc_args); });
    }
    if (learn->parsed()) {
      return finish("self-learn", cfg,
                    [&] { return huper::cmd_self_learn(cfg, learn_args); });
    }
    if (validate->parsed()) {
      return finish("validate", cfg, [&] { return huper::cmd_validate(cfg); });
    }
  } catch (const huper::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}
