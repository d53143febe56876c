// huper/cli/commands.h

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

#ifndef HUPER_CLI_COMMANDS_H_
#define HUPER_CLI_COMMANDS_H_

#include <optional>
#include <string>

#include "huper/cli/pipeline.h"

namespace huper {

// Every command renders its full report into `output`; callers decide where
// it goes. Exit codes: 0 clean, 2 completed with per-utterance fallbacks or
// flagged items, 1 fatal (signalled by throwing).
struct CommandResult {
  std::string output;
  int exit_code = 0;
  InputSet inputs;
};

CommandResult cmd_decode_1best(const PipelineConfig& cfg);
CommandResult cmd_decode_perceiver(const PipelineConfig& cfg);
CommandResult cmd_schedule(const PipelineConfig& cfg);

struct TauSweepArgs {
  std::string grid = "0:1:0.1";
};
CommandResult cmd_tau_sweep(const PipelineConfig& cfg,
                            const TauSweepArgs& args);

struct PferArgs {
  std::string hyp;
  std::string ref;
};
CommandResult cmd_pfer(const PipelineConfig& cfg, const PferArgs& args);

struct DistortionArgs {
  bool per_frame = false;
};
CommandResult cmd_distortion(const PipelineConfig& cfg,
                             const DistortionArgs& args);

struct CtcScoreArgs {
  std::string labels;  // transcript file of sequences to score
};
CommandResult cmd_ctc_score(const PipelineConfig& cfg,
                            const CtcScoreArgs& args);

struct DiagArgs {
  std::string pairs;  // "<utt>\t<category>\t<canonical>\t<realized>"
};
CommandResult cmd_diag(const PipelineConfig& cfg, const DiagArgs& args);

struct RsaArgs {
  std::string embeddings;  // "<phone>\t<comma-separated floats>"
};
CommandResult cmd_rsa(const PipelineConfig& cfg, const RsaArgs& args);

struct DrrcSimArgs {
  int k = 3;
  long n = 50000;
  std::optional<double> eta;
  std::optional<std::string> prop;  // true | const:<p> | learned
  int folds = 5;
  double eps = 0.05;
  std::string scenario;  // gy | gY | Gy | GY (presets for eta/prop)
  std::string estimator = "drrc";  // drrc | naive
};
CommandResult cmd_drrc_sim(const PipelineConfig& cfg, const DrrcSimArgs& args);

struct SelfLearnArgs {
  int rounds = 2;
  std::string corrector = "merge";  // teacher | canonical | merge
  double threshold = 0.5;
  bool mix_labeled = true;
};
CommandResult cmd_self_learn(const PipelineConfig& cfg,
                             const SelfLearnArgs& args);

CommandResult cmd_validate(const PipelineConfig& cfg);

}  // namespace huper

#endif  // HUPER_CLI_COMMANDS_H_
