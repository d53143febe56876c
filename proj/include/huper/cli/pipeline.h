// huper/cli/pipeline.h

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

#ifndef HUPER_CLI_PIPELINE_H_
#define HUPER_CLI_PIPELINE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "huper/cli/io.h"
#include "huper/scheduler.h"

namespace huper {

inline constexpr const char* kToolVersion = "huper 1.0.0";

// Flat key=value configuration shared by every subcommand; keys mirror the
// long flag names. Unknown keys are rejected so typos fail fast.
struct PipelineConfig {
  std::string posteriors;
  std::string symbols;
  std::string features;
  std::string lexicon;
  std::string lm;
  std::string references;
  std::string ref_phones;
  std::string mapping;
  std::string out;

  double tau = kDefaultTau;
  int topk = 1;
  bool skip_arcs = false;
  double sub = 1.0;
  double del = 1.0;
  double ins = 1.5;
  double rep = 0.5;
  int max_consec_ins = 3;
  bool feature_weighted = false;
  bool alt_prons = false;
  bool exclude_blank = false;
  std::string mode = "macro";  // corpus PFER aggregation
  std::uint64_t seed = 1;
  int jobs = 1;

  SchedulerConfig scheduler() const;
  // Canonical "key=value\n" dump; jobs is deliberately excluded so worker
  // count never changes the manifest.
  std::string canonical() const;
};

// Relative input paths in the file resolve against base_dir (normally the
// config file's directory); the output path is left alone.
PipelineConfig parse_pipeline_config(const std::string& text,
                                     const std::string& base_dir = "");
void apply_config_entry(PipelineConfig& cfg, const std::string& key,
                        const std::string& value);

// Deterministic run manifest; identical config+inputs+seed produce
// identical bytes. Timing is reported on stderr, never here.
std::string render_manifest(const std::string& command,
                            const PipelineConfig& cfg, const InputSet& inputs);

// Grid parsing: "a,b,c" or "start:stop:step" (inclusive stop within 1e-9).
std::vector<double> parse_grid(const std::string& text);

}  // namespace huper

#endif  // HUPER_CLI_PIPELINE_H_
