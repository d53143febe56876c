// cli/pipeline.cc

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

#include "huper/cli/pipeline.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "huper/text_util.h"

namespace huper {

SchedulerConfig PipelineConfig::scheduler() const {
  SchedulerConfig cfg;
  cfg.tau = tau;
  cfg.top_k = topk;
  cfg.skip = skip_arcs;
  cfg.penalties.sub_cost = sub;
  cfg.penalties.del_cost = del;
  cfg.penalties.ins_cost = ins;
  cfg.penalties.rep_cost = rep;
  cfg.penalties.max_consec_ins = max_consec_ins;
  cfg.penalties.feature_weighted = feature_weighted;
  cfg.distortion.entropy_excludes_blank = exclude_blank;
  cfg.lexicon_alt_prons = alt_prons;
  return cfg;
}

std::string PipelineConfig::canonical() const {
  std::ostringstream out;
  out << "posteriors=" << posteriors << '\n'
      << "symbols=" << symbols << '\n'
      << "features=" << features << '\n'
      << "lexicon=" << lexicon << '\n'
      << "lm=" << lm << '\n'
      << "references=" << references << '\n'
      << "ref-phones=" << ref_phones << '\n'
      << "mapping=" << mapping << '\n'
      << "tau=" << fixed6(tau) << '\n'
      << "topk=" << topk << '\n'
      << "skip-arcs=" << (skip_arcs ? 1 : 0) << '\n'
      << "sub=" << fixed6(sub) << '\n'
      << "del=" << fixed6(del) << '\n'
      << "ins=" << fixed6(ins) << '\n'
      << "rep=" << fixed6(rep) << '\n'
      << "max-consec-ins=" << max_consec_ins << '\n'
      << "feature-weighted=" << (feature_weighted ? 1 : 0) << '\n'
      << "alt-prons=" << (alt_prons ? 1 : 0) << '\n'
      << "exclude-blank=" << (exclude_blank ? 1 : 0) << '\n'
      << "mode=" << mode << '\n'
      << "seed=" << seed << '\n';
  return out.str();
}

namespace {

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw Error(ErrorCode::kConfigError, "bad boolean for " + key + ": " + v);
}

}  // namespace

void apply_config_entry(PipelineConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "posteriors") cfg.posteriors = value;
  else if (key == "symbols") cfg.symbols = value;
  else if (key == "features") cfg.features = value;
  else if (key == "lexicon") cfg.lexicon = value;
  else if (key == "lm") cfg.lm = value;
  else if (key == "references") cfg.references = value;
  else if (key == "ref-phones") cfg.ref_phones = value;
  else if (key == "mapping") cfg.mapping = value;
  else if (key == "out") cfg.out = value;
  else if (key == "tau") cfg.tau = parse_double(value, "tau");
  else if (key == "topk") cfg.topk = parse_int(value, "topk");
  else if (key == "skip-arcs") cfg.skip_arcs = parse_bool(value, key);
  else if (key == "sub") cfg.sub = parse_double(value, "sub");
  else if (key == "del") cfg.del = parse_double(value, "del");
  else if (key == "ins") cfg.ins = parse_double(value, "ins");
  else if (key == "rep") cfg.rep = parse_double(value, "rep");
  else if (key == "max-consec-ins")
    cfg.max_consec_ins = parse_int(value, "max-consec-ins");
  else if (key == "feature-weighted")
    cfg.feature_weighted = parse_bool(value, key);
  else if (key == "alt-prons") cfg.alt_prons = parse_bool(value, key);
  else if (key == "exclude-blank") cfg.exclude_blank = parse_bool(value, key);
  else if (key == "mode") cfg.mode = value;
  else if (key == "seed")
    cfg.seed = static_cast<std::uint64_t>(parse_int(value, "seed"));
  else if (key == "jobs") cfg.jobs = parse_int(value, "jobs");
  else
    throw Error(ErrorCode::kConfigError, "unknown config key: " + key);
}

PipelineConfig parse_pipeline_config(const std::string& text,
                                     const std::string& base_dir) {
  PipelineConfig cfg;
  int line_no = 0;
  for (const auto& raw : split_lines(text)) {
    ++line_no;
    std::string line = strip(raw);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfigError,
                  "config line " + std::to_string(line_no) +
                      ": expected key=value");
    }
    apply_config_entry(cfg, strip(line.substr(0, eq)),
                       strip(line.substr(eq + 1)));
  }
  if (!base_dir.empty()) {
    auto resolve = [&base_dir](std::string& path) {
      if (!path.empty() && path[0] != '/') path = base_dir + "/" + path;
    };
    resolve(cfg.posteriors);
    resolve(cfg.symbols);
    resolve(cfg.features);
    resolve(cfg.lexicon);
    resolve(cfg.lm);
    resolve(cfg.references);
    resolve(cfg.ref_phones);
    resolve(cfg.mapping);
  }
  return cfg;
}

std::string render_manifest(const std::string& command,
                            const PipelineConfig& cfg,
                            const InputSet& inputs) {
  std::ostringstream out;
  out << "huper-manifest v1\n";
  out << "tool=" << kToolVersion << '\n';
  out << "command=" << command << '\n';
  out << "config_hash=" << hex64(fnv1a(cfg.canonical())) << '\n';
  auto entries = inputs.entries();
  std::sort(entries.begin(), entries.end());
  for (const auto& [path, digest] : entries) {
    out << "input=" << path << ':' << digest << '\n';
  }
  out << "seed=" << cfg.seed << '\n';
  return out.str();
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    auto parts = split_on(text, ':');
    if (parts.size() != 3) {
      throw Error(ErrorCode::kConfigError,
                  "grid range must be start:stop:step");
    }
    const double start = parse_double(parts[0], "grid start");
    const double stop = parse_double(parts[1], "grid stop");
    const double step = parse_double(parts[2], "grid step");
    if (!(step > 0.0)) {
      throw Error(ErrorCode::kConfigError, "grid step must be positive");
    }
    for (double v = start; v <= stop + 1e-9; v += step) grid.push_back(v);
  } else {
    for (const auto& cell : split_on(text, ',')) {
      if (strip(cell).empty()) continue;
      grid.push_back(parse_double(strip(cell), "grid value"));
    }
  }
  if (grid.empty()) {
    throw Error(ErrorCode::kConfigError, "empty tau grid");
  }
  return grid;
}

}  // namespace huper
