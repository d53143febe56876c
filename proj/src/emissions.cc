// emissions.cc

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

#include "huper/emissions.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "huper/text_util.h"

namespace huper {

namespace {

constexpr double kRowSumTolerance = 1e-4;

double floored_log(double p) { return std::log(std::max(p, kProbFloor)); }

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

}  // namespace

PosteriorMatrix::PosteriorMatrix(
    std::vector<double> data, int frames,
    std::shared_ptr<const PhoneInventory> inventory, std::string utt_id)
    : data_(std::move(data)),
      frames_(frames),
      inventory_(std::move(inventory)),
      utt_id_(std::move(utt_id)) {
  if (!inventory_) {
    throw Error(ErrorCode::kInvalidArgument, "posterior matrix needs an inventory");
  }
  symbols_ = inventory_->size();
  if (frames_ < 1) {
    throw Error(ErrorCode::kInvalidArgument, "posterior matrix needs T >= 1");
  }
  if (data_.size() != static_cast<std::size_t>(frames_) * symbols_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "posterior data size does not match T x V");
  }
  for (int t = 0; t < frames_; ++t) {
    double sum = 0.0;
    for (int v = 0; v < symbols_; ++v) {
      double x = data_[static_cast<std::size_t>(t) * symbols_ + v];
      if (x < 0.0) {
        throw Error(ErrorCode::kNegativeEntry,
                    "negative posterior at frame " + std::to_string(t));
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw Error(ErrorCode::kRowSum, "frame " + std::to_string(t) +
                                          " sums to " + std::to_string(sum));
    }
    for (int v = 0; v < symbols_; ++v) {
      data_[static_cast<std::size_t>(t) * symbols_ + v] /= sum;
    }
  }
}

namespace {

PosteriorMatrix parse_one(const std::vector<std::string>& lines,
                          std::size_t begin, std::size_t end,
                          std::shared_ptr<const PhoneInventory> inventory,
                          const std::string& default_id) {
  std::size_t i = begin;
  while (i < end && strip(lines[i]).empty()) ++i;
  if (i >= end || strip(lines[i]) != "HUPER-POST v1") {
    throw Error(ErrorCode::kParse,
                "posterior document must start with 'HUPER-POST v1'");
  }
  ++i;
  if (i >= end) throw Error(ErrorCode::kParse, "missing T=/V= header line");
  auto fields = split_ws(strip(lines[i]));
  int frames = -1, symbols = -1;
  std::string id = default_id;
  for (const auto& f : fields) {
    if (f.rfind("T=", 0) == 0) {
      frames = parse_int(f.substr(2), "T");
    } else if (f.rfind("V=", 0) == 0) {
      symbols = parse_int(f.substr(2), "V");
    } else if (f.rfind("id=", 0) == 0) {
      id = f.substr(3);
    } else {
      throw Error(ErrorCode::kParse, "unexpected header token: " + f);
    }
  }
  if (frames < 1 || symbols < 1) {
    throw Error(ErrorCode::kParse, "header must carry T=<int> V=<int>");
  }
  if (symbols != inventory->size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "V=" + std::to_string(symbols) + " but inventory has " +
                    std::to_string(inventory->size()) + " symbols");
  }
  ++i;
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(frames) * symbols);
  int rows = 0;
  for (; i < end && rows < frames; ++i) {
    std::string line = strip(lines[i]);
    if (line.empty()) continue;
    auto cells = split_ws(line);
    if (static_cast<int>(cells.size()) != symbols) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "row " + std::to_string(rows) + " has " +
                      std::to_string(cells.size()) + " entries, want " +
                      std::to_string(symbols));
    }
    for (const auto& c : cells) data.push_back(parse_double(c, "posterior"));
    ++rows;
  }
  if (rows != frames) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(frames) + " rows, got " +
                    std::to_string(rows));
  }
  for (; i < end; ++i) {
    if (!strip(lines[i]).empty()) {
      throw Error(ErrorCode::kParse, "trailing content after posterior rows");
    }
  }
  return PosteriorMatrix(std::move(data), frames, std::move(inventory), id);
}

}  // namespace

PosteriorMatrix load_posteriors(
    const std::string& text, std::shared_ptr<const PhoneInventory> inventory,
    const std::string& default_id) {
  auto lines = split_lines(text);
  return parse_one(lines, 0, lines.size(), std::move(inventory), default_id);
}

std::vector<PosteriorMatrix> load_posterior_archive(
    const std::string& text, std::shared_ptr<const PhoneInventory> inventory,
    const std::string& default_id_prefix) {
  auto lines = split_lines(text);
  std::vector<PosteriorMatrix> out;
  std::size_t begin = 0;
  auto flush = [&](std::size_t end) {
    bool blank = true;
    for (std::size_t k = begin; k < end; ++k) {
      if (!strip(lines[k]).empty()) blank = false;
    }
    if (blank) return;
    char fallback[32];
    std::snprintf(fallback, sizeof(fallback), "%s%04zu",
                  default_id_prefix.c_str(), out.size());
    out.push_back(parse_one(lines, begin, end, inventory, fallback));
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (strip(lines[i]) == "---") {
      flush(i);
      begin = i + 1;
    }
  }
  flush(lines.size());
  if (out.empty()) {
    throw Error(ErrorCode::kNoUtterances, "no utterances in the posterior input");
  }
  return out;
}

std::string save_posteriors(const PosteriorMatrix& p) {
  std::ostringstream out;
  out << "HUPER-POST v1\n";
  out << "T=" << p.frames() << " V=" << p.symbols();
  if (!p.utt_id().empty()) out << " id=" << p.utt_id();
  out << '\n';
  char buf[40];
  for (int t = 0; t < p.frames(); ++t) {
    auto row = p.row(t);
    for (int v = 0; v < p.symbols(); ++v) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[v]);
      if (v) out << ' ';
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

FrameDistortion frame_distortion(std::span<const double> row,
                                 const DistortionOptions& opts) {
  const int v = static_cast<int>(row.size());
  if (v < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "frame distortion needs V >= 2");
  }
  double top1 = -1.0, top2 = -1.0;
  double ent = 0.0;
  for (double x : row) {
    if (x > top1) {
      top2 = top1;
      top1 = x;
    } else if (x > top2) {
      top2 = x;
    }
    if (x > 0.0) ent -= x * std::log(x);
  }
  FrameDistortion d;
  d.margin = top1 - top2;
  const int denom_symbols = opts.entropy_excludes_blank ? v - 1 : v;
  if (denom_symbols < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "entropy normalizer needs at least two symbols");
  }
  d.entropy = std::clamp(ent / std::log(static_cast<double>(denom_symbols)),
                         0.0, 1.0);
  d.score = std::clamp(0.5 * (1.0 - d.margin) + 0.5 * d.entropy, 0.0, 1.0);
  return d;
}

DistortionProfile utterance_distortion(const PosteriorMatrix& p,
                                       const DistortionOptions& opts) {
  DistortionProfile profile;
  profile.per_frame.reserve(p.frames());
  double sum = 0.0;
  for (int t = 0; t < p.frames(); ++t) {
    profile.per_frame.push_back(frame_distortion(p.row(t), opts));
    sum += profile.per_frame.back().score;
  }
  profile.score = sum / p.frames();
  return profile;
}

std::vector<int> ctc_collapse(const std::vector<int>& frame_labels,
                              int blank_index) {
  std::vector<int> out;
  int prev = -1;
  for (int label : frame_labels) {
    if (label != prev && label != blank_index) out.push_back(label);
    prev = label;
  }
  return out;
}

std::vector<ArgmaxRun> argmax_runs(const PosteriorMatrix& p) {
  std::vector<ArgmaxRun> runs;
  for (int t = 0; t < p.frames(); ++t) {
    auto row = p.row(t);
    int best = 0;
    for (int v = 1; v < p.symbols(); ++v) {
      if (row[v] > row[best]) best = v;
    }
    if (!runs.empty() && runs.back().label == best) {
      runs.back().end = t + 1;
    } else {
      runs.push_back({best, t, t + 1});
    }
  }
  return runs;
}

std::vector<std::string> ctc_best_path(const PosteriorMatrix& p) {
  const int blank = p.inventory().blank_index();
  std::vector<std::string> out;
  for (const auto& run : argmax_runs(p)) {
    if (run.label != blank) out.push_back(p.inventory().label(run.label));
  }
  return out;
}

double ctc_forward_logprob(const PosteriorMatrix& p,
                           const std::vector<std::string>& y) {
  if (y.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "ctc_forward_logprob needs a non-empty label sequence");
  }
  const PhoneInventory& inv = p.inventory();
  const int blank = inv.blank_index();
  std::vector<int> labels;
  labels.reserve(y.size());
  for (const auto& s : y) {
    int idx = inv.index(s);
    if (idx == blank) {
      throw Error(ErrorCode::kInvalidArgument,
                  "label sequence may not contain the blank");
    }
    labels.push_back(idx);
  }
  int adjacent_equal = 0;
  for (std::size_t i = 1; i < labels.size(); ++i) {
    if (labels[i] == labels[i - 1]) ++adjacent_equal;
  }
  const int t_needed = static_cast<int>(labels.size()) + adjacent_equal;
  if (p.frames() < t_needed) return kNegInf;

  // Blank-augmented topology: blk y1 blk y2 ... yN blk.
  const int s_len = 2 * static_cast<int>(labels.size()) + 1;
  auto aug = [&](int s) { return (s % 2 == 0) ? blank : labels[s / 2]; };
  std::vector<double> alpha(s_len, kNegInf), next(s_len, kNegInf);
  {
    auto row = p.row(0);
    alpha[0] = floored_log(row[blank]);
    alpha[1] = floored_log(row[labels[0]]);
  }
  for (int t = 1; t < p.frames(); ++t) {
    auto row = p.row(t);
    for (int s = 0; s < s_len; ++s) {
      double acc = alpha[s];
      if (s >= 1) acc = log_add(acc, alpha[s - 1]);
      if (s >= 2 && aug(s) != blank && aug(s) != aug(s - 2)) {
        acc = log_add(acc, alpha[s - 2]);
      }
      next[s] = (acc == kNegInf) ? kNegInf : acc + floored_log(row[aug(s)]);
    }
    std::swap(alpha, next);
  }
  return log_add(alpha[s_len - 1], alpha[s_len - 2]);
}

double delta_norm(const PosteriorMatrix& p,
                  const std::vector<std::string>& y_can,
                  const std::vector<std::string>& y_real) {
  const double lp_can = ctc_forward_logprob(p, y_can);
  const double lp_real = ctc_forward_logprob(p, y_real);
  if (lp_can == kNegInf && lp_real == kNegInf) {
    throw Error(ErrorCode::kNoEvidence,
                "both sequences are CTC-infeasible for this utterance");
  }
  const double a = lp_can / static_cast<double>(y_can.size());
  const double b = lp_real / static_cast<double>(y_real.size());
  return a - b;
}

}  // namespace huper
