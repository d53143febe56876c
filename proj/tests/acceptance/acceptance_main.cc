// tests/acceptance/acceptance_main.cc

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
// End-to-end verification suite. Each criterion prints one PASS/FAIL line;
// the exit code is the number of failures. Run with --regen-golden to
// refresh the frozen pipeline outputs instead of comparing against them.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "huper/cli/commands.h"
#include "huper/drrc.h"
#include "huper/text_util.h"
#include "huper/scheduler.h"
#include "huper/selflearn.h"
#include "tests/support/oracles.h"
#include "tests/support/synthetic_corpus.h"

namespace {

using namespace huper;
namespace ts = huper::testsupport;

const std::string kFixtures = HUPER_FIXTURE_DIR;
const std::string kGolden = HUPER_GOLDEN_DIR;
const std::string kCli = HUPER_CLI_PATH;

bool g_regen_golden = false;

class Checker {
 public:
  void expect(bool cond, const std::string& msg) {
    ++checks_;
    if (!cond && first_failure_.empty()) first_failure_ = msg;
    ok_ = ok_ && cond;
  }
  void expect_near(double got, double want, double tol,
                   const std::string& what) {
    std::ostringstream msg;
    msg << what << ": got " << got << ", want " << want << " +/- " << tol;
    expect(std::abs(got - want) <= tol, msg.str());
  }
  bool ok() const { return ok_; }
  long checks() const { return checks_; }
  const std::string& first_failure() const { return first_failure_; }

 private:
  bool ok_ = true;
  long checks_ = 0;
  std::string first_failure_;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<void(Checker&)> body;
};

// ---------------------------------------------------------------------
// 1. PFER oracle.
void criterion_pfer_oracle(Checker& c) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> bit(0, 1);
  std::unordered_map<std::string, FeatureVector> entries;
  std::vector<std::string> labels;
  for (int i = 0; i < 20; ++i) {
    FeatureVector v{};
    for (int d = 0; d < kFeatureDim; ++d) {
      v[d] = static_cast<std::uint8_t>(bit(rng));
    }
    labels.push_back("p" + std::to_string(i));
    entries[labels.back()] = v;
  }
  FeatureTable table(entries);
  auto sequence = [&](int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
    std::vector<std::string> out;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) out.push_back(labels[pick(rng)]);
    return out;
  };
  for (int trial = 0; trial < 500; ++trial) {
    auto hyp = sequence(12);
    auto ref = sequence(12);
    const double got = weighted_edit_distance(hyp, ref, table).total_cost;
    const double want = ts::oracle_edit_cost(hyp, ref, table);
    c.expect_near(got, want, 1e-9,
                  "edit cost trial " + std::to_string(trial));
  }
  // Single-bit substitution returns exactly 1/24.
  FeatureTable one_bit = load_feature_table(
      "x 1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0\n"
      "y 0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0\n");
  c.expect(pfer({"y"}, {"x"}, one_bit).pfer == 1.0 / 24,
           "single-bit substitution must score exactly 1/24");
}

// ---------------------------------------------------------------------
// 2. CTC forward oracle.
void criterion_ctc_oracle(Checker& c) {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 200; ++trial) {
    const int phones = 1 + static_cast<int>(rng() % 4);
    std::vector<std::string> names{kBlankLabel};
    for (int i = 0; i < phones; ++i) {
      names.push_back(std::string(1, static_cast<char>('A' + i)));
    }
    auto inv = std::make_shared<PhoneInventory>(names, 0);
    const int t = 1 + static_cast<int>(rng() % 6);
    const int len = 1 + static_cast<int>(rng() % 3);
    std::vector<std::string> y;
    for (int i = 0; i < len; ++i) {
      y.push_back(inv->label(1 + static_cast<int>(rng() % phones)));
    }
    auto p = ts::random_posteriors(t, inv, rng);
    const double got = ctc_forward_logprob(p, y);
    const double want = ts::oracle_ctc_forward(p, y);
    if (want == kNegInf) {
      c.expect(got == kNegInf,
               "trial " + std::to_string(trial) + ": expected -inf");
    } else {
      c.expect_near(got, want, 1e-6,
                    "log marginal trial " + std::to_string(trial));
    }
  }
}

// ---------------------------------------------------------------------
// 3. Distortion endpoints and range.
void criterion_distortion(Checker& c) {
  std::vector<double> uniform(7, 1.0 / 7);
  FrameDistortion du = frame_distortion(uniform);
  c.expect(du.score == 1.0, "uniform row must score exactly 1");
  std::vector<double> onehot(7, 0.0);
  onehot[3] = 1.0;
  FrameDistortion dh = frame_distortion(onehot);
  c.expect(dh.score == 0.0, "one-hot row must score exactly 0");
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 1000; ++trial) {
    auto row = ts::random_simplex_row(5 + static_cast<int>(rng() % 4), rng);
    FrameDistortion d = frame_distortion(row);
    c.expect(d.score >= 0.0 && d.score <= 1.0, "score outside [0,1]");
    auto shuffled = row;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    FrameDistortion d2 = frame_distortion(shuffled);
    c.expect_near(d2.score, d.score, 1e-12, "permutation invariance");
  }
}

// ---------------------------------------------------------------------
// 4. WFST oracle.
void criterion_wfst_oracle(Checker& c) {
  auto syms = SymbolTable::from_names({"a", "b", "c"});
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 200; ++trial) {
    Wfst a = ts::random_acyclic_wfst(rng, 8, 3, syms, syms);
    Wfst b = ts::random_acyclic_wfst(rng, 8, 3, syms, syms);
    Wfst comp = compose(a, b);
    c.expect(ts::languages_equal(ts::compose_language_bruteforce(a, b),
                                 ts::enumerate_language(comp), 1e-9),
             "composition language mismatch at trial " +
                 std::to_string(trial));
    const double want = ts::oracle_shortest_cost(comp);
    if (std::isinf(want)) {
      try {
        shortest_path(comp);
        c.expect(false, "expected EmptyLanguage");
      } catch (const Error& e) {
        c.expect(e.code() == ErrorCode::kEmptyLanguage, "wrong error");
      }
    } else {
      c.expect_near(shortest_path(comp).cost, want, 1e-9,
                    "shortest path trial " + std::to_string(trial));
    }
  }
  for (int trial = 0; trial < 50; ++trial) {
    Wfst a = ts::random_acyclic_wfst(rng, 6, 3, syms, syms);
    Wfst b = ts::random_acyclic_wfst(rng, 6, 3, syms, syms);
    Wfst d = ts::random_acyclic_wfst(rng, 6, 3, syms, syms);
    c.expect(
        ts::languages_equal(ts::enumerate_language(compose(compose(a, b), d)),
                            ts::enumerate_language(compose(a, compose(b, d))),
                            1e-9),
        "associativity failure at trial " + std::to_string(trial));
  }
}

// ---------------------------------------------------------------------
// 5. Dysfluent constraint vs the rule-model oracle.
void criterion_dysfluent(Checker& c) {
  const std::vector<std::string> alphabet{"AH", "B", "D"};
  auto inv = std::make_shared<PhoneInventory>(
      std::vector<std::string>{kBlankLabel, "AH", "B", "D"}, 0);
  auto phone_syms = SymbolTable::from_inventory(*inv);
  DysfluentPenalties pen;
  pen.max_consec_ins = 2;
  // All canonicals of length <= 2 plus seeded longer ones up to length 4.
  std::vector<std::vector<std::string>> canonicals;
  for (const auto& x : alphabet) {
    canonicals.push_back({x});
    for (const auto& y : alphabet) canonicals.push_back({x, y});
  }
  std::mt19937_64 rng(105);
  for (int extra = 0; extra < 24; ++extra) {
    const int len = 3 + static_cast<int>(rng() % 2);
    std::vector<std::string> cano;
    for (int i = 0; i < len; ++i) {
      cano.push_back(alphabet[rng() % alphabet.size()]);
    }
    canonicals.push_back(std::move(cano));
  }
  for (const auto& canonical : canonicals) {
    Lexicon lex;
    lex.entries.push_back({"w", canonical});
    Wfst h = compile_dysfluent_constraint({"w"}, lex, pen, phone_syms);
    std::function<void(std::vector<std::string>&)> sweep =
        [&](std::vector<std::string>& realized) {
          const double want = ts::oracle_dysfluent_cost(
              realized, canonical, pen, alphabet, nullptr);
          std::vector<int> ids;
          for (const auto& s : realized) ids.push_back(phone_syms->find(s));
          Wfst probe = linear_acceptor(ids, phone_syms);
          try {
            const double got = shortest_path(compose(probe, h)).cost;
            c.expect(std::isfinite(want) && std::abs(got - want) <= 1e-9,
                     "dysfluent cost mismatch");
          } catch (const Error& e) {
            c.expect(e.code() == ErrorCode::kEmptyLanguage &&
                         std::isinf(want),
                     "dysfluent reachability mismatch");
          }
          if (realized.size() == 5) return;
          for (const auto& phone : alphabet) {
            realized.push_back(phone);
            sweep(realized);
            realized.pop_back();
          }
        };
    std::vector<std::string> realized;
    sweep(realized);
  }
}

// ---------------------------------------------------------------------
// 6. Scheduler endpoints and partition.
void criterion_scheduler(Checker& c) {
  auto corpus = ts::make_weak_evidence_corpus(60, 106);
  DecodingGraphs graphs = build_decoding_graphs(
      corpus.lexicon, corpus.lm,
      SymbolTable::from_inventory(*corpus.inventory));
  SchedulerConfig cfg;
  cfg.top_k = 3;
  cfg.skip = true;
  std::vector<CorpusItem> items;
  for (auto& item : corpus.items) {
    items.push_back(
        CorpusItem{std::move(item.posteriors), item.realized, item.words});
  }
  for (const auto& item : items) {
    RouteOutputs routes =
        compute_routes(item.posteriors, graphs, cfg, item.reference_words);
    RefineFn refine = [&](const PosteriorMatrix&) { return routes.refined; };
    c.expect(switch_decode(item.posteriors, 1.0, refine) ==
                 ctc_best_path(item.posteriors),
             "tau >= 1 must reproduce pure 1-best");
    c.expect(switch_decode(item.posteriors, -0.25, refine) == routes.refined,
             "tau < 0 must reproduce pure refine");
    auto mid = switch_decode(item.posteriors, 0.573, refine);
    c.expect(mid == routes.direct || mid == routes.refined,
             "switched output must equal one of the two routes");
  }
  auto rows = tau_sweep(items, graphs, cfg,
                        {-1.0, 0.0, 0.2, 0.4, 0.573, 0.7, 0.9, 1.0, 2.0},
                        corpus.features);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    c.expect(rows[i].refine_rate <= rows[i - 1].refine_rate + 1e-12,
             "refine rate must be monotone non-increasing in tau");
  }
  c.expect(rows.front().refine_rate == 1.0, "tau=-1 must refine everything");
  c.expect(rows.back().refine_rate == 0.0, "tau=2 must refine nothing");
}

// ---------------------------------------------------------------------
// 7. Synthetic weak-evidence mechanism.
void criterion_weak_evidence(Checker& c) {
  auto corpus = ts::make_weak_evidence_corpus(300, 107);
  DecodingGraphs graphs = build_decoding_graphs(
      corpus.lexicon, corpus.lm,
      SymbolTable::from_inventory(*corpus.inventory));
  SchedulerConfig cfg;
  cfg.top_k = 3;
  cfg.skip = true;
  struct Row {
    double s;
    double pfer_direct;
    double pfer_refined;
  };
  std::vector<Row> rows;
  std::vector<CorpusItem> items;
  for (auto& item : corpus.items) {
    items.push_back(
        CorpusItem{std::move(item.posteriors), item.realized, item.words});
  }
  for (const auto& item : items) {
    RouteOutputs routes =
        compute_routes(item.posteriors, graphs, cfg, item.reference_words);
    rows.push_back(
        {routes.distortion,
         pfer(routes.direct, item.ref_phones, corpus.features).pfer,
         pfer(routes.refined, item.ref_phones, corpus.features).pfer});
  }
  std::vector<double> scores, direct_pfers;
  for (const auto& row : rows) {
    scores.push_back(row.s);
    direct_pfers.push_back(row.pfer_direct);
  }
  const double rho = spearman(scores, direct_pfers);
  c.expect(rho > 0.4, "spearman(s, 1-best PFER) = " + std::to_string(rho) +
                          " <= 0.4");
  // Top distortion tercile: refinement with the reference must win.
  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&rows](std::size_t a,
                                                std::size_t b) {
    return rows[a].s > rows[b].s;
  });
  double top_direct = 0.0, top_refined = 0.0;
  const std::size_t tercile = rows.size() / 3;
  for (std::size_t i = 0; i < tercile; ++i) {
    top_direct += rows[order[i]].pfer_direct;
    top_refined += rows[order[i]].pfer_refined;
  }
  c.expect(top_refined < top_direct,
           "top-tercile refinement must beat 1-best (refined " +
               std::to_string(top_refined / tercile) + " vs direct " +
               std::to_string(top_direct / tercile) + ")");
  // Switched PFER at the best tau must not lose to either pure route.
  std::vector<double> grid;
  for (double tau = -1.0; tau <= 2.0; tau += 0.05) grid.push_back(tau);
  auto sweep = tau_sweep(items, graphs, cfg, grid, corpus.features);
  double best_switched = sweep.front().pfer;
  for (const auto& row : sweep) best_switched = std::min(best_switched,
                                                         row.pfer);
  const double pure_refine = sweep.front().pfer;  // tau = -1
  const double pure_direct = sweep.back().pfer;   // tau = 2
  c.expect(best_switched <= std::min(pure_refine, pure_direct) + 1e-12,
           "min-over-tau switched PFER must not exceed the pure routes");
}

// ---------------------------------------------------------------------
// 8. DRRC quadrant Monte Carlo.
void criterion_drrc(Checker& c) {
  SyntheticSpec spec;
  spec.classes = 3;
  spec.seed = 108;
  // Frozen learner trained on an independent fully-labeled draw.
  Learner learner(spec.classes, spec.feature_dim);
  {
    SyntheticSpec train_spec = spec;
    train_spec.seed = 1081;
    train_spec.eta = 0.0;
    SyntheticData train = synth_generate(train_spec, 5000, false);
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
  SyntheticSpec eval_spec = spec;
  eval_spec.seed = 1082;
  RiskEstimate rtrue = true_label_risk(
      synth_generate(eval_spec, 100000, false).samples, learner);
  auto combined = [](double a, double b) { return std::sqrt(a * a + b * b); };

  const long n = 50000;
  const int folds = 5;
  const double eps = 0.05;
  // (i) learned propensity, noisy proxy.
  {
    SyntheticSpec s = spec;
    s.eta = 0.3;
    SyntheticData data = synth_generate(s, n);
    RiskEstimate rhat = cross_fitted_risk(data.samples, learner, folds, eps);
    const double se = combined(rhat.std_error, rtrue.std_error);
    c.expect(std::abs(rhat.value - rtrue.value) <= 3.0 * se,
             "(G) scenario bias " + std::to_string(rhat.value - rtrue.value) +
                 " exceeds 3 x " + std::to_string(se));
  }
  // (ii) misspecified constant propensity, exact proxy.
  {
    SyntheticSpec s = spec;
    s.eta = 0.0;
    SyntheticData data = synth_generate(s, n);
    PropensityModel g = PropensityModel::constant(0.5, eps);
    RiskEstimate rhat = cross_fitted_risk(data.samples, learner, folds, g);
    const double se = combined(rhat.std_error, rtrue.std_error);
    c.expect(std::abs(rhat.value - rtrue.value) <= 3.0 * se,
             "(Y) scenario bias " + std::to_string(rhat.value - rtrue.value) +
                 " exceeds 3 x " + std::to_string(se));
  }
  // (iii) the naive proxy-only risk is biased at eta = 0.3.
  {
    SyntheticSpec s = spec;
    s.eta = 0.3;
    SyntheticData data = synth_generate(s, n);
    RiskEstimate naive = naive_proxy_risk(data.samples, learner);
    const double se = combined(naive.std_error, rtrue.std_error);
    c.expect(std::abs(naive.value - rtrue.value) > 3.0 * se,
             "naive risk should be visibly biased under noisy proxies");
  }
  // (iv) double misspecification matches the exact bias identity.
  {
    SyntheticSpec s = spec;
    s.eta = 0.3;
    SyntheticData data = synth_generate(s, n);
    PropensityModel g = PropensityModel::constant(0.5, eps);
    RiskEstimate rhat = cross_fitted_risk(data.samples, learner, folds, g);
    RhsEstimate rhs = bias_identity_rhs(data.samples, g, data.truth,
                                        learner);
    std::vector<double> diff(data.samples.size());
    for (std::size_t i = 0; i < diff.size(); ++i) {
      diff[i] = rhat.per_sample[i] - rhs.per_sample[i];
    }
    double mean = 0.0;
    for (double v : diff) mean += v;
    mean /= diff.size();
    double ss = 0.0;
    for (double v : diff) ss += (v - mean) * (v - mean);
    const double se_diff =
        std::sqrt(ss / (diff.size() - 1.0) / diff.size());
    const double se = combined(se_diff, rtrue.std_error);
    const double emp_bias = rhat.value - rtrue.value;
    c.expect(std::abs(emp_bias - rhs.value) <= 3.0 * se,
             "empirical bias " + std::to_string(emp_bias) +
                 " vs identity " + std::to_string(rhs.value) +
                 " differ beyond 3 x " + std::to_string(se));
    c.expect(std::abs(rhs.value) > 3.0 * rhs.std_error,
             "double misspecification should give a nonzero identity");
  }
}

// ---------------------------------------------------------------------
// 9. Self-learning at toy scale.
void criterion_self_learning(Checker& c) {
  ToyTaskSpec spec;
  spec.seed = 109;
  ToyCorpus corpus = make_toy_corpus(spec, 40, 160, 60);
  auto run = [&](CorrectorMode mode) {
    SelfLearnOptions opts;
    opts.rounds = 2;
    opts.mode = mode;
    return self_learning(corpus, opts).heldout_pfer.back();
  };
  const double canonical = run(CorrectorMode::kCanonicalOnly);
  const double merged = run(CorrectorMode::kAlignMerge);
  c.expect(merged <= 0.9 * canonical,
           "align-merge PFER " + std::to_string(merged) +
               " must be at least 10% below canonical-only " +
               std::to_string(canonical));
}

// ---------------------------------------------------------------------
// 10. Learner gradient check.
void criterion_gradient(Checker& c) {
  std::mt19937_64 rng(110);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int K = 3, dim = 2;
  std::vector<std::vector<double>> xs;
  std::vector<std::vector<double>> targets;
  for (int i = 0; i < 10; ++i) {
    xs.push_back({gauss(rng), gauss(rng)});
    targets.push_back({gauss(rng), gauss(rng), gauss(rng)});
    double sum = targets.back()[0] + targets.back()[1] + targets.back()[2];
    for (auto& v : targets.back()) v += (1.0 - sum) / 3.0;
  }
  const double h = 1e-5;
  for (int point = 0; point < 20; ++point) {
    Learner learner(K, dim);
    for (auto& w : learner.params()) w = gauss(rng);
    auto grad = learner_gradient(learner, xs, targets);
    double max_err = 0.0;
    for (std::size_t i = 0; i < learner.params().size(); ++i) {
      Learner plus = learner, minus = learner;
      plus.params()[i] += h;
      minus.params()[i] -= h;
      const double fd = (learner_mean_loss(plus, xs, targets) -
                         learner_mean_loss(minus, xs, targets)) /
                        (2.0 * h);
      max_err = std::max(max_err, std::abs(fd - grad[i]));
    }
    c.expect(max_err < 1e-4, "gradient deviation " + std::to_string(max_err) +
                                 " at point " + std::to_string(point));
  }
}

// ---------------------------------------------------------------------
// 11. Pipeline determinism and golden files.
int run_cli(const std::string& args) {
  const std::string cmd = kCli + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_determinism(Checker& c) {
  namespace fs = std::filesystem;
  const std::string conf = kFixtures + "/toy/pipeline.conf";
  const fs::path work = fs::temp_directory_path() / "huper_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  struct Step {
    std::string name;
    std::string args;  // {out} replaced with the output path
  };
  const std::vector<Step> steps = {
      {"decode-1best", "decode-1best --config " + conf + " --out {out}"},
      {"schedule", "schedule --config " + conf + " --out {out}"},
      {"tau-sweep", "tau-sweep --config " + conf +
                        " --grid 0:1:0.25 --out {out}"},
      {"diag", "diag --config " + conf + " --pairs " + kFixtures +
                   "/toy/diag_pairs.txt --out {out}"},
      {"drrc-sim", "drrc-sim --scenario gy --n 20000 --seed 2026 --out "
                   "{out}"},
      {"self-learn", "self-learn --rounds 2 --corrector merge --seed 2026 "
                     "--out {out}"},
  };
  auto run_step = [&](const Step& step, const std::string& suffix,
                      int jobs) {
    const std::string out =
        (work / (step.name + suffix + ".out")).string();
    std::string args = step.args;
    args.replace(args.find("{out}"), 5, out);
    args += " --jobs " + std::to_string(jobs);
    const int code = run_cli(args);
    c.expect(code == 0 || code == 2,
             step.name + " exited with code " + std::to_string(code));
    return out;
  };
  for (const auto& step : steps) {
    const std::string a = run_step(step, "_a", 1);
    const std::string b = run_step(step, "_b", 1);
    const std::string d = run_step(step, "_d", 4);
    const std::string bytes = read_file(a);
    c.expect(bytes == read_file(b),
             step.name + ": two invocations differ");
    c.expect(bytes == read_file(d),
             step.name + ": worker counts 1 and 4 differ");
    c.expect(read_file(a + ".manifest") == read_file(b + ".manifest"),
             step.name + ": manifests differ across invocations");
    const std::string golden = kGolden + "/" + step.name + ".out";
    if (g_regen_golden) {
      write_file(golden, bytes);
    } else {
      c.expect(file_exists(golden), step.name + ": missing golden file");
      if (file_exists(golden)) {
        c.expect(bytes == read_file(golden),
                 step.name + ": output differs from the frozen golden");
      }
    }
  }
  // A second pfer pass over the schedule output exercises the eval path.
  {
    const std::string schedule_out = (work / "schedule_a.out").string();
    std::string hyp;
    for (const auto& line : split_lines(read_file(schedule_out))) {
      if (line.empty()) continue;
      auto fields = split_on(line, '\t');
      hyp += fields[0] + "\t" + fields[3] + "\n";
    }
    const std::string hyp_path = (work / "schedule_hyp.txt").string();
    write_file(hyp_path, hyp);
    const std::string out = (work / "pfer.out").string();
    const int code = run_cli("pfer --hyp " + hyp_path + " --ref " +
                             kFixtures + "/toy/ref_phones.txt --features " +
                             kFixtures + "/toy/features.txt --out " + out);
    c.expect(code == 0, "pfer exited with code " + std::to_string(code));
    const std::string golden = kGolden + "/pfer.out";
    if (g_regen_golden) {
      write_file(golden, read_file(out));
    } else if (file_exists(golden)) {
      c.expect(read_file(out) == read_file(golden),
               "pfer: output differs from the frozen golden");
    } else {
      c.expect(false, "pfer: missing golden file");
    }
  }
  // Fail-fast: a broken config must not leave partial outputs behind.
  {
    const std::string broken_conf = (work / "broken.conf").string();
    write_file(broken_conf,
               "posteriors=" + kFixtures + "/toy/posteriors.post\n" +
                   "symbols=" + kFixtures + "/toy/symbols.txt\n" +
                   "lexicon=" + (work / "missing.txt").string() + "\n" +
                   "lm=" + kFixtures + "/toy/lm.arpa\n");
    const std::string out = (work / "broken.out").string();
    const int code =
        run_cli("schedule --config " + broken_conf + " --out " + out);
    c.expect(code == 1, "broken config must exit 1, got " +
                            std::to_string(code));
    c.expect(!file_exists(out),
             "validation failure must not create partial outputs");
  }
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--regen-golden") g_regen_golden = true;
  }
  const std::vector<Criterion> criteria = {
      {1, "pfer-oracle", 5.0, criterion_pfer_oracle},
      {2, "ctc-forward-oracle", 10.0, criterion_ctc_oracle},
      {3, "distortion-endpoints", 10.0, criterion_distortion},
      {4, "wfst-oracle", 30.0, criterion_wfst_oracle},
      {5, "dysfluent-oracle", 60.0, criterion_dysfluent},
      {6, "scheduler-partition", 60.0, criterion_scheduler},
      {7, "weak-evidence-mechanism", 60.0, criterion_weak_evidence},
      {8, "drrc-quadrants", 60.0, criterion_drrc},
      {9, "self-learning", 120.0, criterion_self_learning},
      {10, "gradient-check", 10.0, criterion_gradient},
      {11, "pipeline-determinism", 120.0, criterion_determinism},
  };
  int failures = 0;
  for (const auto& criterion : criteria) {
    Checker checker;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criterion.body(checker);
    } catch (const std::exception& e) {
      checker.expect(false, std::string("unexpected exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    checker.expect(elapsed < criterion.time_limit_s,
                   "runtime " + std::to_string(elapsed) + "s exceeds " +
                       std::to_string(criterion.time_limit_s) + "s");
    if (checker.ok()) {
      std::printf("PASS  criterion %2d  %-26s (%ld checks, %.2fs)\n",
                  criterion.id, criterion.name, checker.checks(), elapsed);
    } else {
      ++failures;
      std::printf("FAIL  criterion %2d  %-26s %s\n", criterion.id,
                  criterion.name, checker.first_failure().c_str());
    }
  }
  if (failures == 0) {
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  } else {
    std::printf("%d acceptance criteria FAILED\n", failures);
  }
  return failures;
}
