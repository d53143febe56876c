// huper/drrc.h

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

#ifndef HUPER_DRRC_H_
#define HUPER_DRRC_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "huper/error.h"

namespace huper {

// One draw of the missing-label model W = (X, Z, Y, Yhat, A). Classes are
// 0-based. y is absent when the true label is hidden (only possible with
// a == 0).
struct DrrcSample {
  std::vector<double> x;
  std::vector<double> z;
  std::optional<int> y;
  int y_hat = 0;
  int a = 0;
  long id = 0;  // stable id; fold assignment hashes this
};

// Propensity predictor clipped into [eps, 1] on every call.
class PropensityModel {
 public:
  using Fn = std::function<double(const std::vector<double>&, int)>;

  PropensityModel(Fn raw, double eps);
  double operator()(const std::vector<double>& z, int y_hat) const;
  double eps() const { return eps_; }

  static PropensityModel constant(double p, double eps);

 private:
  Fn raw_;
  double eps_;
};

// Multinomial logistic class-probability model with a probability floor:
//   p(k|x) = p_min + (1 - K*p_min) * softmax(W x + b)_k
// so probabilities stay in [p_min, 1] and sum to one, keeping every log
// score bounded.
class Learner {
 public:
  Learner(int classes, int dim, double p_min = 1e-12);

  int classes() const { return classes_; }
  int dim() const { return dim_; }
  double p_min() const { return p_min_; }

  std::vector<double> predict(const std::vector<double>& x) const;
  // Score vector s_k(x) = -log p(k|x).
  std::vector<double> scores(const std::vector<double>& x) const;

  // Flat parameters: K rows of (dim weights + bias).
  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }

 private:
  int classes_;
  int dim_;
  double p_min_;
  std::vector<double> params_;
};

// Mean log-loss over a batch and its gradient with respect to the flat
// parameters. Targets may be arbitrary K-vectors (the loss is linear in
// the target).
double learner_mean_loss(const Learner& learner,
                         const std::vector<std::vector<double>>& xs,
                         const std::vector<std::vector<double>>& targets);
std::vector<double> learner_gradient(
    const Learner& learner, const std::vector<std::vector<double>>& xs,
    const std::vector<std::vector<double>>& targets);

// Full-batch gradient descent on the mean log-loss; steps == 0 leaves the
// learner untouched.
void train_learner(Learner& learner,
                   const std::vector<std::vector<double>>& xs,
                   const std::vector<std::vector<double>>& targets, int steps,
                   double rate);

// Proxy-baseline AIPW corrector:
//   C_g(W) = e(yhat) + (a / g(z, yhat)) * (e(y) - e(yhat)).
// Components can leave [0,1] but always sum to one.
std::vector<double> corrector_target(const DrrcSample& w,
                                     const PropensityModel& g, int classes);

// -sum_k q_k log probs_k; linear in q.
double log_loss(const std::vector<double>& q,
                const std::vector<double>& probs);

// Logistic regression of the observation flag on (z, one-hot y_hat),
// Newton-fitted, outputs clipped to [eps, 1]. Needs both flag values
// present.
PropensityModel fit_propensity(const std::vector<DrrcSample>& samples,
                               int classes, double eps);

struct RiskEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::vector<double> per_sample;  // aligned with the input order
};

// Cross-fitted DRRC risk: J-fold split by a permutation-invariant hash of
// sample ids; out-of-fold propensity fits; mean corrected log-loss for a
// frozen learner.
RiskEstimate cross_fitted_risk(const std::vector<DrrcSample>& samples,
                               const Learner& learner, int folds, double eps);

// Same estimator with a fixed propensity model (no fitting).
RiskEstimate cross_fitted_risk(const std::vector<DrrcSample>& samples,
                               const Learner& learner, int folds,
                               const PropensityModel& g);

// Naive proxy-only risk (C := e(yhat)); the uncorrected baseline.
RiskEstimate naive_proxy_risk(const std::vector<DrrcSample>& samples,
                              const Learner& learner);

// Plain empirical risk on true labels; every sample must carry y.
RiskEstimate true_label_risk(const std::vector<DrrcSample>& samples,
                             const Learner& learner);

// Generator-side truth: exact propensity and the conditional class
// distribution f*(x, z, yhat) in closed form.
struct SyntheticTruth {
  std::function<double(const std::vector<double>&, int)> g_star;
  std::function<std::vector<double>(const DrrcSample&)> f_star;
};

// Gaussian-mixture feature model with a proxy noise channel and a logistic
// missingness law:  X|Y ~ N(mu_Y, sd^2 I);  Yhat = Y w.p. 1-eta else a
// uniform other class;  Z copies X;  A|Z,Yhat ~ Bernoulli(sigmoid(w.z +
// b_yhat)).
struct SyntheticSpec {
  int classes = 3;
  int feature_dim = 2;
  double class_sep = 2.0;
  double noise_sd = 1.0;
  double eta = 0.0;
  std::vector<double> prop_w;  // defaults to (0.8, 0, ...)
  std::vector<double> prop_b;  // defaults to per-class offsets in [-1, 1]
  std::uint64_t seed = 1;
};

struct SyntheticData {
  std::vector<DrrcSample> samples;
  SyntheticTruth truth;
};

// hide_unobserved erases y on a == 0 rows (the estimation view); pass
// false to keep all labels for population oracles.
SyntheticData synth_generate(const SyntheticSpec& spec, long n,
                             bool hide_unobserved = true);

struct RhsEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::vector<double> per_sample;
};

// Monte Carlo estimate of the exact bias identity right-hand side,
//   E[ ((g - g*) / g) * (e(yhat) - f*)^T s_theta(X) ],
// using generator truth. Also usable with per-sample g values (e.g. the
// cross-fitted predictions).
RhsEstimate bias_identity_rhs(const std::vector<DrrcSample>& samples,
                              const PropensityModel& g,
                              const SyntheticTruth& truth,
                              const Learner& learner);
RhsEstimate bias_identity_rhs(const std::vector<DrrcSample>& samples,
                              const std::vector<double>& g_values,
                              const SyntheticTruth& truth,
                              const Learner& learner);

// Out-of-fold propensity predictions per sample under the learned
// cross-fitted scheme (matching cross_fitted_risk's folds).
std::vector<double> cross_fitted_propensity(
    const std::vector<DrrcSample>& samples, int classes, int folds,
    double eps);

// Deterministic fold id from a sample id (permutation invariant).
int fold_of(long sample_id, int folds);

}  // namespace huper

#endif  // HUPER_DRRC_H_
