// drrc.cc

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

#include "huper/drrc.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace huper {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double sigmoid(double t) {
  if (t > 35.0) t = 35.0;
  if (t < -35.0) t = -35.0;
  return 1.0 / (1.0 + std::exp(-t));
}

// Mean and standard error accumulated in the given order.
std::pair<double, double> mean_se(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = (v.size() > 1) ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return {mean, sd / std::sqrt(n)};
}

}  // namespace

int fold_of(long sample_id, int folds) {
  return static_cast<int>(splitmix64(static_cast<std::uint64_t>(sample_id)) %
                          static_cast<std::uint64_t>(folds));
}

PropensityModel::PropensityModel(Fn raw, double eps)
    : raw_(std::move(raw)), eps_(eps) {
  if (!(eps_ > 0.0 && eps_ < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "propensity clip floor must lie in (0, 1)");
  }
}

double PropensityModel::operator()(const std::vector<double>& z,
                                   int y_hat) const {
  return std::clamp(raw_(z, y_hat), eps_, 1.0);
}

PropensityModel PropensityModel::constant(double p, double eps) {
  return PropensityModel(
      [p](const std::vector<double>&, int) { return p; }, eps);
}

Learner::Learner(int classes, int dim, double p_min)
    : classes_(classes), dim_(dim), p_min_(p_min) {
  if (classes_ < 2 || dim_ < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "learner needs K >= 2 classes and dim >= 1");
  }
  if (!(p_min_ > 0.0) || p_min_ * classes_ >= 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "bad probability floor");
  }
  params_.assign(static_cast<std::size_t>(classes_) * (dim_ + 1), 0.0);
}

std::vector<double> Learner::predict(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "feature dimension mismatch");
  }
  std::vector<double> u(classes_, 0.0);
  for (int k = 0; k < classes_; ++k) {
    const double* row = params_.data() + static_cast<std::size_t>(k) *
                                             (dim_ + 1);
    double acc = row[dim_];
    for (int d = 0; d < dim_; ++d) acc += row[d] * x[d];
    u[k] = acc;
  }
  const double umax = *std::max_element(u.begin(), u.end());
  double zsum = 0.0;
  for (int k = 0; k < classes_; ++k) {
    u[k] = std::exp(u[k] - umax);
    zsum += u[k];
  }
  const double c = 1.0 - classes_ * p_min_;
  for (int k = 0; k < classes_; ++k) u[k] = p_min_ + c * (u[k] / zsum);
  return u;
}

std::vector<double> Learner::scores(const std::vector<double>& x) const {
  auto p = predict(x);
  for (auto& v : p) v = -std::log(v);
  return p;
}

double log_loss(const std::vector<double>& q,
                const std::vector<double>& probs) {
  if (q.size() != probs.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "log_loss: size mismatch");
  }
  double loss = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (!(probs[k] > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "log_loss needs strictly positive probabilities");
    }
    loss -= q[k] * std::log(probs[k]);
  }
  return loss;
}

double learner_mean_loss(const Learner& learner,
                         const std::vector<std::vector<double>>& xs,
                         const std::vector<std::vector<double>>& targets) {
  if (xs.size() != targets.size() || xs.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "loss needs aligned, non-empty batches");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sum += log_loss(targets[i], learner.predict(xs[i]));
  }
  return sum / static_cast<double>(xs.size());
}

std::vector<double> learner_gradient(
    const Learner& learner, const std::vector<std::vector<double>>& xs,
    const std::vector<std::vector<double>>& targets) {
  if (xs.size() != targets.size() || xs.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "gradient needs aligned, non-empty batches");
  }
  const int K = learner.classes();
  const int dim = learner.dim();
  const double c = 1.0 - K * learner.p_min();
  std::vector<double> grad(learner.params().size(), 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& x = xs[i];
    const auto& q = targets[i];
    if (static_cast<int>(q.size()) != K) {
      throw Error(ErrorCode::kDimensionMismatch, "target dimension mismatch");
    }
    const auto p = learner.predict(x);
    // Recover softmax values from the floored probabilities.
    std::vector<double> s(K);
    double qp_dot_s = 0.0;
    for (int k = 0; k < K; ++k) {
      s[k] = (p[k] - learner.p_min()) / c;
      qp_dot_s += (q[k] / p[k]) * s[k];
    }
    for (int k = 0; k < K; ++k) {
      const double du = -c * s[k] * (q[k] / p[k] - qp_dot_s);
      double* row = grad.data() + static_cast<std::size_t>(k) * (dim + 1);
      for (int d = 0; d < dim; ++d) row[d] += du * x[d];
      row[dim] += du;
    }
  }
  const double inv_n = 1.0 / static_cast<double>(xs.size());
  for (auto& g : grad) {
    g *= inv_n;
    if (!std::isfinite(g)) {
      throw Error(ErrorCode::kNonFiniteGradient,
                  "non-finite gradient component");
    }
  }
  return grad;
}

void train_learner(Learner& learner,
                   const std::vector<std::vector<double>>& xs,
                   const std::vector<std::vector<double>>& targets, int steps,
                   double rate) {
  for (int step = 0; step < steps; ++step) {
    auto grad = learner_gradient(learner, xs, targets);
    auto& params = learner.params();
    for (std::size_t i = 0; i < params.size(); ++i) {
      params[i] -= rate * grad[i];
    }
  }
}

std::vector<double> corrector_target(const DrrcSample& w,
                                     const PropensityModel& g, int classes) {
  if (w.y_hat < 0 || w.y_hat >= classes) {
    throw Error(ErrorCode::kInvalidArgument, "proxy class out of range");
  }
  std::vector<double> c(classes, 0.0);
  c[w.y_hat] = 1.0;
  if (w.a == 1) {
    if (!w.y.has_value()) {
      throw Error(ErrorCode::kMissingObservedLabel,
                  "observed sample lacks its true label");
    }
    const double inv_g = 1.0 / g(w.z, w.y_hat);
    c[*w.y] += inv_g;
    c[w.y_hat] -= inv_g;
  }
  return c;
}

namespace {

// Dense symmetric solve via Gaussian elimination with partial pivoting.
std::vector<double> solve_linear(std::vector<std::vector<double>> m,
                                 std::vector<double> rhs) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    if (m[col][col] == 0.0) {
      throw Error(ErrorCode::kDegenerateFlags,
                  "singular system in propensity fit");
    }
    for (int r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double acc = rhs[r];
    for (int c = r + 1; c < n; ++c) acc -= m[r][c] * x[c];
    x[r] = acc / m[r][r];
  }
  return x;
}

std::vector<double> propensity_features(const DrrcSample& w, int classes) {
  std::vector<double> phi(w.z.size() + classes, 0.0);
  std::copy(w.z.begin(), w.z.end(), phi.begin());
  phi[w.z.size() + w.y_hat] = 1.0;
  return phi;
}

// Newton-fitted logistic regression of a on (z, one-hot y_hat). The tiny
// ridge keeps separable problems solvable; predictions are clipped anyway.
std::vector<double> fit_logistic(const std::vector<const DrrcSample*>& rows,
                                 int classes) {
  constexpr double kRidge = 1e-6;
  constexpr int kMaxIter = 30;
  if (rows.empty()) {
    throw Error(ErrorCode::kFoldTooSmall, "propensity fit got no samples");
  }
  bool saw0 = false, saw1 = false;
  for (const auto* w : rows) {
    (w->a == 1 ? saw1 : saw0) = true;
  }
  if (!saw0 || !saw1) {
    throw Error(ErrorCode::kDegenerateFlags,
                "observation flags are all equal; propensity unidentifiable");
  }
  const int dim = static_cast<int>(rows.front()->z.size()) + classes;
  std::vector<double> theta(dim, 0.0);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    std::vector<double> grad(dim, 0.0);
    std::vector<std::vector<double>> hess(dim,
                                          std::vector<double>(dim, 0.0));
    for (const auto* w : rows) {
      const auto phi = propensity_features(*w, classes);
      double t = 0.0;
      for (int d = 0; d < dim; ++d) t += theta[d] * phi[d];
      const double mu = sigmoid(t);
      const double resid = mu - static_cast<double>(w->a);
      const double wgt = std::max(mu * (1.0 - mu), 1e-12);
      for (int d = 0; d < dim; ++d) {
        grad[d] += resid * phi[d];
        for (int e = d; e < dim; ++e) hess[d][e] += wgt * phi[d] * phi[e];
      }
    }
    for (int d = 0; d < dim; ++d) {
      grad[d] += kRidge * theta[d];
      hess[d][d] += kRidge;
      for (int e = 0; e < d; ++e) hess[d][e] = hess[e][d];
    }
    auto delta = solve_linear(hess, grad);
    double max_step = 0.0;
    for (int d = 0; d < dim; ++d) {
      theta[d] -= delta[d];
      max_step = std::max(max_step, std::abs(delta[d]));
    }
    if (max_step < 1e-10) break;
  }
  return theta;
}

PropensityModel logistic_model(std::vector<double> theta, int classes,
                               double eps) {
  return PropensityModel(
      [theta = std::move(theta), classes](const std::vector<double>& z,
                                          int y_hat) {
        double t = 0.0;
        for (std::size_t d = 0; d < z.size(); ++d) t += theta[d] * z[d];
        t += theta[z.size() + y_hat];
        return sigmoid(t);
      },
      eps);
}

}  // namespace

PropensityModel fit_propensity(const std::vector<DrrcSample>& samples,
                               int classes, double eps) {
  std::vector<const DrrcSample*> rows;
  rows.reserve(samples.size());
  for (const auto& w : samples) rows.push_back(&w);
  return logistic_model(fit_logistic(rows, classes), classes, eps);
}

namespace {

// Indices sorted by sample id so every accumulation below is independent
// of the caller's ordering.
std::vector<std::size_t> id_order(const std::vector<DrrcSample>& samples) {
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&samples](std::size_t a, std::size_t b) {
              return samples[a].id < samples[b].id;
            });
  return order;
}

RiskEstimate finish_estimate(const std::vector<std::size_t>& order,
                             const std::vector<double>& per_sample) {
  std::vector<double> ordered;
  ordered.reserve(order.size());
  for (auto i : order) ordered.push_back(per_sample[i]);
  auto [mean, se] = mean_se(ordered);
  RiskEstimate est;
  est.value = mean;
  est.std_error = se;
  est.per_sample = per_sample;
  return est;
}

template <typename GetProp>
RiskEstimate corrected_risk(const std::vector<DrrcSample>& samples,
                            const Learner& learner, const GetProp& g_of) {
  std::vector<double> per_sample(samples.size(), 0.0);
  const int K = learner.classes();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& w = samples[i];
    const PropensityModel& g = g_of(i);
    per_sample[i] = log_loss(corrector_target(w, g, K), learner.predict(w.x));
  }
  return finish_estimate(id_order(samples), per_sample);
}

}  // namespace

RiskEstimate cross_fitted_risk(const std::vector<DrrcSample>& samples,
                               const Learner& learner, int folds,
                               double eps) {
  if (folds < 2) {
    throw Error(ErrorCode::kInvalidArgument, "cross-fitting needs J >= 2");
  }
  if (static_cast<long>(samples.size()) < 2L * folds) {
    throw Error(ErrorCode::kFoldTooSmall, "need n >= 2J samples");
  }
  const auto order = id_order(samples);
  // Fit one model per fold on the out-of-fold rows, visiting samples in id
  // order so the estimate ignores input permutation.
  std::vector<PropensityModel> models;
  models.reserve(folds);
  for (int j = 0; j < folds; ++j) {
    std::vector<const DrrcSample*> rows;
    for (auto i : order) {
      if (fold_of(samples[i].id, folds) != j) rows.push_back(&samples[i]);
    }
    if (rows.empty()) {
      throw Error(ErrorCode::kFoldTooSmall,
                  "a fold has no out-of-fold training data");
    }
    models.push_back(logistic_model(fit_logistic(rows, learner.classes()),
                                    learner.classes(), eps));
  }
  return corrected_risk(samples, learner,
                        [&](std::size_t i) -> const PropensityModel& {
                          return models[fold_of(samples[i].id, folds)];
                        });
}

RiskEstimate cross_fitted_risk(const std::vector<DrrcSample>& samples,
                               const Learner& learner, int folds,
                               const PropensityModel& g) {
  if (folds < 2) {
    throw Error(ErrorCode::kInvalidArgument, "cross-fitting needs J >= 2");
  }
  if (static_cast<long>(samples.size()) < 2L * folds) {
    throw Error(ErrorCode::kFoldTooSmall, "need n >= 2J samples");
  }
  return corrected_risk(
      samples, learner,
      [&](std::size_t) -> const PropensityModel& { return g; });
}

RiskEstimate naive_proxy_risk(const std::vector<DrrcSample>& samples,
                              const Learner& learner) {
  std::vector<double> per_sample(samples.size(), 0.0);
  std::vector<double> q(learner.classes(), 0.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::fill(q.begin(), q.end(), 0.0);
    q[samples[i].y_hat] = 1.0;
    per_sample[i] = log_loss(q, learner.predict(samples[i].x));
  }
  return finish_estimate(id_order(samples), per_sample);
}

RiskEstimate true_label_risk(const std::vector<DrrcSample>& samples,
                             const Learner& learner) {
  std::vector<double> per_sample(samples.size(), 0.0);
  std::vector<double> q(learner.classes(), 0.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!samples[i].y.has_value()) {
      throw Error(ErrorCode::kMissingObservedLabel,
                  "true-label risk needs every label");
    }
    std::fill(q.begin(), q.end(), 0.0);
    q[*samples[i].y] = 1.0;
    per_sample[i] = log_loss(q, learner.predict(samples[i].x));
  }
  return finish_estimate(id_order(samples), per_sample);
}

std::vector<double> cross_fitted_propensity(
    const std::vector<DrrcSample>& samples, int classes, int folds,
    double eps) {
  if (folds < 2) {
    throw Error(ErrorCode::kInvalidArgument, "cross-fitting needs J >= 2");
  }
  const auto order = id_order(samples);
  std::vector<double> out(samples.size(), 0.0);
  for (int j = 0; j < folds; ++j) {
    std::vector<const DrrcSample*> rows;
    for (auto i : order) {
      if (fold_of(samples[i].id, folds) != j) rows.push_back(&samples[i]);
    }
    auto model = logistic_model(fit_logistic(rows, classes), classes, eps);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (fold_of(samples[i].id, folds) == j) {
        out[i] = model(samples[i].z, samples[i].y_hat);
      }
    }
  }
  return out;
}

SyntheticData synth_generate(const SyntheticSpec& spec, long n,
                             bool hide_unobserved) {
  if (spec.classes < 2 || spec.feature_dim < 1 || !(spec.noise_sd > 0.0) ||
      spec.eta < 0.0 || spec.eta >= 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "bad synthetic spec");
  }
  const int K = spec.classes;
  const int dim = spec.feature_dim;
  std::vector<std::vector<double>> means(K, std::vector<double>(dim, 0.0));
  for (int k = 0; k < K; ++k) {
    if (dim == 1) {
      means[k][0] = spec.class_sep * (k - 0.5 * (K - 1));
    } else {
      const double angle = 2.0 * M_PI * k / K;
      means[k][0] = spec.class_sep * std::cos(angle);
      means[k][1] = spec.class_sep * std::sin(angle);
    }
  }
  std::vector<double> prop_w = spec.prop_w;
  if (prop_w.empty()) {
    prop_w.assign(dim, 0.0);
    prop_w[0] = 0.8;
  }
  if (static_cast<int>(prop_w.size()) != dim) {
    throw Error(ErrorCode::kInvalidArgument, "prop_w dimension mismatch");
  }
  std::vector<double> prop_b = spec.prop_b;
  if (prop_b.empty()) {
    prop_b.resize(K);
    for (int k = 0; k < K; ++k) {
      prop_b[k] = (K == 1) ? 0.0 : -1.0 + 2.0 * k / (K - 1);
    }
  }
  if (static_cast<int>(prop_b.size()) != K) {
    throw Error(ErrorCode::kInvalidArgument, "prop_b dimension mismatch");
  }

  auto g_star = [prop_w, prop_b](const std::vector<double>& z, int y_hat) {
    double t = prop_b[y_hat];
    for (std::size_t d = 0; d < z.size(); ++d) t += prop_w[d] * z[d];
    return sigmoid(t);
  };
  const double eta = spec.eta;
  const double sd = spec.noise_sd;
  auto f_star = [means, K, sd, eta](const DrrcSample& w) {
    std::vector<double> logit(K, 0.0);
    for (int k = 0; k < K; ++k) {
      double d2 = 0.0;
      for (std::size_t d = 0; d < w.x.size(); ++d) {
        const double diff = w.x[d] - means[k][d];
        d2 += diff * diff;
      }
      const double proxy =
          (k == w.y_hat) ? (1.0 - eta) : (eta / std::max(K - 1, 1));
      logit[k] = -d2 / (2.0 * sd * sd) + std::log(std::max(proxy, 1e-300));
    }
    const double m = *std::max_element(logit.begin(), logit.end());
    double zsum = 0.0;
    for (int k = 0; k < K; ++k) {
      logit[k] = std::exp(logit[k] - m);
      zsum += logit[k];
    }
    for (int k = 0; k < K; ++k) logit[k] /= zsum;
    return logit;
  };

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> klass(0, K - 1);

  SyntheticData out;
  out.samples.reserve(n);
  for (long i = 0; i < n; ++i) {
    DrrcSample w;
    w.id = i;
    const int y = klass(rng);
    w.x.resize(dim);
    for (int d = 0; d < dim; ++d) w.x[d] = means[y][d] + sd * gauss(rng);
    if (unif(rng) < eta) {
      int other = klass(rng);
      while (other == y && K > 1) other = klass(rng);
      w.y_hat = other;
    } else {
      w.y_hat = y;
    }
    w.z = w.x;
    w.a = (unif(rng) < g_star(w.z, w.y_hat)) ? 1 : 0;
    w.y = y;
    if (hide_unobserved && w.a == 0) w.y.reset();
    out.samples.push_back(std::move(w));
  }
  out.truth.g_star = g_star;
  out.truth.f_star = f_star;
  return out;
}

RhsEstimate bias_identity_rhs(const std::vector<DrrcSample>& samples,
                              const std::vector<double>& g_values,
                              const SyntheticTruth& truth,
                              const Learner& learner) {
  if (!truth.g_star || !truth.f_star) {
    throw Error(ErrorCode::kInvalidArgument,
                "bias identity needs generator truth handles");
  }
  if (g_values.size() != samples.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "per-sample propensities misaligned");
  }
  std::vector<double> per_sample(samples.size(), 0.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& w = samples[i];
    const double g = g_values[i];
    const double gs = truth.g_star(w.z, w.y_hat);
    const auto fs = truth.f_star(w);
    const auto s = learner.scores(w.x);
    double dot = 0.0;
    for (int k = 0; k < learner.classes(); ++k) {
      const double ek = (k == w.y_hat) ? 1.0 : 0.0;
      dot += (ek - fs[k]) * s[k];
    }
    per_sample[i] = ((g - gs) / g) * dot;
  }
  auto [mean, se] = mean_se(per_sample);
  return {mean, se, std::move(per_sample)};
}

RhsEstimate bias_identity_rhs(const std::vector<DrrcSample>& samples,
                              const PropensityModel& g,
                              const SyntheticTruth& truth,
                              const Learner& learner) {
  std::vector<double> g_values(samples.size(), 0.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    g_values[i] = g(samples[i].z, samples[i].y_hat);
  }
  return bias_identity_rhs(samples, g_values, truth, learner);
}

}  // namespace huper
