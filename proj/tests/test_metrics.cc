// tests/test_metrics.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "huper/metrics.h"
#include "tests/support/oracles.h"
#include "tests/support/synthetic_corpus.h"

using namespace huper;
namespace ts = huper::testsupport;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kParse;
}

struct RandomPhones {
  std::vector<std::string> labels;
  FeatureTable table;
  std::mt19937_64 rng;

  explicit RandomPhones(int n_phones, std::uint64_t seed) : rng(seed) {
    std::uniform_int_distribution<int> bit(0, 1);
    std::unordered_map<std::string, FeatureVector> entries;
    for (int i = 0; i < n_phones; ++i) {
      FeatureVector v{};
      for (int d = 0; d < kFeatureDim; ++d) {
        v[d] = static_cast<std::uint8_t>(bit(rng));
      }
      std::string label = "p" + std::to_string(i);
      entries[label] = v;
      labels.push_back(label);
    }
    table = FeatureTable(entries);
  }

  std::vector<std::string> sequence(int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
    std::vector<std::string> out;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) out.push_back(labels[pick(rng)]);
    return out;
  }
};

std::vector<std::string> replay_ref(const EditAlignment& a) {
  std::vector<std::string> out;
  for (const auto& op : a.ops) {
    if (op.kind != EditOpKind::kInsert) out.push_back(op.ref);
  }
  return out;
}

std::vector<std::string> replay_hyp(const EditAlignment& a) {
  std::vector<std::string> out;
  for (const auto& op : a.ops) {
    if (op.kind != EditOpKind::kDelete) out.push_back(op.hyp);
  }
  return out;
}

}  // namespace

TEST_CASE("identical sequences align as pure matches") {
  RandomPhones ctx(6, 1);
  std::vector<std::string> seq{"p0", "p1"};
  EditAlignment a = weighted_edit_distance(seq, seq, ctx.table);
  CHECK(a.total_cost == 0.0);
  REQUIRE(a.ops.size() == 2);
  CHECK(a.ops[0].kind == EditOpKind::kMatch);
  CHECK(a.ops[1].kind == EditOpKind::kMatch);
}

TEST_CASE("hypothesis against empty reference costs unit insertions") {
  RandomPhones ctx(3, 2);
  EditAlignment a = weighted_edit_distance({"p0"}, {}, ctx.table);
  CHECK(a.total_cost == 1.0);
  REQUIRE(a.ops.size() == 1);
  CHECK(a.ops[0].kind == EditOpKind::kInsert);
}

TEST_CASE("DP matches the recursive oracle on 500 random pairs") {
  RandomPhones ctx(20, 7);
  for (int trial = 0; trial < 500; ++trial) {
    auto hyp = ctx.sequence(12);
    auto ref = ctx.sequence(12);
    EditAlignment a = weighted_edit_distance(hyp, ref, ctx.table);
    const double oracle = ts::oracle_edit_cost(hyp, ref, ctx.table);
    CHECK(a.total_cost == doctest::Approx(oracle).epsilon(1e-9));
    // Replaying both sides reproduces the inputs; costs add up.
    CHECK(replay_ref(a) == ref);
    CHECK(replay_hyp(a) == hyp);
    double step_sum = 0.0;
    for (const auto& op : a.ops) step_sum += op.cost;
    CHECK(a.total_cost == doctest::Approx(step_sum).epsilon(1e-12));
  }
}

TEST_CASE("memo-free enumeration agrees on tiny pairs") {
  RandomPhones ctx(5, 8);
  for (int trial = 0; trial < 40; ++trial) {
    auto hyp = ctx.sequence(5);
    auto ref = ctx.sequence(5);
    CHECK(weighted_edit_distance(hyp, ref, ctx.table).total_cost ==
          doctest::Approx(ts::oracle_edit_cost_enum(hyp, ref, ctx.table))
              .epsilon(1e-12));
  }
}

TEST_CASE("backtrace tie-break prefers Match over Substitute") {
  // Two phones with identical feature vectors: substitution cost 0 keeps
  // ties live through the whole table.
  std::unordered_map<std::string, FeatureVector> entries;
  entries["a"] = FeatureVector{};
  entries["b"] = FeatureVector{};
  FeatureTable table(entries);
  EditAlignment a = weighted_edit_distance({"a", "b"}, {"a", "b"}, table);
  CHECK(a.total_cost == 0.0);
  for (const auto& op : a.ops) CHECK(op.kind == EditOpKind::kMatch);
}

TEST_CASE("pfer basics") {
  RandomPhones ctx(8, 3);
  SUBCASE("identity is zero") {
    std::vector<std::string> seq{"p0", "p3", "p5"};
    CHECK(pfer(seq, seq, ctx.table).pfer == 0.0);
  }
  SUBCASE("single-bit substitution scores 1/24") {
    FeatureTable t = load_feature_table(
        "AH 1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0\n"
        "T 0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0\n");
    PferResult r = pfer({"T"}, {"AH"}, t);
    CHECK(r.pfer == doctest::Approx(1.0 / 24).epsilon(1e-12));
  }
  SUBCASE("one deletion over five reference phones is 0.2") {
    std::vector<std::string> ref{"p0", "p1", "p2", "p3", "p4"};
    std::vector<std::string> hyp{"p0", "p1", "p3", "p4"};
    CHECK(pfer(hyp, ref, ctx.table).pfer ==
          doctest::Approx(0.2).epsilon(1e-12));
  }
  SUBCASE("empty reference errors") {
    CHECK(code_of([&] { pfer({"p0"}, {}, ctx.table); }) ==
          ErrorCode::kEmptyReference);
  }
  SUBCASE("empty hypothesis scores exactly one") {
    for (int n = 1; n <= 6; ++n) {
      std::vector<std::string> ref(n, "p1");
      CHECK(pfer({}, ref, ctx.table).pfer == 1.0);
    }
  }
}

TEST_CASE("corpus_pfer macro and micro") {
  RandomPhones ctx(10, 4);
  using Pair =
      std::pair<std::vector<std::string>, std::vector<std::string>>;
  SUBCASE("single pair: macro == micro == pfer") {
    Pair p{{"p0"}, {"p0", "p1"}};
    const double macro = corpus_pfer({p}, ctx.table, CorpusMode::kMacro);
    const double micro = corpus_pfer({p}, ctx.table, CorpusMode::kMicro);
    const double single = pfer(p.first, p.second, ctx.table).pfer;
    CHECK(macro == doctest::Approx(single).epsilon(1e-12));
    CHECK(micro == doctest::Approx(single).epsilon(1e-12));
  }
  SUBCASE("two pairs with pfer 0 and 0.2 average to 0.1") {
    std::vector<std::string> ref{"p0", "p1", "p2", "p3", "p4"};
    std::vector<std::string> hyp{"p0", "p1", "p3", "p4"};
    CHECK(corpus_pfer({{ref, ref}, {hyp, ref}}, ctx.table,
                      CorpusMode::kMacro) ==
          doctest::Approx(0.1).epsilon(1e-12));
  }
  SUBCASE("micro equals the oracle sum ratio on a random corpus") {
    std::vector<Pair> pairs;
    double dist = 0.0;
    long len = 0;
    for (int i = 0; i < 30; ++i) {
      auto hyp = ctx.sequence(9);
      auto ref = ctx.sequence(9);
      if (ref.empty()) ref.push_back("p0");
      dist += ts::oracle_edit_cost(hyp, ref, ctx.table);
      len += static_cast<long>(ref.size());
      pairs.emplace_back(std::move(hyp), std::move(ref));
    }
    CHECK(corpus_pfer(pairs, ctx.table, CorpusMode::kMicro) ==
          doctest::Approx(dist / len).epsilon(1e-9));
    SUBCASE("micro is invariant under splitting and recombining") {
      std::vector<Pair> first(pairs.begin(), pairs.begin() + 11);
      std::vector<Pair> second(pairs.begin() + 11, pairs.end());
      double d1 = 0.0, d2 = 0.0;
      long l1 = 0, l2 = 0;
      for (const auto& [h, r] : first) {
        d1 += weighted_edit_distance(h, r, ctx.table).total_cost;
        l1 += static_cast<long>(r.size());
      }
      for (const auto& [h, r] : second) {
        d2 += weighted_edit_distance(h, r, ctx.table).total_cost;
        l2 += static_cast<long>(r.size());
      }
      CHECK(corpus_pfer(pairs, ctx.table, CorpusMode::kMicro) ==
            doctest::Approx((d1 + d2) / (l1 + l2)).epsilon(1e-12));
    }
  }
  SUBCASE("empty corpus errors") {
    CHECK(code_of([&] {
            corpus_pfer({}, ctx.table, CorpusMode::kMacro);
          }) == ErrorCode::kEmptyCorpus);
  }
}

TEST_CASE("edit distance symmetry and triangle inequality") {
  RandomPhones ctx(12, 5);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = ctx.sequence(7);
    auto b = ctx.sequence(7);
    auto c = ctx.sequence(7);
    const double dab = weighted_edit_distance(b, a, ctx.table).total_cost;
    const double dba = weighted_edit_distance(a, b, ctx.table).total_cost;
    CHECK(dab == doctest::Approx(dba).epsilon(1e-12));
    const double dac = weighted_edit_distance(c, a, ctx.table).total_cost;
    const double dbc = weighted_edit_distance(c, b, ctx.table).total_cost;
    CHECK(dac <= dab + dbc + 1e-9);
  }
}

TEST_CASE("spearman basics") {
  SUBCASE("perfect monotone") {
    CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("reversal") {
    CHECK(spearman({1, 2, 3, 4}, {4, 3, 2, 1}) ==
          doctest::Approx(-1.0).epsilon(1e-12));
  }
  SUBCASE("hand-ranked example") {
    CHECK(spearman({1, 2, 3, 4}, {1, 3, 2, 4}) ==
          doctest::Approx(0.8).epsilon(1e-12));
  }
  SUBCASE("tied ranks average") {
    // ranks a = (1.5, 1.5, 3); b = (1, 2, 3); Pearson = 1.5/sqrt(3).
    CHECK(spearman({1, 1, 2}, {1, 2, 3}) ==
          doctest::Approx(0.8660254037844387).epsilon(1e-12));
  }
  SUBCASE("errors") {
    CHECK(code_of([] { spearman({1, 2}, {1, 2, 3}); }) ==
          ErrorCode::kLengthMismatch);
    CHECK(code_of([] { spearman({1, 1, 1}, {1, 2, 3}); }) ==
          ErrorCode::kDegenerateRanks);
    CHECK(code_of([] { spearman({1}, {1}); }) ==
          ErrorCode::kDegenerateRanks);
  }
}

TEST_CASE("centroid RSA recovers feature geometry from feature embeddings") {
  auto [labels, table] = ts::fixed_norm_feature_set(6, 31);
  std::vector<std::pair<std::vector<double>, std::string>> segments;
  for (const auto& label : labels) {
    std::vector<double> emb;
    for (auto bit : table.features(label)) {
      emb.push_back(static_cast<double>(bit));
    }
    // Two identical segments per phone exercise the mean pooling.
    segments.emplace_back(emb, label);
    segments.emplace_back(emb, label);
  }
  CHECK(centroid_rsa(segments, table) >= 0.99);
}

TEST_CASE("centroid RSA is near zero under permuted references") {
  // Permuting which phone owns which centroid destroys the alignment
  // between embedding distances and feature distances.
  auto [labels, table] = ts::fixed_norm_feature_set(8, 32);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<double>> base;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::vector<double> emb(16);
    for (auto& v : emb) v = gauss(rng);
    base.push_back(std::move(emb));
  }
  double sum = 0.0;
  int trials = 100;
  std::vector<std::size_t> perm(labels.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  for (int t = 0; t < trials; ++t) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<std::vector<double>, std::string>> segments;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      segments.emplace_back(base[perm[i]], labels[i]);
    }
    sum += centroid_rsa(segments, table);
  }
  CHECK(std::abs(sum / trials) < 0.1);
}

TEST_CASE("centroid RSA boundary conditions") {
  auto [labels, table] = ts::fixed_norm_feature_set(3, 33);
  SUBCASE("two phones leave a single pair") {
    std::vector<std::pair<std::vector<double>, std::string>> segments{
        {{1.0, 0.0}, labels[0]}, {{0.0, 1.0}, labels[1]}};
    CHECK(code_of([&] { centroid_rsa(segments, table); }) ==
          ErrorCode::kDegenerateRanks);
  }
  SUBCASE("unknown phone") {
    std::vector<std::pair<std::vector<double>, std::string>> segments{
        {{1.0, 0.0}, "zz"}, {{0.0, 1.0}, labels[1]}, {{1.0, 1.0}, labels[2]}};
    CHECK(code_of([&] { centroid_rsa(segments, table); }) ==
          ErrorCode::kUnknownLabel);
  }
  SUBCASE("dimension mismatch") {
    std::vector<std::pair<std::vector<double>, std::string>> segments{
        {{1.0, 0.0}, labels[0]}, {{0.0}, labels[1]}};
    CHECK(code_of([&] { centroid_rsa(segments, table); }) ==
          ErrorCode::kDimensionMismatch);
  }
}
