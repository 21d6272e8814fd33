// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lcomp/core.hpp"
#include "lcomp/errors.hpp"
#include "oracle.hpp"

using namespace lcomp;

TEST_CASE("candidate likelihood is the geometric mean of token probabilities") {
  CHECK(compute_candidate_likelihood(TokenLogProbs({std::log(0.5), std::log(0.5)})) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(compute_candidate_likelihood(TokenLogProbs({std::log(0.3)})) ==
        doctest::Approx(0.3).epsilon(1e-15));
  // sqrt(0.9 * 0.1) = 0.3
  CHECK(compute_candidate_likelihood(TokenLogProbs({std::log(0.9), std::log(0.1)})) ==
        doctest::Approx(0.3).epsilon(1e-14));
  CHECK(compute_candidate_likelihood(TokenLogProbs({0.0, 0.0, 0.0})) == 1.0);
}

TEST_CASE("token log-probs reject empty, positive and non-finite input") {
  CHECK_THROWS_AS(TokenLogProbs({}), InvalidRecord);
  CHECK_THROWS_AS(TokenLogProbs({-0.1, 0.2}), InvalidRecord);
  CHECK_THROWS_AS(TokenLogProbs({-0.1, NAN}), InvalidRecord);
  CHECK_THROWS_AS(TokenLogProbs({-INFINITY}), InvalidRecord);
}

TEST_CASE("candidate likelihood is permutation invariant and within (0, 1]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> logp(-8.0, 0.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v(1 + rng() % 16);
    for (double& x : v) x = logp(rng);
    const double a = compute_candidate_likelihood(TokenLogProbs(v));
    std::shuffle(v.begin(), v.end(), rng);
    const double b = compute_candidate_likelihood(TokenLogProbs(v));
    CHECK(a > 0.0);
    CHECK(a <= 1.0);
    CHECK(a == doctest::Approx(b).epsilon(1e-14));
    CHECK(std::abs(a - oracle::geometric_mean(v)) < 1e-12);
  }
}

TEST_CASE("normalize is proportional normalization of exponentiated scores") {
  const auto even = normalize(std::vector{std::log(0.2), std::log(0.2)});
  CHECK(even[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(even[1] == doctest::Approx(0.5).epsilon(1e-15));

  const auto d = normalize(std::vector{std::log(0.6), std::log(0.2), std::log(0.2)});
  CHECK(d[0] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(d[1] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(d[2] == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("normalize is shift invariant, positive and sums to one") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> val(-30.0, 0.0), shift(-50.0, 50.0);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> x(2 + rng() % 8);
    for (double& v : x) v = val(rng);
    const double c = shift(rng);
    std::vector<double> y = x;
    for (double& v : y) v += c;
    const auto a = normalize(x);
    const auto b = normalize(y);
    CHECK(std::abs(a.sum() - 1.0) <= kSumTolerance);
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(a[i] > 0.0);
      CHECK(std::abs(a[i] - b[i]) <= 1e-12);
    }
  }
}

TEST_CASE("normalize clamps very small log-probabilities so entries stay positive") {
  const auto d = normalize(std::vector{0.0, -5000.0});
  CHECK(d[1] > 0.0);
  CHECK(d[0] < 1.0 + 1e-15);
  CHECK(argmax_option(d) == 0);
}

TEST_CASE("normalize rejects short or non-finite input") {
  CHECK_THROWS_AS(normalize(std::vector{-1.0}), InvalidRecord);
  CHECK_THROWS_AS(normalize(std::vector<double>{}), InvalidRecord);
  CHECK_THROWS_AS(normalize(std::vector<double>{-1.0, NAN}), InvalidRecord);
  CHECK_THROWS_AS(normalize(std::vector<double>{-1.0, INFINITY}), InvalidRecord);
}

TEST_CASE("argmax picks the lowest index on ties") {
  CHECK(argmax_option(Distribution({0.2, 0.7, 0.1})) == 1);
  CHECK(argmax_option(Distribution({0.5, 0.5})) == 0);
  CHECK(argmax_option(Distribution({0.1, 0.45, 0.45})) == 1);
  CHECK(argmax_option(Distribution({0.7, 0.3})) == 0);
  CHECK(argmax_option(Distribution({-0.2, -0.1, 1.3})) == 2);
}

TEST_CASE("prompt variants parse, with positive as an alias of simple") {
  CHECK(parse_variant("simple") == PromptVariant::simple);
  CHECK(parse_variant("positive") == PromptVariant::simple);
  CHECK(parse_variant("noimg") == PromptVariant::noimg);
  CHECK(parse_variant("negative") == PromptVariant::negative);
  CHECK_THROWS_AS(parse_variant("image"), InvalidRecord);
  CHECK(to_string(PromptVariant::noimg) == "noimg");
}

TEST_CASE("candidate set invariants") {
  CandidateSet ok{{"A", "B"}, {"yes", "no"}, 1};
  CHECK_NOTHROW(ok.validate());
  CHECK_THROWS_AS((CandidateSet{{"A"}, {"yes"}, 0}).validate(), InvalidRecord);
  CHECK_THROWS_AS((CandidateSet{{"A", "A"}, {"x", "y"}, 0}).validate(), InvalidRecord);
  CHECK_THROWS_AS((CandidateSet{{"A", "B"}, {"x"}, 0}).validate(), InvalidRecord);
  CHECK_THROWS_AS((CandidateSet{{"A", "B"}, {"x", "y"}, 2}).validate(), InvalidRecord);
}

TEST_CASE("record validation") {
  LikelihoodRecord r{"d", "s", "m", PromptVariant::simple, {-1.0, -2.0}, 2, 0, std::nullopt};
  CHECK_NOTHROW(r.validate());

  auto bad = r;
  bad.candidate_count = 3;
  CHECK_THROWS_AS(bad.validate(), InvalidRecord);
  bad = r;
  bad.gold_index = 2;
  CHECK_THROWS_AS(bad.validate(), InvalidRecord);
  bad = r;
  bad.candidate_loglik[1] = NAN;
  CHECK_THROWS_AS(bad.validate(), InvalidRecord);

  auto audited = r;
  audited.tokens = std::vector<std::vector<double>>{{-0.5, -1.5}, {-2.0}};
  CHECK_NOTHROW(audited.validate());
  audited.tokens = std::vector<std::vector<double>>{{-0.5, -1.6}, {-2.0}};
  CHECK_THROWS_AS(audited.validate(), InvalidRecord);
  audited.tokens = std::vector<std::vector<double>>{{-1.0}};
  CHECK_THROWS_AS(audited.validate(), InvalidRecord);
}
