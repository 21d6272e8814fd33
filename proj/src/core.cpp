// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

#include "lcomp/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "lcomp/errors.hpp"

namespace lcomp {

std::string_view to_string(PromptVariant v) noexcept {
  switch (v) {
    case PromptVariant::simple:
      return "simple";
    case PromptVariant::noimg:
      return "noimg";
    case PromptVariant::negative:
      return "negative";
  }
  return "simple";
}

PromptVariant parse_variant(std::string_view tag) {
  if (tag == "simple" || tag == "positive") return PromptVariant::simple;
  if (tag == "noimg") return PromptVariant::noimg;
  if (tag == "negative") return PromptVariant::negative;
  throw InvalidRecord("unknown prompt variant '" + std::string(tag) + "'");
}

void CandidateSet::validate() const {
  if (options.size() != texts.size())
    throw InvalidRecord("candidate labels and texts differ in length");
  if (options.size() < 2) throw InvalidRecord("a candidate set needs at least two options");
  std::set<std::string> seen(options.begin(), options.end());
  if (seen.size() != options.size()) throw InvalidRecord("candidate labels are not unique");
  if (gold_index >= options.size()) throw InvalidRecord("gold index out of range");
}

TokenLogProbs::TokenLogProbs(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidRecord("empty token log-prob list");
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidRecord("non-finite token log-prob");
    if (v > 0.0) throw InvalidRecord("token log-prob above zero");
  }
}

double TokenLogProbs::mean() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

void LikelihoodRecord::validate() const {
  const std::string key = dataset_id + "/" + sample_id + "/" + model_id + "/" +
                          std::string(to_string(variant));
  if (candidate_loglik.size() != candidate_count)
    throw InvalidRecord(key + ": loglik has " + std::to_string(candidate_loglik.size()) +
                        " entries, n is " + std::to_string(candidate_count));
  if (candidate_count < 2) throw InvalidRecord(key + ": fewer than two candidates");
  if (gold_index >= candidate_count) throw InvalidRecord(key + ": gold index out of range");
  for (double v : candidate_loglik)
    if (!std::isfinite(v)) throw InvalidRecord(key + ": non-finite loglik");
  if (tokens) {
    if (tokens->size() != candidate_count)
      throw InvalidRecord(key + ": tokens must hold one list per candidate");
    for (std::size_t i = 0; i < candidate_count; ++i) {
      const double mean = TokenLogProbs((*tokens)[i]).mean();
      if (std::abs(mean - candidate_loglik[i]) > 1e-9)
        throw InvalidRecord(key + ": token mean disagrees with loglik for candidate " +
                            std::to_string(i));
    }
  }
}

double Distribution::sum() const noexcept {
  return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

double compute_candidate_likelihood(const TokenLogProbs& tokens) {
  return std::exp(tokens.mean());
}

Distribution normalize(std::span<const double> loglik) {
  if (loglik.size() < 2) throw InvalidRecord("normalize needs at least two candidates");
  std::vector<double> out(loglik.begin(), loglik.end());
  for (double& v : out) {
    if (!std::isfinite(v)) throw InvalidRecord("non-finite log-likelihood");
    v = std::max(v, kLogProbFloor);
  }
  const double shift = *std::max_element(out.begin(), out.end());
  double total = 0.0;
  for (double& v : out) {
    v = std::exp(v - shift);
    total += v;
  }
  for (double& v : out) v /= total;
  return Distribution(std::move(out));
}

std::size_t argmax_option(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

std::size_t argmax_option(const Distribution& dist) { return argmax_option(dist.probs()); }

}  // namespace lcomp
