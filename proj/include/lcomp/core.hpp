#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

/**
 * @file core.hpp
 * @brief Domain types and candidate-likelihood math.
 *
 * A candidate's likelihood is the geometric mean of its token probabilities,
 * i.e. exp of the mean per-token log-probability. Records store that mean
 * log-probability per candidate; `normalize` turns one record's vector into a
 * Distribution by a max-shifted softmax, which is the same as dividing the
 * exponentiated values by their sum.
 *
 * Everything here is immutable after construction and free of shared state.
 */

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lcomp {

/// Log-probabilities below this are clamped before softmax so that every
/// normalized entry stays strictly positive.
inline constexpr double kLogProbFloor = -745.0;

/// Tolerance for "sums to one" checks on distributions.
inline constexpr double kSumTolerance = 1e-9;

/// Prompt variant a record was produced under. `positive` is accepted on input
/// as an alias of `simple`: the positive prompt carries no extra instruction.
enum class PromptVariant { simple, noimg, negative };

std::string_view to_string(PromptVariant v) noexcept;
/// Accepts "simple", "positive", "noimg", "negative". Throws InvalidRecord otherwise.
PromptVariant parse_variant(std::string_view tag);

/// Labelled candidate answers of one multiple-choice sample.
struct CandidateSet {
  std::vector<std::string> options;
  std::vector<std::string> texts;
  std::size_t gold_index = 0;

  /// Throws InvalidRecord when lengths differ, fewer than two candidates,
  /// labels repeat, or gold_index is out of range.
  void validate() const;
  std::size_t size() const noexcept { return options.size(); }
};

/// Per-token natural-log probabilities of one candidate; non-empty, finite, each <= 0.
class TokenLogProbs {
 public:
  explicit TokenLogProbs(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double mean() const noexcept;

 private:
  std::vector<double> values_;
};

/// One model's scores for one sample under one prompt variant.
///
/// `candidate_loglik[i]` is the mean log-probability of option label i's
/// letter token(s), scored with the full candidate list in the prompt.
struct LikelihoodRecord {
  std::string dataset_id;
  std::string sample_id;
  std::string model_id;
  PromptVariant variant = PromptVariant::simple;
  std::vector<double> candidate_loglik;
  std::size_t candidate_count = 0;
  std::size_t gold_index = 0;
  /// Raw per-candidate token log-probs, kept for audit when the extractor provides them.
  std::optional<std::vector<std::vector<double>>> tokens;

  /// Throws InvalidRecord on count mismatch, non-finite values, bad gold
  /// index, or token lists whose mean disagrees with the stored value by > 1e-9.
  void validate() const;

  friend bool operator==(const LikelihoodRecord&, const LikelihoodRecord&) = default;
};

/// Candidate-probability vector every composition operates on.
///
/// Produced by `normalize` it is strictly positive and sums to one. Contrast
/// operations keep the unit sum but may produce negative entries; weighted
/// majority-vote produces a vector whose sum is below one. Only the argmax of
/// the latter is meaningful.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  double sum() const noexcept;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<double> probs_;
};

/// exp(mean(log p)) for one candidate's tokens; result lies in (0, 1].
double compute_candidate_likelihood(const TokenLogProbs& tokens);

/// Softmax over mean log-probabilities. Throws InvalidRecord on fewer than
/// two entries or non-finite input.
Distribution normalize(std::span<const double> loglik);

/// Index of the largest entry; the lowest index wins ties.
std::size_t argmax_option(const Distribution& dist);
std::size_t argmax_option(std::span<const double> values);

}  // namespace lcomp
