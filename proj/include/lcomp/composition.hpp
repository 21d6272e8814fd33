#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

/**
 * @file composition.hpp
 * @brief Likelihood composition algebra.
 *
 * Self-composition contrasts one model's distributions under different
 * prompt variants:
 *
 *   debias    (1+a) * Y_simple - a * Y_noimg
 *   highlight (1+a) * Y_simple - a * Y_negative
 *   dual      (1+a_d+a_h) * Y_simple - a_d * Y_noimg - a_h * Y_negative
 *
 * Mutual-composition fuses N models: `ensemble` averages, `majority_vote`
 * averages one-hot masks at each model's argmax (optionally weighted by the
 * masked probability). Mix-composition (`compose_sample`) always applies the
 * self-op per model first and the mutual op second; masks are taken from the
 * self-composed distributions.
 *
 * Contrast outputs keep their negative entries. They are neither clipped nor
 * renormalized.
 */

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lcomp/core.hpp"

namespace lcomp {

enum class SelfOpKind { debias, highlight };
enum class MutualOp { none, ensemble, majority_unweighted, majority_weighted };

std::string_view to_string(SelfOpKind k) noexcept;
std::string_view to_string(MutualOp m) noexcept;
SelfOpKind parse_self_op(std::string_view s);
MutualOp parse_mutual_op(std::string_view s);

/// The auxiliary prompt variant a self-op contrasts against.
PromptVariant aux_variant(SelfOpKind k) noexcept;

struct SelfOp {
  SelfOpKind kind = SelfOpKind::debias;
  double alpha = 0.0;

  friend bool operator==(const SelfOp&, const SelfOp&) = default;
};

/// Declarative mix-composition pipeline.
struct CompositionSpec {
  /// Optional display name; `describe()` is used when empty.
  std::string name;
  std::vector<SelfOp> self_ops;
  MutualOp mutual = MutualOp::none;
  std::vector<std::string> model_ids;

  /// Throws SpecError on duplicate self-op kinds, negative or non-finite
  /// alpha, an empty or repeating model list, or mutual == none with more
  /// than one model.
  void validate() const;

  /// Deterministic, comma-free summary, e.g. "debias(1)+ensemble[m1+m2]".
  std::string describe() const;
  /// `describe()` without the model list, e.g. "debias(1)+ensemble".
  std::string ops_description() const;
  /// `name` if set, else `describe()`.
  std::string label() const;

  const SelfOp* find(SelfOpKind kind) const noexcept;
  /// Every (model, variant) pair a SampleJoin must hold for this spec.
  std::vector<std::pair<std::string, PromptVariant>> required() const;

  friend bool operator==(const CompositionSpec&, const CompositionSpec&) = default;
};

using DistKey = std::pair<std::string, PromptVariant>;

/// Normalized distributions for one sample, keyed by (model, variant).
struct SampleJoin {
  std::string dataset_id;
  std::string sample_id;
  std::size_t gold_index = 0;
  std::map<DistKey, Distribution> dists;

  /// Throws JoinError naming the key when absent.
  const Distribution& at(const std::string& model, PromptVariant v) const;
};

Distribution debias(const Distribution& y_simple, const Distribution& y_noimg, double alpha);
Distribution highlight(const Distribution& y_positive, const Distribution& y_negative,
                       double alpha);

/// Contrast model B's simple distribution with model A's auxiliary one.
/// Throws SpecError when both come from the same model.
Distribution cross_model_contrast(const Distribution& y_b_simple, std::string_view model_b,
                                  const Distribution& y_a_aux, std::string_view model_a,
                                  double alpha);

Distribution dual_contrast(const Distribution& y_simple, const Distribution& y_noimg,
                           const Distribution& y_negative, double alpha_d, double alpha_h);

/// Element-wise mean. Each entry is summed in ascending order of its values,
/// so the result is bit-identical under any permutation of `dists`.
Distribution ensemble(std::span<const Distribution> dists);

/// (1/N) * sum of one-hot masks (unweighted) or of Y_i masked at its argmax
/// (weighted). Weighted output sums to (1/N) * sum_i max(Y_i).
Distribution majority_vote(std::span<const Distribution> dists, bool weighted);

/// Self-composed distribution of one model under the spec's self-ops.
Distribution self_compose(const SampleJoin& join, const std::string& model,
                          std::span<const SelfOp> self_ops);

Distribution compose_sample(const SampleJoin& join, const CompositionSpec& spec);

}  // namespace lcomp
