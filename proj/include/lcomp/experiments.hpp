#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

/**
 * @file experiments.hpp
 * @brief Analysis drivers: alpha sweeps, cross-model heatmaps, model-count
 * ablations and the no-image baseline.
 *
 * CSV outputs (column order is part of the contract):
 *   sweep    alpha,dataset,spec,accuracy
 *   heatmap  model_a,model_b,kind,alpha,delta
 *   ablation k,models,spec,accuracy
 *
 * Every driver is a deterministic function of the index and its arguments;
 * the `jobs` setting only changes wall time.
 */

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "lcomp/composition.hpp"
#include "lcomp/evaluation.hpp"
#include "lcomp/record_store.hpp"

namespace lcomp {

/// Alpha values to sweep; strictly increasing, finite, non-negative.
struct SweepGrid {
  std::vector<double> alphas{0.05, 0.1, 0.5, 1.0, 10.0};

  void validate() const;
};

struct SweepRow {
  double alpha = 0.0;
  EvalReport report;
};

/// One report per alpha, with an alpha = 0 baseline row always first.
/// `base_spec` must carry exactly one self-op; its alpha is replaced per row.
std::vector<SweepRow> alpha_sweep(const StoreIndex& index, const std::string& dataset,
                                  const CompositionSpec& base_spec, const SweepGrid& grid,
                                  const EvalOptions& opts = {});

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out);

/// delta[a][b]: accuracy of contrast(Y^B_simple, Y^A_aux, alpha) minus model
/// B's plain accuracy, in percentage points. The diagonal is B's own
/// debias/highlight delta.
struct HeatmapResult {
  std::string dataset;
  std::vector<std::string> models;
  SelfOpKind kind = SelfOpKind::debias;
  double alpha = 1.0;
  std::vector<std::vector<double>> delta;
};

/// `models` empty means every model of the dataset, ascending. Needs >= 2 models.
HeatmapResult cross_model_heatmap(const StoreIndex& index, const std::string& dataset,
                                  SelfOpKind kind, double alpha = 1.0,
                                  std::vector<std::string> models = {},
                                  const EvalOptions& opts = {});

void write_heatmap_csv(const HeatmapResult& result, std::ostream& out);

struct AblationRow {
  std::size_t k = 0;
  std::vector<std::string> models;
  CompositionSpec spec;
  double accuracy = 0.0;
};

/// For k = 1..N evaluates each family spec over the first k models of
/// `ordered_models`. Family specs' own model lists are ignored; they must use
/// a mutual op other than none.
std::vector<AblationRow> model_count_ablation(const StoreIndex& index, const std::string& dataset,
                                              std::span<const std::string> ordered_models,
                                              std::span<const CompositionSpec> spec_family,
                                              const EvalOptions& opts = {});

void write_ablation_csv(std::span<const AblationRow> rows, std::ostream& out);

struct NoImageBaseline {
  /// argmax over the normalized noimg distribution alone.
  EvalReport report;
  /// Mean of 100 / n over evaluated samples: the random-choice line.
  double random_reference = 0.0;
};

NoImageBaseline no_image_baseline(const StoreIndex& index, const std::string& dataset,
                                  const std::string& model, const EvalOptions& opts = {});

}  // namespace lcomp
