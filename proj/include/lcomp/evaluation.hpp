#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

/**
 * @file evaluation.hpp
 * @brief Dataset-level scoring of composed predictions.
 *
 * `evaluate` composes every sample of a dataset, takes the argmax and
 * compares it with the gold index. Accuracy is a percentage; reports and
 * tables show it with two decimals. Samples are processed in parallel but
 * results are assembled in ascending sample-id order, so a report depends
 * only on (index, dataset, spec).
 *
 * Report file schema (JSON, keys in this order):
 *
 *   {"schema_version": 1, "dataset": str, "spec": {spec object},
 *    "spec_label": str, "n_evaluated": int, "n_skipped": int,
 *    "n_correct": int, "accuracy": float (2 dp), "skipped": [str],
 *    "per_sample": [{"sample": str, "pred": int, "gold": int,
 *                    "dist": [float]}]}
 *
 * Delta-table CSV columns: dataset,spec_a,spec_b,accuracy_a,accuracy_b,delta
 */

#include <cstddef>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lcomp/composition.hpp"
#include "lcomp/record_store.hpp"

namespace lcomp {

inline constexpr int kReportSchemaVersion = 1;

struct EvalOptions {
  /// Exclude samples missing a required record instead of failing.
  bool skip_incomplete = false;
  unsigned jobs = 1;
};

struct SamplePrediction {
  std::string sample_id;
  std::size_t predicted = 0;
  std::size_t gold = 0;
  Distribution composed;

  friend bool operator==(const SamplePrediction&, const SamplePrediction&) = default;
};

struct EvalReport {
  std::string dataset_id;
  CompositionSpec spec;
  std::size_t n_evaluated = 0;
  std::size_t n_skipped = 0;
  std::size_t n_correct = 0;
  /// 100 * n_correct / n_evaluated; 0 when nothing was evaluated.
  double accuracy = 0.0;
  std::vector<std::string> skipped;
  std::vector<SamplePrediction> per_sample;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Throws SpecError for an unknown dataset or a model id with no records in
/// it, and JoinError for the first incomplete sample unless skipping.
EvalReport evaluate(const StoreIndex& index, const std::string& dataset,
                    const CompositionSpec& spec, const EvalOptions& opts = {});

/// Scorer plug-in point. Only plain accuracy ships; datasets with their own
/// aggregate conventions can supply another scorer.
using Scorer = std::function<double(const EvalReport&)>;
double accuracy_score(const EvalReport& report);

/// Rounds half away from zero to two decimals.
double round2(double x);
/// "75.00"
std::string format_accuracy(double accuracy);
/// "+12.08" / "-0.16" / "+0.00"
std::string format_delta(double delta);

nlohmann::ordered_json report_to_json(const EvalReport& report);
/// Inverse of report_to_json; the accuracy read back is the rounded one.
EvalReport report_from_json(const nlohmann::json& j);

struct DeltaRow {
  std::string dataset;
  std::string spec_a;
  std::string spec_b;
  double accuracy_a = 0.0;
  double accuracy_b = 0.0;
  /// accuracy_b - accuracy_a, both taken at two decimals, in percentage points.
  double delta = 0.0;
};

struct DeltaTable {
  std::vector<DeltaRow> rows;
};

/// Pairwise deltas for every i < j in report order. Throws ComparabilityError
/// when reports differ in dataset or evaluated sample set.
DeltaTable compare(std::span<const EvalReport> reports);

void write_delta_csv(const DeltaTable& table, std::ostream& out);

}  // namespace lcomp
