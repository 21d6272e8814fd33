// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

#include "lcomp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "lcomp/csv.hpp"
#include "lcomp/errors.hpp"
#include "lcomp/parallel.hpp"

namespace lcomp {

namespace {

std::string join_models(std::span<const std::string> models) {
  std::string out;
  for (std::size_t i = 0; i < models.size(); ++i) out += (i ? "+" : "") + models[i];
  return out;
}

double percent(std::size_t correct, std::size_t total) {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(total);
}

struct CellCounts {
  std::size_t evaluated = 0;
  std::size_t base_correct = 0;
  std::size_t composed_correct = 0;
};

}  // namespace

void SweepGrid::validate() const {
  if (alphas.empty()) throw SpecError("sweep grid is empty");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!std::isfinite(alphas[i]) || alphas[i] < 0.0)
      throw SpecError("sweep alphas must be finite and >= 0");
    if (i > 0 && !(alphas[i] > alphas[i - 1]))
      throw SpecError("sweep alphas must be strictly increasing");
  }
}

std::vector<SweepRow> alpha_sweep(const StoreIndex& index, const std::string& dataset,
                                  const CompositionSpec& base_spec, const SweepGrid& grid,
                                  const EvalOptions& opts) {
  grid.validate();
  base_spec.validate();
  if (base_spec.self_ops.size() != 1)
    throw SpecError("alpha sweep needs a spec with exactly one self-op");

  std::vector<double> alphas = grid.alphas;
  if (alphas.front() != 0.0) alphas.insert(alphas.begin(), 0.0);

  std::vector<SweepRow> rows;
  rows.reserve(alphas.size());
  for (double a : alphas) {
    CompositionSpec spec = base_spec;
    spec.self_ops.front().alpha = a;
    rows.push_back({a, evaluate(index, dataset, spec, opts)});
  }
  return rows;
}

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
  csv::row(out, {"alpha", "dataset", "spec", "accuracy"});
  for (const auto& r : rows)
    csv::row(out, {csv::number(r.alpha), r.report.dataset_id, r.report.spec.label(),
                   format_accuracy(r.report.accuracy)});
}

HeatmapResult cross_model_heatmap(const StoreIndex& index, const std::string& dataset,
                                  SelfOpKind kind, double alpha, std::vector<std::string> models,
                                  const EvalOptions& opts) {
  if (!std::isfinite(alpha) || alpha < 0.0) throw SpecError("alpha must be finite and >= 0");
  if (!index.has_dataset(dataset)) throw SpecError("unknown dataset '" + dataset + "'");
  const auto known = index.models(dataset);
  if (models.empty()) models = known;
  for (const auto& m : models)
    if (!std::binary_search(known.begin(), known.end(), m))
      throw SpecError("unknown model id '" + m + "' for dataset '" + dataset + "'");
  if (models.size() < 2) throw SpecError("heatmap needs at least two models");

  const PromptVariant aux = aux_variant(kind);
  const auto ids = index.sample_ids(dataset);
  const std::size_t m = models.size();
  std::vector<CellCounts> cells(m * m);
  std::vector<std::optional<std::string>> errors(m * m);

  parallel_for(m * m, opts.jobs, [&](std::size_t cell) {
    const std::string& model_a = models[cell / m];
    const std::string& model_b = models[cell % m];
    const DistKey base_key{model_b, PromptVariant::simple};
    const DistKey aux_key{model_a, aux};
    CellCounts counts;
    for (const auto& id : ids) {
      const SampleRecords& recs = *index.find(dataset, id);
      if (!recs.records.contains(base_key) || !recs.records.contains(aux_key)) {
        if (opts.skip_incomplete) continue;
        const DistKey req[] = {base_key, aux_key};
        join_sample(index, dataset, id, req);  // throws JoinError naming the gap
      }
      const Distribution base = normalize(recs.records.at(base_key).candidate_loglik);
      const Distribution other = normalize(recs.records.at(aux_key).candidate_loglik);
      const Distribution composed =
          model_a == model_b
              ? (kind == SelfOpKind::debias ? debias(base, other, alpha) : highlight(base, other, alpha))
              : cross_model_contrast(base, model_b, other, model_a, alpha);
      ++counts.evaluated;
      if (argmax_option(base) == recs.gold_index) ++counts.base_correct;
      if (argmax_option(composed) == recs.gold_index) ++counts.composed_correct;
    }
    cells[cell] = counts;
  });

  HeatmapResult result;
  result.dataset = dataset;
  result.models = models;
  result.kind = kind;
  result.alpha = alpha;
  result.delta.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      const auto& c = cells[a * m + b];
      result.delta[a][b] = percent(c.composed_correct, c.evaluated) - percent(c.base_correct, c.evaluated);
    }
  return result;
}

void write_heatmap_csv(const HeatmapResult& result, std::ostream& out) {
  csv::row(out, {"model_a", "model_b", "kind", "alpha", "delta"});
  for (std::size_t a = 0; a < result.models.size(); ++a)
    for (std::size_t b = 0; b < result.models.size(); ++b)
      csv::row(out, {result.models[a], result.models[b], to_string(result.kind),
                     csv::number(result.alpha), format_delta(result.delta[a][b])});
}

std::vector<AblationRow> model_count_ablation(const StoreIndex& index, const std::string& dataset,
                                              std::span<const std::string> ordered_models,
                                              std::span<const CompositionSpec> spec_family,
                                              const EvalOptions& opts) {
  if (ordered_models.empty()) throw SpecError("ablation needs at least one model");
  if (spec_family.empty()) throw SpecError("ablation needs at least one spec");
  for (const auto& s : spec_family)
    if (s.mutual == MutualOp::none)
      throw SpecError("ablation specs need a mutual op; '" + s.label() + "' has none");

  std::vector<AblationRow> rows;
  for (std::size_t k = 1; k <= ordered_models.size(); ++k) {
    std::vector<std::string> prefix(ordered_models.begin(), ordered_models.begin() + k);
    for (const auto& family : spec_family) {
      CompositionSpec spec = family;
      spec.model_ids = prefix;
      const EvalReport report = evaluate(index, dataset, spec, opts);
      rows.push_back({k, prefix, std::move(spec), report.accuracy});
    }
  }
  return rows;
}

void write_ablation_csv(std::span<const AblationRow> rows, std::ostream& out) {
  csv::row(out, {"k", "models", "spec", "accuracy"});
  for (const auto& r : rows)
    csv::row(out, {std::to_string(r.k), join_models(r.models),
                   r.spec.name.empty() ? r.spec.ops_description() : r.spec.name,
                   format_accuracy(r.accuracy)});
}

NoImageBaseline no_image_baseline(const StoreIndex& index, const std::string& dataset,
                                  const std::string& model, const EvalOptions& opts) {
  if (!index.has_dataset(dataset)) throw SpecError("unknown dataset '" + dataset + "'");
  const auto known = index.models(dataset);
  if (!std::binary_search(known.begin(), known.end(), model))
    throw SpecError("unknown model id '" + model + "' for dataset '" + dataset + "'");

  const DistKey key{model, PromptVariant::noimg};
  const auto ids = index.sample_ids(dataset);
  std::vector<std::optional<SamplePrediction>> preds(ids.size());
  std::vector<double> chance(ids.size(), 0.0);

  parallel_for(ids.size(), opts.jobs, [&](std::size_t i) {
    const SampleRecords& recs = *index.find(dataset, ids[i]);
    if (!recs.records.contains(key)) {
      if (opts.skip_incomplete) return;
      const DistKey req[] = {key};
      join_sample(index, dataset, ids[i], req);
    }
    Distribution d = normalize(recs.records.at(key).candidate_loglik);
    const std::size_t pred = argmax_option(d);
    chance[i] = 100.0 / static_cast<double>(recs.candidate_count);
    preds[i] = SamplePrediction{ids[i], pred, recs.gold_index, std::move(d)};
  });

  NoImageBaseline out;
  EvalReport& r = out.report;
  r.dataset_id = dataset;
  r.spec.name = "noimg[" + model + "]";
  r.spec.model_ids = {model};
  double chance_total = 0.0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!preds[i]) {
      r.skipped.push_back(ids[i]);
      continue;
    }
    if (preds[i]->predicted == preds[i]->gold) ++r.n_correct;
    chance_total += chance[i];
    r.per_sample.push_back(std::move(*preds[i]));
  }
  r.n_evaluated = r.per_sample.size();
  r.n_skipped = r.skipped.size();
  r.accuracy = accuracy_score(r);
  out.random_reference = r.n_evaluated ? chance_total / static_cast<double>(r.n_evaluated) : 0.0;
  return out;
}

}  // namespace lcomp
