// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

#include "lcomp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include "lcomp/csv.hpp"
#include "lcomp/errors.hpp"
#include "lcomp/parallel.hpp"
#include "lcomp/spec_io.hpp"

namespace lcomp {

namespace {

struct Slot {
  std::optional<SamplePrediction> prediction;
  std::optional<std::string> missing;  // JoinError message
};

void check_models_known(const StoreIndex& index, const std::string& dataset,
                        const CompositionSpec& spec) {
  const auto known = index.models(dataset);
  for (const auto& m : spec.model_ids)
    if (!std::binary_search(known.begin(), known.end(), m))
      throw SpecError("unknown model id '" + m + "' for dataset '" + dataset + "'");
}

}  // namespace

EvalReport evaluate(const StoreIndex& index, const std::string& dataset,
                    const CompositionSpec& spec, const EvalOptions& opts) {
  spec.validate();
  if (!index.has_dataset(dataset)) throw SpecError("unknown dataset '" + dataset + "'");
  check_models_known(index, dataset, spec);

  const auto required = spec.required();
  const auto ids = index.sample_ids(dataset);
  std::vector<Slot> slots(ids.size());

  parallel_for(ids.size(), opts.jobs, [&](std::size_t i) {
    const SampleRecords& recs = *index.find(dataset, ids[i]);
    if (!missing_keys(recs, required).empty()) {
      try {
        join_sample(index, dataset, ids[i], required);
      } catch (const JoinError& e) {
        slots[i].missing = e.what();
      }
      return;
    }
    SampleJoin join = join_sample(index, dataset, ids[i], required);
    Distribution composed = compose_sample(join, spec);
    const std::size_t pred = argmax_option(composed);
    slots[i].prediction = SamplePrediction{ids[i], pred, join.gold_index, std::move(composed)};
  });

  EvalReport report;
  report.dataset_id = dataset;
  report.spec = spec;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].missing) {
      if (!opts.skip_incomplete) throw JoinError(*slots[i].missing);
      report.skipped.push_back(ids[i]);
      continue;
    }
    auto& p = *slots[i].prediction;
    if (p.predicted == p.gold) ++report.n_correct;
    report.per_sample.push_back(std::move(p));
  }
  report.n_evaluated = report.per_sample.size();
  report.n_skipped = report.skipped.size();
  report.accuracy = accuracy_score(report);
  return report;
}

double accuracy_score(const EvalReport& report) {
  if (report.n_evaluated == 0) return 0.0;
  return 100.0 * static_cast<double>(report.n_correct) / static_cast<double>(report.n_evaluated);
}

double round2(double x) { return std::round(x * 100.0) / 100.0; }

std::string format_accuracy(double accuracy) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", round2(accuracy) + 0.0);
  return buf;
}

std::string format_delta(double delta) {
  char buf[64];
  // + 0.0 folds -0 into +0.
  std::snprintf(buf, sizeof buf, "%+.2f", round2(delta) + 0.0);
  return buf;
}

nlohmann::ordered_json report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["dataset"] = report.dataset_id;
  j["spec"] = spec_to_json(report.spec);
  j["spec_label"] = report.spec.label();
  j["n_evaluated"] = report.n_evaluated;
  j["n_skipped"] = report.n_skipped;
  j["n_correct"] = report.n_correct;
  j["accuracy"] = round2(report.accuracy);
  j["skipped"] = report.skipped;
  auto& rows = j["per_sample"] = nlohmann::ordered_json::array();
  for (const auto& p : report.per_sample) {
    nlohmann::ordered_json row;
    row["sample"] = p.sample_id;
    row["pred"] = p.predicted;
    row["gold"] = p.gold;
    row["dist"] = std::vector<double>(p.composed.probs().begin(), p.composed.probs().end());
    rows.push_back(std::move(row));
  }
  return j;
}

EvalReport report_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema_version").get<int>() != kReportSchemaVersion)
      throw SpecError("unsupported report schema_version");
    EvalReport r;
    r.dataset_id = j.at("dataset").get<std::string>();
    r.spec = spec_from_json(j.at("spec"));
    r.n_evaluated = j.at("n_evaluated").get<std::size_t>();
    r.n_skipped = j.at("n_skipped").get<std::size_t>();
    r.n_correct = j.at("n_correct").get<std::size_t>();
    r.accuracy = j.at("accuracy").get<double>();
    r.skipped = j.at("skipped").get<std::vector<std::string>>();
    for (const auto& row : j.at("per_sample"))
      r.per_sample.push_back({row.at("sample").get<std::string>(), row.at("pred").get<std::size_t>(),
                              row.at("gold").get<std::size_t>(),
                              Distribution(row.at("dist").get<std::vector<double>>())});
    if (r.per_sample.size() != r.n_evaluated)
      throw SpecError("report per_sample length disagrees with n_evaluated");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed report: ") + e.what());
  }
}

DeltaTable compare(std::span<const EvalReport> reports) {
  DeltaTable table;
  if (reports.empty()) return table;
  const auto sample_set = [](const EvalReport& r) {
    std::vector<std::string> ids;
    ids.reserve(r.per_sample.size());
    for (const auto& p : r.per_sample) ids.push_back(p.sample_id);
    return ids;
  };
  const auto base_ids = sample_set(reports.front());
  for (const auto& r : reports) {
    if (r.dataset_id != reports.front().dataset_id)
      throw ComparabilityError("reports cover different datasets: '" +
                               reports.front().dataset_id + "' and '" + r.dataset_id + "'");
    if (sample_set(r) != base_ids)
      throw ComparabilityError("reports for '" + r.dataset_id + "' cover different sample sets (" +
                               reports.front().spec.label() + " vs " + r.spec.label() + ")");
  }
  for (std::size_t a = 0; a < reports.size(); ++a) {
    for (std::size_t b = a + 1; b < reports.size(); ++b) {
      DeltaRow row;
      row.dataset = reports[a].dataset_id;
      row.spec_a = reports[a].spec.label();
      row.spec_b = reports[b].spec.label();
      row.accuracy_a = round2(reports[a].accuracy);
      row.accuracy_b = round2(reports[b].accuracy);
      row.delta = round2(row.accuracy_b - row.accuracy_a);
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

void write_delta_csv(const DeltaTable& table, std::ostream& out) {
  csv::row(out, {"dataset", "spec_a", "spec_b", "accuracy_a", "accuracy_b", "delta"});
  for (const auto& r : table.rows)
    csv::row(out, {r.dataset, r.spec_a, r.spec_b, format_accuracy(r.accuracy_a),
                   format_accuracy(r.accuracy_b), format_delta(r.delta)});
}

}  // namespace lcomp
