#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

/**
 * @file record_store.hpp
 * @brief Likelihood-record files, validation, indexing and sample joins.
 *
 * Record files are UTF-8, one JSON object per line:
 *
 *   {"dataset": str, "sample": str, "model": str,
 *    "variant": "simple"|"noimg"|"negative", "n": int,
 *    "loglik": [float; n], "gold": int, "tokens": [[float]]?}
 *
 * `loglik[i]` is the mean log-probability of option label i's letter
 * token(s). `tokens`, when present, holds the raw per-token log-probs of each
 * candidate; the loader recomputes their means and rejects any that differ
 * from `loglik` by more than 1e-9. Blank lines are ignored. Unknown keys are
 * a parse error.
 *
 * Canonical serialization writes keys in the order above and doubles in
 * shortest round-trip form, so load -> serialize -> load is lossless and a
 * second serialization is byte-identical to the first.
 */

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "lcomp/composition.hpp"
#include "lcomp/core.hpp"

namespace lcomp {

/// Parses one record line. Syntax or shape problems raise ParseError
/// (carrying `path:line`), value problems raise InvalidRecord.
LikelihoodRecord parse_record_line(std::string_view line, const std::string& path,
                                   std::size_t line_no);

/// Canonical one-line JSON form, without trailing newline.
std::string serialize_record(const LikelihoodRecord& rec);

using SampleKey = std::pair<std::string, std::string>;  // (dataset, sample)

/// All records of one sample. Every record agrees on candidate_count and gold_index.
struct SampleRecords {
  std::size_t candidate_count = 0;
  std::size_t gold_index = 0;
  std::map<DistKey, LikelihoodRecord> records;

  bool has(const std::string& model, PromptVariant v) const {
    return records.contains({model, v});
  }
};

/// (model, variant, dataset) -> record count.
using Inventory = std::map<std::tuple<std::string, PromptVariant, std::string>, std::size_t>;

/// Validated, immutable index of likelihood records.
class StoreIndex {
 public:
  /// Loads and validates every file. Files are parsed concurrently; the
  /// resulting index does not depend on file order or line order.
  ///
  /// Throws IoError (unreadable file), ParseError, InvalidRecord,
  /// DuplicateRecord, or SchemaError.
  static StoreIndex load(std::span<const std::filesystem::path> paths);

  /// Builds an index from in-memory records with the same validation as `load`.
  static StoreIndex from_records(std::vector<LikelihoodRecord> records);

  const std::map<SampleKey, SampleRecords>& samples() const noexcept { return samples_; }
  const SampleRecords* find(const std::string& dataset, const std::string& sample) const;

  std::vector<std::string> datasets() const;
  bool has_dataset(const std::string& dataset) const;
  /// Sample ids of one dataset in ascending order.
  std::vector<std::string> sample_ids(const std::string& dataset) const;
  std::size_t dataset_size(const std::string& dataset) const;
  const std::set<std::string>& models() const noexcept { return models_; }
  /// Models with at least one record in `dataset`, ascending.
  std::vector<std::string> models(const std::string& dataset) const;
  const std::set<PromptVariant>& variants() const noexcept { return variants_; }
  const Inventory& inventory() const noexcept { return inventory_; }
  std::size_t record_count() const noexcept { return record_count_; }

  /// Writes every record in canonical form, sorted by key, one per line.
  void serialize(std::ostream& out) const;

  friend bool operator==(const StoreIndex& a, const StoreIndex& b);

 private:
  class Builder;

  std::map<SampleKey, SampleRecords> samples_;
  std::set<std::string> models_;
  std::set<PromptVariant> variants_;
  Inventory inventory_;
  std::size_t record_count_ = 0;
};

/// Required (model, variant) pairs absent from a sample, in the order given.
std::vector<DistKey> missing_keys(const SampleRecords& sample, std::span<const DistKey> required);

/// Normalizes the records `required` names into a SampleJoin. Throws
/// JoinError listing every missing (model, variant) pair.
SampleJoin join_sample(const StoreIndex& index, const std::string& dataset,
                       const std::string& sample, std::span<const DistKey> required);

SampleJoin join_sample(const StoreIndex& index, const std::string& dataset,
                       const std::string& sample, const CompositionSpec& spec);

}  // namespace lcomp
