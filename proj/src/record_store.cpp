// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

#include "lcomp/record_store.hpp"

#include <fstream>
#include <future>

#include <json.hpp>

#include "lcomp/errors.hpp"

namespace lcomp {

namespace {

using nlohmann::json;

struct Located {
  LikelihoodRecord record;
  std::string origin;  // "path:line"
};

std::string key_string(const LikelihoodRecord& r) {
  return "(" + r.dataset_id + ", " + r.sample_id + ", " + r.model_id + ", " +
         std::string(to_string(r.variant)) + ")";
}

std::size_t get_count(const json& j, const char* field, const std::string& path,
                      std::size_t line_no) {
  const json& v = j.at(field);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ParseError(path, line_no, std::string("'") + field + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

std::vector<double> get_doubles(const json& v, const char* field, const std::string& path,
                                std::size_t line_no) {
  if (!v.is_array()) throw ParseError(path, line_no, std::string("'") + field + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number())
      throw ParseError(path, line_no, std::string("'") + field + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<Located> parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read record file '" + path.string() + "'");
  std::vector<Located> out;
  std::string line;
  std::size_t line_no = 0;
  const std::string name = path.string();
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back({parse_record_line(line, name, line_no), name + ":" + std::to_string(line_no)});
  }
  if (in.bad()) throw IoError("read error on '" + name + "'");
  return out;
}

}  // namespace

LikelihoodRecord parse_record_line(std::string_view line, const std::string& path,
                                   std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(path, line_no, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError(path, line_no, "record must be a JSON object");

  static const std::set<std::string> kFields = {"dataset", "sample", "model", "variant",
                                                "n",       "loglik", "gold",  "tokens"};
  for (const auto& [k, _] : j.items())
    if (!kFields.contains(k)) throw ParseError(path, line_no, "unknown field '" + k + "'");
  for (const char* f : {"dataset", "sample", "model", "variant", "n", "loglik", "gold"})
    if (!j.contains(f)) throw ParseError(path, line_no, std::string("missing field '") + f + "'");
  for (const char* f : {"dataset", "sample", "model", "variant"})
    if (!j[f].is_string())
      throw ParseError(path, line_no, std::string("'") + f + "' must be a string");

  LikelihoodRecord rec;
  rec.dataset_id = j["dataset"].get<std::string>();
  rec.sample_id = j["sample"].get<std::string>();
  rec.model_id = j["model"].get<std::string>();
  try {
    rec.variant = parse_variant(j["variant"].get<std::string>());
  } catch (const InvalidRecord& e) {
    throw ParseError(path, line_no, e.what());
  }
  rec.candidate_count = get_count(j, "n", path, line_no);
  rec.gold_index = get_count(j, "gold", path, line_no);
  rec.candidate_loglik = get_doubles(j["loglik"], "loglik", path, line_no);
  if (j.contains("tokens")) {
    if (!j["tokens"].is_array()) throw ParseError(path, line_no, "'tokens' must be an array");
    std::vector<std::vector<double>> tokens;
    for (const auto& t : j["tokens"]) tokens.push_back(get_doubles(t, "tokens", path, line_no));
    rec.tokens = std::move(tokens);
  }
  try {
    rec.validate();
  } catch (const InvalidRecord& e) {
    throw InvalidRecord(path + ":" + std::to_string(line_no) + ": " + e.what());
  }
  return rec;
}

std::string serialize_record(const LikelihoodRecord& rec) {
  nlohmann::ordered_json j;
  j["dataset"] = rec.dataset_id;
  j["sample"] = rec.sample_id;
  j["model"] = rec.model_id;
  j["variant"] = to_string(rec.variant);
  j["n"] = rec.candidate_count;
  j["loglik"] = rec.candidate_loglik;
  j["gold"] = rec.gold_index;
  if (rec.tokens) j["tokens"] = *rec.tokens;
  return j.dump();
}

class StoreIndex::Builder {
 public:
  void add(LikelihoodRecord rec, const std::string& origin) {
    rec.validate();
    const SampleKey skey{rec.dataset_id, rec.sample_id};
    const std::string full_key = key_string(rec);
    auto [it, fresh] = index_.samples_.try_emplace(skey);
    SampleRecords& sample = it->second;
    if (fresh) {
      sample.candidate_count = rec.candidate_count;
      sample.gold_index = rec.gold_index;
    } else {
      if (sample.candidate_count != rec.candidate_count)
        throw SchemaError(origin + ": " + full_key + " has " + std::to_string(rec.candidate_count) +
                          " candidates, other records of the sample have " +
                          std::to_string(sample.candidate_count));
      if (sample.gold_index != rec.gold_index)
        throw SchemaError(origin + ": " + full_key + " disagrees on the gold index");
    }
    DistKey dkey{rec.model_id, rec.variant};
    if (sample.records.contains(dkey))
      throw DuplicateRecord(origin + ": duplicate record " + full_key + ", first seen at " +
                            origins_.at(full_key));
    origins_.emplace(full_key, origin);
    index_.models_.insert(rec.model_id);
    index_.variants_.insert(rec.variant);
    ++index_.inventory_[{rec.model_id, rec.variant, rec.dataset_id}];
    ++index_.record_count_;
    sample.records.emplace(std::move(dkey), std::move(rec));
  }

  StoreIndex finish() && { return std::move(index_); }

 private:
  StoreIndex index_;
  std::map<std::string, std::string> origins_;
};

StoreIndex StoreIndex::load(std::span<const std::filesystem::path> paths) {
  std::vector<std::future<std::vector<Located>>> parsed;
  parsed.reserve(paths.size());
  for (const auto& p : paths) parsed.push_back(std::async(std::launch::async, parse_file, p));

  Builder builder;
  // get() in path order so the first failing file is the one reported.
  for (auto& f : parsed)
    for (auto& loc : f.get()) builder.add(std::move(loc.record), loc.origin);
  return std::move(builder).finish();
}

StoreIndex StoreIndex::from_records(std::vector<LikelihoodRecord> records) {
  Builder builder;
  for (std::size_t i = 0; i < records.size(); ++i)
    builder.add(std::move(records[i]), "record " + std::to_string(i));
  return std::move(builder).finish();
}

const SampleRecords* StoreIndex::find(const std::string& dataset, const std::string& sample) const {
  auto it = samples_.find({dataset, sample});
  return it == samples_.end() ? nullptr : &it->second;
}

std::vector<std::string> StoreIndex::datasets() const {
  std::vector<std::string> out;
  for (const auto& [key, _] : samples_)
    if (out.empty() || out.back() != key.first) out.push_back(key.first);
  return out;
}

bool StoreIndex::has_dataset(const std::string& dataset) const {
  auto it = samples_.lower_bound({dataset, std::string()});
  return it != samples_.end() && it->first.first == dataset;
}

std::vector<std::string> StoreIndex::sample_ids(const std::string& dataset) const {
  std::vector<std::string> out;
  for (auto it = samples_.lower_bound({dataset, std::string()});
       it != samples_.end() && it->first.first == dataset; ++it)
    out.push_back(it->first.second);
  return out;
}

std::size_t StoreIndex::dataset_size(const std::string& dataset) const {
  return sample_ids(dataset).size();
}

std::vector<std::string> StoreIndex::models(const std::string& dataset) const {
  std::set<std::string> found;
  for (const auto& [key, count] : inventory_)
    if (std::get<2>(key) == dataset) found.insert(std::get<0>(key));
  return {found.begin(), found.end()};
}

void StoreIndex::serialize(std::ostream& out) const {
  for (const auto& [_, sample] : samples_)
    for (const auto& [__, rec] : sample.records) out << serialize_record(rec) << '\n';
}

bool operator==(const StoreIndex& a, const StoreIndex& b) {
  if (a.samples_.size() != b.samples_.size()) return false;
  for (auto ia = a.samples_.begin(), ib = b.samples_.begin(); ia != a.samples_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    const auto& sa = ia->second;
    const auto& sb = ib->second;
    if (sa.candidate_count != sb.candidate_count || sa.gold_index != sb.gold_index ||
        sa.records != sb.records)
      return false;
  }
  return a.inventory_ == b.inventory_;
}

std::vector<DistKey> missing_keys(const SampleRecords& sample, std::span<const DistKey> required) {
  std::vector<DistKey> out;
  for (const auto& key : required)
    if (!sample.records.contains(key)) out.push_back(key);
  return out;
}

SampleJoin join_sample(const StoreIndex& index, const std::string& dataset,
                       const std::string& sample, std::span<const DistKey> required) {
  const SampleRecords* recs = index.find(dataset, sample);
  if (!recs) throw JoinError("no records for sample " + dataset + "/" + sample);
  const auto missing = missing_keys(*recs, required);
  if (!missing.empty()) {
    std::string msg = "sample " + dataset + "/" + sample + " is missing";
    for (std::size_t i = 0; i < missing.size(); ++i)
      msg += std::string(i ? ", " : " ") + "(" + missing[i].first + ", " +
             std::string(to_string(missing[i].second)) + ")";
    throw JoinError(msg);
  }
  SampleJoin join;
  join.dataset_id = dataset;
  join.sample_id = sample;
  join.gold_index = recs->gold_index;
  for (const auto& key : required)
    if (!join.dists.contains(key))
      join.dists.emplace(key, normalize(recs->records.at(key).candidate_loglik));
  return join;
}

SampleJoin join_sample(const StoreIndex& index, const std::string& dataset,
                       const std::string& sample, const CompositionSpec& spec) {
  spec.validate();
  const auto required = spec.required();
  return join_sample(index, dataset, sample, required);
}

}  // namespace lcomp
