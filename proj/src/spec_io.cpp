// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

#include "lcomp/spec_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "lcomp/errors.hpp"

namespace lcomp {

namespace {

void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                std::string_view where) {
  for (const auto& [k, _] : j.items())
    if (!allowed.contains(k))
      throw SpecError("unknown key '" + k + "' in " + std::string(where));
}

void check_version(const nlohmann::json& j, bool required) {
  if (!j.contains("schema_version")) {
    if (required) throw SpecError("spec document lacks schema_version");
    return;
  }
  if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != kSpecSchemaVersion)
    throw SpecError("unsupported spec schema_version (expected " +
                    std::to_string(kSpecSchemaVersion) + ")");
}

CompositionSpec parse_one(const nlohmann::json& j) {
  if (!j.is_object()) throw SpecError("spec must be a JSON object");
  check_keys(j, {"schema_version", "name", "models", "self_ops", "mutual"}, "spec");
  CompositionSpec spec;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw SpecError("spec name must be a string");
    spec.name = j["name"].get<std::string>();
  }
  if (!j.contains("models") || !j["models"].is_array())
    throw SpecError("spec needs a 'models' array");
  for (const auto& m : j["models"]) {
    if (!m.is_string()) throw SpecError("model ids must be strings");
    spec.model_ids.push_back(m.get<std::string>());
  }
  if (j.contains("self_ops")) {
    if (!j["self_ops"].is_array()) throw SpecError("'self_ops' must be an array");
    for (const auto& op : j["self_ops"]) {
      if (!op.is_object()) throw SpecError("self-op must be an object");
      check_keys(op, {"kind", "alpha"}, "self-op");
      if (!op.contains("kind") || !op["kind"].is_string())
        throw SpecError("self-op needs a string 'kind'");
      if (!op.contains("alpha") || !op["alpha"].is_number())
        throw SpecError("self-op needs a numeric 'alpha'");
      spec.self_ops.push_back(
          {parse_self_op(op["kind"].get<std::string>()), op["alpha"].get<double>()});
    }
  }
  if (j.contains("mutual")) {
    if (!j["mutual"].is_string()) throw SpecError("'mutual' must be a string");
    spec.mutual = parse_mutual_op(j["mutual"].get<std::string>());
  }
  spec.validate();
  return spec;
}

}  // namespace

nlohmann::ordered_json spec_to_json(const CompositionSpec& spec) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSpecSchemaVersion;
  if (!spec.name.empty()) j["name"] = spec.name;
  j["models"] = spec.model_ids;
  j["self_ops"] = nlohmann::ordered_json::array();
  for (const auto& op : spec.self_ops)
    j["self_ops"].push_back({{"kind", to_string(op.kind)}, {"alpha", op.alpha}});
  j["mutual"] = to_string(spec.mutual);
  return j;
}

CompositionSpec spec_from_json(const nlohmann::json& j) {
  check_version(j, true);
  return parse_one(j);
}

std::vector<CompositionSpec> parse_spec_document(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(std::string("spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SpecError("spec document must be a JSON object");
  check_version(doc, true);
  if (!doc.contains("specs")) return {parse_one(doc)};

  check_keys(doc, {"schema_version", "specs"}, "spec list");
  if (!doc["specs"].is_array() || doc["specs"].empty())
    throw SpecError("'specs' must be a non-empty array");
  std::vector<CompositionSpec> out;
  for (const auto& s : doc["specs"]) {
    if (s.is_object()) check_version(s, false);
    out.push_back(parse_one(s));
  }
  return out;
}

std::vector<CompositionSpec> load_specs(std::string_view arg) {
  if (!arg.empty() && arg.front() == '{') return parse_spec_document(arg);
  std::ifstream in{std::filesystem::path(arg)};
  if (!in) throw IoError("cannot read spec file '" + std::string(arg) + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec_document(ss.str());
}

}  // namespace lcomp
