#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

// Textual form of CompositionSpec.
//
// A spec document is JSON. Either a single spec:
//
//   {
//     "schema_version": 1,
//     "name": "ens-debias",                       // optional
//     "models": ["llava-7b", "llava-13b"],
//     "self_ops": [{"kind": "debias", "alpha": 1.0}],   // optional, default []
//     "mutual": "ensemble"                        // none | ensemble |
//   }                                             // majority_unweighted | majority_weighted
//
// or a list of them:
//
//   {"schema_version": 1, "specs": [ {...}, {...} ]}
//
// Inner specs of a list inherit the outer schema_version. Unknown keys are
// rejected so typos fail loudly.

#include <filesystem>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lcomp/composition.hpp"

namespace lcomp {

inline constexpr int kSpecSchemaVersion = 1;

nlohmann::ordered_json spec_to_json(const CompositionSpec& spec);
CompositionSpec spec_from_json(const nlohmann::json& j);

/// Parses a spec document (single or list form). Throws SpecError.
std::vector<CompositionSpec> parse_spec_document(std::string_view text);

/// `arg` is inline JSON when it starts with '{', else a path to a spec document.
std::vector<CompositionSpec> load_specs(std::string_view arg);

}  // namespace lcomp
