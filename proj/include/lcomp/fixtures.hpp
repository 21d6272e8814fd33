#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

// Seeded synthetic record sets with known structure. They exercise the
// experiment drivers without model inference; the test suite re-derives every
// expected outcome from the raw records with independent arithmetic.
//
// The generator uses its own uniform mapping on top of mt19937_64 so a seed
// yields the same records on every standard library.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lcomp/core.hpp"

namespace lcomp::fixtures {

struct Fixture {
  std::string dataset;
  /// Models in their intended fusion order.
  std::vector<std::string> models;
  std::vector<LikelihoodRecord> records;
};

/// One model "m0", simple + noimg. On `planted_fraction` of the samples the
/// noimg distribution peaks on a wrong option that the simple distribution
/// also slightly prefers over gold; elsewhere simple peaks on gold and noimg
/// is near uniform. Debias with alpha >= 0.5 recovers every planted sample.
Fixture planted_bias(std::uint64_t seed = 7, std::size_t n_samples = 50, std::size_t n_choices = 4,
                     double planted_fraction = 0.8);

/// Models m1..m<n_models>, all three variants, random log-likelihoods with a
/// mild gold boost on the simple variant.
Fixture random_instance(std::uint64_t seed = 11, std::size_t n_samples = 50,
                        std::size_t n_models = 3, std::size_t n_choices = 4);

/// Models r1..r3 (confident random guessers) followed by o1..o3 (modestly
/// confident, always correct), simple variant only.
Fixture quality_vs_quantity(std::uint64_t seed = 23, std::size_t n_samples = 60,
                            std::size_t n_choices = 4);

/// Models m1..m<n_models> where each model is correct on a superset of the
/// previous model's samples, with a gold probability at least as high.
Fixture monotone(std::uint64_t seed = 31, std::size_t n_samples = 60, std::size_t n_models = 6,
                 std::size_t n_choices = 4);

/// Models A and B, simple + noimg; A's noimg is exactly uniform.
Fixture uniform_noimg(std::uint64_t seed = 41, std::size_t n_samples = 30,
                      std::size_t n_choices = 4);

/// Models A and B, simple + noimg. B's simple leans slightly toward a wrong
/// option on half the samples; A's noimg peaks on that same option; B's noimg
/// peaks elsewhere. A gives gold a lower probability than B on every sample.
Fixture opposite_bias(std::uint64_t seed = 53, std::size_t n_samples = 30,
                      std::size_t n_choices = 4);

/// Looks a generator up by name: planted, random, quality, monotone,
/// uniform_noimg, opposite_bias, with the generator's default seed unless
/// one is given. Throws SpecError for other names.
Fixture by_name(std::string_view name, std::optional<std::uint64_t> seed = std::nullopt);

/// Names accepted by `by_name`.
std::vector<std::string> names();

}  // namespace lcomp::fixtures
