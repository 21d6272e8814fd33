// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

#include "lcomp/fixtures.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "lcomp/errors.hpp"

namespace lcomp::fixtures {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  std::size_t index_except(std::size_t n, std::size_t skip) {
    std::size_t i = index(n - 1);
    return i >= skip ? i + 1 : i;
  }

 private:
  std::mt19937_64 gen_;
};

std::string sample_id(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "s%03zu", i);
  return buf;
}

LikelihoodRecord make_record(const std::string& dataset, const std::string& sample,
                             const std::string& model, PromptVariant variant,
                             const std::vector<double>& probs, std::size_t gold) {
  LikelihoodRecord r;
  r.dataset_id = dataset;
  r.sample_id = sample;
  r.model_id = model;
  r.variant = variant;
  r.candidate_count = probs.size();
  r.gold_index = gold;
  r.candidate_loglik.reserve(probs.size());
  for (double p : probs) r.candidate_loglik.push_back(std::log(p));
  return r;
}

/// `peak_p` at `peak`, the remaining mass split over the other options with
/// +/- `jitter` relative noise.
std::vector<double> peaked(Rng& rng, std::size_t n, std::size_t peak, double peak_p,
                           double jitter = 0.1) {
  std::vector<double> p(n);
  const double share = (1.0 - peak_p) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    p[i] = i == peak ? peak_p : share * rng.uniform(1.0 - jitter, 1.0 + jitter);
  return p;
}

}  // namespace

Fixture planted_bias(std::uint64_t seed, std::size_t n_samples, std::size_t n_choices,
                     double planted_fraction) {
  Rng rng(seed);
  Fixture fx{"planted", {"m0"}, {}};
  const auto n_planted = static_cast<std::size_t>(std::lround(planted_fraction * n_samples));
  std::vector<bool> planted(n_samples, false);
  for (std::size_t i = 0; i < n_planted; ++i) planted[i] = true;
  for (std::size_t i = n_samples; i > 1; --i) {
    const std::size_t j = rng.index(i);
    const bool tmp = planted[i - 1];
    planted[i - 1] = planted[j];
    planted[j] = tmp;
  }

  for (std::size_t s = 0; s < n_samples; ++s) {
    const std::string id = sample_id(s);
    const std::size_t gold = rng.index(n_choices);
    std::vector<double> simple, noimg;
    if (planted[s]) {
      const std::size_t wrong = rng.index_except(n_choices, gold);
      const double p_wrong = rng.uniform(0.40, 0.42);
      const double p_gold = rng.uniform(0.34, 0.36);
      simple.assign(n_choices, 0.0);
      const double rest = (1.0 - p_wrong - p_gold) / static_cast<double>(n_choices - 2);
      for (std::size_t i = 0; i < n_choices; ++i)
        simple[i] = i == wrong ? p_wrong : i == gold ? p_gold : rest * rng.uniform(0.95, 1.05);
      noimg = peaked(rng, n_choices, wrong, rng.uniform(0.70, 0.80));
    } else {
      simple = peaked(rng, n_choices, gold, rng.uniform(0.50, 0.60));
      noimg.assign(n_choices, 0.0);
      for (auto& q : noimg) q = rng.uniform(0.95, 1.05) / static_cast<double>(n_choices);
    }
    fx.records.push_back(make_record(fx.dataset, id, "m0", PromptVariant::simple, simple, gold));
    fx.records.push_back(make_record(fx.dataset, id, "m0", PromptVariant::noimg, noimg, gold));
  }
  return fx;
}

Fixture random_instance(std::uint64_t seed, std::size_t n_samples, std::size_t n_models,
                        std::size_t n_choices) {
  Rng rng(seed);
  Fixture fx{"random", {}, {}};
  for (std::size_t m = 1; m <= n_models; ++m) fx.models.push_back("m" + std::to_string(m));
  for (std::size_t s = 0; s < n_samples; ++s) {
    const std::string id = sample_id(s);
    const std::size_t gold = rng.index(n_choices);
    for (const auto& model : fx.models) {
      for (PromptVariant v : {PromptVariant::simple, PromptVariant::noimg, PromptVariant::negative}) {
        LikelihoodRecord r;
        r.dataset_id = fx.dataset;
        r.sample_id = id;
        r.model_id = model;
        r.variant = v;
        r.candidate_count = n_choices;
        r.gold_index = gold;
        for (std::size_t i = 0; i < n_choices; ++i) {
          double l = rng.uniform(-4.0, 0.0);
          if (v == PromptVariant::simple && i == gold) l = std::min(0.0, l + rng.uniform(0.0, 1.5));
          r.candidate_loglik.push_back(l);
        }
        fx.records.push_back(std::move(r));
      }
    }
  }
  return fx;
}

Fixture quality_vs_quantity(std::uint64_t seed, std::size_t n_samples, std::size_t n_choices) {
  Rng rng(seed);
  Fixture fx{"quality", {"r1", "r2", "r3", "o1", "o2", "o3"}, {}};
  for (std::size_t s = 0; s < n_samples; ++s) {
    const std::string id = sample_id(s);
    const std::size_t gold = rng.index(n_choices);
    for (const auto& model : fx.models) {
      const bool oracle = model.front() == 'o';
      const std::vector<double> p =
          oracle ? peaked(rng, n_choices, gold, rng.uniform(0.40, 0.45))
                 : peaked(rng, n_choices, rng.index(n_choices), rng.uniform(0.90, 0.92));
      fx.records.push_back(make_record(fx.dataset, id, model, PromptVariant::simple, p, gold));
    }
  }
  return fx;
}

Fixture monotone(std::uint64_t seed, std::size_t n_samples, std::size_t n_models,
                 std::size_t n_choices) {
  Rng rng(seed);
  Fixture fx{"monotone", {}, {}};
  for (std::size_t m = 1; m <= n_models; ++m) fx.models.push_back("m" + std::to_string(m));
  for (std::size_t s = 0; s < n_samples; ++s) {
    const std::string id = sample_id(s);
    const std::size_t gold = rng.index(n_choices);
    const std::size_t wrong = rng.index_except(n_choices, gold);
    // Models at index >= first_correct answer this sample correctly.
    const std::size_t first_correct = rng.index(n_models + 1);
    for (std::size_t m = 0; m < n_models; ++m) {
      const double step = 0.01 * static_cast<double>(m);
      std::vector<double> p;
      if (m >= first_correct) {
        p = peaked(rng, n_choices, gold, 0.50 + step, 0.0);
      } else {
        p.assign(n_choices, 0.0);
        const double p_gold = 0.15 + step;
        const double p_wrong = 0.45;
        const double rest = (1.0 - p_gold - p_wrong) / static_cast<double>(n_choices - 2);
        for (std::size_t i = 0; i < n_choices; ++i) p[i] = i == gold ? p_gold : i == wrong ? p_wrong : rest;
      }
      fx.records.push_back(make_record(fx.dataset, id, fx.models[m], PromptVariant::simple, p, gold));
    }
  }
  return fx;
}

Fixture uniform_noimg(std::uint64_t seed, std::size_t n_samples, std::size_t n_choices) {
  Rng rng(seed);
  Fixture fx{"uniform_noimg", {"A", "B"}, {}};
  const std::vector<double> uniform(n_choices, 1.0 / static_cast<double>(n_choices));
  for (std::size_t s = 0; s < n_samples; ++s) {
    const std::string id = sample_id(s);
    const std::size_t gold = rng.index(n_choices);
    for (const auto& model : fx.models) {
      const std::size_t peak = rng.unit() < 0.6 ? gold : rng.index(n_choices);
      fx.records.push_back(make_record(fx.dataset, id, model, PromptVariant::simple,
                                       peaked(rng, n_choices, peak, rng.uniform(0.3, 0.6), 0.3),
                                       gold));
    }
    fx.records.push_back(make_record(fx.dataset, id, "A", PromptVariant::noimg, uniform, gold));
    fx.records.push_back(make_record(fx.dataset, id, "B", PromptVariant::noimg,
                                     peaked(rng, n_choices, rng.index(n_choices),
                                            rng.uniform(0.4, 0.7), 0.3),
                                     gold));
  }
  return fx;
}

Fixture opposite_bias(std::uint64_t seed, std::size_t n_samples, std::size_t n_choices) {
  Rng rng(seed);
  Fixture fx{"opposite_bias", {"A", "B"}, {}};
  for (std::size_t s = 0; s < n_samples; ++s) {
    const std::string id = sample_id(s);
    const std::size_t gold = rng.index(n_choices);
    const std::size_t bias_b = rng.index_except(n_choices, gold);
    std::size_t bias_a = rng.index_except(n_choices, gold);
    if (bias_a == bias_b) bias_a = (bias_b + 1) % n_choices == gold ? (bias_b + 2) % n_choices
                                                                    : (bias_b + 1) % n_choices;
    const bool leaning = s % 2 == 0;

    std::vector<double> b_simple(n_choices);
    const double p_gold_b = leaning ? rng.uniform(0.34, 0.36) : rng.uniform(0.50, 0.55);
    const double p_bias_b = leaning ? rng.uniform(0.40, 0.42) : rng.uniform(0.20, 0.22);
    const double rest_b = (1.0 - p_gold_b - p_bias_b) / static_cast<double>(n_choices - 2);
    for (std::size_t i = 0; i < n_choices; ++i)
      b_simple[i] = i == gold ? p_gold_b : i == bias_b ? p_bias_b : rest_b;

    // A: always wrong, gold strictly below B's gold probability.
    std::vector<double> a_simple = peaked(rng, n_choices, bias_a, rng.uniform(0.55, 0.60), 0.0);
    const double a_gold = std::min(a_simple[gold], 0.9 * p_gold_b);
    const double freed = a_simple[gold] - a_gold;
    a_simple[gold] = a_gold;
    a_simple[bias_a] += freed;

    fx.records.push_back(make_record(fx.dataset, id, "A", PromptVariant::simple, a_simple, gold));
    fx.records.push_back(make_record(fx.dataset, id, "B", PromptVariant::simple, b_simple, gold));
    // A's language prior sits on the option B wrongly leans to; B's sits elsewhere.
    fx.records.push_back(make_record(fx.dataset, id, "A", PromptVariant::noimg,
                                     peaked(rng, n_choices, bias_b, rng.uniform(0.70, 0.80)), gold));
    fx.records.push_back(make_record(fx.dataset, id, "B", PromptVariant::noimg,
                                     peaked(rng, n_choices, bias_a, rng.uniform(0.70, 0.80)), gold));
  }
  return fx;
}

std::vector<std::string> names() {
  return {"planted", "random", "quality", "monotone", "uniform_noimg", "opposite_bias"};
}

Fixture by_name(std::string_view name, std::optional<std::uint64_t> seed) {
  if (name == "planted") return seed ? planted_bias(*seed) : planted_bias();
  if (name == "random") return seed ? random_instance(*seed) : random_instance();
  if (name == "quality") return seed ? quality_vs_quantity(*seed) : quality_vs_quantity();
  if (name == "monotone") return seed ? monotone(*seed) : monotone();
  if (name == "uniform_noimg") return seed ? uniform_noimg(*seed) : uniform_noimg();
  if (name == "opposite_bias") return seed ? opposite_bias(*seed) : opposite_bias();
  throw SpecError("unknown fixture '" + std::string(name) + "'");
}

}  // namespace lcomp::fixtures
