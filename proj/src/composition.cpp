// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

#include "lcomp/composition.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "lcomp/errors.hpp"

namespace lcomp {

namespace {

void require_same_length(const Distribution& a, const Distribution& b) {
  if (a.size() != b.size())
    throw JoinError("distribution length mismatch: " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
}

void require_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0)
    throw SpecError("alpha must be finite and >= 0");
}

Distribution contrast(const Distribution& base, const Distribution& aux, double alpha) {
  require_same_length(base, aux);
  require_alpha(alpha);
  const double keep = 1.0 + alpha;
  std::vector<double> out(base.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = keep * base[i] - alpha * aux[i];
  return Distribution(std::move(out));
}

void require_uniform_lengths(std::span<const Distribution> dists) {
  if (dists.empty()) throw SpecError("mutual composition over an empty model list");
  for (const auto& d : dists) require_same_length(dists.front(), d);
}

std::string format_alpha(double a) {
  std::ostringstream os;
  os << a;
  return os.str();
}

}  // namespace

std::string_view to_string(SelfOpKind k) noexcept {
  return k == SelfOpKind::debias ? "debias" : "highlight";
}

std::string_view to_string(MutualOp m) noexcept {
  switch (m) {
    case MutualOp::none:
      return "none";
    case MutualOp::ensemble:
      return "ensemble";
    case MutualOp::majority_unweighted:
      return "majority_unweighted";
    case MutualOp::majority_weighted:
      return "majority_weighted";
  }
  return "none";
}

SelfOpKind parse_self_op(std::string_view s) {
  if (s == "debias") return SelfOpKind::debias;
  if (s == "highlight") return SelfOpKind::highlight;
  throw SpecError("unknown self-op '" + std::string(s) + "'");
}

MutualOp parse_mutual_op(std::string_view s) {
  if (s == "none") return MutualOp::none;
  if (s == "ensemble") return MutualOp::ensemble;
  if (s == "majority_unweighted") return MutualOp::majority_unweighted;
  if (s == "majority_weighted") return MutualOp::majority_weighted;
  throw SpecError("unknown mutual op '" + std::string(s) + "'");
}

PromptVariant aux_variant(SelfOpKind k) noexcept {
  return k == SelfOpKind::debias ? PromptVariant::noimg : PromptVariant::negative;
}

void CompositionSpec::validate() const {
  std::set<SelfOpKind> kinds;
  for (const auto& op : self_ops) {
    if (!kinds.insert(op.kind).second)
      throw SpecError("self-op '" + std::string(to_string(op.kind)) + "' listed twice");
    require_alpha(op.alpha);
  }
  if (model_ids.empty()) throw SpecError("spec names no models");
  std::set<std::string> models(model_ids.begin(), model_ids.end());
  if (models.size() != model_ids.size()) throw SpecError("spec repeats a model id");
  if (mutual == MutualOp::none && model_ids.size() != 1)
    throw SpecError("mutual op 'none' requires exactly one model");
}

const SelfOp* CompositionSpec::find(SelfOpKind kind) const noexcept {
  for (const auto& op : self_ops)
    if (op.kind == kind) return &op;
  return nullptr;
}

std::string CompositionSpec::ops_description() const {
  std::string out;
  // Canonical order: debias before highlight regardless of listing order.
  for (SelfOpKind k : {SelfOpKind::debias, SelfOpKind::highlight}) {
    if (const SelfOp* op = find(k)) {
      if (!out.empty()) out += "+";
      out += std::string(to_string(k)) + "(" + format_alpha(op->alpha) + ")";
    }
  }
  if (mutual != MutualOp::none) {
    if (!out.empty()) out += "+";
    out += to_string(mutual);
  }
  return out.empty() ? "simple" : out;
}

std::string CompositionSpec::describe() const {
  std::string out = ops_description() + "[";
  for (std::size_t i = 0; i < model_ids.size(); ++i) {
    if (i) out += "+";
    out += model_ids[i];
  }
  return out + "]";
}

std::string CompositionSpec::label() const { return name.empty() ? describe() : name; }

std::vector<std::pair<std::string, PromptVariant>> CompositionSpec::required() const {
  std::vector<std::pair<std::string, PromptVariant>> out;
  for (const auto& m : model_ids) {
    out.emplace_back(m, PromptVariant::simple);
    for (SelfOpKind k : {SelfOpKind::debias, SelfOpKind::highlight})
      if (find(k)) out.emplace_back(m, aux_variant(k));
  }
  return out;
}

const Distribution& SampleJoin::at(const std::string& model, PromptVariant v) const {
  auto it = dists.find({model, v});
  if (it == dists.end())
    throw JoinError(dataset_id + "/" + sample_id + ": missing (" + model + ", " +
                    std::string(to_string(v)) + ")");
  return it->second;
}

Distribution debias(const Distribution& y_simple, const Distribution& y_noimg, double alpha) {
  return contrast(y_simple, y_noimg, alpha);
}

Distribution highlight(const Distribution& y_positive, const Distribution& y_negative,
                       double alpha) {
  return contrast(y_positive, y_negative, alpha);
}

Distribution cross_model_contrast(const Distribution& y_b_simple, std::string_view model_b,
                                  const Distribution& y_a_aux, std::string_view model_a,
                                  double alpha) {
  if (model_a == model_b)
    throw SpecError("cross-model contrast needs two different models; got '" +
                    std::string(model_a) + "' twice");
  return contrast(y_b_simple, y_a_aux, alpha);
}

Distribution dual_contrast(const Distribution& y_simple, const Distribution& y_noimg,
                           const Distribution& y_negative, double alpha_d, double alpha_h) {
  require_same_length(y_simple, y_noimg);
  require_same_length(y_simple, y_negative);
  require_alpha(alpha_d);
  require_alpha(alpha_h);
  // Same evaluation order as contrast(), so alpha_h == 0 reproduces debias bit-for-bit.
  const double keep = 1.0 + alpha_d + alpha_h;
  std::vector<double> out(y_simple.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = (keep * y_simple[i] - alpha_d * y_noimg[i]) - alpha_h * y_negative[i];
  return Distribution(std::move(out));
}

Distribution ensemble(std::span<const Distribution> dists) {
  require_uniform_lengths(dists);
  const std::size_t n = dists.front().size();
  const double count = static_cast<double>(dists.size());
  std::vector<double> out(n);
  std::vector<double> column(dists.size());
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t m = 0; m < dists.size(); ++m) column[m] = dists[m][c];
    std::sort(column.begin(), column.end());
    double total = 0.0;
    for (double v : column) total += v;
    out[c] = total / count;
  }
  return Distribution(std::move(out));
}

Distribution majority_vote(std::span<const Distribution> dists, bool weighted) {
  require_uniform_lengths(dists);
  const std::size_t n = dists.front().size();
  const double count = static_cast<double>(dists.size());
  // Per candidate, collect the masked contributions and sum them in sorted order.
  std::vector<std::vector<double>> votes(n);
  for (const auto& d : dists) {
    const std::size_t winner = argmax_option(d);
    votes[winner].push_back(weighted ? d[winner] : 1.0);
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    std::sort(votes[c].begin(), votes[c].end());
    double total = 0.0;
    for (double v : votes[c]) total += v;
    out[c] = total / count;
  }
  return Distribution(std::move(out));
}

Distribution self_compose(const SampleJoin& join, const std::string& model,
                          std::span<const SelfOp> self_ops) {
  const SelfOp* deb = nullptr;
  const SelfOp* hil = nullptr;
  for (const auto& op : self_ops) (op.kind == SelfOpKind::debias ? deb : hil) = &op;

  const Distribution& simple = join.at(model, PromptVariant::simple);
  if (deb && hil)
    return dual_contrast(simple, join.at(model, PromptVariant::noimg),
                         join.at(model, PromptVariant::negative), deb->alpha, hil->alpha);
  if (deb) return debias(simple, join.at(model, PromptVariant::noimg), deb->alpha);
  if (hil) return highlight(simple, join.at(model, PromptVariant::negative), hil->alpha);
  return simple;
}

Distribution compose_sample(const SampleJoin& join, const CompositionSpec& spec) {
  spec.validate();
  std::vector<Distribution> per_model;
  per_model.reserve(spec.model_ids.size());
  for (const auto& m : spec.model_ids) per_model.push_back(self_compose(join, m, spec.self_ops));

  switch (spec.mutual) {
    case MutualOp::none:
      return per_model.front();
    case MutualOp::ensemble:
      return ensemble(per_model);
    case MutualOp::majority_unweighted:
      return majority_vote(per_model, false);
    case MutualOp::majority_weighted:
      return majority_vote(per_model, true);
  }
  return per_model.front();
}

}  // namespace lcomp
