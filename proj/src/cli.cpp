// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

#include "lcomp/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "lcomp/csv.hpp"
#include "lcomp/errors.hpp"
#include "lcomp/evaluation.hpp"
#include "lcomp/experiments.hpp"
#include "lcomp/fixtures.hpp"
#include "lcomp/record_store.hpp"
#include "lcomp/spec_io.hpp"

namespace lcomp::cli {

namespace fs = std::filesystem;

namespace {

// Shared by every subcommand that reads records. Each field mirrors a flag
// and an LCOMP_* environment variable.
struct RunConfig {
  std::vector<std::string> records;
  std::string dataset;
  std::vector<std::string> specs;
  std::string out_dir = "lcomp_out";
  bool skip_incomplete = false;
  unsigned jobs = 1;

  EvalOptions eval_options() const { return {skip_incomplete, jobs}; }
};

void add_records(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--records", cfg.records, "Record file (repeatable; ':'-separated in env)")
      ->envname("LCOMP_RECORDS")
      ->delimiter(':')
      ->required();
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool with_spec) {
  add_records(cmd, cfg);
  cmd->add_option("--dataset", cfg.dataset, "Restrict to one dataset (default: all)")
      ->envname("LCOMP_DATASET");
  if (with_spec)
    cmd->add_option("--spec", cfg.specs, "Spec file or inline JSON (repeatable)")
        ->envname("LCOMP_SPEC")
        ->required();
  cmd->add_option("--out", cfg.out_dir, "Output directory")->envname("LCOMP_OUT");
  cmd->add_flag("--skip-incomplete", cfg.skip_incomplete,
                "Exclude samples missing a required record instead of failing")
      ->envname("LCOMP_SKIP_INCOMPLETE");
  cmd->add_option("--jobs", cfg.jobs, "Worker threads")
      ->envname("LCOMP_JOBS")
      ->check(CLI::Range(1u, 1024u));
}

StoreIndex load_index(const RunConfig& cfg) {
  std::vector<fs::path> paths(cfg.records.begin(), cfg.records.end());
  return StoreIndex::load(paths);
}

std::vector<CompositionSpec> load_all_specs(const RunConfig& cfg) {
  std::vector<CompositionSpec> out;
  for (const auto& arg : cfg.specs)
    for (auto& s : load_specs(arg)) out.push_back(std::move(s));
  return out;
}

std::vector<std::string> selected_datasets(const StoreIndex& index, const RunConfig& cfg) {
  if (cfg.dataset.empty()) return index.datasets();
  if (!index.has_dataset(cfg.dataset)) throw SpecError("unknown dataset '" + cfg.dataset + "'");
  return {cfg.dataset};
}

fs::path out_path(const RunConfig& cfg, const std::string& name) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
  return fs::path(cfg.out_dir) / name;
}

std::string pad(std::string_view s, std::size_t width) {
  std::string out(s);
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const StoreIndex index = load_index(cfg);
  out << "records: " << index.record_count() << "  samples: " << index.samples().size()
      << "  datasets: " << index.datasets().size() << "  models: " << index.models().size() << "\n";
  out << pad("dataset", 20) << pad("model", 24) << pad("variant", 10) << "records\n";
  for (const auto& [key, count] : index.inventory()) {
    const auto& [model, variant, dataset] = key;
    out << pad(dataset, 20) << pad(model, 24) << pad(to_string(variant), 10) << count << "\n";
  }
  out << "OK\n";
  return kOk;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const StoreIndex index = load_index(cfg);
  const auto specs = load_all_specs(cfg);
  std::set<std::string> labels;
  for (const auto& s : specs)
    if (!labels.insert(s.label()).second)
      throw SpecError("two specs share the label '" + s.label() + "'; give them distinct names");

  out << pad("dataset", 20) << pad("spec", 44) << pad("n_eval", 8) << pad("n_skip", 8)
      << "accuracy\n";
  for (const auto& dataset : selected_datasets(index, cfg)) {
    std::vector<EvalReport> reports;
    for (const auto& spec : specs) {
      EvalReport r = evaluate(index, dataset, spec, cfg.eval_options());
      write_atomic(out_path(cfg, dataset + "__" + slug(spec.label()) + ".json"),
                   report_to_json(r).dump(2) + "\n");
      out << pad(dataset, 20) << pad(spec.label(), 44) << pad(std::to_string(r.n_evaluated), 8)
          << pad(std::to_string(r.n_skipped), 8) << format_accuracy(r.accuracy) << "\n";
      reports.push_back(std::move(r));
    }
    if (reports.size() > 1) {
      std::ostringstream csv;
      write_delta_csv(compare(reports), csv);
      write_atomic(out_path(cfg, dataset + "__deltas.csv"), csv.str());
    }
  }
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, const std::vector<double>& alphas, std::ostream& out) {
  const StoreIndex index = load_index(cfg);
  const auto specs = load_all_specs(cfg);
  SweepGrid grid;
  if (!alphas.empty()) grid.alphas = alphas;
  std::vector<SweepRow> rows;
  for (const auto& dataset : selected_datasets(index, cfg))
    for (const auto& spec : specs)
      for (auto& row : alpha_sweep(index, dataset, spec, grid, cfg.eval_options()))
        rows.push_back(std::move(row));
  std::ostringstream csv;
  write_sweep_csv(rows, csv);
  write_atomic(out_path(cfg, "sweep.csv"), csv.str());
  out << csv.str();
  return kOk;
}

int cmd_heatmap(const RunConfig& cfg, const std::string& kind, double alpha,
                const std::vector<std::string>& models, std::ostream& out) {
  const StoreIndex index = load_index(cfg);
  const SelfOpKind k = parse_self_op(kind);
  for (const auto& dataset : selected_datasets(index, cfg)) {
    const HeatmapResult h = cross_model_heatmap(index, dataset, k, alpha, models, cfg.eval_options());
    std::ostringstream csv;
    write_heatmap_csv(h, csv);
    write_atomic(out_path(cfg, dataset + "__heatmap_" + kind + ".csv"), csv.str());
    out << dataset << " " << kind << " alpha=" << csv::number(alpha)
        << " (rows: model A, columns: model B)\n";
    out << pad("", 16);
    for (const auto& b : h.models) out << pad(b, 10);
    out << "\n";
    for (std::size_t a = 0; a < h.models.size(); ++a) {
      out << pad(h.models[a], 16);
      for (std::size_t b = 0; b < h.models.size(); ++b) out << pad(format_delta(h.delta[a][b]), 10);
      out << "\n";
    }
  }
  return kOk;
}

int cmd_ablate(const RunConfig& cfg, const std::vector<std::string>& models, std::ostream& out) {
  const StoreIndex index = load_index(cfg);
  const auto specs = load_all_specs(cfg);
  for (const auto& dataset : selected_datasets(index, cfg)) {
    const auto rows = model_count_ablation(index, dataset, models, specs, cfg.eval_options());
    std::ostringstream csv;
    write_ablation_csv(rows, csv);
    write_atomic(out_path(cfg, dataset + "__ablation.csv"), csv.str());
    out << csv.str();
  }
  return kOk;
}

int cmd_noimg(const RunConfig& cfg, const std::string& model, std::ostream& out) {
  const StoreIndex index = load_index(cfg);
  for (const auto& dataset : selected_datasets(index, cfg)) {
    const NoImageBaseline b = no_image_baseline(index, dataset, model, cfg.eval_options());
    write_atomic(out_path(cfg, dataset + "__" + slug(b.report.spec.label()) + ".json"),
                 report_to_json(b.report).dump(2) + "\n");
    out << dataset << " " << model << " noimg accuracy " << format_accuracy(b.report.accuracy)
        << "  random " << format_accuracy(b.random_reference) << "\n";
  }
  return kOk;
}

int cmd_compare(const std::vector<std::string>& files, const std::string& out_file,
                std::ostream& out) {
  std::vector<EvalReport> reports;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw IoError("cannot read report '" + f + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw SpecError("report '" + f + "' is not valid JSON: " + e.what());
    }
    reports.push_back(report_from_json(j));
  }
  std::ostringstream csv;
  write_delta_csv(compare(reports), csv);
  if (!out_file.empty()) write_atomic(out_file, csv.str());
  out << csv.str();
  return kOk;
}

int cmd_fixture(const std::string& name, std::optional<std::uint64_t> seed,
                const std::string& out_file, std::ostream& out) {
  const auto fx = fixtures::by_name(name, seed);
  std::ostringstream lines;
  for (const auto& r : fx.records) lines << serialize_record(r) << "\n";
  if (out_file.empty()) {
    out << lines.str();
  } else {
    write_atomic(out_file, lines.str());
    out << "wrote " << fx.records.size() << " records (" << fx.dataset << ") to " << out_file << "\n";
  }
  return kOk;
}

}  // namespace

void write_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + tmp.string() + "'");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw IoError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp.string() + "' to '" + path.string() + "'");
}

std::string slug(std::string_view label) {
  std::string out;
  for (char c : label) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                      c == '.' || c == '-' || c == '+' || c == '_';
    out += keep ? c : '_';
  }
  return out.empty() ? "spec" : out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"lcomp: likelihood composition over multiple-choice VQA likelihood records"};
  app.require_subcommand(1);

  RunConfig cfg;

  auto* validate = app.add_subcommand("validate", "Load and validate record files");
  add_records(validate, cfg);

  auto* eval = app.add_subcommand("eval", "Evaluate composition specs and write reports");
  add_common(eval, cfg, true);

  std::vector<double> alphas;
  auto* sweep = app.add_subcommand("sweep", "Sweep the alpha of a single self-op spec");
  add_common(sweep, cfg, true);
  sweep->add_option("--alphas", alphas, "Alpha grid, strictly increasing (default 0.05,0.1,0.5,1,10)")
      ->delimiter(',');

  std::string kind = "debias";
  double alpha = 1.0;
  std::vector<std::string> models;
  auto* heatmap = app.add_subcommand("heatmap", "Cross-model contrast heatmap");
  add_common(heatmap, cfg, false);
  heatmap->add_option("--kind", kind, "debias or highlight")
      ->check(CLI::IsMember({"debias", "highlight"}));
  heatmap->add_option("--alpha", alpha, "Contrast coefficient")->check(CLI::NonNegativeNumber);
  heatmap->add_option("--models", models, "Models to include (default: all)")->delimiter(',');

  std::vector<std::string> ablate_models;
  auto* ablate = app.add_subcommand("ablate", "Model-count ablation over an ordered model list");
  add_common(ablate, cfg, true);
  ablate->add_option("--models", ablate_models, "Fusion order")->delimiter(',')->required();

  std::string noimg_model;
  auto* noimg = app.add_subcommand("noimg", "Accuracy of the question-only (no image) distribution");
  add_common(noimg, cfg, false);
  noimg->add_option("--model", noimg_model, "Model id")->required();

  std::vector<std::string> report_files;
  std::string compare_out;
  auto* cmp = app.add_subcommand("compare", "Pairwise accuracy deltas between report files");
  cmp->add_option("reports", report_files, "Report JSON files")->required();
  cmp->add_option("--out", compare_out, "CSV output file");

  std::string fixture_name;
  std::optional<std::uint64_t> fixture_seed;
  std::string fixture_out;
  auto* fixture = app.add_subcommand("fixture", "Write a synthetic record fixture");
  fixture->add_option("name", fixture_name, "Fixture name")
      ->required()
      ->check(CLI::IsMember(fixtures::names()));
  fixture->add_option("--seed", fixture_seed, "Generator seed");
  fixture->add_option("--out", fixture_out, "Output record file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kSpecError;
  }

  try {
    if (*validate) return cmd_validate(cfg, out);
    if (*eval) return cmd_eval(cfg, out);
    if (*sweep) return cmd_sweep(cfg, alphas, out);
    if (*heatmap) return cmd_heatmap(cfg, kind, alpha, models, out);
    if (*ablate) return cmd_ablate(cfg, ablate_models, out);
    if (*noimg) return cmd_noimg(cfg, noimg_model, out);
    if (*cmp) return cmd_compare(report_files, compare_out, out);
    if (*fixture) return cmd_fixture(fixture_name, fixture_seed, fixture_out, out);
  } catch (const ParseError& e) {
    err << "ParseError: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const DuplicateRecord& e) {
    err << "DuplicateRecord: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const SchemaError& e) {
    err << "SchemaError: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const InvalidRecord& e) {
    err << "InvalidRecord: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const JoinError& e) {
    err << "JoinError: " << e.what() << " (use --skip-incomplete to exclude such samples)\n";
    return kValidationFailure;
  } catch (const SpecError& e) {
    err << "SpecError: " << e.what() << "\n";
    return kSpecError;
  } catch (const ComparabilityError& e) {
    err << "ComparabilityError: " << e.what() << "\n";
    return kSpecError;
  } catch (const IoError& e) {
    err << "IoError: " << e.what() << "\n";
    return kIoError;
  }
  return kSpecError;
}

}  // namespace lcomp::cli
