// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

// Thin pybind11 layer. Distributions cross the boundary as lists of floats,
// specs and reports as JSON text; the Python package decodes the JSON.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "lcomp/composition.hpp"
#include "lcomp/core.hpp"
#include "lcomp/errors.hpp"
#include "lcomp/evaluation.hpp"
#include "lcomp/experiments.hpp"
#include "lcomp/fixtures.hpp"
#include "lcomp/record_store.hpp"
#include "lcomp/spec_io.hpp"

namespace py = pybind11;
using namespace lcomp;

namespace {

using Vec = std::vector<double>;

Vec to_vec(const Distribution& d) { return {d.probs().begin(), d.probs().end()}; }

std::vector<Distribution> to_dists(const std::vector<Vec>& vs) {
  std::vector<Distribution> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.emplace_back(v);
  return out;
}

CompositionSpec one_spec(const std::string& text) {
  auto specs = parse_spec_document(text);
  if (specs.size() != 1) throw SpecError("expected exactly one spec, got " + std::to_string(specs.size()));
  return specs.front();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Likelihood composition engine";

  auto base = py::register_exception<Error>(m, "LcompError", PyExc_ValueError);
  py::register_exception<InvalidRecord>(m, "InvalidRecord", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DuplicateRecord>(m, "DuplicateRecord", base.ptr());
  py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
  py::register_exception<JoinError>(m, "JoinError", base.ptr());
  py::register_exception<SpecError>(m, "SpecError", base.ptr());
  py::register_exception<ComparabilityError>(m, "ComparabilityError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  m.def("compute_candidate_likelihood",
        [](const Vec& token_logprobs) { return compute_candidate_likelihood(TokenLogProbs(token_logprobs)); },
        py::arg("token_logprobs"));
  m.def("normalize", [](const Vec& loglik) { return to_vec(normalize(loglik)); }, py::arg("loglik"));
  m.def("argmax_option", [](const Vec& v) { return argmax_option(std::span<const double>(v)); },
        py::arg("values"));

  m.def("debias",
        [](const Vec& s, const Vec& n, double a) { return to_vec(debias(Distribution(s), Distribution(n), a)); },
        py::arg("y_simple"), py::arg("y_noimg"), py::arg("alpha"));
  m.def("highlight",
        [](const Vec& s, const Vec& n, double a) {
          return to_vec(highlight(Distribution(s), Distribution(n), a));
        },
        py::arg("y_positive"), py::arg("y_negative"), py::arg("alpha"));
  m.def("cross_model_contrast",
        [](const Vec& yb, const std::string& mb, const Vec& ya, const std::string& ma, double a) {
          return to_vec(cross_model_contrast(Distribution(yb), mb, Distribution(ya), ma, a));
        },
        py::arg("y_b_simple"), py::arg("model_b"), py::arg("y_a_aux"), py::arg("model_a"), py::arg("alpha"));
  m.def("dual_contrast",
        [](const Vec& s, const Vec& n, const Vec& g, double ad, double ah) {
          return to_vec(dual_contrast(Distribution(s), Distribution(n), Distribution(g), ad, ah));
        },
        py::arg("y_simple"), py::arg("y_noimg"), py::arg("y_negative"), py::arg("alpha_d"),
        py::arg("alpha_h"));
  m.def("ensemble", [](const std::vector<Vec>& ds) { return to_vec(ensemble(to_dists(ds))); },
        py::arg("dists"));
  m.def("majority_vote",
        [](const std::vector<Vec>& ds, bool weighted) { return to_vec(majority_vote(to_dists(ds), weighted)); },
        py::arg("dists"), py::arg("weighted") = false);

  m.def("parse_specs",
        [](const std::string& text) {
          std::vector<std::string> out;
          for (const auto& s : parse_spec_document(text)) out.push_back(spec_to_json(s).dump());
          return out;
        },
        py::arg("text"), "Validates a spec document and returns each spec in canonical JSON.");
  m.def("describe_spec", [](const std::string& text) { return one_spec(text).describe(); },
        py::arg("spec_json"));

  py::class_<StoreIndex>(m, "StoreIndex")
      .def_static(
          "load",
          [](const std::vector<std::filesystem::path>& paths) {
            py::gil_scoped_release release;
            return StoreIndex::load(paths);
          },
          py::arg("paths"))
      .def_static(
          "from_jsonl",
          [](const std::string& text) {
            std::vector<LikelihoodRecord> recs;
            std::istringstream in(text);
            std::string line;
            std::size_t no = 0;
            while (std::getline(in, line)) {
              ++no;
              if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
              recs.push_back(parse_record_line(line, "<string>", no));
            }
            return StoreIndex::from_records(std::move(recs));
          },
          py::arg("text"))
      .def("datasets", &StoreIndex::datasets)
      .def("sample_ids", &StoreIndex::sample_ids, py::arg("dataset"))
      .def("models", py::overload_cast<>(&StoreIndex::models, py::const_))
      .def("record_count", &StoreIndex::record_count)
      .def("to_jsonl", [](const StoreIndex& s) {
        std::ostringstream out;
        s.serialize(out);
        return out.str();
      });

  m.def(
      "evaluate",
      [](const StoreIndex& index, const std::string& dataset, const std::string& spec_json,
         bool skip_incomplete, unsigned jobs) {
        const CompositionSpec spec = one_spec(spec_json);
        EvalReport r;
        {
          py::gil_scoped_release release;
          r = evaluate(index, dataset, spec, {skip_incomplete, jobs});
        }
        return report_to_json(r).dump();
      },
      py::arg("index"), py::arg("dataset"), py::arg("spec_json"), py::arg("skip_incomplete") = false,
      py::arg("jobs") = 1u);

  m.def(
      "compare",
      [](const std::vector<std::string>& reports_json) {
        std::vector<EvalReport> reports;
        for (const auto& t : reports_json) {
          nlohmann::json j;
          try {
            j = nlohmann::json::parse(t);
          } catch (const nlohmann::json::exception& e) {
            throw SpecError(std::string("report is not valid JSON: ") + e.what());
          }
          reports.push_back(report_from_json(j));
        }
        std::ostringstream out;
        write_delta_csv(compare(reports), out);
        return out.str();
      },
      py::arg("reports_json"), "Returns the delta table as CSV text.");

  m.def("fixture_jsonl",
        [](const std::string& name, std::optional<std::uint64_t> seed) {
          std::string out;
          for (const auto& r : fixtures::by_name(name, seed).records) out += serialize_record(r) + "\n";
          return out;
        },
        py::arg("name"), py::arg("seed") = py::none());
  m.def("fixture_names", &fixtures::names);
}
