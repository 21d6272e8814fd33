// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "lcomp/errors.hpp"
#include "lcomp/fixtures.hpp"
#include "lcomp/record_store.hpp"
#include "test_util.hpp"

using namespace lcomp;
namespace fs = std::filesystem;

namespace {

const char* kLine =
    R"({"dataset":"d","sample":"s1","model":"m1","variant":"simple","n":2,"loglik":[-0.5,-1.5],"gold":0})";

}  // namespace

TEST_CASE("a single well-formed line indexes one record") {
  test_util::TempDir dir;
  const auto p = dir.write("a.jsonl", std::string(kLine) + "\n");
  const auto index = StoreIndex::load(std::vector{p});
  CHECK(index.record_count() == 1);
  CHECK(index.datasets() == std::vector<std::string>{"d"});
  CHECK(index.sample_ids("d") == std::vector<std::string>{"s1"});
  CHECK(index.inventory().at({"m1", PromptVariant::simple, "d"}) == 1);
}

TEST_CASE("duplicate keys are rejected with the key named") {
  test_util::TempDir dir;
  const auto p = dir.write("a.jsonl", std::string(kLine) + "\n" + kLine + "\n");
  try {
    StoreIndex::load(std::vector{p});
    FAIL("expected DuplicateRecord");
  } catch (const DuplicateRecord& e) {
    const std::string msg = e.what();
    CHECK(msg.find("(d, s1, m1, simple)") != std::string::npos);
    CHECK(msg.find(":2") != std::string::npos);
  }
}

TEST_CASE("duplicates across files are rejected") {
  test_util::TempDir dir;
  const auto a = dir.write("a.jsonl", std::string(kLine) + "\n");
  const auto b = dir.write("b.jsonl", std::string(kLine) + "\n");
  CHECK_THROWS_AS(StoreIndex::load(std::vector{a, b}), DuplicateRecord);
}

TEST_CASE("candidate count mismatch within a sample is a schema error") {
  test_util::TempDir dir;
  const auto p = dir.write(
      "a.jsonl",
      R"({"dataset":"d","sample":"s1","model":"m1","variant":"simple","n":4,"loglik":[-1,-1,-1,-1],"gold":0}
{"dataset":"d","sample":"s1","model":"m2","variant":"simple","n":2,"loglik":[-1,-1],"gold":0}
)");
  CHECK_THROWS_AS(StoreIndex::load(std::vector{p}), SchemaError);
}

TEST_CASE("gold disagreement within a sample is a schema error") {
  test_util::TempDir dir;
  const auto p = dir.write(
      "a.jsonl",
      R"({"dataset":"d","sample":"s1","model":"m1","variant":"simple","n":2,"loglik":[-1,-1],"gold":0}
{"dataset":"d","sample":"s1","model":"m2","variant":"simple","n":2,"loglik":[-1,-1],"gold":1}
)");
  CHECK_THROWS_AS(StoreIndex::load(std::vector{p}), SchemaError);
}

TEST_CASE("truncated final line reports its line number") {
  test_util::TempDir dir;
  std::string text = std::string(kLine) + "\n" + std::string(kLine).substr(0, 40);
  const auto p = dir.write("a.jsonl", text);
  try {
    StoreIndex::load(std::vector{p});
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("a.jsonl:2") != std::string::npos);
  }
}

TEST_CASE("line-level parse failures") {
  auto parse = [](std::string_view line) { return parse_record_line(line, "x", 7); };
  CHECK_THROWS_AS(parse("[1,2]"), ParseError);
  CHECK_THROWS_AS(parse(R"({"dataset":"d","sample":"s","model":"m","variant":"simple","n":2,"loglik":[-1,-1]})"),
                  ParseError);
  CHECK_THROWS_AS(parse(R"({"dataset":"d","sample":"s","model":"m","variant":"img","n":2,"loglik":[-1,-1],"gold":0})"),
                  ParseError);
  CHECK_THROWS_AS(parse(R"({"dataset":"d","sample":"s","model":"m","variant":"simple","n":-2,"loglik":[-1,-1],"gold":0})"),
                  ParseError);
  CHECK_THROWS_AS(parse(R"({"dataset":"d","sample":"s","model":"m","variant":"simple","n":2,"loglik":[-1,"x"],"gold":0})"),
                  ParseError);
  CHECK_THROWS_AS(parse(R"({"dataset":"d","sample":"s","model":"m","variant":"simple","n":2,"loglik":[-1,-1],"gold":0,"extra":1})"),
                  ParseError);
  CHECK_THROWS_AS(parse(R"({"dataset":"d","sample":"s","model":"m","variant":"simple","n":3,"loglik":[-1,-1],"gold":0})"),
                  InvalidRecord);
  CHECK_THROWS_AS(parse(R"({"dataset":"d","sample":"s","model":"m","variant":"simple","n":2,"loglik":[-1,-1],"gold":2})"),
                  InvalidRecord);
  CHECK_THROWS(parse(R"({"dataset":"d","sample":"s","model":"m","variant":"simple","n":2,"loglik":[-1,1e999],"gold":0})"));
  const auto pos = parse(
      R"({"dataset":"d","sample":"s","model":"m","variant":"positive","n":2,"loglik":[-1,-1],"gold":0})");
  CHECK(pos.variant == PromptVariant::simple);
}

TEST_CASE("token audit field is checked against the stored means") {
  auto parse = [](std::string_view line) { return parse_record_line(line, "x", 1); };
  const auto ok = parse(
      R"({"dataset":"d","sample":"s","model":"m","variant":"simple","n":2,"loglik":[-1,-2],"gold":0,"tokens":[[-0.5,-1.5],[-2]]})");
  REQUIRE(ok.tokens.has_value());
  CHECK(ok.tokens->size() == 2);
  CHECK_THROWS_AS(
      parse(R"({"dataset":"d","sample":"s","model":"m","variant":"simple","n":2,"loglik":[-1,-2],"gold":0,"tokens":[[-0.5,-1.6],[-2]]})"),
      InvalidRecord);
  CHECK_THROWS_AS(
      parse(R"({"dataset":"d","sample":"s","model":"m","variant":"simple","n":2,"loglik":[-1,-2],"gold":0,"tokens":[[-0.5,-1.5],[]]})"),
      InvalidRecord);
}

TEST_CASE("missing files raise IoError") {
  CHECK_THROWS_AS(StoreIndex::load(std::vector<fs::path>{"/nonexistent/records.jsonl"}), IoError);
}

TEST_CASE("index is insensitive to file and line order; serialization round-trips") {
  const auto fx = fixtures::random_instance(3, 12, 3, 4);
  std::vector<std::string> lines;
  for (const auto& r : fx.records) lines.push_back(serialize_record(r));

  std::mt19937_64 rng(17);
  test_util::TempDir dir;
  auto write_split = [&](const std::string& prefix, std::vector<std::string> ls) {
    std::shuffle(ls.begin(), ls.end(), rng);
    std::string a, b;
    for (std::size_t i = 0; i < ls.size(); ++i) (i % 2 ? a : b) += ls[i] + "\n";
    return std::vector{dir.write(prefix + "1.jsonl", a), dir.write(prefix + "2.jsonl", b)};
  };
  auto first = write_split("x", lines);
  auto second = write_split("y", lines);
  std::reverse(second.begin(), second.end());

  const auto ia = StoreIndex::load(first);
  const auto ib = StoreIndex::load(second);
  CHECK(ia == ib);

  std::ostringstream s1;
  ia.serialize(s1);
  const auto rt = dir.write("rt.jsonl", s1.str());
  const auto ic = StoreIndex::load(std::vector{rt});
  CHECK(ic == ia);
  std::ostringstream s2;
  ic.serialize(s2);
  CHECK(s1.str() == s2.str());
}

TEST_CASE("serialized doubles round-trip bit-exactly") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-50.0, 0.0);
  for (int t = 0; t < 200; ++t) {
    LikelihoodRecord r{"d", "s", "m", PromptVariant::negative, {u(rng), u(rng), u(rng)}, 3, 1,
                       std::nullopt};
    const auto back = parse_record_line(serialize_record(r), "x", 1);
    CHECK(back == r);
  }
}

TEST_CASE("join_sample normalizes the required records") {
  const auto index = StoreIndex::from_records({
      {"d", "s", "m1", PromptVariant::simple, {std::log(0.6), std::log(0.2), std::log(0.2)}, 3, 0, {}},
  });
  const DistKey simple_only[] = {{"m1", PromptVariant::simple}};
  const auto join = join_sample(index, "d", "s", simple_only);
  CHECK(join.dists.size() == 1);
  CHECK(join.gold_index == 0);
  const auto& d = join.at("m1", PromptVariant::simple);
  CHECK(d[0] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(d[1] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(d[2] == doctest::Approx(0.2).epsilon(1e-14));

  CompositionSpec needs_noimg{"", {{SelfOpKind::debias, 1.0}}, MutualOp::none, {"m1"}};
  try {
    join_sample(index, "d", "s", needs_noimg);
    FAIL("expected JoinError");
  } catch (const JoinError& e) {
    CHECK(std::string(e.what()).find("(m1, noimg)") != std::string::npos);
  }
  CHECK_THROWS_AS(join_sample(index, "d", "nope", simple_only), JoinError);
}
