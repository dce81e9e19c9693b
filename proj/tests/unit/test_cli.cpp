#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <string>

#include "finsler/cli/job.hpp"
#include "finsler/cli/report.hpp"
#include "finsler/error.hpp"
#include "oracles.hpp"

using namespace finsler;
using namespace finsler::cli;
using json = nlohmann::ordered_json;

namespace {

json base(const std::string& command) {
  return json{{"schema_version", 1}, {"command", command}, {"metric", {{"builtin", "euclidean"}, {"n", 2}}}};
}

void expect_schema_error(const json& doc, const std::string& fragment) {
  try {
    (void)parse_job(doc);
    FAIL() << "expected SchemaError for " << doc.dump();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchemaError);
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

const json* find_check(const json& checks, const std::string& name) {
  for (const auto& c : checks)
    if (c["name"] == name) return &c;
  return nullptr;
}

// Numbers within a relative 1e-9, everything else exactly.
void compare_json(const json& got, const json& want, const std::string& path) {
  if (want.is_number() && got.is_number()) {
    const double a = got.get<double>(), b = want.get<double>();
    EXPECT_LE(std::abs(a - b), 1e-9 * std::max(1.0, std::abs(b))) << path;
    return;
  }
  ASSERT_EQ(got.type(), want.type()) << path;
  if (want.is_object()) {
    ASSERT_EQ(got.size(), want.size()) << path;
    for (auto it = want.begin(); it != want.end(); ++it) {
      ASSERT_TRUE(got.contains(it.key())) << path << "/" << it.key();
      compare_json(got[it.key()], it.value(), path + "/" + it.key());
    }
  } else if (want.is_array()) {
    ASSERT_EQ(got.size(), want.size()) << path;
    for (std::size_t i = 0; i < want.size(); ++i) compare_json(got[i], want[i], path + "/" + std::to_string(i));
  } else {
    EXPECT_EQ(got, want) << path;
  }
}

}  // namespace

TEST(ParseJob, Defaults) {
  const auto job = parse_job(base("eval"));
  EXPECT_EQ(job.command, Command::eval);
  EXPECT_EQ(job.samples.count, 25);
  EXPECT_EQ(job.quantities, (std::vector<std::string>{"F", "G", "S"}));
  EXPECT_EQ(job.tol.classify, 1e-6);
}

TEST(ParseJob, SchemaErrors) {
  auto j = base("eval");
  j["schema_version"] = 2;
  expect_schema_error(j, "schema_version");

  j = base("integrate");
  expect_schema_error(j, "command");

  j = base("eval");
  j["extra"] = 1;
  expect_schema_error(j, "extra");

  j = base("classify");
  expect_schema_error(j, "fields");

  j = base("eval");
  j["quantities"] = {"F", "Torsion"};
  expect_schema_error(j, "Torsion");

  j = base("eval");
  j["points"] = json::array({{{"x", {0.1}}, {"y", {1, 0}}}});
  expect_schema_error(j, "points");

  j = base("eval");
  j["tolerances"] = {{"fd", -1.0}};
  expect_schema_error(j, "fd");

  j = base("eval");
  j["samples"] = {{"radius", 1.5}};
  expect_schema_error(j, "radius");

  j = base("eval");
  j["samples"] = {{"seed", -3}};
  expect_schema_error(j, "seed");

  j = base("eval");
  j["order"] = 40;
  expect_schema_error(j, "order");

  j = base("eval");
  j["metric"] = {{"builtin", "euclidean"}, {"n", 9}};
  expect_schema_error(j, "n");
}

TEST(BuildMetric, BuiltinsAndRanders) {
  EXPECT_EQ(build_metric(json{{"builtin", "funk"}, {"n", 3}}).dim(), 3);
  const json poly = {{"randers",
                      {{"n", 2},
                       {"a", {{1, 0}, {0, 1}}},
                       {"b", {json::array({{{"coeff", 0.2}, {"exponents", {1, 0}}}}), 0.1}}}},
                     {"name", "custom"}};
  const auto m = build_metric(poly);
  EXPECT_EQ(m.name(), "custom");
  const std::vector<double> x = {0.5, 0.0}, y = {1.0, 0.0};
  EXPECT_NEAR(m(x, y), 1.0 + 0.2 * 0.5, 1e-15);
  try {
    (void)build_metric(json{{"builtin", "hyperbolic-paraboloid"}, {"n", 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchemaError);
  }
}

TEST(BuildFields, Families) {
  EXPECT_EQ(build_fields({json{{"family", "flat_projective_basis"}}}, 3).size(), 15u);
  EXPECT_EQ(build_fields({json{{"family", "killing_basis"}, {"k", -1}}}, 2).size(), 3u);
}

TEST(Eval, FunkSIsHalfOfThreeF) {
  auto j = base("eval");
  j["metric"] = {{"builtin", "funk"}, {"n", 2}};
  j["samples"] = {{"count", 5}, {"seed", 4}};
  j["quantities"] = {"F", "S", "Sigma"};
  const auto r = run(parse_job(j));
  ASSERT_EQ(r.body["points"].size(), 5u);
  for (const auto& p : r.body["points"]) {
    const double F = p["quantities"]["F"]["values"].get<double>();
    const double S = p["quantities"]["S"]["values"].get<double>();
    EXPECT_NEAR(std::abs(S / (3 * F)), 0.5, 1e-8);
    const std::vector<double> x = p["x"], y = p["y"];
    EXPECT_NEAR(F, oracle::funk_F(x, y, 1, 1, {}), 1e-12);
    for (const auto& row : p["quantities"]["Sigma"]["values"])
      for (const auto& v : row) EXPECT_LT(std::abs(v.get<double>()), 1e-7);
  }
}

TEST(Eval, EuclideanSprayIsZero) {
  auto j = base("eval");
  j["quantities"] = {"G"};
  j["points"] = json::array({{{"x", {0.2, 0.1}}, {"y", {1, 2}}}});
  const auto r = run(parse_job(j));
  const auto& G = r.body["points"][0]["quantities"]["G"];
  EXPECT_EQ(G["legend"], "G^i");
  for (const auto& v : G["values"]) EXPECT_EQ(v.get<double>(), 0.0);
}

TEST(Verify, EuclideanPasses) {
  auto j = base("verify");
  j["samples"] = {{"count", 3}};
  const auto r = run(parse_job(j));
  EXPECT_EQ(r.failures, 0);
  EXPECT_TRUE(r.body["summary"]["pass"].get<bool>());
  const auto* mp = find_check(r.body["checks"], "mixed_partial_symmetry");
  ASSERT_NE(mp, nullptr);
  EXPECT_EQ((*mp)["residual"].get<double>(), 0.0);
}

TEST(Verify, RandomRandersSkipsIsotropyChecks) {
  auto j = base("verify");
  j["metric"] = {{"builtin", "random-randers"}, {"n", 2}, {"seed", 3}};
  j["samples"] = {{"count", 3}};
  const auto r = run(parse_job(j));
  EXPECT_EQ(r.failures, 0);
  const auto* xi = find_check(r.body["checks"], "xi_vanishes");
  ASSERT_NE(xi, nullptr);
  EXPECT_EQ((*xi)["status"], "skipped");
}

TEST(Classify, EuclideanFields) {
  const auto r = run(load_job(std::string(FINSLER_TEST_JOBS) + "/classify_euclidean.json"));
  EXPECT_EQ(r.failures, 0);
  const auto& fields = r.body["classification"];
  ASSERT_EQ(fields.size(), 3u);
  EXPECT_TRUE(fields[0]["flags"]["killing_F"].get<bool>());
  EXPECT_TRUE(fields[1]["flags"]["projective"].get<bool>());
  EXPECT_FALSE(fields[1]["flags"]["affine"].get<bool>());
  EXPECT_FALSE(fields[2]["flags"]["projective"].get<bool>());
}

TEST(DimScan, FunkEight) {
  const auto r = run(load_job(std::string(FINSLER_TEST_JOBS) + "/dimscan_funk.json"));
  EXPECT_EQ(r.failures, 0);
  EXPECT_EQ(r.body["dim_scan"]["nullity"], 8);
}

TEST(Report, DeterministicOutput) {
  const auto job = load_job(std::string(FINSLER_TEST_JOBS) + "/verify_funk.json");
  EXPECT_EQ(dump(run(job)), dump(run(job)));
}

TEST(Golden, MatchesStoredReports) {
  for (const std::string stem : {"eval_funk", "classify_euclidean", "dimscan_funk"}) {
    const auto got = run(load_job(std::string(FINSLER_TEST_JOBS) + "/" + stem + ".json")).body;
    std::ifstream in(std::string(FINSLER_TEST_GOLDEN) + "/" + stem + ".json");
    ASSERT_TRUE(in) << stem;
    const auto want = json::parse(in);
    compare_json(json::parse(got.dump()), want, stem);
  }
}
