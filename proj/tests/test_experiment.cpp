#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "flaglyap/errors.hpp"
#include "flaglyap/experiment.hpp"
#include "flaglyap/liealg.hpp"
#include "test_util.hpp"

using namespace flaglyap;
using nlohmann::json;

namespace {

json minimal() {
  return json::parse(R"({
    "schema": 1,
    "ambient": {"d": 2},
    "base": {"size": 2, "cycles": [[0, 1]]},
    "generators": {"constant": [[2, 1], [1, 1]]}
  })");
}

std::string error_of(const json& j) {
  try {
    parse_config(j);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, MinimalDefaults) {
  const ExperimentConfig cfg = parse_config(minimal());
  EXPECT_EQ(cfg.dim, 2);
  EXPECT_EQ(cfg.cocycle.base().size(), 2);
  EXPECT_EQ(cfg.weights.size(), 1u);
  EXPECT_EQ(cfg.gauge.size(), 2);
  EXPECT_EQ(cfg.scan_grid.size(), 21u);
  EXPECT_EQ(cfg.resolved["schema"], 1);
  EXPECT_TRUE(cfg.resolved.contains("generators"));
}

TEST(Config, ErrorsNameTheJsonPath) {
  json j = minimal();
  j["schema"] = 2;
  EXPECT_NE(error_of(j).find("/schema"), std::string::npos);

  j = minimal();
  j["base"]["cycles"] = json::parse("[[0, 0]]");
  EXPECT_NE(error_of(j).find("/base"), std::string::npos);

  j = minimal();
  j["generators"]["constant"] = json::parse("[[2, 0], [0, 1]]");
  EXPECT_NE(error_of(j).find("/generators/0"), std::string::npos);

  j = minimal();
  j["generators"]["constant"][1][0] = "x";
  EXPECT_NE(error_of(j).find("/generators/constant/1/0"), std::string::npos);

  j = minimal();
  j["weights"] = json::parse("[[1, 2]]");
  EXPECT_NE(error_of(j).find("/weights/0"), std::string::npos);

  j = minimal();
  j.erase("base");
  EXPECT_NE(error_of(j).find("'base'"), std::string::npos);

  j = minimal();
  j["ambient"]["d"] = 13;
  EXPECT_NE(error_of(j).find("/ambient/d"), std::string::npos);
}

TEST(Config, SamplerAndSeedOverrides) {
  json j = minimal();
  j["ambient"]["d"] = 3;
  j["base"] = json::parse(R"({"size": 3, "cycles": [[0, 1, 2]]})");
  j["generators"] = json::parse(R"({"sampler": {"family": "minor_positive", "k": [2], "seed": 4}})");
  const ExperimentConfig a = parse_config(j);
  ASSERT_TRUE(a.semigroup.has_value());
  EXPECT_EQ(a.weights.size(), 1u);  // only omega_2 is outside the predicted type
  const ExperimentConfig b = parse_config(j);
  EXPECT_TRUE(a.cocycle.generator(0) == b.cocycle.generator(0));
  ConfigOverrides o;
  o.seed = 99;
  const ExperimentConfig c = parse_config(j, o);
  EXPECT_FALSE(a.cocycle.generator(0) == c.cocycle.generator(0));
  EXPECT_EQ(c.resolved["seed"], 99);
  o.tol = 1e-6;
  o.out_dir = "elsewhere";
  const ExperimentConfig d = parse_config(j, o);
  EXPECT_EQ(d.section.tol, 1e-6);
  EXPECT_EQ(d.out_dir, "elsewhere");
}

TEST(Config, SymplecticAmbientChecksGenerators) {
  json j = minimal();
  j["ambient"] = json::parse(R"({"symplectic_n": 2})");
  j["base"] = json::parse(R"({"size": 1, "cycles": [[0]]})");
  j["generators"] = json::parse(R"({"constant": [[2,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,0.5]]})");
  EXPECT_NE(error_of(j).find("not symplectic"), std::string::npos);
  j["generators"] = json::parse(R"({"sampler": {"family": "cone_positive"}})");
  EXPECT_NE(error_of(j).find("symplectic_q"), std::string::npos);
}

TEST(Config, SyntaxErrorsReportTheLine) {
  const auto path = std::filesystem::temp_directory_path() / "flaglyap_bad_syntax.json";
  {
    std::ofstream out(path);
    out << "{\n  \"schema\": 1,\n  \"ambient\": {\"d\": 2,}\n}\n";
  }
  try {
    load_config_file(path);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
  std::filesystem::remove(path);
}

TEST(Config, VerifySection) {
  const json j = json::parse(R"({"schema": 1, "verify": {"thresholds": {"C6": 1e-3}, "only": ["C1"], "seed": 5}})");
  const VerifyConfig v = parse_verify_config(j);
  EXPECT_EQ(v.thresholds.at("C6"), 1e-3);
  EXPECT_EQ(v.only, (std::vector<std::string>{"C1"}));
  EXPECT_EQ(v.seed, 5u);
  EXPECT_THROW(parse_verify_config(json::parse(R"({"schema": 1, "verify": {"thresholds": {"C6": "x"}}})")),
               ValidationError);
}

TEST(Reports, CsvIsCrlfAndRoundTrips) {
  const ExperimentConfig cfg = parse_config(minimal());
  const SpectrumReport r = spectrum_report(cfg.cocycle);
  const std::string csv = spectrum_csv(r, cfg.cocycle.base());
  EXPECT_EQ(csv.rfind("x,nu,h1,h2,gap1\r\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\r'), 3);
  const json j = to_json(r, cfg.cocycle.base());
  EXPECT_EQ(j["points"].size(), 2u);
  EXPECT_EQ(j["method"], "exact-periodic");
}
