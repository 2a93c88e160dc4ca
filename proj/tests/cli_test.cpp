#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "staudtlab/cli.hpp"

namespace staudt::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "staudtlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json json_of(const Outcome& o) { return Json::parse(o.out); }

TEST(Cli, HarmonicExample) {
  const Outcome o = invoke({"harmonic", "--spec", "GF(5)", "--triple", "1,2,0"});
  EXPECT_EQ(o.code, 0) << o.err;
  const Json j = json_of(o);
  EXPECT_EQ(j["spec"], "GF(5)");
  EXPECT_EQ(j["fourth"], "3");
}

TEST(Cli, HarmonicInCharacteristicTwoNeedsTwoAUnit) {
  const Outcome o = invoke({"harmonic", "--spec", "Z(4)", "--triple", "0,1,3"});
  EXPECT_EQ(o.code, 1);
}

TEST(Cli, JordanCheckTranspose) {
  const Outcome o = invoke({"jordan-check", "--spec", "M(2,GF(3))", "--map", "transpose"});
  EXPECT_EQ(o.code, 0) << o.err;
  const Json j = json_of(o);
  EXPECT_EQ(j["ok"], true);
  EXPECT_EQ(j["class"], "anti");
}

TEST(Cli, JordanCheckFailureExitsOne) {
  const Outcome o = invoke({"jordan-check", "--spec", "GF(4)", "--map", "scale(a=g)", "--axioms", "jordan"});
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(json_of(o)["ok"], false);
}

TEST(Cli, PreserversOverGF9) {
  const Outcome o = invoke({"preservers", "--spec", "GF(9)"});
  EXPECT_EQ(o.code, 0) << o.err;
  const Json j = json_of(o);
  EXPECT_EQ(j["count"], 2);
  EXPECT_EQ(j["all_hom_or_anti"], true);
}

TEST(Cli, ExtendReportsBothRules) {
  const Outcome o = invoke({"extend", "--spec", "T(2,GF(3))", "--map", "flip"});
  EXPECT_EQ(o.code, 0) << o.err;
  const Json j = json_of(o);
  EXPECT_TRUE(j.contains("naive"));
  EXPECT_TRUE(j.contains("bartolone"));
}

TEST(Cli, SynthVerify) {
  const Outcome o = invoke({"synth-verify", "--spec", "GF(3)", "--dim", "2"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(json_of(o)["ok"], true);
}

TEST(Cli, UsageAndSpecErrorsExitTwo) {
  EXPECT_EQ(invoke({"harmonic", "--spec", "M(2,GF(3)", "--triple", "0,1,2"}).code, 2);
  EXPECT_EQ(invoke({"harmonic", "--spec", "GF(6)", "--triple", "0,1,2"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"jordan-check", "--spec", "GF(9)", "--map", "transpose"}).code, 2);
  EXPECT_EQ(invoke({"jordan-enum", "--spec", "M(2,GF(3))", "--budget", "10"}).code, 2);
  EXPECT_EQ(invoke({"components", "--spec", "Quat(Q)"}).code, 2);
}

TEST(Cli, ErrorReportsAreJson) {
  const Outcome o = invoke({"harmonic", "--spec", "M(2,GF(3)", "--triple", "0,1,2"});
  const Json j = json_of(o);
  EXPECT_EQ(j["error"], "Syntax");
  EXPECT_EQ(j["position"], 9);
  EXPECT_FALSE(o.err.empty());
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"jordan-check", "--spec", "Quat(Q)", "--map", "conj", "--trials", "200",
                                      "--seed", "5"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(Cli, SpecIsCanonicalized) {
  const Outcome o = invoke({"ring-info", "--spec", "Mat(2, GF(3^1))"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(json_of(o)["spec"], "M(2,GF(3))");
}

TEST(Cli, CsvOutput) {
  const Outcome o = invoke({"components", "--spec", "Z(6)", "--format", "csv"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find(','), std::string::npos);
  EXPECT_EQ(o.out.front() == '{', false);
  EXPECT_EQ(invoke({"harmonic", "--spec", "GF(5)", "--triple", "1,2,0", "--format", "csv"}).code, 2);
}

TEST(Cli, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "staudtlab_cli_test.json";
  std::filesystem::remove(path);
  const Outcome o = invoke({"eval", "--spec", "Quat(Q)", "--expr", "i*j", "--out", path.string()});
  EXPECT_EQ(o.code, 0) << o.err;
  std::ifstream in(path);
  const Json j = Json::parse(in);
  EXPECT_EQ(j["value"], "k");
  std::filesystem::remove(path);
}

Json golden(const char* name) {
  std::ifstream in(std::string(STAUDTLAB_GOLDEN_DIR) + "/" + name);
  EXPECT_TRUE(in.good()) << name;
  return Json::parse(in);
}

TEST(Cli, JordanEnumMatchesGolden) {
  const struct {
    const char* spec;
    const char* file;
  } cases[] = {{"T(2,GF(3))", "tri2_gf3.json"}, {"GF(9)", "gf9.json"}, {"Sum(GF(3),GF(3))", "sum_gf3_gf3.json"}};
  for (const auto& c : cases) {
    const Outcome o = invoke({"jordan-enum", "--spec", c.spec});
    EXPECT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(json_of(o), golden(c.file)) << c.spec;
  }
}

}  // namespace
}  // namespace staudt::cli
