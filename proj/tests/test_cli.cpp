#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "jetlab/certify.hpp"
#include "jetlab/domains.hpp"
#include "jetlab/functions.hpp"
#include "jetlab/io.hpp"

using namespace jetlab;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code;
  std::string out, err;
};

Invocation run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("jetlab_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"hestenes", "coeffs"}).code, cli::kUsage);  // --order missing
  EXPECT_EQ(run({"hestenes", "coeffs", "--order", "13"}).code, cli::kUsage);
  EXPECT_EQ(run({"hestenes", "coeffs", "--order", "two"}).code, cli::kUsage);
  EXPECT_EQ(run({"domain", "build", "--domain", "klein"}).code, cli::kUsage);
  EXPECT_EQ(run({"certify", "comb", "--n-max", "1"}).code, cli::kUsage);
  EXPECT_EQ(run({"space", "norm", "--domain", "comb:3", "--h", "0.015625"}).code, cli::kUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
}

TEST_F(CliTest, RuntimeFailures) {
  EXPECT_EQ(run({"replay", "--cert", path("missing.json")}).code, cli::kFailure);
  EXPECT_EQ(run({"domain", "build", "--domain", "comb:6", "--h", "0.25"}).code, cli::kFailure);
}

TEST_F(CliTest, CoefficientsOutput) {
  const Invocation r = run({"hestenes", "coeffs", "--order", "2"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "6 -32 27");
  ASSERT_EQ(run({"hestenes", "coeffs", "--order", "3", "--out", path("c.json")}).code, cli::kOk);
  const auto c = coefficientsFromJson(stripProvenance(readTextFile(path("c.json"))));
  EXPECT_EQ(c.exact[2].str(), "-405");
}

TEST_F(CliTest, StdoutCarriesProvenance) {
  const Invocation r = run({"certify", "comb", "--n-max", "5"});
  ASSERT_EQ(r.code, cli::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("provenance").at("nMax"), "5");
  EXPECT_EQ(certificateFromJson(stripProvenance(r.out)), certifyComb(5));
}

TEST_F(CliTest, ReplayDetectsTampering) {
  ASSERT_EQ(run({"certify", "cantorslit", "--n-max", "20", "--out", path("c.json")}).code, cli::kOk);
  EXPECT_EQ(run({"replay", "--cert", path("c.json")}).code, cli::kOk);
  auto doc = nlohmann::ordered_json::parse(readTextFile(path("c.json")));
  double& q = doc["terms"][3]["d"].get_ref<double&>();
  q += 1e-6;
  writeTextFile(path("bad.json"), doc.dump());
  const Invocation r = run({"replay", "--cert", path("bad.json"), "--out", path("r.json")});
  EXPECT_EQ(r.code, cli::kViolation);
  const auto res = nlohmann::json::parse(readTextFile(path("r.json")));
  EXPECT_EQ(res.at("pass"), false);
  EXPECT_EQ(res.at("firstMismatch"), 4);
}

TEST_F(CliTest, MembershipViolationExitCode) {
  const Domain d = buildComb(3, 1.0 / 64);
  SampledJet j = sample(example3Jet(3), d.q, 1);
  auto ds = j.component(MultiIndex(0, 1));
  for (std::size_t f = 0; f < ds.size(); ++f) ds[f] *= -2.0;
  writeTextFile(path("bad.json"), toJson(j));
  const Invocation r = run({"space", "member", "--field", path("bad.json"), "--domain", "comb:3", "--csv", path("v.csv")});
  EXPECT_EQ(r.code, cli::kViolation);
  EXPECT_TRUE(fs::exists(path("v.csv")));
  writeTextFile(path("good.json"), toJson(sample(example3Jet(3), d.q, 1)));
  EXPECT_EQ(run({"space", "member", "--field", path("good.json"), "--domain", "comb:3"}).code, cli::kOk);
}

TEST_F(CliTest, FieldPipeline) {
  ASSERT_EQ(run({"field", "sample", "--domain", "halfball", "--function", "sincos", "--order", "2", "--h", "0.03125",
                 "--out", path("f.json")})
                .code,
            cli::kOk);
  ASSERT_EQ(run({"hestenes", "extend", "--field", path("f.json"), "--order", "2", "--out", path("e.json")}).code,
            cli::kOk);
  const SampledJet e = jetFromJson(stripProvenance(readTextFile(path("e.json"))));
  EXPECT_LT(e.grid().origin()[0], 0.0);
  const Invocation n = run({"space", "norm", "--field", path("e.json"), "--space", "G"});
  ASSERT_EQ(n.code, cli::kOk);
  EXPECT_EQ(nlohmann::json::parse(n.out).at("mask"), "window");
}

TEST_F(CliTest, GlobalExtendWritesMetadataAndCsv) {
  const Invocation r = run({"extend", "prop2", "--domain", "rectangle", "--function", "linear", "--order", "1", "--h",
                     "0.0625", "--out", path("x.json"), "--csv", path("x.csv")});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto doc = nlohmann::json::parse(readTextFile(path("x.json")));
  EXPECT_EQ(doc.at("metadata").at("charts").size(), 8u);
  EXPECT_TRUE(fs::exists(path("x.csv")));
}

TEST_F(CliTest, DeterministicModuloProvenance) {
  const std::vector<std::string> args{"extend", "prop2", "--domain", "disk", "--function", "sincos",
                                      "--order",  "2",     "--h",      "0.0625", "--margin", "0.1"};
  const Invocation a = run(args), b = run(args);
  ASSERT_EQ(a.code, cli::kOk) << a.err;
  EXPECT_EQ(stripProvenance(a.out), stripProvenance(b.out));
}
