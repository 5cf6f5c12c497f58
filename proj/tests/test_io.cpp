#include <gtest/gtest.h>

#include <filesystem>

#include <nlohmann/json.hpp>

#include "jetlab/certify.hpp"
#include "jetlab/domains.hpp"
#include "jetlab/error.hpp"
#include "jetlab/functions.hpp"
#include "jetlab/glue.hpp"
#include "jetlab/hestenes.hpp"
#include "jetlab/io.hpp"
#include "jetlab/spaces.hpp"

using namespace jetlab;

namespace {

ErrorCode codeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

}  // namespace

TEST(Json, GridAndMask) {
  const Domain d = buildComb(3, 1.0 / 64);
  EXPECT_EQ(gridFromJson(toJson(d.q.grid())), d.q.grid());
  EXPECT_EQ(maskFromJson(toJson(d.q)), d.q);
  const auto doc = nlohmann::json::parse(toJson(d.q));
  // Run-length encoded: far fewer entries than lattice points.
  EXPECT_LT(doc.dump().size(), d.q.size() / 4);
}

TEST(Json, JetRoundTripIsExact) {
  const Domain d = buildRegular(DomainSpec::disk({0, 0}, 1.0), 1.0 / 32, 0.1);
  const SampledJet j = sample(sinCosJet(), d.q, 2);
  const SampledJet back = jetFromJson(toJson(j));
  EXPECT_EQ(back, j);
  EXPECT_EQ(toJson(back), toJson(j));
}

TEST(Json, Domains) {
  for (const std::string arg : {"comb:4", "gap1d:3", "cantorslit:2", "halfball:0.5", "rectangle:0,2,0,1", "disk:0,0,1"}) {
    const DomainSpec s = parseDomainArg(arg);
    EXPECT_EQ(domainSpecFromJson(toJson(s)), s) << arg;
  }
  const Domain d = buildDomain(parseDomainArg("cantorslit:2"), 1.0 / 64);
  const Domain back = domainFromJson(toJson(d));
  EXPECT_EQ(back.q, d.q);
  EXPECT_EQ(back.omega, d.omega);
  EXPECT_EQ(back.convention, d.convention);
}

TEST(Json, CoefficientsCertificatesReports) {
  const auto c = solveCoefficients(5);
  const auto cb = coefficientsFromJson(toJson(c));
  EXPECT_EQ(cb.values, c.values);
  EXPECT_EQ(cb.exact.back().str(), c.exact.back().str());
  for (const Certificate& cert : {certifyComb(6), certifyGap1d(6), certifyCantorSlit(22)})
    EXPECT_EQ(certificateFromJson(toJson(cert)), cert);
  const Domain d = buildComb(3, 1.0 / 64);
  const SampledJet j = sample(example3Jet(3), d.q, 1);
  const NormReport r = normF(j);
  EXPECT_EQ(normReportFromJson(toJson(r)), r);
  const MembershipVerdict v = checkMembership(j, SpaceTag::F, "comb");
  EXPECT_EQ(toJson(verdictFromJson(toJson(v))), toJson(v));
}

TEST(Json, ExtensionWrapperLoadsAsJet) {
  const Domain d = buildRegular(DomainSpec::rectangle(0, 1, 0, 1), 1.0 / 16, 0.25);
  const GlobalExtension e = globalExtend(linearJet(), d, 1);
  const std::string doc = toJson(e);
  EXPECT_EQ(jetFromJson(doc), e.xbar);
  const auto meta = nlohmann::json::parse(doc).at("metadata");
  EXPECT_TRUE(meta.contains("charts"));
}

TEST(Json, ParseErrors) {
  EXPECT_EQ(codeOf([] { jetFromJson("{not json"); }), ErrorCode::Parse);
  EXPECT_EQ(codeOf([] { certificateFromJson("{}"); }), ErrorCode::Parse);
  EXPECT_EQ(codeOf([] { parseDomainArg("comb:x"); }), ErrorCode::Parse);
  EXPECT_EQ(codeOf([] { parseDomainArg("klein"); }), ErrorCode::Parse);
}

TEST(Provenance, StripRestoresPayload) {
  const std::string payload = toJson(certifyComb(4));
  const std::string withP = withProvenance(payload, {{"tool", "x"}, {"h", "0.5"}});
  EXPECT_NE(withP, payload);
  EXPECT_EQ(stripProvenance(withP), payload);
  EXPECT_EQ(stripProvenance(prettyJson(withP)), payload);
  EXPECT_EQ(nlohmann::json::parse(withP).at("provenance").at("h"), "0.5");
}

TEST(Files, RoundTripAndMissing) {
  const auto path = (std::filesystem::temp_directory_path() / "jetlab_io_test.txt").string();
  writeTextFile(path, "abc\n");
  EXPECT_EQ(readTextFile(path), "abc\n");
  std::filesystem::remove(path);
  EXPECT_EQ(codeOf([&] { readTextFile(path); }), ErrorCode::Io);
}

TEST(Csv, Headers) {
  const Certificate c = certifyComb(3);
  const std::string cc = certificateCsv(c);
  EXPECT_EQ(cc.substr(0, cc.find('\n')), "n,base_s,base_t,probe_s,probe_t,d_n");
  EXPECT_EQ(std::count(cc.begin(), cc.end(), '\n'), 4);
  const GridSpec g(2, {0, 0}, 0.5, {2, 2});
  const SampledJet j = sample(linearJet(), GridMask(g, true), 1);
  const std::string jc = jetCsv(j);
  EXPECT_EQ(jc.substr(0, jc.find('\n')), "i,j,s,t,member,\"0,0\",\"1,0\",\"0,1\"");
}
