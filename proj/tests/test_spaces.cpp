#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "jetlab/domains.hpp"
#include "jetlab/error.hpp"
#include "jetlab/functions.hpp"
#include "jetlab/glue.hpp"
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

TEST(Norms, LinearOnUnitSquare) {
  const Domain d = buildRegular(DomainSpec::rectangle(0, 1, 0, 1), 1.0 / 16, 0.25);
  const SampledJet j = sample(linearJet(), d.q, 1);
  const NormReport r = normF(j);
  EXPECT_EQ(r.mask, "Q");
  EXPECT_DOUBLE_EQ(r.at(MultiIndex(0, 0)), 2.0);
  EXPECT_DOUBLE_EQ(r.at(MultiIndex(1, 0)), 1.0);
  EXPECT_DOUBLE_EQ(r.overall, 2.0);
  EXPECT_EQ(d.q.grid().point(r.perAlpha[0].argmax)[0], 1.0);
  EXPECT_EQ(normE(restrictToOmega(j, d.omega)).mask, "Omega");
  EXPECT_EQ(normG(j).mask, "window");
}

TEST(Norms, LowerOrderSubset) {
  const Domain d = buildComb(3, 1.0 / 64);
  const SampledJet j = sample(chiJet(), d.q, 2);
  const NormReport r1 = normF(j, 1), r2 = normF(j, 2);
  EXPECT_EQ(r1.perAlpha.size(), 3u);
  EXPECT_LE(r1.overall, r2.overall);
  EXPECT_THROW(normF(j, 3), Error);
}

TEST(Norms, Properties) {
  const Domain d = buildComb(3, 1.0 / 64);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    SampledJet x(1, d.q), y(1, d.q);
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t f = 0; f < d.q.size(); ++f)
        if (d.q[f]) {
          x.componentAt(c)[f] = u(rng);
          y.componentAt(c)[f] = u(rng);
        }
    SampledJet s = x;
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t f = 0; f < d.q.size(); ++f) s.componentAt(c)[f] += y.componentAt(c)[f];
    EXPECT_LE(normF(s).overall, normF(x).overall + normF(y).overall);
    EXPECT_LE(normE(restrictToOmega(x, d.omega)).overall, normF(x).overall);
    EXPECT_LE(normF(x, 0).overall, normF(x).overall);
  }
}

TEST(Restriction, Errors) {
  const Domain a = buildComb(3, 1.0 / 64);
  const SampledJet j = sample(linearJet(), a.omega, 1);
  EXPECT_EQ(codeOf([&] { restrictToOmega(j, a.q); }), ErrorCode::MaskMismatch);
  const GridMask empty(a.q.grid(), false);
  EXPECT_EQ(codeOf([&] { normF(SampledJet(1, empty)); }), ErrorCode::EmptyMask);
}

TEST(HUpper, BoundAndRejection) {
  const Domain d = buildRegular(DomainSpec::rectangle(0, 1, 0, 1), 1.0 / 16, 0.25);
  const GridMask window(d.q.grid(), true);
  const SampledJet x = sample(linearJet(), d.q, 1);
  const SampledJet xbar = sample(linearJet(), window, 1);
  const NormReport h = hNormUpperBound(x, xbar);
  EXPECT_EQ(h.space, SpaceTag::HUpper);
  EXPECT_DOUBLE_EQ(h.overall, 2.5);  // s + t at (1.25, 1.25)
  EXPECT_GE(h.overall, normF(x).overall);
  SampledJet bad = xbar;
  const std::size_t inside = d.q.grid().flat({8, 8});
  bad.componentAt(0)[inside] += 1e-6;
  EXPECT_EQ(codeOf([&] { hNormUpperBound(x, bad); }), ErrorCode::NotAnExtension);
}

TEST(Membership, SmoothFunctionsAreConsistent) {
  const Domain d = buildRegular(DomainSpec::disk({0, 0}, 1.0), 1.0 / 128, 0.1);
  const MembershipVerdict v = checkMembership(sample(sinCosJet(), d.q, 2), SpaceTag::F, "disk");
  EXPECT_TRUE(v.consistent());
  EXPECT_FALSE(v.certificate.has_value());
  EXPECT_LE(v.worstConsistency, v.consistencyBound);
  EXPECT_EQ(v.modulus.size(), 6u);
}

TEST(Membership, InjectedDerivativeFault) {
  const Domain d = buildComb(3, 1.0 / 128);
  SampledJet j = sample(example3Jet(3), d.q, 1);
  // Triples the s-derivative on the base rectangle: no longer the derivative
  // of the sampled values.
  auto ds = j.component(MultiIndex(1, 0));
  for (std::size_t f = 0; f < ds.size(); ++f)
    if (d.q[f] && d.q.grid().point(f)[0] < -0.25) ds[f] *= 3.0;
  const MembershipVerdict v = checkMembership(j, SpaceTag::F, "comb");
  ASSERT_FALSE(v.consistent());
  ASSERT_TRUE(v.certificate.has_value());
  EXPECT_EQ(v.certificate->claim, Claim::MembershipViolation);
  EXPECT_TRUE(v.certificate->conclusive());
  EXPECT_GT(v.worstConsistency, v.consistencyBound);
}

TEST(Membership, JumpNearEdgeIsFlagged) {
  const Domain d = buildRegular(DomainSpec::rectangle(0, 1, 0, 1), 1.0 / 128, 0.1);
  SampledJet j = sample(constantJet(2, 0.0, 1), d.q, 1);
  // A jump in the value on the right edge column: x^(0,0) stops being
  // uniformly continuous at the resolution, while derivatives stay 0.
  const GridSpec& g = d.q.grid();
  const int col = g.nearest(0, 1.0);
  for (int k = 0; k < g.extent(1); ++k) {
    const std::size_t f = g.flat({col, k});
    if (d.q[f]) j.componentAt(0)[f] = 1.0;
  }
  MembershipOptions o;
  o.cFactor = 1e9;  // isolate the edge-band test
  const MembershipVerdict v = checkMembership(j, SpaceTag::F, "rectangle", o);
  EXPECT_FALSE(v.consistent());
}

TEST(SpaceTag, Names) {
  for (auto t : {SpaceTag::F, SpaceTag::E, SpaceTag::G, SpaceTag::HUpper})
    EXPECT_EQ(parseSpaceTag(spaceName(t)), t);
  EXPECT_EQ(spaceName(SpaceTag::HUpper), "H-upper");
  EXPECT_THROW(parseSpaceTag("Z"), Error);
}

TEST(Norms, SpecValues) {
  const Domain comb = buildComb(6, std::ldexp(1.0, -10));
  EXPECT_NEAR(normF(sample(example3Jet(6), comb.q, 1)).overall, 2.0, std::ldexp(1.0, -6));
  // chi = s t^2 on the base L-shape only.
  const double h = std::ldexp(1.0, -8);
  const GridSpec g = buildComb(3, h).q.grid();
  GridMask base(g);
  for (std::size_t f = 0; f < g.size(); ++f) base.set(f, inCombB(g.point(f)));
  EXPECT_NEAR(normF(sample(chiJet(), base, 1)).overall, 2.0, std::ldexp(1.0, -6));
  SampledJet zero(1, base);
  EXPECT_EQ(normF(zero).overall, 0.0);
}

TEST(Norms, OmegaCloseToQForContinuousJets) {
  const double h = 1.0 / 64;
  const Domain d = buildRegular(DomainSpec::rectangle(0, 1, 0, 1), h, 0.25);
  const SampledJet j = sample(sinCosJet(), d.q, 1);
  const double diff = normF(j).overall - normE(restrictToOmega(j, d.omega)).overall;
  EXPECT_GE(diff, 0.0);
  EXPECT_LE(diff, 2 * h * 2.0);
}

TEST(HUpper, GlobalExtensionsOfPolynomialsAndTrig) {
  const Domain rect = buildRegular(DomainSpec::rectangle(0, 1, 0, 1), 1.0 / 32, 0.1);
  const GlobalExtension er = globalExtend(linearJet(), rect, 1);
  const SampledJet x = sample(linearJet(), rect.q, 1);
  const double hUp = hNormUpperBound(x, er.xbar).overall;
  // Only the window margin raises the sup, to s + t at the far window corner.
  const GridSpec& g = er.xbar.grid();
  const Point corner = g.point({g.extent(0) - 1, g.extent(1) - 1});
  EXPECT_NEAR(hUp, corner[0] + corner[1], 1e-9);
  EXPECT_NEAR(normF(x).overall, 2.0, 1e-12);

  const Domain disk = buildRegular(DomainSpec::disk({0, 0}, 1.0), 1.0 / 64, 0.1);
  const GlobalExtension ed = globalExtend(sinCosJet(), disk, 2);
  const NormReport r = hNormUpperBound(sample(sinCosJet(), disk.q, 2), ed.xbar);
  for (const auto& e : r.perAlpha) EXPECT_LE(e.value, 1.0 + 1e-2) << e.alpha.key();
}

TEST(Membership, SinglePointPerturbation) {
  SampledJet j = sample(gap1dJet(6), buildGapIntervals(6, std::ldexp(1.0, -10)).q, 1);
  EXPECT_TRUE(checkMembership(j, SpaceTag::F, "gap1d").consistent());
  const GridSpec& g = j.grid();
  j.component(MultiIndex(1))[g.nearest(0, -0.5)] += 1.0;
  const MembershipVerdict v = checkMembership(j, SpaceTag::F, "gap1d");
  EXPECT_FALSE(v.consistent());
  EXPECT_TRUE(v.certificate.has_value());
}
