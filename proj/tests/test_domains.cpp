#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "jetlab/domains.hpp"
#include "jetlab/error.hpp"

using namespace jetlab;

namespace {

// Ternary-digit oracle: s in [0, 1] lies in the level-d cover iff none of its
// first d ternary digits forces it strictly inside a removed middle third.
// Exact for dyadic s with few bits.
bool inCantorCover(double s, int depth) {
  if (s < 0.0 || s > 1.0) return false;
  double t = s;
  for (int k = 0; k < depth; ++k) {
    t *= 3.0;
    if (t > 1.0 && t < 2.0) return false;
    if (t >= 2.0) t -= 2.0;
  }
  return true;
}

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

TEST(Cantor, LevelStructure) {
  for (int d = 1; d <= 8; ++d) {
    const CantorApprox c = cantorLevel(d);
    EXPECT_EQ(c.intervals.size(), std::size_t{1} << d);
    EXPECT_NEAR(c.totalLength(), std::pow(2.0 / 3.0, d), 1e-14);
  }
  const CantorApprox c2 = cantorLevel(2);
  EXPECT_EQ(c2.denominator, 9);
  EXPECT_EQ(c2.intervals[1][0], 2);
  EXPECT_EQ(c2.intervals[1][1], 3);
  EXPECT_EQ(codeOf([] { cantorLevel(25, 1000); }), ErrorCode::DepthTooLarge);
}

TEST(Cantor, MembershipMatchesTernaryOracle) {
  for (int d = 1; d <= 6; ++d) {
    const CantorApprox c = cantorLevel(d);
    for (int k = 0; k <= 1024; ++k) {
      const double s = k / 1024.0;
      EXPECT_EQ(c.contains(s), inCantorCover(s, d)) << "s = " << s << ", depth " << d;
    }
  }
}

TEST(Comb, GeometryConstants) {
  EXPECT_EQ(combB(3), 0.125);
  EXPECT_EQ(combA(3), 0.09375);
  EXPECT_EQ(combC(3), 0.03125);
}

TEST(Comb, MembershipAndConnectivity) {
  const DomainSpec spec = DomainSpec::comb(4);
  EXPECT_TRUE(inQ(spec, {-0.5, 0.5}));
  EXPECT_TRUE(inQ(spec, {0.2, 0.5}));   // tooth 2 spans [3/16, 1/4]
  EXPECT_FALSE(inQ(spec, {0.15, 0.5}));  // gap between teeth
  EXPECT_EQ(combTooth({0.2, 0.5}, 4), 2);
  EXPECT_FALSE(combTooth({0.15, 0.5}, 4).has_value());
  const Domain d = buildComb(4, 1.0 / 256);
  EXPECT_EQ(componentCount(d.q), 1);
  EXPECT_EQ(d.omega, interiorOf(d.q));
  EXPECT_EQ(codeOf([] { buildComb(6, 1.0 / 64); }), ErrorCode::ResolutionTooCoarse);
}

TEST(GapIntervals, SegmentsAreDisjoint) {
  EXPECT_EQ(gapInterval(0)[0], -1.0);
  EXPECT_EQ(gapInterval(3)[0], 0.125);
  EXPECT_EQ(gapInterval(3)[1], 0.1875);
  EXPECT_EQ(gapSegment(0.15, 6), 3);
  EXPECT_FALSE(gapSegment(0.4, 6).has_value());
  const Domain d = buildGapIntervals(5, 1.0 / 1024);
  EXPECT_EQ(d.q.grid().dim(), 1);
  EXPECT_EQ(componentCount(d.q), 6);
}

TEST(CantorSlit, OmegaIsDenseProperSubset) {
  const Domain d = buildCantorSlitSquare(3, 1.0 / 256);
  EXPECT_EQ(d.convention, OmegaConvention::Explicit);
  EXPECT_TRUE(d.omega.subsetOf(d.q));
  EXPECT_LT(d.omega.count(), d.q.count());
  // Slit points at level 3: s = 0 lies in the cover, t in (0, 1).
  const std::size_t slit = d.q.grid().flat({d.q.grid().nearest(0, 0.0), d.q.grid().nearest(1, 0.5)});
  EXPECT_TRUE(d.q[slit]);
  EXPECT_FALSE(d.omega[slit]);
  EXPECT_EQ(codeOf([] { buildCantorSlitSquare(6, 1.0 / 64); }), ErrorCode::ResolutionTooCoarse);
}

TEST(Regular, DiskAreaAndDistance) {
  const DomainSpec spec = DomainSpec::disk({0.25, -0.5}, 1.0);
  const double h = 1.0 / 128;
  const Domain d = buildRegular(spec, h, 0.25);
  EXPECT_NEAR(d.q.count() * h * h, std::numbers::pi, 0.02);
  EXPECT_EQ(componentCount(d.q), 1);
  EXPECT_NEAR(distanceToBoundary(spec, {0.25, 0.0}), 0.5, 1e-15);
  EXPECT_NEAR(distanceToBoundary(spec, {2.25, -0.5}), 1.0, 1e-15);
  EXPECT_EQ(d.charts.size(), 4u);
}

TEST(Regular, BoundaryCrossing) {
  const DomainSpec rect = DomainSpec::rectangle(0, 1, 0, 1);
  EXPECT_NEAR(boundaryCrossing(rect, {0.9, 0.5}, {1.1, 0.5}), 0.5, 1e-14);
  const DomainSpec disk = DomainSpec::disk({0, 0}, 1.0);
  const double th = boundaryCrossing(disk, {0.0, 0.95}, {0.0, 1.05});
  EXPECT_NEAR(th, 0.5, 1e-14);
  EXPECT_EQ(codeOf([] { distanceToBoundary(DomainSpec::comb(3), {0, 0}); }), ErrorCode::UnsupportedDomain);
}

TEST(Regular, HalfBallFlatFaceOnLattice) {
  const Domain d = buildRegular(DomainSpec::halfBall(1.0), 1.0 / 64, 0.25);
  const GridSpec& g = d.q.grid();
  for (std::size_t f = 0; f < g.size(); ++f)
    if (d.q[f]) {
      EXPECT_GE(g.point(f)[0], 0.0);
    }
  EXPECT_EQ(g.coord(0, g.nearest(0, 0.0)), 0.0);
}

TEST(DomainSpec, Validation) {
  EXPECT_THROW(DomainSpec::rectangle(1, 0, 0, 1).validate(), Error);
  EXPECT_THROW(DomainSpec::disk({0, 0}, -1).validate(), Error);
  EXPECT_EQ(parseDomainKind(domainName(DomainKind::Disk)), DomainKind::Disk);
  EXPECT_THROW(parseDomainKind("torus"), Error);
}
