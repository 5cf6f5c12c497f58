#include <gtest/gtest.h>

#include <cmath>

#include "jetlab/error.hpp"
#include "jetlab/hestenes.hpp"

using namespace jetlab;

namespace {

// a_l = L_l(1): the reflection conditions say sum_l a_l p(-1/l) = p(1) for
// every polynomial p of degree <= i, so a is the Lagrange basis at the
// nodes -1/l evaluated at 1.
std::vector<double> lagrangeOracle(int order) {
  std::vector<double> a;
  for (int l = 1; l <= order + 1; ++l) {
    double v = 1.0;
    for (int m = 1; m <= order + 1; ++m)
      if (m != l) v *= (1.0 + 1.0 / m) / (-1.0 / l + 1.0 / m);
    a.push_back(v);
  }
  return a;
}

}  // namespace

TEST(Coefficients, SmallOrdersExact) {
  EXPECT_EQ(solveCoefficients(0).exact[0].str(), "1");
  const auto c1 = solveCoefficients(1);
  EXPECT_EQ(c1.exact[0].str(), "-3");
  EXPECT_EQ(c1.exact[1].str(), "4");
  const auto c3 = solveCoefficients(3);
  ASSERT_EQ(c3.exact.size(), 4u);
  EXPECT_EQ(c3.exact[0].str(), "-10");
  EXPECT_EQ(c3.exact[1].str(), "160");
  EXPECT_EQ(c3.exact[2].str(), "-405");
  EXPECT_EQ(c3.exact[3].str(), "256");
}

TEST(Coefficients, AgreeWithLagrangeForm) {
  for (int i = 0; i <= kMaxHestenesOrder; ++i) {
    const auto c = solveCoefficients(i);
    const auto want = lagrangeOracle(i);
    ASSERT_EQ(c.values.size(), want.size());
    for (std::size_t l = 0; l < want.size(); ++l) EXPECT_NEAR(c.values[l] / want[l], 1.0, 1e-9) << i << " " << l;
    for (const auto& r : coefficientResiduals(c)) EXPECT_TRUE(r.isZero());
  }
}

TEST(Coefficients, OrderRange) {
  EXPECT_THROW(solveCoefficients(-1), Error);
  EXPECT_THROW(solveCoefficients(kMaxHestenesOrder + 1), Error);
}

TEST(AnalyticReflection, MatchesDerivativesAtFace) {
  const AnalyticJet u = sinCosJet().restrictedTo("half", [](const Point& p) { return p[0] >= 0.0; }, std::nullopt);
  const AnalyticJet ub = extendHalfSpace(u, solveCoefficients(3));
  EXPECT_EQ(ub.order(), 3);
  for (double y : {-0.7, 0.0, 0.4}) {
    for (const auto& a : multiIndices(2, 3)) {
      const double e = 1e-7;
      EXPECT_NEAR(ub({-e, y}, a), u({e, y}, a), 1e-5) << a.key();
    }
  }
  // Below the face values come from reflected probes, so they differ from
  // the original function in general.
  EXPECT_GT(std::abs(ub.value({-0.5, 0.3}) - std::sin(-0.5) * std::cos(0.3)), 1e-6);
}

TEST(AnalyticReflection, ProbeOutsideRegion) {
  const AnalyticJet u =
      linearJet().restrictedTo("strip", [](const Point& p) { return p[0] >= 0.0 && p[0] <= 0.5; }, std::nullopt);
  const AnalyticJet ub = extendHalfSpace(u, solveCoefficients(1));
  EXPECT_NO_THROW(ub.value({-0.5, 0.0}));
  try {
    ub.value({-0.75, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ProbeOutsideMask);
  }
}

TEST(LatticeReflection, ReproducesPolynomialsOnCommonLattice) {
  // Probes -t/l land on the lattice when t is a multiple of l h for every
  // l <= i + 1; there the lattice extension equals the analytic one.
  const double h = 1.0 / 64;
  const GridSpec g(2, {0.0, -0.5}, h, {65, 65});
  const AnalyticJet poly = polynomialJet("q", 2, {{1.0, 2, 0}, {0.5, 1, 1}, {1.0, 0, 0}});
  const SampledJet u = sample(poly, GridMask(g, true), 2);
  const LatticeExtension ext = extendHalfSpace(u, solveCoefficients(2));
  EXPECT_EQ(ext.jet.grid().origin()[0], -1.0);
  const GridSpec& eg = ext.jet.grid();
  const int k0 = eg.nearest(0, -6 * 4 * h);
  for (int j = 0; j < eg.extent(1); j += 8) {
    const Point p = eg.point({k0, j});
    EXPECT_NEAR(ext.jet.componentAt(0)[eg.flat({k0, j})], poly.value(p), 1e-12);
  }
  EXPECT_GT(ext.extendedPoints, 0u);
}

TEST(LatticeReflection, RejectsMaskBelowFace) {
  const GridSpec g(2, {-0.5, 0.0}, 0.25, {5, 5});
  const SampledJet u = sample(linearJet(), GridMask(g, true), 1);
  EXPECT_THROW(extendHalfSpace(u, solveCoefficients(1)), Error);
}

TEST(LatticeReflection, PointQuery) {
  const double h = 0.125;
  const GridSpec g(1, {0.0, 0.0}, h, {17, 1});
  const SampledJet u = sample(expJet1d(), GridMask(g, true), 1);
  const auto c = solveCoefficients(1);
  // t = -2h: probes at 2h and h.
  const double want = -3 * std::exp(2 * h) + 4 * std::exp(h);
  EXPECT_NEAR(extendedValueAt(u, c, MultiIndex(0), -2 * h), want, 1e-14);
  EXPECT_THROW(extendedValueAt(u, c, MultiIndex(0), -5.0), Error);
}

TEST(AnalyticReflection, ExponentialSpotValue) {
  const AnalyticJet u = expJet1d().restrictedTo("exp", [](const Point& p) { return p[0] >= 0.0 && p[0] <= 1.0; },
                                                std::nullopt);
  const AnalyticJet ub = extendHalfSpace(u, solveCoefficients(2));
  const double want = 6 * std::exp(0.1) - 32 * std::exp(0.05) + 27 * std::exp(0.1 / 3);
  EXPECT_NEAR(ub.value({-0.1, 0}), want, 1e-13);
  // Order-2 matching: the gap to e^t is third order in |t|.
  EXPECT_LT(std::abs(ub.value({-0.1, 0}) - std::exp(-0.1)), 0.01);
  EXPECT_LT(std::abs(ub.value({-0.05, 0}) - std::exp(-0.05)) * 8, 1.2 * std::abs(ub.value({-0.1, 0}) - std::exp(-0.1)));
  EXPECT_EQ(ub.value({0.25, 0}), std::exp(0.25));
}

TEST(AnalyticReflection, LinearityAndZero) {
  const auto c = solveCoefficients(4);
  const AnalyticJet u = sinCosJet(), v = chiJet();
  const double al = 1.5, be = -0.25;
  const AnalyticJet w("combo", 2, 4,
                      [&](const Point& p, const MultiIndex& a) { return al * u(p, a) + be * v(p, a); },
                      [](const Point&) { return true; });
  const AnalyticJet ub = extendHalfSpace(u, c), vb = extendHalfSpace(v, c), wb = extendHalfSpace(w, c);
  const AnalyticJet zb = extendHalfSpace(constantJet(2, 0.0), c);
  for (double t : {-0.9, -0.3, -0.01})
    for (const auto& a : multiIndices(2, 2)) {
      const Point p{t, 0.4};
      EXPECT_NEAR(wb(p, a), al * ub(p, a) + be * vb(p, a), 1e-12);
      EXPECT_EQ(zb(p, a), 0.0);
    }
}
