#include <gtest/gtest.h>

#include <cmath>
#include <queue>
#include <random>

#include "jetlab/error.hpp"
#include "jetlab/grid.hpp"

using namespace jetlab;

namespace {

GridMask randomMask(const GridSpec& g, double p, unsigned seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution bit(p);
  GridMask m(g);
  for (std::size_t f = 0; f < m.size(); ++f) m.set(f, bit(rng));
  return m;
}

// Plain BFS flood fill, used as the oracle for component labelling.
int floodFillCount(const GridMask& m) {
  const GridSpec& g = m.grid();
  std::vector<int> seen(m.size(), 0);
  int count = 0;
  for (std::size_t f = 0; f < m.size(); ++f) {
    if (!m[f] || seen[f]) continue;
    ++count;
    std::queue<std::size_t> q;
    q.push(f);
    seen[f] = 1;
    while (!q.empty()) {
      const LatticeIndex k = g.index(q.front());
      q.pop();
      for (int axis = 0; axis < g.dim(); ++axis)
        for (int d : {-1, 1}) {
          LatticeIndex n = k;
          n[axis] += d;
          if (!m.at(n)) continue;
          const std::size_t nf = g.flat(n);
          if (!seen[nf]) {
            seen[nf] = 1;
            q.push(nf);
          }
        }
    }
  }
  return count;
}

}  // namespace

TEST(GridSpec, FlatIndexRoundTrip) {
  const GridSpec g(2, {-1.0, -0.5}, 0.125, {17, 9});
  EXPECT_EQ(g.size(), 17u * 9u);
  for (std::size_t f = 0; f < g.size(); ++f) EXPECT_EQ(g.flat(g.index(f)), f);
  EXPECT_EQ(g.flat({0, 1}), 1u);  // last axis fastest
  EXPECT_DOUBLE_EQ(g.point({16, 8})[0], 1.0);
  EXPECT_DOUBLE_EQ(g.point({16, 8})[1], 0.5);
  EXPECT_FALSE(g.inBounds({17, 0}));
  EXPECT_FALSE(g.inBounds({0, -1}));
}

TEST(GridSpec, CoordinatesAreNotAccumulated) {
  const double h = 0.1;
  const GridSpec g(1, {0.0, 0.0}, h, {1001, 1});
  EXPECT_EQ(g.coord(0, 1000), 1000 * h);
  EXPECT_EQ(g.nearest(0, 0.349), 3);
}

TEST(GridSpec, BoxCoversBounds) {
  const GridSpec g = GridSpec::box(2, {-1, 0}, {1, 1}, 0.25);
  EXPECT_EQ(g.extent(0), 9);
  EXPECT_EQ(g.extent(1), 5);
  EXPECT_THROW(GridSpec::box(2, {0, 0}, {1, 1}, 0.3), Error);
}

TEST(GridMask, SetAlgebra) {
  const GridSpec g(2, {0, 0}, 1.0, {6, 6});
  const GridMask a = randomMask(g, 0.5, 1), b = randomMask(g, 0.5, 2);
  EXPECT_TRUE((a & b).subsetOf(a));
  EXPECT_TRUE(a.subsetOf(a | b));
  EXPECT_EQ((a.minus(b) & b).count(), 0u);
  EXPECT_EQ((a.minus(b) | (a & b)), a);
}

TEST(Morphology, SquareInteriorAndEdge) {
  const GridSpec g(2, {0, 0}, 1.0, {7, 7});
  GridMask sq(g);
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) sq.set(g.flat({i, j}), true);
  const GridMask in = interiorOf(sq);
  EXPECT_EQ(in.count(), 9u);
  EXPECT_EQ(edgeOf(sq).count(), 16u);
  EXPECT_EQ(closureOf(in), sq);
  EXPECT_TRUE(boundaryOf(sq).subsetOf(closureOf(sq)));
}

TEST(Morphology, InteriorIsSubsetAndClosureIsSuperset) {
  const GridSpec g(2, {0, 0}, 1.0, {20, 20});
  for (unsigned seed = 0; seed < 20; ++seed) {
    const GridMask m = randomMask(g, 0.7, seed);
    EXPECT_TRUE(interiorOf(m).subsetOf(m));
    EXPECT_TRUE(m.subsetOf(closureOf(m)));
    EXPECT_EQ(edgeOf(m), m.minus(interiorOf(m)));
  }
}

TEST(Components, MatchFloodFill) {
  for (int dim : {1, 2}) {
    const GridSpec g = dim == 1 ? GridSpec(1, {0, 0}, 1.0, {200, 1}) : GridSpec(2, {0, 0}, 1.0, {30, 25});
    for (unsigned seed = 0; seed < 25; ++seed) {
      const GridMask m = randomMask(g, 0.55, seed);
      int n = 0;
      const auto labels = componentLabels(m, &n);
      EXPECT_EQ(n, floodFillCount(m));
      for (std::size_t f = 0; f < m.size(); ++f) EXPECT_EQ(labels[f] < 0, !m[f]);
    }
  }
}

TEST(MultiIndex, GradedOrderAndKeys) {
  const auto idx = multiIndices(2, 2);
  ASSERT_EQ(idx.size(), 6u);
  EXPECT_EQ(idx[1], MultiIndex(1, 0));
  EXPECT_EQ(idx[2], MultiIndex(0, 1));
  EXPECT_EQ(idx[5], MultiIndex(0, 2));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    EXPECT_EQ(multiIndexPosition(idx[k]), k);
    EXPECT_EQ(MultiIndex::parse(idx[k].key()), idx[k]);
  }
  EXPECT_EQ(multiIndices(1, 3).size(), 4u);
  EXPECT_EQ(MultiIndex(3).key(), "3");
  EXPECT_THROW(MultiIndex::parse("1;2"), Error);
}

TEST(SampledJet, ValidateZeroesOffMaskAndRejectsNaN) {
  const GridSpec g(1, {0, 0}, 0.5, {5, 1});
  GridMask m(g, true);
  m.set(4, false);
  SampledJet j(1, m);
  j.componentAt(0)[4] = 7.0;
  j.validate();
  EXPECT_EQ(j.componentAt(0)[4], 0.0);
  j.componentAt(1)[2] = std::nan("");
  EXPECT_THROW(j.validate(), Error);
}

TEST(FiniteDifferences, CentralIsExactOnQuadratics) {
  const GridSpec g(2, {0, 0}, 0.1, {11, 11});
  SampledJet j(0, GridMask(g, true));
  auto v = j.componentAt(0);
  for (std::size_t f = 0; f < g.size(); ++f) {
    const Point p = g.point(f);
    v[f] = p[0] * p[0] + 3 * p[1];
  }
  const FdResult c = fdPartial(j, MultiIndex(0, 0), 0, {5, 5});
  EXPECT_EQ(c.stencil, Stencil::Central);
  EXPECT_NEAR(c.value, 1.0, 1e-12);
  const FdResult fwd = fdPartial(j, MultiIndex(0, 0), 1, {5, 0});
  EXPECT_EQ(fwd.stencil, Stencil::Forward);
  EXPECT_NEAR(fwd.value, 3.0, 1e-12);
}

TEST(FiniteDifferences, IsolatedPointHasNoNeighbor) {
  const GridSpec g(1, {0, 0}, 1.0, {3, 1});
  GridMask m(g);
  m.set(1, true);
  SampledJet j(0, m);
  EXPECT_THROW(fdPartial(j, MultiIndex(0), 0, {1, 0}), Error);
}

TEST(SupOnMask, ArgmaxAndEmpty) {
  const GridSpec g(1, {0, 0}, 1.0, {4, 1});
  GridMask m(g, true);
  m.set(2, false);
  const std::vector<double> v{1.0, -3.0, -9.0, 2.0};
  const SupResult s = supOnMask(v, m);
  EXPECT_EQ(s.value, 3.0);
  EXPECT_EQ(s.argmax, 1u);
  try {
    supOnMask(v, GridMask(g, false));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyMask);
  }
}
