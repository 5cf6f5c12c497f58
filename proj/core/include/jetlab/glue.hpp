#pragma once

// Global C^i extension from boundary charts: local reflections
// y_k = u_bar o phi_k^{-1} with u = x o phi_k, glued by a smooth partition
// of unity with the min-index assignment, and x_bar = x on Q, x_bar = sum_nu
// chi_nu y_{i_nu} off Q.

#include <cstddef>
#include <string>
#include <vector>

#include "jetlab/chart.hpp"
#include "jetlab/domains.hpp"
#include "jetlab/functions.hpp"
#include "jetlab/hestenes.hpp"
#include "jetlab/jet2.hpp"

namespace jetlab {

inline constexpr int kMaxGlueOrder = 2;
// Chart bumps live on the ball of this radius (10% inside B(1)).
inline constexpr double kBumpBallRadius = 0.9;
// Partition sums with S below this threshold are tapered to the exterior.
inline constexpr double kPartitionFloor = 1e-8;

// HalfBall: one identity chart. Rectangle: 4 edge charts then 4 corner
// charts. Disk: 4 overlapping polar sectors. UnsupportedDomain otherwise.
std::vector<Chart> makeCharts(const DomainSpec& spec);

class LocalExtension {
 public:
  LocalExtension(AnalyticJet x, Chart chart, int order);

  const Chart& chart() const noexcept { return chart_; }
  int order() const noexcept { return order_; }
  const AnalyticJet& source() const noexcept { return x_; }

  // Jet of y at a physical point of the chart image (partials beyond
  // order() are zeroed). ProbeOutsideMask if a reflected probe leaves Q.
  Jet2 evaluate(const Point& p) const;

 private:
  Jet2 reflectedJet(const Point& ball) const;
  Jet2 pulledBack(const Point& ball) const;

  AnalyticJet x_;
  Chart chart_;
  int order_;
  HestenesCoefficients coeffs_;
};

LocalExtension localExtend(const AnalyticJet& x, const Chart& chart, int order);

struct Bump {
  enum class Kind { Chart, Interior };
  Kind kind = Kind::Chart;
  int chart = -1;       // Kind::Chart: index into the atlas
  Point center{0, 0};   // Kind::Interior
  double radius = 0.0;  // Kind::Interior

  std::string label;
};

class BumpPartition {
 public:
  BumpPartition(std::vector<Chart> charts, std::vector<Bump> bumps);

  const std::vector<Bump>& bumps() const noexcept { return bumps_; }
  const std::vector<Chart>& charts() const noexcept { return charts_; }
  // i_nu: index into A = (chart images..., Int Q); the last entry means Int Q.
  const std::vector<int>& assignment() const noexcept { return assignment_; }
  int interiorDomainIndex() const noexcept { return static_cast<int>(charts_.size()); }

  // Unnormalized profile psi_nu with partials.
  Jet2 profile(std::size_t nu, const Point& p) const;
  // Normalized chi_nu for every bump at p (zero jets where psi vanishes).
  std::vector<Jet2> evaluate(const Point& p) const;
  // Sum of the unnormalized profiles.
  double profileSum(const Point& p) const;

  std::array<Point, 2> supportBox(std::size_t nu) const;

 private:
  friend BumpPartition buildPartition(const std::vector<Chart>&, const Domain&, int);

  std::vector<Chart> charts_;
  std::vector<Bump> bumps_;
  std::vector<int> assignment_;
};

// One bump per chart plus one interior bump; assignment by the min rule on
// lattice containment. CoverGap when a covered boundary lattice point has a
// profile sum below kPartitionFloor.
BumpPartition buildPartition(const std::vector<Chart>& charts, const Domain& domain, int order);

// Boundary points the atlas is meant to cover: all of the boundary for
// Rectangle and Disk, the flat face within 0.8 R for HalfBall.
bool inCoveredNeighborhood(const DomainSpec& spec, const Point& p, double width);

struct InterfaceStats {
  std::size_t pairs = 0;
  double maxMismatch = 0.0;
  std::vector<double> perComponent;  // graded multi-index order
};

// For lattice neighbours p in Q, q outside Q along an axis, each component is
// extrapolated linearly to the exact boundary crossing from the two nearest
// samples on either side; the two values are compared.
InterfaceStats interfaceMismatch(const SampledJet& xbar, const Domain& domain);

struct GlobalExtension {
  SampledJet xbar;  // full window
  SampledJet xOnQ;  // the samples copied into xbar on Q
  std::vector<std::string> chartLabels;
  std::vector<std::string> bumpLabels;
  std::vector<int> assignment;
  double partitionResidual = 0.0;  // max |sum chi - 1| on the boundary neighbourhood
  std::size_t neighborhoodPoints = 0;
  double neighborhoodWidth = 0.05;
  std::size_t uncoveredQPoints = 0;  // Q points outside every dom x_k
  InterfaceStats interface;
};

GlobalExtension globalExtend(const AnalyticJet& x, const Domain& domain, int order, double neighborhoodWidth = 0.05);

}  // namespace jetlab
