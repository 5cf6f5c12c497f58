#pragma once

// Order-i reflection across the face t = 0 (first coordinate):
//   u_bar(t, y) = sum_{l=1}^{i+1} a_{l-1} u(-t/l, y)   for t < 0,
// where sum_l (-1/l)^j a_{l-1} = 1 for j = 0..i, so every t-derivative up
// to order i matches at t = 0.

#include <cstddef>
#include <string>
#include <vector>

#include "jetlab/functions.hpp"
#include "jetlab/grid.hpp"

namespace jetlab {

inline constexpr int kMaxHestenesOrder = 12;

struct ExactRational {
  std::string num;
  std::string den;  // positive, "1" for integers

  bool isZero() const { return num == "0"; }
  // "p" for integers, "p/q" otherwise.
  std::string str() const;
};

struct HestenesCoefficients {
  int order = 0;
  std::vector<ExactRational> exact;  // a_0..a_i
  std::vector<double> values;        // rounded from exact

  double absSum() const;
};

// Exact Gaussian elimination on the (i+1)x(i+1) system. 0 <= order <= 12.
HestenesCoefficients solveCoefficients(int order);

// sum_{l} (-l)^{-j} a_{l-1} - 1 for j = 0..order, evaluated exactly from
// the stored rationals.
std::vector<ExactRational> coefficientResiduals(const HestenesCoefficients& c);

// Reflection of an analytic jet. The result has order min(u.order, c.order).
// Evaluation at t < 0 throws ProbeOutsideMask when a probe (-t/l, y) lies
// outside u's region.
AnalyticJet extendHalfSpace(const AnalyticJet& u, const HestenesCoefficients& c);

struct LatticeExtension {
  SampledJet jet;
  std::size_t extendedPoints = 0;
  // Largest distance between an exact probe -t/l and the sample used.
  double maxProbeOffset = 0.0;
  // sum |a_l| * maxProbeOffset * (largest one-step t-slope of any component).
  double errorEstimate = 0.0;
};

// Reflection of a sampled jet whose mask lies in t >= 0, with t = 0 on the
// lattice. The output grid extends axis 0 down to -max(t); a point with
// t < 0 is filled iff every nearest-sample probe is in u's mask.
LatticeExtension extendHalfSpace(const SampledJet& u, const HestenesCoefficients& c);

// Single lattice-point query; ProbeOutsideMask when a probe is unavailable.
double extendedValueAt(const SampledJet& u, const HestenesCoefficients& c, const MultiIndex& alpha, double t,
                       int tangentIndex = 0);

}  // namespace jetlab
