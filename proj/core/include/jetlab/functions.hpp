#pragma once

// Closed-form evaluators, values and partials, for the functions of the
// counterexamples plus a small set of smooth test functions.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jetlab/domains.hpp"
#include "jetlab/grid.hpp"
#include "jetlab/jet2.hpp"

namespace jetlab {

class AnalyticJet {
 public:
  using Evaluator = std::function<double(const Point&, const MultiIndex&)>;
  using Region = std::function<bool(const Point&)>;

  AnalyticJet(std::string name, int dim, int order, Evaluator eval, Region region,
              std::optional<DomainSpec> spec = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  const std::optional<DomainSpec>& regionSpec() const noexcept { return spec_; }

  bool contains(const Point& p) const { return region_(p); }

  // Throws PointOutsideRegion off the region and InvalidArgument for
  // |alpha| > order.
  double operator()(const Point& p, const MultiIndex& alpha) const;
  double value(const Point& p) const { return (*this)(p, MultiIndex::zero(dim_)); }

  // Partials up to min(order, 2) as a Jet2 (2-D jets only).
  Jet2 jet2(const Point& p) const;

  // Same evaluator, restricted to a smaller region.
  AnalyticJet restrictedTo(std::string name, Region region, std::optional<DomainSpec> spec) const;

 private:
  std::string name_;
  int dim_;
  int order_;
  Evaluator eval_;
  Region region_;
  std::optional<DomainSpec> spec_;
};

// Samples every |alpha| <= order on the mask.
SampledJet sample(const AnalyticJet& f, const GridMask& mask, int order);

// ------------------------------------------------------- Cantor function

inline constexpr int kMaxPhiDepth = 40;
inline constexpr int kDefaultPhiDepth = 30;

// Cantor-Lebesgue function by the ternary-to-binary digit map applied to the
// exact dyadic value of s; stops at the first digit 1 or after depth digits.
double cantorPhi(double s, int depth = kDefaultPhiDepth);
// Same digit map on the exact rational num/den (0 <= num <= den).
double cantorPhiRational(std::int64_t num, std::int64_t den, int depth = kDefaultPhiDepth);

// -------------------------------------------------------------- mollifier

struct MollifierValue {
  double value;
  double derivative;
};
// e^{-1/t} for t > 0, else 0; underflow to 0 is silent.
MollifierValue mollifier(double t);
// k-th derivative of e^{-1/t}: P_k(1/t) e^{-1/t} with P_{k+1}(u) = u^2 (P_k - P_k').
double mollifierDerivative(double t, int k);

// ------------------------------------------------ counterexample jets

// x-bar on the closed square Q: phi(s) e^{-1/t} for 0 < s, t <= 1, else 0.
double example1Closure(const Point& p, int phiDepth = kDefaultPhiDepth);
// Same with the exact rational s = sNum / sDen (certificates).
double example1ClosureRational(std::int64_t sNum, std::int64_t sDen, double t, int phiDepth = kDefaultPhiDepth);

// x on the slit square: partials of any order; s-partials vanish (phi is
// locally constant off the Cantor set). Region: Q minus the level-depth slits.
AnalyticJet example1Jet(int order, int depth, int phiDepth = kDefaultPhiDepth);

// Order-1 comb function: (s - a_n) t^2 on A_n, s t^2 on B.
AnalyticJet example3Jet(int nTeeth = 50);

// Order-1 staircase: s on I_0, s - s_n on I_n.
AnalyticJet gap1dJet(int nSegments = 50);

// ------------------------------------------------------- test functions

struct PolyTerm {
  double coef;
  int s;  // exponent of the first coordinate
  int t;  // exponent of the second coordinate (ignored in 1-D)
};

AnalyticJet polynomialJet(std::string name, int dim, std::vector<PolyTerm> terms, int order = 8);
AnalyticJet chiJet(int order = 8);          // s t^2
AnalyticJet linearJet(int order = 8);       // s + t
AnalyticJet sinCosJet(int order = 8);       // sin(s) cos(t)
AnalyticJet constantJet(int dim, double c, int order = 8);
AnalyticJet expJet1d(int order = 12);       // e^t in 1-D
AnalyticJet cantorPhiJet(int depth = kDefaultPhiDepth);  // 1-D, order 0, on [0, 1]

// Names: example1, example3, gap1d, chi, linear, sincos, zero, one, exp,
// cantorPhi, poly:<c>*<a>*<b>[+...] (terms c s^a t^b).
AnalyticJet namedFunction(const std::string& name, int order, const DomainSpec& domain);

}  // namespace jetlab
