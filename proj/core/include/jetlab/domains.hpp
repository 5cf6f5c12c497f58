#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jetlab/chart.hpp"
#include "jetlab/grid.hpp"

namespace jetlab {

// ------------------------------------------------------------- Cantor set

// Level-d middle-thirds cover: 2^d closed intervals [lo/3^d, hi/3^d].
struct CantorApprox {
  int depth = 0;
  std::int64_t denominator = 1;  // 3^depth
  std::vector<std::array<std::int64_t, 2>> intervals;  // numerators, sorted

  double totalLength() const;
  // Exact membership for lattice coordinates whose product with 3^depth is
  // exactly representable (dyadic coordinates with modest exponents).
  bool contains(double s) const;
  std::array<double, 2> interval(std::size_t k) const;
};

inline constexpr std::size_t kDefaultCantorCap = std::size_t{1} << 20;

CantorApprox cantorLevel(int depth, std::size_t cap = kDefaultCantorCap);

// ---------------------------------------------------------- domain specs

enum class DomainKind { CantorSlitSquare, Comb, GapIntervals, HalfBall, Rectangle, Disk };

struct DomainSpec {
  DomainKind kind = DomainKind::Comb;
  int depth = 4;       // CantorSlitSquare
  int nTeeth = 6;      // Comb
  int nSegments = 6;   // GapIntervals
  std::array<double, 4> bounds{0.0, 1.0, 0.0, 1.0};  // Rectangle: s0, s1, t0, t1
  Point center{0.0, 0.0};                            // Disk
  double radius = 1.0;                               // Disk, HalfBall

  static DomainSpec cantorSlitSquare(int depth);
  static DomainSpec comb(int nTeeth);
  static DomainSpec gapIntervals(int nSegments);
  static DomainSpec halfBall(double radius = 1.0);
  static DomainSpec rectangle(double s0, double s1, double t0, double t1);
  static DomainSpec disk(Point center, double radius);

  int dim() const noexcept { return kind == DomainKind::GapIntervals ? 1 : 2; }
  bool chartable() const noexcept {
    return kind == DomainKind::HalfBall || kind == DomainKind::Rectangle || kind == DomainKind::Disk;
  }
  void validate() const;

  bool operator==(const DomainSpec&) const = default;
};

std::string domainName(DomainKind kind);
DomainKind parseDomainKind(const std::string& name);

// Omega = Int Q on the lattice, or Omega given explicitly (Cantor slit
// square, where Omega = O \ S is a proper dense subset of Int Q).
enum class OmegaConvention { InteriorOfQ, Explicit };

struct Domain {
  DomainSpec spec;
  double h = 0.0;
  GridMask q;
  GridMask omega;
  OmegaConvention convention = OmegaConvention::InteriorOfQ;
  std::vector<Chart> charts;  // non-empty only for chartable specs
};

// Comb tooth geometry: b_n = 2^-n, a_n = 3/4 b_n, c_n = b_n - a_n.
double combA(int n);
double combB(int n);
double combC(int n);
// 1-D gap intervals: s_n = 2^-n, I_0 = [-1, 0], I_n = [s_n, 3/2 s_n].
std::array<double, 2> gapInterval(int n);

// Exact-inequality membership in Q (teeth/segments truncated as in spec).
bool inQ(const DomainSpec& spec, const Point& p);
bool inCombB(const Point& p);
// Tooth index n <= nTeeth containing p, if any.
std::optional<int> combTooth(const Point& p, int nTeeth);
std::optional<int> gapSegment(double s, int nSegments);

Domain buildComb(int nTeeth, double h);
Domain buildCantorSlitSquare(int depth, double h);
Domain buildGapIntervals(int nSegments, double h);
// Regular domains live on the lattice h*Z^2 restricted to the bounding box
// of Q grown by margin.
Domain buildRegular(const DomainSpec& spec, double h, double margin = 0.5);
Domain buildDomain(const DomainSpec& spec, double h, double margin = 0.5);

// Regular domains only: Euclidean distance from p to the boundary of Q
// (HalfBall: to its flat face).
double distanceToBoundary(const DomainSpec& spec, const Point& p);
// Regular domains only: for lattice neighbours p in Q and q outside Q along
// one axis, the fraction theta in [0, 1] with p + theta (q - p) on the
// boundary.
double boundaryCrossing(const DomainSpec& spec, const Point& p, const Point& q);

}  // namespace jetlab
