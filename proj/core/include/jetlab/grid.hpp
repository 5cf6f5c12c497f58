#pragma once

// Uniform lattices in one or two dimensions, boolean masks over them,
// multi-indices, sampled jets, finite-difference stencils and sup-norms.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace jetlab {

using Point = std::array<double, 2>;
using LatticeIndex = std::array<int, 2>;

class GridSpec {
 public:
  GridSpec() = default;
  GridSpec(int dim, Point origin, double h, std::array<int, 2> extents);

  // Lattice covering [lo, hi] per axis; hi - lo must be a multiple of h
  // up to 1e-9 relative.
  static GridSpec box(int dim, Point lo, Point hi, double h);

  int dim() const noexcept { return dim_; }
  double h() const noexcept { return h_; }
  const Point& origin() const noexcept { return origin_; }
  const std::array<int, 2>& extents() const noexcept { return extents_; }
  int extent(int axis) const noexcept { return extents_[axis]; }
  std::size_t size() const noexcept;

  // origin + k*h, one multiply; never accumulated.
  double coord(int axis, int k) const noexcept { return origin_[axis] + k * h_; }
  Point point(const LatticeIndex& k) const noexcept;
  Point point(std::size_t flat) const noexcept { return point(index(flat)); }

  // Row-major: the last axis varies fastest.
  std::size_t flat(const LatticeIndex& k) const noexcept;
  LatticeIndex index(std::size_t flat) const noexcept;
  bool inBounds(const LatticeIndex& k) const noexcept;

  // Nearest lattice index to a coordinate along one axis (may be out of range).
  int nearest(int axis, double x) const noexcept;

  bool operator==(const GridSpec&) const = default;

 private:
  int dim_ = 1;
  Point origin_{0.0, 0.0};
  double h_ = 1.0;
  std::array<int, 2> extents_{2, 1};
};

class GridMask {
 public:
  GridMask() = default;
  explicit GridMask(GridSpec grid, bool fill = false);
  GridMask(GridSpec grid, std::vector<std::uint8_t> member);

  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return member_.size(); }
  bool operator[](std::size_t flat) const noexcept { return member_[flat] != 0; }
  bool at(const LatticeIndex& k) const noexcept { return grid_.inBounds(k) && member_[grid_.flat(k)] != 0; }
  void set(std::size_t flat, bool v) noexcept { member_[flat] = v ? 1 : 0; }
  const std::vector<std::uint8_t>& bits() const noexcept { return member_; }

  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  bool subsetOf(const GridMask& other) const;

  GridMask operator&(const GridMask& o) const;
  GridMask operator|(const GridMask& o) const;
  GridMask minus(const GridMask& o) const;

  bool operator==(const GridMask&) const = default;

 private:
  GridSpec grid_;
  std::vector<std::uint8_t> member_;
};

// p is interior iff p and all 2N axis neighbours are members.
GridMask interiorOf(const GridMask& m);
// Dilation by the full 3^N block (8 neighbours in 2-D, 2 in 1-D). This makes
// closureOf(interiorOf(Q)) = Q for rasterized sets whose features are at
// least three lattice points thick, corners included.
GridMask closureOf(const GridMask& m);
GridMask boundaryOf(const GridMask& m);
// m minus its interior: the members of m that touch the complement.
GridMask edgeOf(const GridMask& m);

// 4-connected (2N-neighbour) components of m; labels are -1 off the mask.
std::vector<int> componentLabels(const GridMask& m, int* count = nullptr);
int componentCount(const GridMask& m);

class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(int a0) : alpha_{a0, 0}, dim_(1) {}
  MultiIndex(int a0, int a1) : alpha_{a0, a1}, dim_(2) {}
  static MultiIndex zero(int dim) { return dim == 1 ? MultiIndex(0) : MultiIndex(0, 0); }

  int dim() const noexcept { return dim_; }
  int operator[](int axis) const noexcept { return alpha_[axis]; }
  int order() const noexcept { return alpha_[0] + (dim_ == 2 ? alpha_[1] : 0); }
  MultiIndex plus(int axis) const;
  MultiIndex minus(int axis) const;

  // "1,0" in 2-D and "1" in 1-D.
  std::string key() const;
  static MultiIndex parse(const std::string& key);

  bool operator==(const MultiIndex&) const = default;

 private:
  std::array<int, 2> alpha_{0, 0};
  int dim_ = 1;
};

// Graded order: all |alpha| = 0, then 1, ...; within a grade, first entry
// descending. 2-D order 2: (0,0) (1,0) (0,1) (2,0) (1,1) (0,2).
std::vector<MultiIndex> multiIndices(int dim, int order);
std::size_t multiIndexPosition(const MultiIndex& alpha);

// x^alpha for every |alpha| <= order, sampled on a mask. Values off the mask
// are stored as 0.
class SampledJet {
 public:
  SampledJet() = default;
  SampledJet(int order, GridMask mask);

  int order() const noexcept { return order_; }
  const GridMask& mask() const noexcept { return mask_; }
  const GridSpec& grid() const noexcept { return mask_.grid(); }
  int dim() const noexcept { return mask_.grid().dim(); }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }

  bool has(const MultiIndex& alpha) const noexcept;
  std::span<double> component(const MultiIndex& alpha);
  std::span<const double> component(const MultiIndex& alpha) const;
  std::span<double> componentAt(std::size_t pos) { return components_[pos]; }
  std::span<const double> componentAt(std::size_t pos) const { return components_[pos]; }

  // Zeroes every value off the mask; throws InvalidArgument on non-finite
  // values on the mask.
  void validate();

  bool operator==(const SampledJet&) const = default;

 private:
  int order_ = 0;
  GridMask mask_;
  std::vector<MultiIndex> indices_;
  std::vector<std::vector<double>> components_;
};

enum class Stencil { Central, Forward, Backward };

struct FdResult {
  double value;
  Stencil stencil;
};

// Partial along axis (0-based) of component alpha at lattice point p:
// central second order when both axis neighbours are in the mask, first
// order one-sided otherwise. NoNeighbor when neither is available.
FdResult fdPartial(const SampledJet& jet, const MultiIndex& alpha, int axis, const LatticeIndex& p);

// Same stencil rules on a bare value lattice.
FdResult fdPartial(std::span<const double> values, const GridMask& mask, int axis, const LatticeIndex& p);

struct SupResult {
  double value = 0.0;
  std::size_t argmax = 0;
};

// max |v| over mask points. EmptyMask when the mask has no members.
SupResult supOnMask(std::span<const double> values, const GridMask& mask);

}  // namespace jetlab
