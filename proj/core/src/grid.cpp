#include "jetlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jetlab/error.hpp"
#include "jetlab/parallel.hpp"

namespace jetlab {

std::string_view toString(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoNeighbor: return "NoNeighbor";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::MaskMismatch: return "MaskMismatch";
    case ErrorCode::DepthTooLarge: return "DepthTooLarge";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::PointOutsideRegion: return "PointOutsideRegion";
    case ErrorCode::ProbeOutsideMask: return "ProbeOutsideMask";
    case ErrorCode::UnsupportedDomain: return "UnsupportedDomain";
    case ErrorCode::CoverGap: return "CoverGap";
    case ErrorCode::NotAnExtension: return "NotAnExtension";
    case ErrorCode::ReplayMismatch: return "ReplayMismatch";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- GridSpec

GridSpec::GridSpec(int dim, Point origin, double h, std::array<int, 2> extents)
    : dim_(dim), origin_(origin), h_(h), extents_(extents) {
  if (dim != 1 && dim != 2) throw Error(ErrorCode::InvalidArgument, "grid dimension must be 1 or 2");
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");
  if (extents_[0] < 2 || (dim == 2 && extents_[1] < 2))
    throw Error(ErrorCode::InvalidArgument, "grid extents must be at least 2 per axis");
  if (dim == 1) {
    extents_[1] = 1;
    origin_[1] = 0.0;
  }
}

GridSpec GridSpec::box(int dim, Point lo, Point hi, double h) {
  std::array<int, 2> ext{1, 1};
  for (int a = 0; a < dim; ++a) {
    double steps = (hi[a] - lo[a]) / h;
    double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, std::abs(steps)))
      throw Error(ErrorCode::InvalidArgument, "box side is not a multiple of the spacing");
    ext[a] = static_cast<int>(rounded) + 1;
  }
  return GridSpec(dim, lo, h, ext);
}

std::size_t GridSpec::size() const noexcept {
  return static_cast<std::size_t>(extents_[0]) * static_cast<std::size_t>(dim_ == 2 ? extents_[1] : 1);
}

Point GridSpec::point(const LatticeIndex& k) const noexcept {
  Point p{coord(0, k[0]), 0.0};
  if (dim_ == 2) p[1] = coord(1, k[1]);
  return p;
}

std::size_t GridSpec::flat(const LatticeIndex& k) const noexcept {
  if (dim_ == 1) return static_cast<std::size_t>(k[0]);
  return static_cast<std::size_t>(k[0]) * static_cast<std::size_t>(extents_[1]) + static_cast<std::size_t>(k[1]);
}

LatticeIndex GridSpec::index(std::size_t flat) const noexcept {
  if (dim_ == 1) return {static_cast<int>(flat), 0};
  auto n1 = static_cast<std::size_t>(extents_[1]);
  return {static_cast<int>(flat / n1), static_cast<int>(flat % n1)};
}

bool GridSpec::inBounds(const LatticeIndex& k) const noexcept {
  if (k[0] < 0 || k[0] >= extents_[0]) return false;
  if (dim_ == 2 && (k[1] < 0 || k[1] >= extents_[1])) return false;
  return true;
}

int GridSpec::nearest(int axis, double x) const noexcept {
  return static_cast<int>(std::lround((x - origin_[axis]) / h_));
}

// ---------------------------------------------------------------- GridMask

GridMask::GridMask(GridSpec grid, bool fill) : grid_(grid), member_(grid.size(), fill ? 1 : 0) {}

GridMask::GridMask(GridSpec grid, std::vector<std::uint8_t> member) : grid_(grid), member_(std::move(member)) {
  if (member_.size() != grid_.size()) throw Error(ErrorCode::MaskMismatch, "mask size does not match grid");
  for (auto& b : member_) b = b ? 1 : 0;
}

std::size_t GridMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(member_.begin(), member_.end(), std::uint8_t{1}));
}

bool GridMask::subsetOf(const GridMask& other) const {
  if (!(grid_ == other.grid_)) throw Error(ErrorCode::MaskMismatch, "masks live on different grids");
  for (std::size_t i = 0; i < member_.size(); ++i)
    if (member_[i] && !other.member_[i]) return false;
  return true;
}

namespace {

template <typename Op>
GridMask combine(const GridMask& a, const GridMask& b, Op op) {
  if (!(a.grid() == b.grid())) throw Error(ErrorCode::MaskMismatch, "masks live on different grids");
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]) ? 1 : 0;
  return GridMask(a.grid(), std::move(out));
}

constexpr std::array<LatticeIndex, 4> kAxisSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

}  // namespace

GridMask GridMask::operator&(const GridMask& o) const {
  return combine(*this, o, [](bool x, bool y) { return x && y; });
}
GridMask GridMask::operator|(const GridMask& o) const {
  return combine(*this, o, [](bool x, bool y) { return x || y; });
}
GridMask GridMask::minus(const GridMask& o) const {
  return combine(*this, o, [](bool x, bool y) { return x && !y; });
}

GridMask interiorOf(const GridMask& m) {
  const GridSpec& g = m.grid();
  GridMask out(g);
  const int steps = 2 * g.dim();
  for (std::size_t f = 0; f < m.size(); ++f) {
    if (!m[f]) continue;
    LatticeIndex k = g.index(f);
    bool inner = true;
    for (int s = 0; s < steps && inner; ++s) {
      LatticeIndex n{k[0] + kAxisSteps[s][0], k[1] + kAxisSteps[s][1]};
      inner = m.at(n);
    }
    out.set(f, inner);
  }
  return out;
}

GridMask closureOf(const GridMask& m) {
  const GridSpec& g = m.grid();
  GridMask out(g);
  const int r1 = g.dim() == 2 ? 1 : 0;
  for (std::size_t f = 0; f < m.size(); ++f) {
    LatticeIndex k = g.index(f);
    bool hit = false;
    for (int d0 = -1; d0 <= 1 && !hit; ++d0)
      for (int d1 = -r1; d1 <= r1 && !hit; ++d1) hit = m.at({k[0] + d0, k[1] + d1});
    out.set(f, hit);
  }
  return out;
}

GridMask boundaryOf(const GridMask& m) { return closureOf(m).minus(interiorOf(m)); }

GridMask edgeOf(const GridMask& m) { return m.minus(interiorOf(m)); }

std::vector<int> componentLabels(const GridMask& m, int* count) {
  const GridSpec& g = m.grid();
  std::vector<int> label(m.size(), -1);
  std::vector<std::size_t> stack;
  int next = 0;
  const int steps = 2 * g.dim();
  for (std::size_t seed = 0; seed < m.size(); ++seed) {
    if (!m[seed] || label[seed] >= 0) continue;
    label[seed] = next;
    stack.push_back(seed);
    while (!stack.empty()) {
      std::size_t f = stack.back();
      stack.pop_back();
      LatticeIndex k = g.index(f);
      for (int s = 0; s < steps; ++s) {
        LatticeIndex n{k[0] + kAxisSteps[s][0], k[1] + kAxisSteps[s][1]};
        if (!m.at(n)) continue;
        std::size_t nf = g.flat(n);
        if (label[nf] >= 0) continue;
        label[nf] = next;
        stack.push_back(nf);
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

int componentCount(const GridMask& m) {
  int n = 0;
  componentLabels(m, &n);
  return n;
}

// -------------------------------------------------------------- MultiIndex

MultiIndex MultiIndex::plus(int axis) const {
  MultiIndex r = *this;
  r.alpha_[axis] += 1;
  return r;
}

MultiIndex MultiIndex::minus(int axis) const {
  if (alpha_[axis] == 0) throw Error(ErrorCode::InvalidArgument, "multi-index entry would become negative");
  MultiIndex r = *this;
  r.alpha_[axis] -= 1;
  return r;
}

std::string MultiIndex::key() const {
  if (dim_ == 1) return std::to_string(alpha_[0]);
  return std::to_string(alpha_[0]) + "," + std::to_string(alpha_[1]);
}

MultiIndex MultiIndex::parse(const std::string& key) {
  auto comma = key.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      int a = std::stoi(key, &used);
      if (used != key.size() || a < 0) throw std::invalid_argument(key);
      return MultiIndex(a);
    }
    std::string k0 = key.substr(0, comma), k1 = key.substr(comma + 1);
    int a = std::stoi(k0, &used);
    if (used != k0.size()) throw std::invalid_argument(key);
    int b = std::stoi(k1, &used);
    if (used != k1.size() || a < 0 || b < 0) throw std::invalid_argument(key);
    return MultiIndex(a, b);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::Parse, "bad multi-index key '" + key + "'");
  }
}

std::vector<MultiIndex> multiIndices(int dim, int order) {
  std::vector<MultiIndex> out;
  for (int n = 0; n <= order; ++n) {
    if (dim == 1) {
      out.emplace_back(n);
    } else {
      for (int a = n; a >= 0; --a) out.emplace_back(a, n - a);
    }
  }
  return out;
}

std::size_t multiIndexPosition(const MultiIndex& alpha) {
  const int n = alpha.order();
  if (alpha.dim() == 1) return static_cast<std::size_t>(n);
  // grades 0..n-1 hold n(n+1)/2 entries; within grade n, position n - a0.
  return static_cast<std::size_t>(n * (n + 1) / 2 + (n - alpha[0]));
}

// -------------------------------------------------------------- SampledJet

SampledJet::SampledJet(int order, GridMask mask)
    : order_(order), mask_(std::move(mask)), indices_(multiIndices(mask_.grid().dim(), order)) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "jet order must be nonnegative");
  components_.assign(indices_.size(), std::vector<double>(mask_.size(), 0.0));
}

bool SampledJet::has(const MultiIndex& alpha) const noexcept {
  return alpha.dim() == dim() && alpha.order() <= order_;
}

std::span<double> SampledJet::component(const MultiIndex& alpha) {
  if (!has(alpha)) throw Error(ErrorCode::InvalidArgument, "jet has no component " + alpha.key());
  return components_[multiIndexPosition(alpha)];
}

std::span<const double> SampledJet::component(const MultiIndex& alpha) const {
  if (!has(alpha)) throw Error(ErrorCode::InvalidArgument, "jet has no component " + alpha.key());
  return components_[multiIndexPosition(alpha)];
}

void SampledJet::validate() {
  for (std::size_t c = 0; c < components_.size(); ++c) {
    auto& v = components_[c];
    for (std::size_t f = 0; f < v.size(); ++f) {
      if (!mask_[f]) {
        v[f] = 0.0;
      } else if (!std::isfinite(v[f])) {
        throw Error(ErrorCode::InvalidArgument, "non-finite value in component " + indices_[c].key());
      }
    }
  }
}

// ------------------------------------------------------------ derivatives

FdResult fdPartial(std::span<const double> values, const GridMask& mask, int axis, const LatticeIndex& p) {
  const GridSpec& g = mask.grid();
  if (axis < 0 || axis >= g.dim()) throw Error(ErrorCode::InvalidArgument, "axis out of range");
  if (!mask.at(p)) throw Error(ErrorCode::InvalidArgument, "stencil centre is not in the mask");
  LatticeIndex fwd = p, bwd = p;
  fwd[axis] += 1;
  bwd[axis] -= 1;
  const bool hasF = mask.at(fwd), hasB = mask.at(bwd);
  const double h = g.h();
  const double c = values[g.flat(p)];
  if (hasF && hasB) return {(values[g.flat(fwd)] - values[g.flat(bwd)]) / (2.0 * h), Stencil::Central};
  if (hasF) return {(values[g.flat(fwd)] - c) / h, Stencil::Forward};
  if (hasB) return {(c - values[g.flat(bwd)]) / h, Stencil::Backward};
  throw Error(ErrorCode::NoNeighbor, "no axis neighbour in mask");
}

FdResult fdPartial(const SampledJet& jet, const MultiIndex& alpha, int axis, const LatticeIndex& p) {
  return fdPartial(jet.component(alpha), jet.mask(), axis, p);
}

SupResult supOnMask(std::span<const double> values, const GridMask& mask) {
  if (values.size() != mask.size()) throw Error(ErrorCode::MaskMismatch, "value lattice does not match mask");
  const std::size_t n = values.size();
  std::vector<SupResult> partial(chunkCount(n));
  std::vector<char> seen(partial.size(), 0);
  parallelChunks(n, [&](std::size_t c, std::size_t b, std::size_t e) {
    SupResult best;
    bool any = false;
    for (std::size_t f = b; f < e; ++f) {
      if (!mask[f]) continue;
      double a = std::abs(values[f]);
      if (!any || a > best.value) {
        best = {a, f};
        any = true;
      }
    }
    partial[c] = best;
    seen[c] = any;
  });
  SupResult out;
  bool any = false;
  for (std::size_t c = 0; c < partial.size(); ++c) {
    if (!seen[c]) continue;
    if (!any || partial[c].value > out.value) {
      out = partial[c];
      any = true;
    }
  }
  if (!any) throw Error(ErrorCode::EmptyMask, "sup over an empty mask");
  return out;
}

}  // namespace jetlab
