#include "jetlab/glue.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>

#include "jetlab/error.hpp"
#include "jetlab/parallel.hpp"

namespace jetlab {

std::vector<Chart> makeCharts(const DomainSpec& spec) {
  spec.validate();
  std::vector<Chart> charts;
  switch (spec.kind) {
    case DomainKind::HalfBall:
      charts.push_back(Chart::affine("face", {0.0, 0.0}, spec.radius, {1, 0}, {0, 1}));
      break;
    case DomainKind::Rectangle: {
      const auto& b = spec.bounds;
      const double lx = b[1] - b[0], ly = b[3] - b[2];
      const double sm = 0.5 * (b[0] + b[1]), tm = 0.5 * (b[2] + b[3]);
      const double rh = std::min(lx / 2, ly), rv = std::min(ly / 2, lx), rc = std::min(lx, ly);
      charts.push_back(Chart::affine("edge-bottom", {sm, b[2]}, rh, {0, 1}, {1, 0}));
      charts.push_back(Chart::affine("edge-right", {b[1], tm}, rv, {-1, 0}, {0, 1}));
      charts.push_back(Chart::affine("edge-top", {sm, b[3]}, rh, {0, -1}, {1, 0}));
      charts.push_back(Chart::affine("edge-left", {b[0], tm}, rv, {1, 0}, {0, 1}));
      charts.push_back(Chart::affine("corner-ll", {b[0], b[2]}, rc, {1, 0}, {0, 1}, ChartModel::Quadrant));
      charts.push_back(Chart::affine("corner-lr", {b[1], b[2]}, rc, {-1, 0}, {0, 1}, ChartModel::Quadrant));
      charts.push_back(Chart::affine("corner-ur", {b[1], b[3]}, rc, {-1, 0}, {0, -1}, ChartModel::Quadrant));
      charts.push_back(Chart::affine("corner-ul", {b[0], b[3]}, rc, {1, 0}, {0, -1}, ChartModel::Quadrant));
      break;
    }
    case DomainKind::Disk:
      for (int k = 0; k < 4; ++k) {
        const double th = std::numbers::pi / 4 + k * std::numbers::pi / 2;
        charts.push_back(
            Chart::polar("sector-" + std::to_string(k), spec.center, spec.radius, 0.9 * spec.radius, th, 1.2));
      }
      break;
    default:
      throw Error(ErrorCode::UnsupportedDomain, domainName(spec.kind) + " has no boundary atlas");
  }
  return charts;
}

// ------------------------------------------------------ local extensions

LocalExtension::LocalExtension(AnalyticJet x, Chart chart, int order)
    : x_(std::move(x)), chart_(std::move(chart)), order_(order) {
  if (order < 0 || order > kMaxGlueOrder)
    throw Error(ErrorCode::InvalidArgument, "glued extensions support orders 0..2");
  if (x_.dim() != 2) throw Error(ErrorCode::InvalidArgument, "glued extensions need a 2-D function");
  if (x_.order() < order) throw Error(ErrorCode::InvalidArgument, x_.name() + " has too low an order");
  coeffs_ = solveCoefficients(order);
}

namespace {

// Jet of v(b) = w(b0 / f, b1) style reflections: d/db0 picks up the factor
// `f` once per b0-derivative.
Jet2 scaleNormal(const Jet2& j, double f0, double f1) {
  Jet2 r = j;
  r.d[0] *= f0;
  r.d[1] *= f1;
  r.dd[0] *= f0 * f0;
  r.dd[1] *= f0 * f1;
  r.dd[2] *= f1 * f1;
  return r;
}

void truncate(Jet2& j, int order) {
  if (order < 2) j.dd = {0, 0, 0};
  if (order < 1) j.d = {0, 0};
}

}  // namespace

Jet2 LocalExtension::pulledBack(const Point& ball) const {
  const Point x = chart_.forward(ball);
  if (!x_.contains(x))
    throw Error(ErrorCode::ProbeOutsideMask, "reflected probe of chart " + chart_.label() + " leaves Q");
  return compose(x_.jet2(x), chart_.forwardJet(ball));
}

Jet2 LocalExtension::reflectedJet(const Point& b) const {
  const int n = coeffs_.order + 1;
  const bool quadrant = chart_.model() == ChartModel::Quadrant;
  const bool flip0 = b[0] < 0.0;
  const bool flip1 = quadrant && b[1] < 0.0;
  if (!flip0 && !flip1) return pulledBack(b);
  Jet2 acc;
  const int n0 = flip0 ? n : 1, n1 = flip1 ? n : 1;
  for (int l = 1; l <= n0; ++l) {
    const double a0 = flip0 ? coeffs_.values[l - 1] : 1.0;
    const double f0 = flip0 ? -1.0 / l : 1.0;
    for (int m = 1; m <= n1; ++m) {
      const double a1 = flip1 ? coeffs_.values[m - 1] : 1.0;
      const double f1 = flip1 ? -1.0 / m : 1.0;
      const Point probe{b[0] * f0, b[1] * f1};
      acc = acc + (a0 * a1) * scaleNormal(pulledBack(probe), f0, f1);
    }
  }
  return acc;
}

Jet2 LocalExtension::evaluate(const Point& p) const {
  const MapJet2 inv = chart_.inverseJet(p);
  Jet2 u = reflectedJet(inv.value());
  Jet2 y = compose(u, inv);
  truncate(y, order_);
  return y;
}

LocalExtension localExtend(const AnalyticJet& x, const Chart& chart, int order) {
  return LocalExtension(x, chart, order);
}

// ------------------------------------------------------ bump partition

BumpPartition::BumpPartition(std::vector<Chart> charts, std::vector<Bump> bumps)
    : charts_(std::move(charts)), bumps_(std::move(bumps)), assignment_(bumps_.size(), -1) {}

namespace {

// exp(-1 / (1 - q)) for q < 1, else 0.
Jet2 profileOf(const Jet2& q) {
  if (!(q.v < 1.0)) return {};
  return exp(-1.0 * reciprocal(Jet2::constant(1.0) - q));
}

// e^{-1/u} for u > 0, else 0.
Jet2 transition(const Jet2& u) {
  if (!(u.v > 0.0)) return {};
  const double f = std::exp(-1.0 / u.v);
  const double u2 = u.v * u.v;
  return applyScalar(u, f, f / u2, f * (1.0 - 2.0 * u.v) / (u2 * u2));
}

}  // namespace

Jet2 BumpPartition::profile(std::size_t nu, const Point& p) const {
  const Bump& bump = bumps_.at(nu);
  if (bump.kind == Bump::Kind::Interior) {
    Jet2 b0 = (1.0 / bump.radius) * (Jet2::variable(p[0], 0) - Jet2::constant(bump.center[0]));
    Jet2 b1 = (1.0 / bump.radius) * (Jet2::variable(p[1], 1) - Jet2::constant(bump.center[1]));
    return profileOf(b0 * b0 + b1 * b1);
  }
  const Chart& c = charts_[bump.chart];
  if (!c.inImage(p)) return {};
  const MapJet2 b = c.inverseJet(p);
  const double s = 1.0 / (kBumpBallRadius * kBumpBallRadius);
  return profileOf(s * (b.out[0] * b.out[0] + b.out[1] * b.out[1]));
}

double BumpPartition::profileSum(const Point& p) const {
  double s = 0.0;
  for (std::size_t nu = 0; nu < bumps_.size(); ++nu) s += profile(nu, p).v;
  return s;
}

std::vector<Jet2> BumpPartition::evaluate(const Point& p) const {
  std::vector<Jet2> psi(bumps_.size());
  Jet2 sum;
  for (std::size_t nu = 0; nu < bumps_.size(); ++nu) {
    psi[nu] = profile(nu, p);
    sum = sum + psi[nu];
  }
  if (sum.v == 0.0) return psi;
  // T = S + beta(S) with beta = 1 near S = 0 and beta = 0 for S >= floor.
  Jet2 total = sum;
  if (sum.v < kPartitionFloor) {
    const Jet2 u = (1.0 / kPartitionFloor) * sum;
    const Jet2 fa = transition(Jet2::constant(1.0) - u);
    const Jet2 fb = transition(u);
    total = total + fa / (fa + fb);
  }
  const Jet2 inv = reciprocal(total);
  for (auto& j : psi)
    if (j.v != 0.0) j = j * inv;
  return psi;
}

std::array<Point, 2> BumpPartition::supportBox(std::size_t nu) const {
  const Bump& bump = bumps_.at(nu);
  if (bump.kind == Bump::Kind::Interior) {
    return {Point{bump.center[0] - bump.radius, bump.center[1] - bump.radius},
            Point{bump.center[0] + bump.radius, bump.center[1] + bump.radius}};
  }
  return charts_[bump.chart].imageBox(kBumpBallRadius);
}

namespace {

Bump interiorBump(const DomainSpec& spec) {
  Bump b;
  b.kind = Bump::Kind::Interior;
  b.label = "interior";
  switch (spec.kind) {
    case DomainKind::Rectangle: {
      const auto& r = spec.bounds;
      b.center = {0.5 * (r[0] + r[1]), 0.5 * (r[2] + r[3])};
      b.radius = 0.25 * std::min(r[1] - r[0], r[3] - r[2]);
      break;
    }
    case DomainKind::Disk:
      b.center = spec.center;
      b.radius = 0.5 * spec.radius;
      break;
    default:  // HalfBall: inscribed disk centre (R/2, 0), radius R/2
      b.center = {0.5 * spec.radius, 0.0};
      b.radius = 0.25 * spec.radius;
      break;
  }
  return b;
}

// Lattice index range of g covering a box, clipped.
std::array<int, 4> clippedRange(const GridSpec& g, const std::array<Point, 2>& box) {
  std::array<int, 4> r{};
  for (int a = 0; a < 2; ++a) {
    r[2 * a] = std::max(0, static_cast<int>(std::floor((box[0][a] - g.origin()[a]) / g.h())));
    r[2 * a + 1] = std::min(g.extent(a) - 1, static_cast<int>(std::ceil((box[1][a] - g.origin()[a]) / g.h())));
  }
  return r;
}

}  // namespace

bool inCoveredNeighborhood(const DomainSpec& spec, const Point& p, double width) {
  const double d = distanceToBoundary(spec, p);
  if (d > width) return false;
  if (spec.kind == DomainKind::HalfBall) return std::hypot(p[0], p[1]) <= 0.8 * spec.radius;
  return true;
}

BumpPartition buildPartition(const std::vector<Chart>& charts, const Domain& domain, int order) {
  if (charts.empty()) throw Error(ErrorCode::UnsupportedDomain, "partition needs a non-empty atlas");
  if (order < 0 || order > kMaxGlueOrder) throw Error(ErrorCode::InvalidArgument, "partition order must lie in 0..2");
  std::vector<Bump> bumps;
  for (std::size_t k = 0; k < charts.size(); ++k) {
    Bump b;
    b.kind = Bump::Kind::Chart;
    b.chart = static_cast<int>(k);
    b.label = "bump-" + charts[k].label();
    bumps.push_back(b);
  }
  bumps.push_back(interiorBump(domain.spec));
  BumpPartition part(charts, bumps);

  const GridSpec& g = domain.q.grid();
  const int nDomains = static_cast<int>(charts.size()) + 1;
  for (std::size_t nu = 0; nu < bumps.size(); ++nu) {
    const auto r = clippedRange(g, part.supportBox(nu));
    // contained[k]: every lattice point of supp psi_nu lies in domain k.
    const std::size_t rows = static_cast<std::size_t>(std::max(0, r[1] - r[0] + 1));
    const std::size_t cols = static_cast<std::size_t>(std::max(0, r[3] - r[2] + 1));
    const std::size_t nChunks = chunkCount(rows * cols);
    std::vector<std::vector<std::uint8_t>> partial(nChunks, std::vector<std::uint8_t>(nDomains, 1));
    parallelChunks(rows * cols, [&](std::size_t c, std::size_t b, std::size_t e) {
      auto& contained = partial[c];
      for (std::size_t f = b; f < e; ++f) {
        const LatticeIndex ij{r[0] + static_cast<int>(f / cols), r[2] + static_cast<int>(f % cols)};
        const Point p = g.point(ij);
        if (part.profile(nu, p).v <= 0.0) continue;
        for (int k = 0; k < nDomains; ++k) {
          if (!contained[k]) continue;
          const bool in = k < nDomains - 1 ? charts[k].inImage(p) : domain.omega.at(ij);
          if (!in) contained[k] = 0;
        }
      }
    });
    std::vector<std::uint8_t> contained(nDomains, 1);
    for (const auto& pc : partial)
      for (int k = 0; k < nDomains; ++k) contained[k] = contained[k] && pc[k];
    int chosen = -1;
    for (int k = 0; k < nDomains && chosen < 0; ++k)
      if (contained[k]) chosen = k;
    if (chosen < 0) throw Error(ErrorCode::CoverGap, "bump " + bumps[nu].label + " fits in no chart domain");
    part.assignment_[nu] = chosen;
  }

  // Every covered boundary lattice point needs a positive profile sum.
  const GridMask bd = boundaryOf(domain.q);
  std::atomic<bool> gap{false};
  Point where{0, 0};
  std::mutex mu;
  parallelChunks(bd.size(), [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t f = b; f < e && !gap; ++f) {
      if (!bd[f]) continue;
      const Point p = g.point(f);
      if (!inCoveredNeighborhood(domain.spec, p, g.h())) continue;
      if (part.profileSum(p) < kPartitionFloor) {
        std::lock_guard lock(mu);
        gap = true;
        where = p;
      }
    }
  });
  if (gap)
    throw Error(ErrorCode::CoverGap, "partition of unity vanishes near the boundary point (" +
                                         std::to_string(where[0]) + ", " + std::to_string(where[1]) + ")");
  return part;
}

// ------------------------------------------------------ interface check

InterfaceStats interfaceMismatch(const SampledJet& xbar, const Domain& domain) {
  const GridSpec& g = xbar.grid();
  if (!(g == domain.q.grid())) throw Error(ErrorCode::MaskMismatch, "extension and domain grids differ");
  const auto& idx = xbar.indices();
  const std::size_t nc = idx.size();
  const std::size_t chunks = chunkCount(g.size());
  std::vector<std::vector<double>> worst(chunks, std::vector<double>(nc, 0.0));
  std::vector<std::size_t> pairs(chunks, 0);
  const auto& q = domain.q;
  parallelChunks(g.size(), [&](std::size_t c, std::size_t b, std::size_t e) {
    for (std::size_t f = b; f < e; ++f) {
      if (!q[f]) continue;
      const LatticeIndex k = g.index(f);
      const Point p = g.point(k);
      if (!inCoveredNeighborhood(domain.spec, p, 2.0 * g.h())) continue;
      for (int axis = 0; axis < 2; ++axis) {
        for (int dir = -1; dir <= 1; dir += 2) {
          LatticeIndex kq = k, kin = k, kout = k;
          kq[axis] += dir;
          kin[axis] -= dir;
          kout[axis] += 2 * dir;
          if (!g.inBounds(kq) || q.at(kq)) continue;
          if (!q.at(kin) || !g.inBounds(kout) || q.at(kout)) continue;
          const double th = boundaryCrossing(domain.spec, p, g.point(kq));
          const std::size_t fq = g.flat(kq), fin = g.flat(kin), fout = g.flat(kout);
          ++pairs[c];
          for (std::size_t ci = 0; ci < nc; ++ci) {
            auto v = xbar.componentAt(ci);
            const double inside = v[f] + th * (v[f] - v[fin]);
            const double outside = v[fq] + (1.0 - th) * (v[fq] - v[fout]);
            worst[c][ci] = std::max(worst[c][ci], std::abs(inside - outside));
          }
        }
      }
    }
  });
  InterfaceStats s;
  s.perComponent.assign(nc, 0.0);
  for (std::size_t c = 0; c < chunks; ++c) {
    s.pairs += pairs[c];
    for (std::size_t ci = 0; ci < nc; ++ci) s.perComponent[ci] = std::max(s.perComponent[ci], worst[c][ci]);
  }
  for (double w : s.perComponent) s.maxMismatch = std::max(s.maxMismatch, w);
  return s;
}

// ------------------------------------------------------ global extension

GlobalExtension globalExtend(const AnalyticJet& x, const Domain& domain, int order, double neighborhoodWidth) {
  if (!domain.spec.chartable() || domain.charts.empty())
    throw Error(ErrorCode::UnsupportedDomain, domainName(domain.spec.kind) + " has no boundary atlas");
  if (order < 0 || order > kMaxGlueOrder) throw Error(ErrorCode::InvalidArgument, "glued extensions support orders 0..2");
  if (x.order() < order) throw Error(ErrorCode::InvalidArgument, x.name() + " has too low an order");
  if (!(neighborhoodWidth > 0.0)) throw Error(ErrorCode::InvalidArgument, "neighbourhood width must be positive");

  const DomainSpec spec = domain.spec;
  // Only the values on Q may enter; a 1e-12 slack absorbs chart round-off.
  const AnalyticJet xq = x.restrictedTo(
      x.name(), [spec](const Point& p) { return inQ(spec, p) || distanceToBoundary(spec, p) <= 1e-12; }, spec);

  GlobalExtension out;
  out.neighborhoodWidth = neighborhoodWidth;
  const BumpPartition part = buildPartition(domain.charts, domain, order);
  for (const auto& c : domain.charts) out.chartLabels.push_back(c.label());
  for (const auto& b : part.bumps()) out.bumpLabels.push_back(b.label);
  out.assignment = part.assignment();

  std::vector<LocalExtension> local;
  for (const auto& c : domain.charts) local.emplace_back(xq, c, order);

  out.xOnQ = sample(xq, domain.q, order);
  const GridSpec& g = domain.q.grid();
  out.xbar = SampledJet(order, GridMask(g, true));
  const auto& idx = out.xbar.indices();
  const int interiorIndex = part.interiorDomainIndex();

  const std::size_t chunks = chunkCount(g.size());
  std::vector<double> residual(chunks, 0.0);
  std::vector<std::size_t> hood(chunks, 0), uncovered(chunks, 0);
  parallelChunks(g.size(), [&](std::size_t c, std::size_t b, std::size_t e) {
    for (std::size_t f = b; f < e; ++f) {
      const Point p = g.point(f);
      const bool onQ = domain.q[f];
      const bool nearBoundary = inCoveredNeighborhood(spec, p, neighborhoodWidth);
      std::vector<Jet2> chi;
      if (!onQ || nearBoundary) chi = part.evaluate(p);
      if (nearBoundary) {
        double s = 0.0;
        for (const auto& j : chi) s += j.v;
        residual[c] = std::max(residual[c], std::abs(s - 1.0));
        ++hood[c];
      }
      if (onQ) {
        bool covered = domain.omega[f];
        for (std::size_t k = 0; k < domain.charts.size() && !covered; ++k) covered = domain.charts[k].inImage(p);
        if (!covered) ++uncovered[c];
        for (std::size_t ci = 0; ci < idx.size(); ++ci) out.xbar.componentAt(ci)[f] = out.xOnQ.componentAt(ci)[f];
        continue;
      }
      Jet2 acc;
      for (std::size_t nu = 0; nu < chi.size(); ++nu) {
        if (chi[nu].v == 0.0 && chi[nu].d[0] == 0.0 && chi[nu].d[1] == 0.0) continue;
        const int k = part.assignment()[nu];
        // Int Q is only ever assigned to bumps supported inside Q.
        if (k == interiorIndex) continue;
        acc = acc + chi[nu] * local[k].evaluate(p);
      }
      truncate(acc, order);
      for (std::size_t ci = 0; ci < idx.size(); ++ci) out.xbar.componentAt(ci)[f] = acc.partial(idx[ci]);
    }
  });
  for (std::size_t c = 0; c < chunks; ++c) {
    out.partitionResidual = std::max(out.partitionResidual, residual[c]);
    out.neighborhoodPoints += hood[c];
    out.uncoveredQPoints += uncovered[c];
  }
  out.xbar.validate();
  out.interface = interfaceMismatch(out.xbar, domain);
  return out;
}

}  // namespace jetlab
