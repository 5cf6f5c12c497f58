#include "jetlab/domains.hpp"

#include <algorithm>
#include <cmath>

#include "jetlab/error.hpp"
#include "jetlab/glue.hpp"

namespace jetlab {

// ------------------------------------------------------------- Cantor set

double CantorApprox::totalLength() const {
  // Summed per interval in exact integers, divided once.
  std::int64_t num = 0;
  for (const auto& iv : intervals) num += iv[1] - iv[0];
  return static_cast<double>(num) / static_cast<double>(denominator);
}

bool CantorApprox::contains(double s) const {
  const double x = s * static_cast<double>(denominator);
  auto it = std::upper_bound(intervals.begin(), intervals.end(), x,
                             [](double v, const std::array<std::int64_t, 2>& iv) { return v < static_cast<double>(iv[0]); });
  if (it == intervals.begin()) return false;
  --it;
  return x <= static_cast<double>((*it)[1]);
}

std::array<double, 2> CantorApprox::interval(std::size_t k) const {
  const double d = static_cast<double>(denominator);
  return {static_cast<double>(intervals[k][0]) / d, static_cast<double>(intervals[k][1]) / d};
}

CantorApprox cantorLevel(int depth, std::size_t cap) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "Cantor depth must be positive");
  if (depth >= 63 || (std::size_t{1} << depth) > cap)
    throw Error(ErrorCode::DepthTooLarge, "2^" + std::to_string(depth) + " intervals exceed the cap");
  CantorApprox c;
  c.depth = depth;
  c.denominator = 1;
  c.intervals = {{0, 1}};
  for (int level = 0; level < depth; ++level) {
    std::vector<std::array<std::int64_t, 2>> next;
    next.reserve(c.intervals.size() * 2);
    for (const auto& iv : c.intervals) {
      next.push_back({3 * iv[0], 3 * iv[0] + 1});
      next.push_back({3 * iv[1] - 1, 3 * iv[1]});
    }
    c.denominator *= 3;
    c.intervals = std::move(next);
  }
  return c;
}

// ---------------------------------------------------------- domain specs

DomainSpec DomainSpec::cantorSlitSquare(int depth) {
  DomainSpec s;
  s.kind = DomainKind::CantorSlitSquare;
  s.depth = depth;
  return s;
}
DomainSpec DomainSpec::comb(int nTeeth) {
  DomainSpec s;
  s.kind = DomainKind::Comb;
  s.nTeeth = nTeeth;
  return s;
}
DomainSpec DomainSpec::gapIntervals(int nSegments) {
  DomainSpec s;
  s.kind = DomainKind::GapIntervals;
  s.nSegments = nSegments;
  return s;
}
DomainSpec DomainSpec::halfBall(double radius) {
  DomainSpec s;
  s.kind = DomainKind::HalfBall;
  s.radius = radius;
  return s;
}
DomainSpec DomainSpec::rectangle(double s0, double s1, double t0, double t1) {
  DomainSpec s;
  s.kind = DomainKind::Rectangle;
  s.bounds = {s0, s1, t0, t1};
  return s;
}
DomainSpec DomainSpec::disk(Point center, double radius) {
  DomainSpec s;
  s.kind = DomainKind::Disk;
  s.center = center;
  s.radius = radius;
  return s;
}

void DomainSpec::validate() const {
  switch (kind) {
    case DomainKind::CantorSlitSquare:
      if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
      break;
    case DomainKind::Comb:
      if (nTeeth < 1 || nTeeth > 50) throw Error(ErrorCode::InvalidArgument, "nTeeth must lie in [1, 50]");
      break;
    case DomainKind::GapIntervals:
      if (nSegments < 1 || nSegments > 50) throw Error(ErrorCode::InvalidArgument, "nSegments must lie in [1, 50]");
      break;
    case DomainKind::Rectangle:
      if (!(bounds[0] < bounds[1]) || !(bounds[2] < bounds[3]))
        throw Error(ErrorCode::InvalidArgument, "rectangle bounds must be increasing");
      break;
    case DomainKind::Disk:
    case DomainKind::HalfBall:
      if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
      break;
  }
}

std::string domainName(DomainKind kind) {
  switch (kind) {
    case DomainKind::CantorSlitSquare: return "cantorslit";
    case DomainKind::Comb: return "comb";
    case DomainKind::GapIntervals: return "gap1d";
    case DomainKind::HalfBall: return "halfball";
    case DomainKind::Rectangle: return "rectangle";
    case DomainKind::Disk: return "disk";
  }
  return "unknown";
}

DomainKind parseDomainKind(const std::string& name) {
  for (auto k : {DomainKind::CantorSlitSquare, DomainKind::Comb, DomainKind::GapIntervals, DomainKind::HalfBall,
                 DomainKind::Rectangle, DomainKind::Disk})
    if (domainName(k) == name) return k;
  throw Error(ErrorCode::Parse, "unknown domain '" + name + "'");
}

// -------------------------------------------------------------- geometry

double combB(int n) { return std::ldexp(1.0, -n); }
double combA(int n) { return 0.75 * combB(n); }
double combC(int n) { return combB(n) - combA(n); }

std::array<double, 2> gapInterval(int n) {
  if (n == 0) return {-1.0, 0.0};
  const double s = std::ldexp(1.0, -n);
  return {s, 1.5 * s};
}

bool inCombB(const Point& p) {
  const double s = p[0], t = p[1];
  return s >= -1.0 && s <= 1.0 && t >= -1.0 && t <= 1.0 && !(s > 0.0 && t > 0.0);
}

std::optional<int> combTooth(const Point& p, int nTeeth) {
  const double s = p[0], t = p[1];
  if (!(t > 0.0 && t <= 1.0) || !(s > 0.0)) return std::nullopt;
  for (int n = 0; n <= nTeeth; ++n)
    if (s >= combA(n) && s <= combB(n)) return n;
  return std::nullopt;
}

std::optional<int> gapSegment(double s, int nSegments) {
  for (int n = 0; n <= nSegments; ++n) {
    auto iv = gapInterval(n);
    if (s >= iv[0] && s <= iv[1]) return n;
  }
  return std::nullopt;
}

bool inQ(const DomainSpec& spec, const Point& p) {
  const double s = p[0], t = p[1];
  switch (spec.kind) {
    case DomainKind::CantorSlitSquare:
      return s >= -1.0 && s <= 1.0 && t >= -1.0 && t <= 1.0;
    case DomainKind::Comb:
      return inCombB(p) || combTooth(p, spec.nTeeth).has_value();
    case DomainKind::GapIntervals:
      return gapSegment(s, spec.nSegments).has_value();
    case DomainKind::HalfBall:
      return s >= 0.0 && s * s + t * t <= spec.radius * spec.radius;
    case DomainKind::Rectangle:
      return s >= spec.bounds[0] && s <= spec.bounds[1] && t >= spec.bounds[2] && t <= spec.bounds[3];
    case DomainKind::Disk: {
      const double ds = s - spec.center[0], dt = t - spec.center[1];
      return ds * ds + dt * dt <= spec.radius * spec.radius;
    }
  }
  return false;
}

double distanceToBoundary(const DomainSpec& spec, const Point& p) {
  const double s = p[0], t = p[1];
  switch (spec.kind) {
    case DomainKind::Rectangle: {
      const auto& b = spec.bounds;
      if (inQ(spec, p)) return std::min({s - b[0], b[1] - s, t - b[2], b[3] - t});
      const double ds = std::max({b[0] - s, 0.0, s - b[1]});
      const double dt = std::max({b[2] - t, 0.0, t - b[3]});
      return std::hypot(ds, dt);
    }
    case DomainKind::Disk:
      return std::abs(std::hypot(s - spec.center[0], t - spec.center[1]) - spec.radius);
    case DomainKind::HalfBall:
      return std::hypot(s, std::max(std::abs(t) - spec.radius, 0.0));
    default:
      throw Error(ErrorCode::UnsupportedDomain, "distance to boundary needs a regular domain");
  }
}

namespace {

// Smallest theta in [0, 1] where p + theta (q - p) leaves the half-plane
// n . x <= c, given that q violates it.
double leaveHalfPlane(const Point& p, const Point& q, const Point& n, double c) {
  const double fp = n[0] * p[0] + n[1] * p[1] - c;
  const double fq = n[0] * q[0] + n[1] * q[1] - c;
  if (fq <= 0.0) return 1.0;
  if (fp >= 0.0) return 0.0;
  return fp / (fp - fq);
}

double leaveDisk(const Point& p, const Point& q, const Point& c, double r) {
  const double px = p[0] - c[0], py = p[1] - c[1];
  const double dx = q[0] - p[0], dy = q[1] - p[1];
  const double a = dx * dx + dy * dy;
  const double b = 2.0 * (px * dx + py * dy);
  const double cc = px * px + py * py - r * r;
  if (q[0] - c[0] == 0.0 && q[1] - c[1] == 0.0) return 1.0;
  if ((q[0] - c[0]) * (q[0] - c[0]) + (q[1] - c[1]) * (q[1] - c[1]) <= r * r) return 1.0;
  if (cc >= 0.0) return 0.0;
  const double disc = std::sqrt(std::max(0.0, b * b - 4.0 * a * cc));
  return std::clamp((-b + disc) / (2.0 * a), 0.0, 1.0);
}

}  // namespace

double boundaryCrossing(const DomainSpec& spec, const Point& p, const Point& q) {
  switch (spec.kind) {
    case DomainKind::Rectangle: {
      const auto& b = spec.bounds;
      double th = 1.0;
      th = std::min(th, leaveHalfPlane(p, q, {1, 0}, b[1]));
      th = std::min(th, leaveHalfPlane(p, q, {-1, 0}, -b[0]));
      th = std::min(th, leaveHalfPlane(p, q, {0, 1}, b[3]));
      th = std::min(th, leaveHalfPlane(p, q, {0, -1}, -b[2]));
      return th;
    }
    case DomainKind::Disk:
      return leaveDisk(p, q, spec.center, spec.radius);
    case DomainKind::HalfBall:
      return std::min(leaveHalfPlane(p, q, {-1, 0}, 0.0), leaveDisk(p, q, {0, 0}, spec.radius));
    default:
      throw Error(ErrorCode::UnsupportedDomain, "boundary crossing needs a regular domain");
  }
}

// -------------------------------------------------------------- builders

namespace {

GridMask rasterize(const GridSpec& g, const DomainSpec& spec) {
  GridMask m(g);
  for (std::size_t f = 0; f < m.size(); ++f) m.set(f, inQ(spec, g.point(f)));
  return m;
}

GridSpec unitBox(int dim, double h) {
  // Lattice origin + k h covering [-1, 1] per axis, k = 0..ceil(2/h).
  int n = static_cast<int>(std::ceil(2.0 / h - 1e-9)) + 1;
  if (dim == 1) return GridSpec(1, {-1.0, 0.0}, h, {n, 1});
  return GridSpec(2, {-1.0, -1.0}, h, {n, n});
}

void requirePositiveSpacing(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidArgument, "spacing h must be positive");
}

}  // namespace

Domain buildComb(int nTeeth, double h) {
  requirePositiveSpacing(h);
  DomainSpec spec = DomainSpec::comb(nTeeth);
  spec.validate();
  if (h > combC(nTeeth) / 2.0)
    throw Error(ErrorCode::ResolutionTooCoarse, "comb tooth " + std::to_string(nTeeth) + " needs h <= c_n / 2");
  Domain d;
  d.spec = spec;
  d.h = h;
  d.q = rasterize(unitBox(2, h), spec);
  d.omega = interiorOf(d.q);
  d.convention = OmegaConvention::InteriorOfQ;
  return d;
}

Domain buildCantorSlitSquare(int depth, double h) {
  requirePositiveSpacing(h);
  DomainSpec spec = DomainSpec::cantorSlitSquare(depth);
  spec.validate();
  CantorApprox cover = cantorLevel(depth);
  if (h > 1.0 / static_cast<double>(cover.denominator) / 2.0)
    throw Error(ErrorCode::ResolutionTooCoarse, "Cantor slits of level " + std::to_string(depth) + " need h <= 3^-d / 2");
  Domain d;
  d.spec = spec;
  d.h = h;
  GridSpec g = unitBox(2, h);
  // Q is the full closed square: S has empty interior, so O \ S is dense in O.
  d.q = rasterize(g, spec);
  d.omega = GridMask(g);
  for (std::size_t f = 0; f < g.size(); ++f) {
    Point p = g.point(f);
    const double s = p[0], t = p[1];
    bool inO = s > -1.0 && s < 1.0 && t > -1.0 && t < 1.0;
    bool inS = t >= 0.0 && t <= 1.0 && cover.contains(s);
    d.omega.set(f, inO && !inS);
  }
  d.convention = OmegaConvention::Explicit;
  return d;
}

Domain buildGapIntervals(int nSegments, double h) {
  requirePositiveSpacing(h);
  DomainSpec spec = DomainSpec::gapIntervals(nSegments);
  spec.validate();
  if (h > std::ldexp(1.0, -nSegments) / 4.0)
    throw Error(ErrorCode::ResolutionTooCoarse, "segment " + std::to_string(nSegments) + " needs h <= s_n / 4");
  Domain d;
  d.spec = spec;
  d.h = h;
  d.q = rasterize(unitBox(1, h), spec);
  d.omega = interiorOf(d.q);
  d.convention = OmegaConvention::InteriorOfQ;
  return d;
}

Domain buildRegular(const DomainSpec& spec, double h, double margin) {
  requirePositiveSpacing(h);
  spec.validate();
  if (!spec.chartable()) throw Error(ErrorCode::UnsupportedDomain, domainName(spec.kind) + " is not a regular domain");
  if (!(margin >= 0.0)) throw Error(ErrorCode::InvalidArgument, "window margin must be nonnegative");
  Point lo, hi;
  double feature = 0.0;
  switch (spec.kind) {
    case DomainKind::Rectangle:
      lo = {spec.bounds[0], spec.bounds[2]};
      hi = {spec.bounds[1], spec.bounds[3]};
      feature = std::min(spec.bounds[1] - spec.bounds[0], spec.bounds[3] - spec.bounds[2]);
      break;
    case DomainKind::Disk:
      lo = {spec.center[0] - spec.radius, spec.center[1] - spec.radius};
      hi = {spec.center[0] + spec.radius, spec.center[1] + spec.radius};
      feature = spec.radius;
      break;
    default:  // HalfBall
      lo = {0.0, -spec.radius};
      hi = {spec.radius, spec.radius};
      feature = spec.radius;
      break;
  }
  if (h > feature / 8.0) throw Error(ErrorCode::ResolutionTooCoarse, "regular domains need h <= feature size / 8");
  // Window on the lattice h Z^2.
  std::array<int, 2> k0{}, ext{};
  for (int a = 0; a < 2; ++a) {
    k0[a] = static_cast<int>(std::floor((lo[a] - margin) / h + 1e-9));
    int k1 = static_cast<int>(std::ceil((hi[a] + margin) / h - 1e-9));
    ext[a] = k1 - k0[a] + 1;
  }
  GridSpec g(2, {k0[0] * h, k0[1] * h}, h, ext);
  Domain d;
  d.spec = spec;
  d.h = h;
  d.q = rasterize(g, spec);
  d.omega = interiorOf(d.q);
  d.convention = OmegaConvention::InteriorOfQ;
  d.charts = makeCharts(spec);
  return d;
}

Domain buildDomain(const DomainSpec& spec, double h, double margin) {
  switch (spec.kind) {
    case DomainKind::CantorSlitSquare: return buildCantorSlitSquare(spec.depth, h);
    case DomainKind::Comb: return buildComb(spec.nTeeth, h);
    case DomainKind::GapIntervals: return buildGapIntervals(spec.nSegments, h);
    default: return buildRegular(spec, h, margin);
  }
}

}  // namespace jetlab
