#include "jetlab/chart.hpp"

#include <cmath>
#include <numbers>

#include "jetlab/error.hpp"

namespace jetlab {

double Jet2::partial(const MultiIndex& alpha) const {
  switch (alpha.order()) {
    case 0: return v;
    case 1: return alpha[0] == 1 ? d[0] : d[1];
    case 2: return alpha[0] == 2 ? dd[0] : (alpha[0] == 1 ? dd[1] : dd[2]);
    default: throw Error(ErrorCode::InvalidArgument, "Jet2 carries partials up to order 2 only");
  }
}

void Jet2::setPartial(const MultiIndex& alpha, double value) {
  switch (alpha.order()) {
    case 0: v = value; return;
    case 1: d[alpha[0] == 1 ? 0 : 1] = value; return;
    case 2: dd[alpha[0] == 2 ? 0 : (alpha[0] == 1 ? 1 : 2)] = value; return;
    default: throw Error(ErrorCode::InvalidArgument, "Jet2 carries partials up to order 2 only");
  }
}

Jet2 compose(const Jet2& f, const MapJet2& g) {
  const Jet2& g0 = g.out[0];
  const Jet2& g1 = g.out[1];
  const double f00 = f.dd[0], f01 = f.dd[1], f11 = f.dd[2];
  Jet2 h;
  h.v = f.v;
  for (int a = 0; a < 2; ++a) h.d[a] = f.d[0] * g0.d[a] + f.d[1] * g1.d[a];
  // (a, b) in {(0,0), (0,1), (1,1)} -> dd slot 0, 1, 2
  const int pa[3] = {0, 0, 1}, pb[3] = {0, 1, 1};
  for (int s = 0; s < 3; ++s) {
    const int a = pa[s], b = pb[s];
    h.dd[s] = f.d[0] * g0.dd[s] + f.d[1] * g1.dd[s] + f00 * g0.d[a] * g0.d[b] +
              f01 * (g0.d[a] * g1.d[b] + g1.d[a] * g0.d[b]) + f11 * g1.d[a] * g1.d[b];
  }
  return h;
}

Chart Chart::affine(std::string label, Point center, double scale, Point normal, Point tangent, ChartModel model) {
  if (!(scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "chart scale must be positive");
  const double nn = normal[0] * normal[0] + normal[1] * normal[1];
  const double tt = tangent[0] * tangent[0] + tangent[1] * tangent[1];
  const double nt = normal[0] * tangent[0] + normal[1] * tangent[1];
  if (std::abs(nn - 1) > 1e-12 || std::abs(tt - 1) > 1e-12 || std::abs(nt) > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "affine chart frame must be orthonormal");
  Chart c;
  c.label_ = std::move(label);
  c.kind_ = ChartKind::Affine;
  c.model_ = model;
  c.center_ = center;
  c.scale_ = scale;
  c.normal_ = normal;
  c.tangent_ = tangent;
  return c;
}

Chart Chart::polar(std::string label, Point center, double radius, double depth, double thetaCenter,
                   double halfWidth) {
  if (!(radius > 0.0) || !(depth > 0.0) || !(depth < radius))
    throw Error(ErrorCode::InvalidArgument, "polar chart needs 0 < depth < radius");
  if (!(halfWidth > 0.0) || !(halfWidth < std::numbers::pi))
    throw Error(ErrorCode::InvalidArgument, "polar chart half-width must lie in (0, pi)");
  Chart c;
  c.label_ = std::move(label);
  c.kind_ = ChartKind::Polar;
  c.model_ = ChartModel::HalfSpace;
  c.center_ = center;
  c.radius_ = radius;
  c.depth_ = depth;
  c.thetaCenter_ = thetaCenter;
  c.halfWidth_ = halfWidth;
  return c;
}

namespace {

// Angle of x - c relative to theta0, wrapped into (-pi, pi].
double relativeAngle(double dx, double dy, double theta0) {
  double a = std::atan2(dy, dx) - theta0;
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a;
}

}  // namespace

Point Chart::forward(const Point& b) const {
  if (kind_ == ChartKind::Affine) {
    return {center_[0] + scale_ * (b[0] * normal_[0] + b[1] * tangent_[0]),
            center_[1] + scale_ * (b[0] * normal_[1] + b[1] * tangent_[1])};
  }
  const double r = radius_ - depth_ * b[0];
  const double th = thetaCenter_ + halfWidth_ * b[1];
  return {center_[0] + r * std::cos(th), center_[1] + r * std::sin(th)};
}

Point Chart::inverse(const Point& x) const {
  const double dx = x[0] - center_[0], dy = x[1] - center_[1];
  if (kind_ == ChartKind::Affine) {
    return {(dx * normal_[0] + dy * normal_[1]) / scale_, (dx * tangent_[0] + dy * tangent_[1]) / scale_};
  }
  const double r = std::hypot(dx, dy);
  return {(radius_ - r) / depth_, relativeAngle(dx, dy, thetaCenter_) / halfWidth_};
}

MapJet2 Chart::forwardJet(const Point& b) const {
  MapJet2 m;
  if (kind_ == ChartKind::Affine) {
    Point x = forward(b);
    for (int k = 0; k < 2; ++k) {
      m.out[k].v = x[k];
      m.out[k].d = {scale_ * normal_[k], scale_ * tangent_[k]};
      m.out[k].dd = {0, 0, 0};
    }
    return m;
  }
  const double r = radius_ - depth_ * b[0];
  const double th = thetaCenter_ + halfWidth_ * b[1];
  const double c = std::cos(th), s = std::sin(th);
  const double w = halfWidth_, dp = depth_;
  m.out[0].v = center_[0] + r * c;
  m.out[0].d = {-dp * c, -r * w * s};
  m.out[0].dd = {0.0, dp * w * s, -r * w * w * c};
  m.out[1].v = center_[1] + r * s;
  m.out[1].d = {-dp * s, r * w * c};
  m.out[1].dd = {0.0, -dp * w * c, -r * w * w * s};
  return m;
}

MapJet2 Chart::inverseJet(const Point& x) const {
  MapJet2 m;
  const double dx = x[0] - center_[0], dy = x[1] - center_[1];
  if (kind_ == ChartKind::Affine) {
    Point b = inverse(x);
    m.out[0] = {b[0], {normal_[0] / scale_, normal_[1] / scale_}, {0, 0, 0}};
    m.out[1] = {b[1], {tangent_[0] / scale_, tangent_[1] / scale_}, {0, 0, 0}};
    return m;
  }
  const double r2 = dx * dx + dy * dy;
  const double r = std::sqrt(r2);
  if (r == 0.0) throw Error(ErrorCode::PointOutsideRegion, "polar chart inverse at its centre");
  const double r3 = r2 * r, r4 = r2 * r2;
  Jet2 rj{r, {dx / r, dy / r}, {dy * dy / r3, -dx * dy / r3, dx * dx / r3}};
  Jet2 thj{relativeAngle(dx, dy, thetaCenter_), {-dy / r2, dx / r2},
           {2 * dx * dy / r4, (dy * dy - dx * dx) / r4, -2 * dx * dy / r4}};
  m.out[0] = (-1.0 / depth_) * rj + Jet2::constant(radius_ / depth_);
  m.out[1] = (1.0 / halfWidth_) * thj;
  return m;
}

bool Chart::inImage(const Point& x) const {
  if (kind_ == ChartKind::Polar && x[0] == center_[0] && x[1] == center_[1]) return false;
  Point b = inverse(x);
  return b[0] * b[0] + b[1] * b[1] < 1.0;
}

std::array<Point, 2> Chart::imageBox(double ballRadius) const {
  if (kind_ == ChartKind::Affine) {
    const double e = scale_ * ballRadius;
    return {Point{center_[0] - e, center_[1] - e}, Point{center_[0] + e, center_[1] + e}};
  }
  const double e = radius_ + depth_ * ballRadius;
  return {Point{center_[0] - e, center_[1] - e}, Point{center_[0] + e, center_[1] + e}};
}

}  // namespace jetlab
