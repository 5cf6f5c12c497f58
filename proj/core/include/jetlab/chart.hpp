#pragma once

// Boundary charts phi : B(1) -> U. Ball coordinates are (tau, sigma); tau is
// the normal coordinate and tau >= 0 is the domain side.

#include <array>
#include <string>

#include "jetlab/grid.hpp"
#include "jetlab/jet2.hpp"

namespace jetlab {

enum class ChartKind { Affine, Polar };

// HalfSpace: phi[B+(1)] = U n Q. Quadrant: U n Q is the image of
// {tau >= 0, sigma >= 0}, used at rectangle corners, which no C^1 chart of
// the half-ball type can flatten.
enum class ChartModel { HalfSpace, Quadrant };

class Chart {
 public:
  // phi(b) = center + scale * (b0 * normal + b1 * tangent); normal and
  // tangent must be orthonormal.
  static Chart affine(std::string label, Point center, double scale, Point normal, Point tangent,
                      ChartModel model = ChartModel::HalfSpace);

  // Polar flattening of the circle |x - center| = radius:
  // r = radius - depth * tau, theta = thetaCenter + halfWidth * sigma.
  // Requires 0 < depth < radius and 0 < halfWidth < pi.
  static Chart polar(std::string label, Point center, double radius, double depth, double thetaCenter,
                     double halfWidth);

  const std::string& label() const noexcept { return label_; }
  ChartKind kind() const noexcept { return kind_; }
  ChartModel model() const noexcept { return model_; }

  Point forward(const Point& ball) const;
  Point inverse(const Point& x) const;
  MapJet2 forwardJet(const Point& ball) const;
  MapJet2 inverseJet(const Point& x) const;

  // x lies in U = phi(B(1)).
  bool inImage(const Point& x) const;
  // Axis-aligned box containing phi(closed ball of the given radius <= 1).
  std::array<Point, 2> imageBox(double ballRadius) const;

  // Construction parameters, for metadata.
  const Point& center() const noexcept { return center_; }
  double scale() const noexcept { return scale_; }
  const Point& normal() const noexcept { return normal_; }
  const Point& tangent() const noexcept { return tangent_; }
  double radius() const noexcept { return radius_; }
  double depth() const noexcept { return depth_; }
  double thetaCenter() const noexcept { return thetaCenter_; }
  double halfWidth() const noexcept { return halfWidth_; }

 private:
  Chart() = default;

  std::string label_;
  ChartKind kind_ = ChartKind::Affine;
  ChartModel model_ = ChartModel::HalfSpace;
  Point center_{0, 0};
  double scale_ = 1.0;
  Point normal_{1, 0};
  Point tangent_{0, 1};
  double radius_ = 1.0;
  double depth_ = 0.5;
  double thetaCenter_ = 0.0;
  double halfWidth_ = 1.0;
};

}  // namespace jetlab
