#pragma once

// Second-order Taylor data of a scalar function of two variables at one
// point: value, gradient and the three distinct Hessian entries. Arithmetic
// propagates all of them exactly (forward-mode, truncated at order 2).

#include <array>
#include <cmath>

#include "jetlab/grid.hpp"

namespace jetlab {

struct Jet2 {
  double v = 0.0;
  std::array<double, 2> d{0.0, 0.0};
  std::array<double, 3> dd{0.0, 0.0, 0.0};  // xx, xy, yy

  static Jet2 constant(double c) { return {c, {0, 0}, {0, 0, 0}}; }
  static Jet2 variable(double x, int axis) {
    Jet2 j{x, {0, 0}, {0, 0, 0}};
    j.d[axis] = 1.0;
    return j;
  }

  // Partial for |alpha| <= 2; alpha must be 2-D.
  double partial(const MultiIndex& alpha) const;
  void setPartial(const MultiIndex& alpha, double value);
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.v + b.v, {a.d[0] + b.d[0], a.d[1] + b.d[1]}, {a.dd[0] + b.dd[0], a.dd[1] + b.dd[1], a.dd[2] + b.dd[2]}};
}
inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  return {a.v - b.v, {a.d[0] - b.d[0], a.d[1] - b.d[1]}, {a.dd[0] - b.dd[0], a.dd[1] - b.dd[1], a.dd[2] - b.dd[2]}};
}
inline Jet2 operator*(double s, const Jet2& a) {
  return {s * a.v, {s * a.d[0], s * a.d[1]}, {s * a.dd[0], s * a.dd[1], s * a.dd[2]}};
}
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.v * b.v,
          {a.d[0] * b.v + a.v * b.d[0], a.d[1] * b.v + a.v * b.d[1]},
          {a.dd[0] * b.v + 2.0 * a.d[0] * b.d[0] + a.v * b.dd[0],
           a.dd[1] * b.v + a.d[0] * b.d[1] + a.d[1] * b.d[0] + a.v * b.dd[1],
           a.dd[2] * b.v + 2.0 * a.d[1] * b.d[1] + a.v * b.dd[2]}};
}

// f(a) for a scalar f with derivatives f0, f1, f2 evaluated at a.v.
inline Jet2 applyScalar(const Jet2& a, double f0, double f1, double f2) {
  return {f0,
          {f1 * a.d[0], f1 * a.d[1]},
          {f2 * a.d[0] * a.d[0] + f1 * a.dd[0], f2 * a.d[0] * a.d[1] + f1 * a.dd[1],
           f2 * a.d[1] * a.d[1] + f1 * a.dd[2]}};
}

inline Jet2 reciprocal(const Jet2& a) {
  const double r = 1.0 / a.v;
  return applyScalar(a, r, -r * r, 2.0 * r * r * r);
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }
inline Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.v);
  return applyScalar(a, e, e, e);
}

// A map R^2 -> R^2 with both output components carried as Jet2.
struct MapJet2 {
  std::array<Jet2, 2> out;
  Point value() const { return {out[0].v, out[1].v}; }
};

// Chain rule: f is the jet of a scalar function taken in the target
// coordinates at g(p); g is the jet of the inner map at p. Returns the jet
// of f o g at p.
Jet2 compose(const Jet2& f, const MapJet2& g);

}  // namespace jetlab
