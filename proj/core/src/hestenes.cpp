#include "jetlab/hestenes.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <sstream>

#include "jetlab/error.hpp"

namespace jetlab {

namespace mp = boost::multiprecision;
using Rational = mp::cpp_rational;

namespace {

ExactRational toExact(const Rational& r) {
  return {mp::numerator(r).str(), mp::denominator(r).str()};
}

Rational fromExact(const ExactRational& e) {
  return Rational(mp::cpp_int(e.num), mp::cpp_int(e.den));
}

// (-l)^{-j} = (-1)^j / l^j
Rational nodePower(int l, int j) {
  mp::cpp_int den = mp::pow(mp::cpp_int(l), static_cast<unsigned>(j));
  Rational r(mp::cpp_int(1), den);
  return (j % 2 == 0) ? r : -r;
}

}  // namespace

std::string ExactRational::str() const { return den == "1" ? num : num + "/" + den; }

double HestenesCoefficients::absSum() const {
  double s = 0.0;
  for (double a : values) s += std::abs(a);
  return s;
}

HestenesCoefficients solveCoefficients(int order) {
  if (order < 0 || order > kMaxHestenesOrder)
    throw Error(ErrorCode::InvalidArgument, "reflection order must lie in [0, 12]");
  const int n = order + 1;
  // Row j: sum_l (-l)^{-j} a_{l-1} = 1.
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (int j = 0; j < n; ++j) {
    for (int l = 1; l <= n; ++l) m[j][l - 1] = nodePower(l, j);
    m[j][n] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) throw Error(ErrorCode::InvalidArgument, "singular reflection system");
    std::swap(m[pivot], m[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (int k = col; k <= n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  HestenesCoefficients c;
  c.order = order;
  for (int l = 0; l < n; ++l) {
    Rational a = m[l][n] / m[l][l];
    c.exact.push_back(toExact(a));
    c.values.push_back(static_cast<double>(a));
  }
  return c;
}

std::vector<ExactRational> coefficientResiduals(const HestenesCoefficients& c) {
  const int n = static_cast<int>(c.exact.size());
  std::vector<Rational> a;
  for (const auto& e : c.exact) a.push_back(fromExact(e));
  std::vector<ExactRational> out;
  for (int j = 0; j <= c.order; ++j) {
    Rational s = -1;
    for (int l = 1; l <= n; ++l) s += nodePower(l, j) * a[l - 1];
    out.push_back(toExact(s));
  }
  return out;
}

namespace {

// (-1/l)^j as a double.
double reflectFactor(int l, int j) {
  double f = 1.0;
  for (int k = 0; k < j; ++k) f *= -1.0 / static_cast<double>(l);
  return f;
}

}  // namespace

AnalyticJet extendHalfSpace(const AnalyticJet& u, const HestenesCoefficients& c) {
  const int order = std::min(u.order(), c.order);
  auto eval = [u, c](const Point& p, const MultiIndex& a) {
    const double t = p[0];
    if (t >= 0.0) return u(p, a);
    double acc = 0.0;
    for (int l = 1; l <= c.order + 1; ++l) {
      Point probe = p;
      probe[0] = -t / static_cast<double>(l);
      if (!u.contains(probe)) {
        std::ostringstream os;
        os << "probe -t/" << l << " = " << probe[0] << " outside the data of " << u.name();
        throw Error(ErrorCode::ProbeOutsideMask, os.str());
      }
      acc += c.values[l - 1] * reflectFactor(l, a[0]) * u(probe, a);
    }
    return acc;
  };
  auto region = [u](const Point& p) { return p[0] < 0.0 || u.contains(p); };
  return AnalyticJet("hestenes(" + u.name() + ")", u.dim(), order, eval, region);
}

namespace {

int zeroIndex(const GridSpec& g) {
  const double k = -g.origin()[0] / g.h();
  const double r = std::round(k);
  if (std::abs(k - r) > 1e-9) throw Error(ErrorCode::InvalidArgument, "t = 0 is not a lattice coordinate");
  return static_cast<int>(r);
}

}  // namespace

double extendedValueAt(const SampledJet& u, const HestenesCoefficients& c, const MultiIndex& alpha, double t,
                       int tangentIndex) {
  const GridSpec& g = u.grid();
  auto comp = u.component(alpha);
  if (t >= 0.0) {
    LatticeIndex k{g.nearest(0, t), tangentIndex};
    if (!u.mask().at(k)) throw Error(ErrorCode::ProbeOutsideMask, "target point outside the data");
    return comp[g.flat(k)];
  }
  double acc = 0.0;
  for (int l = 1; l <= c.order + 1; ++l) {
    LatticeIndex k{g.nearest(0, -t / static_cast<double>(l)), tangentIndex};
    if (!u.mask().at(k)) throw Error(ErrorCode::ProbeOutsideMask, "probe -t/" + std::to_string(l) + " outside the mask");
    acc += c.values[l - 1] * reflectFactor(l, alpha[0]) * comp[g.flat(k)];
  }
  return acc;
}

LatticeExtension extendHalfSpace(const SampledJet& u, const HestenesCoefficients& c) {
  const GridSpec& g = u.grid();
  const int kz = zeroIndex(g);
  int kmax = -1;
  for (std::size_t f = 0; f < u.mask().size(); ++f) {
    if (!u.mask()[f]) continue;
    const int k0 = g.index(f)[0];
    if (k0 < kz) throw Error(ErrorCode::InvalidArgument, "reflection input must have t >= 0 on its mask");
    kmax = std::max(kmax, k0);
  }
  if (kmax < 0) throw Error(ErrorCode::EmptyMask, "reflection input has an empty mask");
  const int depthSteps = kmax - kz;
  const int shift = std::max(0, depthSteps - kz);  // rows added below the old origin
  std::array<int, 2> ext = g.extents();
  ext[0] += shift;
  Point origin = g.origin();
  origin[0] = g.coord(0, -shift);
  GridSpec out(g.dim(), origin, g.h(), ext);

  LatticeExtension result;
  GridMask mask(out);
  const int tangentExtent = g.dim() == 2 ? g.extent(1) : 1;
  // Copy the upper half.
  for (std::size_t f = 0; f < u.mask().size(); ++f) {
    if (!u.mask()[f]) continue;
    LatticeIndex k = g.index(f);
    mask.set(out.flat({k[0] + shift, k[1]}), true);
  }
  // Probe availability for t < 0 rows.
  const int n = c.order + 1;
  std::vector<std::vector<std::size_t>> probeFlat;  // per target flat index in `out`
  std::vector<std::size_t> targets;
  for (int step = 1; step <= depthSteps; ++step) {
    const int kOld = kz - step;  // index in the old numbering (may be negative)
    const double t = -step * g.h();
    for (int j = 0; j < tangentExtent; ++j) {
      std::vector<std::size_t> probes;
      bool ok = true;
      for (int l = 1; l <= n && ok; ++l) {
        const double pt = -t / static_cast<double>(l);
        const int kp = g.nearest(0, pt);
        ok = u.mask().at({kp, j});
        if (ok) {
          probes.push_back(g.flat({kp, j}));
          result.maxProbeOffset = std::max(result.maxProbeOffset, std::abs(g.coord(0, kp) - pt));
        }
      }
      if (!ok) continue;
      const std::size_t tf = out.flat({kOld + shift, j});
      mask.set(tf, true);
      targets.push_back(tf);
      probeFlat.push_back(std::move(probes));
    }
  }
  result.jet = SampledJet(u.order(), mask);
  result.extendedPoints = targets.size();
  const auto& idx = u.indices();
  double slope = 0.0;
  for (std::size_t ci = 0; ci < idx.size(); ++ci) {
    auto src = u.componentAt(ci);
    auto dst = result.jet.componentAt(ci);
    for (std::size_t f = 0; f < u.mask().size(); ++f) {
      if (!u.mask()[f]) continue;
      LatticeIndex k = g.index(f);
      dst[out.flat({k[0] + shift, k[1]})] = src[f];
      LatticeIndex up{k[0] + 1, k[1]};
      if (u.mask().at(up)) slope = std::max(slope, std::abs(src[g.flat(up)] - src[f]) / g.h());
    }
    for (std::size_t ti = 0; ti < targets.size(); ++ti) {
      double acc = 0.0;
      for (int l = 1; l <= n; ++l)
        acc += c.values[l - 1] * reflectFactor(l, idx[ci][0]) * src[probeFlat[ti][l - 1]];
      dst[targets[ti]] = acc;
    }
  }
  result.errorEstimate = c.absSum() * result.maxProbeOffset * slope;
  result.jet.validate();
  return result;
}

}  // namespace jetlab
