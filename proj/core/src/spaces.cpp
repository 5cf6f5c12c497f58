#include "jetlab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jetlab/error.hpp"
#include "jetlab/parallel.hpp"

namespace jetlab {

std::string spaceName(SpaceTag t) {
  switch (t) {
    case SpaceTag::F: return "F";
    case SpaceTag::E: return "E";
    case SpaceTag::G: return "G";
    case SpaceTag::HUpper: return "H-upper";
  }
  return "?";
}

SpaceTag parseSpaceTag(const std::string& name) {
  if (name == "F") return SpaceTag::F;
  if (name == "E") return SpaceTag::E;
  if (name == "G") return SpaceTag::G;
  if (name == "H-upper") return SpaceTag::HUpper;
  throw Error(ErrorCode::Parse, "unknown space '" + name + "' (expected F, E, G or H-upper)");
}

double NormReport::at(const MultiIndex& alpha) const {
  for (const auto& e : perAlpha)
    if (e.alpha == alpha) return e.value;
  throw Error(ErrorCode::InvalidArgument, "norm report has no entry for alpha = " + alpha.key());
}

namespace {

std::string maskLabel(SpaceTag t) {
  switch (t) {
    case SpaceTag::F: return "Q";
    case SpaceTag::E: return "Omega";
    default: return "window";
  }
}

}  // namespace

NormReport normOf(SpaceTag tag, const SampledJet& j, int order) {
  if (order < 0) order = j.order();
  if (order > j.order())
    throw Error(ErrorCode::InvalidArgument, "jet carries order " + std::to_string(j.order()) + " only");
  if (j.mask().empty()) throw Error(ErrorCode::EmptyMask, "norm of a jet with an empty mask");
  NormReport r;
  r.order = order;
  r.space = tag;
  r.mask = maskLabel(tag);
  for (const auto& a : multiIndices(j.dim(), order)) {
    const SupResult s = supOnMask(j.component(a), j.mask());
    r.perAlpha.push_back({a, s.value, s.argmax});
    r.overall = std::max(r.overall, s.value);
  }
  return r;
}

NormReport normF(const SampledJet& j, int order) { return normOf(SpaceTag::F, j, order); }
NormReport normE(const SampledJet& j, int order) { return normOf(SpaceTag::E, j, order); }
NormReport normG(const SampledJet& j, int order) { return normOf(SpaceTag::G, j, order); }

SampledJet restrictToOmega(const SampledJet& j, const GridMask& omega) {
  if (!(omega.grid() == j.grid())) throw Error(ErrorCode::MaskMismatch, "Omega mask lives on a different grid");
  if (!omega.subsetOf(j.mask())) throw Error(ErrorCode::MaskMismatch, "Omega mask is not contained in the jet's mask");
  SampledJet out(j.order(), omega);
  for (std::size_t ci = 0; ci < j.indices().size(); ++ci) {
    auto src = j.componentAt(ci);
    auto dst = out.componentAt(ci);
    for (std::size_t f = 0; f < omega.size(); ++f)
      if (omega[f]) dst[f] = src[f];
  }
  return out;
}

NormReport hNormUpperBound(const SampledJet& x, const SampledJet& xbar, double tol) {
  if (!(x.grid() == xbar.grid())) throw Error(ErrorCode::MaskMismatch, "extension lives on a different grid");
  if (!x.mask().subsetOf(xbar.mask())) throw Error(ErrorCode::NotAnExtension, "extension does not cover the data mask");
  if (xbar.order() < x.order()) throw Error(ErrorCode::NotAnExtension, "extension carries fewer derivatives");
  for (std::size_t ci = 0; ci < x.indices().size(); ++ci) {
    const MultiIndex& a = x.indices()[ci];
    auto u = x.componentAt(ci);
    auto v = xbar.component(a);
    for (std::size_t f = 0; f < x.mask().size(); ++f) {
      if (!x.mask()[f]) continue;
      if (!(std::abs(u[f] - v[f]) <= tol)) {
        std::ostringstream os;
        os << "extension differs from the data at flat index " << f << " for alpha = " << a.key() << " by "
           << std::abs(u[f] - v[f]);
        throw Error(ErrorCode::NotAnExtension, os.str());
      }
    }
  }
  return normOf(SpaceTag::HUpper, xbar, x.order());
}

// ------------------------------------------------------ membership

namespace {

struct Worst {
  double value = 0.0;
  std::size_t p = 0, q = 0;
};

Worst combine(const std::vector<Worst>& parts) {
  Worst w;
  for (const auto& x : parts)
    if (x.value > w.value) w = x;
  return w;
}

GridMask edgeBand(const GridMask& m, int band) {
  GridMask b = edgeOf(m);
  for (int k = 0; k < band; ++k) b = closureOf(b) & m;
  return b;
}

LatticeIndex step(LatticeIndex k, int axis, int by) {
  k[axis] += by;
  return k;
}

Point pointOf(const GridSpec& g, std::size_t f) {
  Point p = g.point(f);
  if (g.dim() == 1) p[1] = 0.0;
  return p;
}

}  // namespace

MembershipVerdict checkMembership(const SampledJet& j, SpaceTag space, const std::string& domain,
                                  const MembershipOptions& options) {
  if (!(options.tol > 0.0) || !(options.cFactor > 0.0) || options.band < 0 || !(options.decay > 0.0))
    throw Error(ErrorCode::InvalidArgument, "membership options must be positive");
  const GridSpec& g = j.grid();
  const GridMask& m = j.mask();
  const int dim = g.dim();
  MembershipVerdict v;
  v.space = space;
  v.h = g.h();
  v.options = options;
  if (m.empty()) return v;

  const NormReport norms = normOf(space, j);
  v.consistencyBound = options.cFactor * norms.overall * g.h() + 1e-12;
  const std::size_t chunks = chunkCount(m.size());

  auto violation = [&](const MultiIndex& a, const Worst& w, const std::string& what, double bound) {
    Certificate c;
    c.domain = domain;
    c.dim = dim;
    c.claim = Claim::MembershipViolation;
    CertificateTerm t;
    t.n = 0;
    t.base = pointOf(g, w.p);
    t.probe = pointOf(g, w.q);
    t.quotient = w.value;
    c.terms.push_back(t);
    c.gap = w.value;
    c.tolerance = bound;
    c.nMax = 1;
    c.note = what + " alpha=" + a.key() + " space=" + spaceName(space);
    v.verdict = Verdict::Violation;
    v.certificate = c;
  };

  // (a) consistency of declared partials with differences of lower ones.
  const GridMask interior = interiorOf(m);
  for (const auto& a : j.indices()) {
    if (a.order() == 0) continue;
    auto va = j.component(a);
    for (int k = 0; k < dim; ++k) {
      if (a[k] == 0) continue;
      auto vb = j.component(a.minus(k));
      std::vector<Worst> parts(chunks);
      parallelChunks(m.size(), [&](std::size_t c, std::size_t b, std::size_t e) {
        Worst& w = parts[c];
        for (std::size_t f = b; f < e; ++f) {
          if (!interior[f]) continue;
          const LatticeIndex p = g.index(f);
          const std::size_t fp = g.flat(step(p, k, 1)), fm = g.flat(step(p, k, -1));
          const double fd = (vb[fp] - vb[fm]) / (2.0 * g.h());
          const double d = std::abs(fd - va[f]);
          if (d > w.value) w = {d, f, fp};
        }
      });
      const Worst w = combine(parts);
      v.worstConsistency = std::max(v.worstConsistency, w.value);
      if (w.value > v.consistencyBound && v.consistent())
        violation(a, w, "difference mismatch along axis " + std::to_string(k), v.consistencyBound);
    }
  }

  // (b) modulus of continuity on adjacent pairs near the mask edge.
  const GridMask band = edgeBand(m, options.band);
  for (const auto& a : j.indices()) {
    auto va = j.component(a);
    std::vector<Worst> p1(chunks), p2(chunks);
    parallelChunks(m.size(), [&](std::size_t c, std::size_t b, std::size_t e) {
      for (std::size_t f = b; f < e; ++f) {
        if (!m[f]) continue;
        const LatticeIndex p = g.index(f);
        for (int k = 0; k < dim; ++k) {
          const LatticeIndex q1 = step(p, k, 1), q2 = step(p, k, 2);
          if (!m.at(q1)) continue;
          const std::size_t f1 = g.flat(q1);
          if (band[f] || band[f1]) {
            const double d = std::abs(va[f1] - va[f]);
            if (d > p1[c].value) p1[c] = {d, f, f1};
          }
          if (!m.at(q2)) continue;
          const std::size_t f2 = g.flat(q2);
          if (band[f] || band[f1] || band[f2]) {
            const double d = std::abs(va[f2] - va[f]);
            if (d > p2[c].value) p2[c] = {d, f, f2};
          }
        }
      }
    });
    const Worst w1 = combine(p1), w2 = combine(p2);
    v.modulus.emplace_back(a, w1.value);
    v.modulus2h.emplace_back(a, w2.value);
    if (v.consistent() && w1.value > options.tol && w1.value > options.decay * w2.value) {
      std::ostringstream os;
      os << "jump near the boundary: omega(h)=" << w1.value << " omega(2h)=" << w2.value;
      violation(a, w1, os.str(), options.tol);
    }
  }
  return v;
}

}  // namespace jetlab
