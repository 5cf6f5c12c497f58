#pragma once

// Sup-norms of sampled jets, restriction to Omega, upper bounds for the
// quotient norm of H and resolution-qualified membership verdicts.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetlab/certify.hpp"
#include "jetlab/domains.hpp"
#include "jetlab/grid.hpp"

namespace jetlab {

// F: x^alpha uniformly on Q. E: derivatives uniformly on Omega. G: bounded
// partials on a window. HUpper: one extension's G-norm, an upper bound for
// the quotient norm.
enum class SpaceTag { F, E, G, HUpper };

std::string spaceName(SpaceTag t);
SpaceTag parseSpaceTag(const std::string& name);

struct NormEntry {
  MultiIndex alpha;
  double value = 0.0;
  std::size_t argmax = 0;  // flat index of a maximizing lattice point

  bool operator==(const NormEntry&) const = default;
};

struct NormReport {
  int order = 0;
  SpaceTag space = SpaceTag::F;
  std::string mask;  // "Q", "Omega" or "window"
  std::vector<NormEntry> perAlpha;
  double overall = 0.0;

  double at(const MultiIndex& alpha) const;

  bool operator==(const NormReport&) const = default;
};

// Per-alpha sup over the jet's own mask. EmptyMask for an empty mask;
// InvalidArgument if the jet has fewer than `order` grades.
NormReport normF(const SampledJet& j, int order = -1);
NormReport normE(const SampledJet& j, int order = -1);
NormReport normG(const SampledJet& j, int order = -1);
NormReport normOf(SpaceTag tag, const SampledJet& j, int order = -1);

// Same values on omega; MaskMismatch unless omega is a submask of j's mask.
SampledJet restrictToOmega(const SampledJet& j, const GridMask& omega);

// Restriction of xbar to x's mask, element-wise within 1e-9 of x, else
// NotAnExtension. The report covers all of xbar's mask.
NormReport hNormUpperBound(const SampledJet& x, const SampledJet& xbar, double tol = 1e-9);

struct MembershipOptions {
  double tol = 1e-2;        // bound on omega(h) near the boundary
  double cFactor = 10.0;    // C = cFactor * max per-alpha sup
  int band = 3;             // lattice steps from the mask edge
  double decay = 0.75;      // omega(h) <= decay * omega(2h) counts as continuous
};

enum class Verdict { ConsistentAtResolution, Violation };

struct MembershipVerdict {
  SpaceTag space = SpaceTag::F;
  Verdict verdict = Verdict::ConsistentAtResolution;
  double h = 0.0;
  MembershipOptions options;
  double consistencyBound = 0.0;  // C h
  double worstConsistency = 0.0;  // largest FD mismatch seen
  std::vector<std::pair<MultiIndex, double>> modulus;      // omega(h) per alpha
  std::vector<std::pair<MultiIndex, double>> modulus2h;    // omega(2h) per alpha
  std::optional<Certificate> certificate;                  // set iff Violation

  bool consistent() const { return verdict == Verdict::ConsistentAtResolution; }
};

// (a) every x^alpha matches central differences of x^{alpha - e_k} at points
// whose axis neighbours are all in the mask, within C h; (b) near the mask
// edge, omega(h) <= tol or omega(h) <= decay * omega(2h) for every alpha.
// The jet's own mask is the set checked: Q for F, Omega for E.
MembershipVerdict checkMembership(const SampledJet& j, SpaceTag space, const std::string& domain,
                                  const MembershipOptions& options = {});

}  // namespace jetlab
