#pragma once

// Certificates that a function lies outside a space: a sequence of
// difference quotients across a gap in the domain, set against a one-sided
// derivative limit taken inside the domain.

#include <optional>
#include <string>
#include <vector>

#include "jetlab/functions.hpp"
#include "jetlab/grid.hpp"

namespace jetlab {

enum class Claim { NotInH, NotInFExtension, MembershipViolation };

std::string claimName(Claim c);
Claim parseClaim(const std::string& name);

struct CertificateTerm {
  int n = 0;
  Point base{0, 0};
  Point probe{0, 0};
  double quotient = 0.0;
  // Set when the quotient is an exact rational ("0" for the comb and the
  // gap intervals); empty otherwise.
  std::string exact;

  bool operator==(const CertificateTerm&) const = default;
};

struct LimitWitness {
  Point point{0, 0};
  double value = 0.0;

  bool operator==(const LimitWitness&) const = default;
};

struct Certificate {
  std::string domain;  // domainName()
  int dim = 2;
  Claim claim = Claim::NotInH;
  std::vector<CertificateTerm> terms;
  double interiorLimit = 0.0;
  std::vector<LimitWitness> witnesses;
  double gap = 0.0;        // |interiorLimit - last quotient|
  bool gapExact = false;
  bool divergent = false;  // some |d_n| exceeds ceiling
  int divergenceIndex = 0; // first such n, 0 if none
  double ceiling = 0.0;    // 0 when no divergence test applies
  int nMax = 0;
  double tolerance = 0.0;  // gap must exceed this unless divergent
  int phiDepth = 0;        // Cantor slit only
  std::string note;        // free-form detail, e.g. the failing component

  // gap > tolerance or divergent; for membership violations, always true.
  bool conclusive() const;

  bool operator==(const Certificate&) const = default;
};

inline constexpr double kDefaultCeiling = 1e3;
inline constexpr int kMaxCantorTerms = 30;

// Comb: d_n = (x(a_n, 1) - x(0, 1)) / a_n. nMax >= 2.
Certificate certifyComb(int nMax);
// 1-D gap intervals: d_n = (x(s_n) - x(0)) / s_n. nMax >= 2.
Certificate certifyGap1d(int nMax);
// Cantor slit square along t = 1: d_n = (x(3^-n, 1) - x(0, 1)) 3^n with
// x = phi(s) e^{-1/t}; 2 <= nMax <= 30. Witnesses sample the interior
// s-derivative at the midpoints of the level-depth gaps.
Certificate certifyCantorSlit(int nMax, double ceiling = kDefaultCeiling, int depth = 4,
                              int phiDepth = kDefaultPhiDepth);

struct ReplayResult {
  bool pass = true;
  int firstMismatch = 0;  // term n, 0 if the terms agree
  std::string detail;
};

inline constexpr double kReplayTolerance = 1e-12;

// Recomputes every term, witness and the conclusion from the closed forms.
// phiDepth <= 0 keeps the depth recorded in the certificate.
ReplayResult replayCertificate(const Certificate& c, int phiDepth = 0);
// Same, throwing ReplayMismatch on the first difference.
void requireReplay(const Certificate& c, int phiDepth = 0);

}  // namespace jetlab
