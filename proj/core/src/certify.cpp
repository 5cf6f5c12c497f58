#include "jetlab/certify.hpp"

#include <cmath>
#include <sstream>

#include "jetlab/domains.hpp"
#include "jetlab/error.hpp"

namespace jetlab {

std::string claimName(Claim c) {
  switch (c) {
    case Claim::NotInH: return "not-in-H";
    case Claim::NotInFExtension: return "not-in-F-extension";
    case Claim::MembershipViolation: return "membership-violation";
  }
  return "?";
}

Claim parseClaim(const std::string& name) {
  if (name == "not-in-H") return Claim::NotInH;
  if (name == "not-in-F-extension") return Claim::NotInFExtension;
  if (name == "membership-violation") return Claim::MembershipViolation;
  throw Error(ErrorCode::Parse, "unknown claim '" + name + "'");
}

bool Certificate::conclusive() const {
  if (claim == Claim::MembershipViolation) return true;
  return divergent || gap > tolerance;
}

namespace {

void requireTerms(int nMax, int cap) {
  if (nMax < 2 || nMax > cap)
    throw Error(ErrorCode::InvalidArgument, "nMax must lie in [2, " + std::to_string(cap) + "]");
}

constexpr int kCombTermCap = 50;
constexpr int kWitnessCount = 20;

std::string exactZero(double q) { return q == 0.0 ? "0" : ""; }

std::vector<CertificateTerm> combTerms(int nMax) {
  const AnalyticJet x = example3Jet(nMax);
  std::vector<CertificateTerm> terms;
  for (int n = 1; n <= nMax; ++n) {
    CertificateTerm term;
    term.n = n;
    term.base = {0.0, 1.0};
    term.probe = {combA(n), 1.0};
    term.quotient = (x.value(term.probe) - x.value(term.base)) / combA(n);
    term.exact = exactZero(term.quotient);
    terms.push_back(term);
  }
  return terms;
}

std::vector<LimitWitness> combWitnesses() {
  const AnalyticJet x = example3Jet(kCombTermCap);
  std::vector<LimitWitness> w;
  for (int k = 1; k <= kWitnessCount; ++k) {
    const Point p{-std::ldexp(1.0, -k), 1.0};
    w.push_back({p, x(p, MultiIndex(1, 0))});
  }
  return w;
}

std::vector<CertificateTerm> gapTerms(int nMax) {
  const AnalyticJet x = gap1dJet(nMax);
  std::vector<CertificateTerm> terms;
  for (int n = 1; n <= nMax; ++n) {
    const double sn = gapInterval(n)[0];
    CertificateTerm term;
    term.n = n;
    term.base = {0.0, 0.0};
    term.probe = {sn, 0.0};
    term.quotient = (x.value(term.probe) - x.value(term.base)) / sn;
    term.exact = exactZero(term.quotient);
    terms.push_back(term);
  }
  return terms;
}

std::vector<LimitWitness> gapWitnesses() {
  const AnalyticJet x = gap1dJet(kCombTermCap);
  std::vector<LimitWitness> w;
  // Central difference at -1/2 first, then the declared derivative at -2^-k.
  const double d = std::ldexp(1.0, -12);
  w.push_back({{-0.5, 0.0}, (x.value({-0.5 + d, 0}) - x.value({-0.5 - d, 0})) / (2 * d)});
  for (int k = 1; k <= kWitnessCount; ++k) {
    const Point p{-std::ldexp(1.0, -k), 0.0};
    w.push_back({p, x(p, MultiIndex(1))});
  }
  return w;
}

double pow3(int n) {
  double p = 1.0;
  for (int k = 0; k < n; ++k) p *= 3.0;
  return p;
}

std::vector<CertificateTerm> cantorTerms(int nMax, int phiDepth) {
  std::vector<CertificateTerm> terms;
  std::int64_t den = 1;
  for (int n = 1; n <= nMax; ++n) {
    den *= 3;
    CertificateTerm term;
    term.n = n;
    term.base = {0.0, 1.0};
    term.probe = {1.0 / pow3(n), 1.0};
    const double probe = example1ClosureRational(1, den, 1.0, phiDepth);
    const double base = example1ClosureRational(0, 1, 1.0, phiDepth);
    term.quotient = (probe - base) * pow3(n);
    terms.push_back(term);
  }
  return terms;
}

std::vector<LimitWitness> cantorWitnesses(int depth, int phiDepth) {
  const AnalyticJet x = example1Jet(1, depth, phiDepth);
  const CantorApprox cover = cantorLevel(depth);
  std::vector<LimitWitness> w;
  for (std::size_t k = 0; k + 1 < cover.intervals.size(); ++k) {
    const double lo = cover.interval(k)[1], hi = cover.interval(k + 1)[0];
    const double s = 0.5 * (lo + hi);
    const double d = 0.25 * (hi - lo);
    w.push_back({{s, 1.0}, x({s, 1.0}, MultiIndex(1, 0))});
    // Central difference inside the same gap.
    w.push_back({{s, 1.0}, (x.value({s + d, 1.0}) - x.value({s - d, 1.0})) / (2 * d)});
  }
  return w;
}

void conclude(Certificate& c) {
  const double last = c.terms.back().quotient;
  c.gap = std::abs(c.interiorLimit - last);
  c.divergent = false;
  c.divergenceIndex = 0;
  if (c.ceiling > 0.0) {
    for (const auto& t : c.terms) {
      if (std::abs(t.quotient) > c.ceiling) {
        c.divergent = true;
        c.divergenceIndex = t.n;
        break;
      }
    }
  }
}

}  // namespace

Certificate certifyComb(int nMax) {
  requireTerms(nMax, kCombTermCap);
  Certificate c;
  c.domain = domainName(DomainKind::Comb);
  c.dim = 2;
  c.claim = Claim::NotInH;
  c.nMax = nMax;
  c.tolerance = 0.5;
  c.terms = combTerms(nMax);
  c.witnesses = combWitnesses();
  c.interiorLimit = 1.0;
  conclude(c);
  c.gapExact = c.gap == 1.0;
  return c;
}

Certificate certifyGap1d(int nMax) {
  requireTerms(nMax, kCombTermCap);
  Certificate c;
  c.domain = domainName(DomainKind::GapIntervals);
  c.dim = 1;
  c.claim = Claim::NotInH;
  c.nMax = nMax;
  c.tolerance = 0.5;
  c.terms = gapTerms(nMax);
  c.witnesses = gapWitnesses();
  c.interiorLimit = 1.0;
  conclude(c);
  c.gapExact = c.gap == 1.0;
  return c;
}

Certificate certifyCantorSlit(int nMax, double ceiling, int depth, int phiDepth) {
  requireTerms(nMax, kMaxCantorTerms);
  if (!(ceiling > 0.0)) throw Error(ErrorCode::InvalidArgument, "divergence ceiling must be positive");
  if (phiDepth < 1 || phiDepth > kMaxPhiDepth) throw Error(ErrorCode::InvalidArgument, "phi depth must lie in [1, 40]");
  Certificate c;
  c.domain = domainName(DomainKind::CantorSlitSquare);
  c.dim = 2;
  c.claim = Claim::NotInFExtension;
  c.nMax = nMax;
  c.ceiling = ceiling;
  c.tolerance = 0.5;
  c.phiDepth = phiDepth;
  c.terms = cantorTerms(nMax, phiDepth);
  c.witnesses = cantorWitnesses(depth, phiDepth);
  c.interiorLimit = 0.0;
  c.note = "depth=" + std::to_string(depth);
  conclude(c);
  return c;
}

namespace {

bool close(double a, double b) { return std::abs(a - b) <= kReplayTolerance * std::max(1.0, std::abs(b)); }

int depthFromNote(const std::string& note) {
  const auto pos = note.find("depth=");
  if (pos == std::string::npos) return 4;
  return std::stoi(note.substr(pos + 6));
}

}  // namespace

ReplayResult replayCertificate(const Certificate& c, int phiDepth) {
  if (c.claim == Claim::MembershipViolation)
    throw Error(ErrorCode::InvalidArgument, "membership violations depend on sampled data and are not replayable");
  if (c.terms.empty() || static_cast<int>(c.terms.size()) != c.nMax)
    throw Error(ErrorCode::InvalidArgument, "certificate term count does not match nMax");
  const int depth = phiDepth > 0 ? phiDepth : c.phiDepth;
  Certificate fresh;
  if (c.domain == domainName(DomainKind::Comb)) {
    fresh = certifyComb(c.nMax);
  } else if (c.domain == domainName(DomainKind::GapIntervals)) {
    fresh = certifyGap1d(c.nMax);
  } else if (c.domain == domainName(DomainKind::CantorSlitSquare)) {
    fresh = certifyCantorSlit(c.nMax, c.ceiling, depthFromNote(c.note), depth);
  } else {
    throw Error(ErrorCode::UnsupportedDomain, "no certificate generator for domain '" + c.domain + "'");
  }

  ReplayResult r;
  auto fail = [&r](int n, const std::string& what) {
    r.pass = false;
    r.firstMismatch = n;
    r.detail = what;
    return r;
  };
  for (std::size_t k = 0; k < c.terms.size(); ++k) {
    const auto& a = c.terms[k];
    const auto& b = fresh.terms[k];
    if (a.n != b.n || a.base != b.base || a.probe != b.probe) return fail(a.n, "term geometry differs");
    if (!close(a.quotient, b.quotient)) {
      std::ostringstream os;
      os.precision(17);
      os << "d_" << a.n << " recorded " << a.quotient << ", recomputed " << b.quotient;
      return fail(a.n, os.str());
    }
  }
  if (c.witnesses.size() != fresh.witnesses.size()) return fail(0, "witness count differs");
  for (std::size_t k = 0; k < c.witnesses.size(); ++k) {
    if (c.witnesses[k].point != fresh.witnesses[k].point || !close(c.witnesses[k].value, fresh.witnesses[k].value))
      return fail(0, "witness " + std::to_string(k) + " differs");
  }
  if (!close(c.interiorLimit, fresh.interiorLimit)) return fail(0, "interior limit differs");
  if (!close(c.gap, fresh.gap)) return fail(0, "gap differs");
  if (c.divergent != fresh.divergent || c.divergenceIndex != fresh.divergenceIndex)
    return fail(0, "divergence conclusion differs");
  if (!fresh.conclusive()) return fail(0, "recomputed certificate is not conclusive");
  return r;
}

void requireReplay(const Certificate& c, int phiDepth) {
  const ReplayResult r = replayCertificate(c, phiDepth);
  if (!r.pass) throw Error(ErrorCode::ReplayMismatch, "replay failed at term " + std::to_string(r.firstMismatch) + ": " + r.detail);
}

}  // namespace jetlab
