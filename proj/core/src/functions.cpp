#include "jetlab/functions.hpp"

#include <cmath>
#include <sstream>

#include "jetlab/error.hpp"
#include "jetlab/parallel.hpp"

namespace jetlab {

AnalyticJet::AnalyticJet(std::string name, int dim, int order, Evaluator eval, Region region,
                         std::optional<DomainSpec> spec)
    : name_(std::move(name)), dim_(dim), order_(order), eval_(std::move(eval)), region_(std::move(region)),
      spec_(std::move(spec)) {
  if (dim != 1 && dim != 2) throw Error(ErrorCode::InvalidArgument, "jet dimension must be 1 or 2");
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "jet order must be nonnegative");
}

double AnalyticJet::operator()(const Point& p, const MultiIndex& alpha) const {
  if (alpha.dim() != dim_ || alpha.order() > order_)
    throw Error(ErrorCode::InvalidArgument, name_ + " has no component " + alpha.key());
  if (!region_(p)) {
    std::ostringstream os;
    os << name_ << " evaluated outside its region at (" << p[0] << ", " << p[1] << ")";
    throw Error(ErrorCode::PointOutsideRegion, os.str());
  }
  return eval_(p, alpha);
}

Jet2 AnalyticJet::jet2(const Point& p) const {
  if (dim_ != 2) throw Error(ErrorCode::InvalidArgument, "jet2 needs a 2-D function");
  Jet2 j;
  const int top = std::min(order_, 2);
  for (const auto& a : multiIndices(2, top)) j.setPartial(a, (*this)(p, a));
  return j;
}

AnalyticJet AnalyticJet::restrictedTo(std::string name, Region region, std::optional<DomainSpec> spec) const {
  Region outer = region_;
  Region both = [outer, region = std::move(region)](const Point& p) { return region(p) && outer(p); };
  return AnalyticJet(std::move(name), dim_, order_, eval_, std::move(both), std::move(spec));
}

SampledJet sample(const AnalyticJet& f, const GridMask& mask, int order) {
  if (f.dim() != mask.grid().dim()) throw Error(ErrorCode::MaskMismatch, "function and mask dimensions differ");
  if (order > f.order()) throw Error(ErrorCode::InvalidArgument, f.name() + " has order " + std::to_string(f.order()));
  SampledJet jet(order, mask);
  const auto& idx = jet.indices();
  const GridSpec& g = mask.grid();
  parallelChunks(mask.size(), [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t fl = b; fl < e; ++fl) {
      if (!mask[fl]) continue;
      Point p = g.point(fl);
      for (std::size_t c = 0; c < idx.size(); ++c) jet.componentAt(c)[fl] = f(p, idx[c]);
    }
  });
  jet.validate();
  return jet;
}

// ------------------------------------------------------- Cantor function

namespace {

__extension__ typedef __int128 i128;

double digitMap(i128 num, i128 den, int depth) {
  double out = 0.0;
  double weight = 0.5;
  for (int k = 1; k <= depth; ++k) {
    num *= 3;
    const int digit = static_cast<int>(num / den);
    num -= static_cast<i128>(digit) * den;
    if (digit == 1) return out + weight;
    if (digit == 2) out += weight;
    weight *= 0.5;
  }
  return out;
}

void checkDepth(int depth) {
  if (depth < 1 || depth > kMaxPhiDepth)
    throw Error(ErrorCode::InvalidArgument, "phi depth must lie in [1, " + std::to_string(kMaxPhiDepth) + "]");
}

}  // namespace

double cantorPhi(double s, int depth) {
  checkDepth(depth);
  if (!(s > 0.0)) return 0.0;
  if (s >= 1.0) return 1.0;
  int e = 0;
  const double f = std::frexp(s, &e);  // s = f 2^e, f in [0.5, 1)
  const auto mant = static_cast<std::int64_t>(std::ldexp(f, 53));
  const int exponent = 53 - e;  // s = mant / 2^exponent
  // Below 2^-67 the first 40 ternary digits are all 0.
  if (exponent > 120) return 0.0;
  return digitMap(static_cast<i128>(mant), static_cast<i128>(1) << exponent, depth);
}

double cantorPhiRational(std::int64_t num, std::int64_t den, int depth) {
  checkDepth(depth);
  if (den <= 0 || num < 0 || num > den) throw Error(ErrorCode::InvalidArgument, "phi needs 0 <= num <= den");
  if (num == 0) return 0.0;
  if (num == den) return 1.0;
  return digitMap(num, den, depth);
}

// -------------------------------------------------------------- mollifier

MollifierValue mollifier(double t) {
  if (!(t > 0.0)) return {0.0, 0.0};
  const double e = std::exp(-1.0 / t);
  if (e == 0.0) return {0.0, 0.0};
  return {e, e / (t * t)};
}

double mollifierDerivative(double t, int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "derivative order must be nonnegative");
  if (!(t > 0.0)) return 0.0;
  const double u = 1.0 / t;
  const double e = std::exp(-u);
  if (e == 0.0) return 0.0;
  // P_k coefficients in ascending powers of u.
  std::vector<double> p{1.0};
  for (int j = 0; j < k; ++j) {
    std::vector<double> next(p.size() + 2, 0.0);
    for (std::size_t m = 0; m < p.size(); ++m) next[m + 2] += p[m];
    for (std::size_t m = 1; m < p.size(); ++m) next[m + 1] -= static_cast<double>(m) * p[m];
    p = std::move(next);
  }
  double acc = 0.0;
  for (std::size_t m = p.size(); m-- > 0;) acc = acc * u + p[m];
  return acc * e;
}

// ------------------------------------------------ counterexample jets

double example1Closure(const Point& p, int phiDepth) {
  const double s = p[0], t = p[1];
  if (!(s > 0.0 && s <= 1.0 && t > 0.0 && t <= 1.0)) return 0.0;
  return cantorPhi(s, phiDepth) * mollifier(t).value;
}

double example1ClosureRational(std::int64_t sNum, std::int64_t sDen, double t, int phiDepth) {
  if (!(sNum > 0 && sNum <= sDen && t > 0.0 && t <= 1.0)) return 0.0;
  return cantorPhiRational(sNum, sDen, phiDepth) * mollifier(t).value;
}

AnalyticJet example1Jet(int order, int depth, int phiDepth) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "example1 needs order >= 1");
  checkDepth(phiDepth);
  CantorApprox cover = cantorLevel(depth);
  auto region = [cover](const Point& p) {
    const double s = p[0], t = p[1];
    if (!(s >= -1.0 && s <= 1.0 && t >= -1.0 && t <= 1.0)) return false;
    return !(t >= 0.0 && t <= 1.0 && cover.contains(s));
  };
  auto eval = [phiDepth](const Point& p, const MultiIndex& a) {
    const double s = p[0], t = p[1];
    if (!(s > 0.0 && s <= 1.0 && t > 0.0 && t <= 1.0)) return 0.0;
    if (a[0] > 0) return 0.0;
    return cantorPhi(s, phiDepth) * mollifierDerivative(t, a[1]);
  };
  return AnalyticJet("example1", 2, order, eval, region, DomainSpec::cantorSlitSquare(depth));
}

AnalyticJet example3Jet(int nTeeth) {
  auto region = [nTeeth](const Point& p) { return inCombB(p) || combTooth(p, nTeeth).has_value(); };
  auto eval = [nTeeth](const Point& p, const MultiIndex& a) {
    const double s = p[0], t = p[1];
    double shift = 0.0;
    if (!inCombB(p)) shift = combA(*combTooth(p, nTeeth));
    const double u = s - shift;
    if (a[0] == 0 && a[1] == 0) return u * t * t;
    if (a[0] == 1) return t * t;
    return 2.0 * u * t;
  };
  return AnalyticJet("example3", 2, 1, eval, region, DomainSpec::comb(nTeeth));
}

AnalyticJet gap1dJet(int nSegments) {
  auto region = [nSegments](const Point& p) { return gapSegment(p[0], nSegments).has_value(); };
  auto eval = [nSegments](const Point& p, const MultiIndex& a) {
    if (a[0] == 1) return 1.0;
    const int n = *gapSegment(p[0], nSegments);
    return n == 0 ? p[0] : p[0] - gapInterval(n)[0];
  };
  return AnalyticJet("gap1d", 1, 1, eval, region, DomainSpec::gapIntervals(nSegments));
}

// ------------------------------------------------------- test functions

namespace {

double fallingPower(double x, int n, int k) {
  // d^k/dx^k x^n
  if (k > n) return 0.0;
  double c = 1.0;
  for (int j = 0; j < k; ++j) c *= static_cast<double>(n - j);
  double v = c;
  for (int j = 0; j < n - k; ++j) v *= x;
  return v;
}

auto everywhere = [](const Point&) { return true; };

double sinDerivative(double x, int k) {
  switch (k % 4) {
    case 0: return std::sin(x);
    case 1: return std::cos(x);
    case 2: return -std::sin(x);
    default: return -std::cos(x);
  }
}

double cosDerivative(double x, int k) { return sinDerivative(x, k + 1); }

}  // namespace

AnalyticJet polynomialJet(std::string name, int dim, std::vector<PolyTerm> terms, int order) {
  auto eval = [terms = std::move(terms), dim](const Point& p, const MultiIndex& a) {
    double acc = 0.0;
    for (const auto& tm : terms) {
      double v = tm.coef * fallingPower(p[0], tm.s, a[0]);
      if (dim == 2) v *= fallingPower(p[1], tm.t, a[1]);
      acc += v;
    }
    return acc;
  };
  return AnalyticJet(std::move(name), dim, order, eval, everywhere);
}

AnalyticJet chiJet(int order) { return polynomialJet("chi", 2, {{1.0, 1, 2}}, order); }
AnalyticJet linearJet(int order) { return polynomialJet("linear", 2, {{1.0, 1, 0}, {1.0, 0, 1}}, order); }

AnalyticJet sinCosJet(int order) {
  auto eval = [](const Point& p, const MultiIndex& a) { return sinDerivative(p[0], a[0]) * cosDerivative(p[1], a[1]); };
  return AnalyticJet("sincos", 2, order, eval, everywhere);
}

AnalyticJet constantJet(int dim, double c, int order) {
  auto eval = [c](const Point&, const MultiIndex& a) { return a.order() == 0 ? c : 0.0; };
  return AnalyticJet(c == 0.0 ? "zero" : (c == 1.0 ? "one" : "constant"), dim, order, eval, everywhere);
}

AnalyticJet expJet1d(int order) {
  auto eval = [](const Point& p, const MultiIndex&) { return std::exp(p[0]); };
  return AnalyticJet("exp", 1, order, eval, everywhere);
}

AnalyticJet cantorPhiJet(int depth) {
  checkDepth(depth);
  auto eval = [depth](const Point& p, const MultiIndex&) { return cantorPhi(p[0], depth); };
  auto region = [](const Point& p) { return p[0] >= 0.0 && p[0] <= 1.0; };
  return AnalyticJet("cantorPhi", 1, 0, eval, region);
}

namespace {

std::vector<PolyTerm> parsePoly(const std::string& body) {
  std::vector<PolyTerm> terms;
  std::stringstream ss(body);
  std::string term;
  while (std::getline(ss, term, '+')) {
    std::stringstream ts(term);
    std::string c, a, b;
    if (!std::getline(ts, c, '*') || !std::getline(ts, a, '*') || !std::getline(ts, b))
      throw Error(ErrorCode::Parse, "polynomial term '" + term + "' must read coef*a*b");
    try {
      terms.push_back({std::stod(c), std::stoi(a), std::stoi(b)});
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::Parse, "bad polynomial term '" + term + "'");
    }
    if (terms.back().s < 0 || terms.back().t < 0) throw Error(ErrorCode::Parse, "negative exponent in '" + term + "'");
  }
  if (terms.empty()) throw Error(ErrorCode::Parse, "empty polynomial");
  return terms;
}

}  // namespace

AnalyticJet namedFunction(const std::string& name, int order, const DomainSpec& domain) {
  const int dim = domain.dim();
  if (name == "example1") return example1Jet(std::max(order, 1), domain.depth);
  if (name == "example3") return example3Jet(domain.kind == DomainKind::Comb ? domain.nTeeth : 50);
  if (name == "gap1d") return gap1dJet(domain.kind == DomainKind::GapIntervals ? domain.nSegments : 50);
  if (name == "chi") return chiJet();
  if (name == "linear") return linearJet();
  if (name == "sincos") return sinCosJet();
  if (name == "zero") return constantJet(dim, 0.0);
  if (name == "one") return constantJet(dim, 1.0);
  if (name == "exp") return expJet1d();
  if (name == "cantorPhi") return cantorPhiJet();
  if (name.rfind("poly:", 0) == 0) return polynomialJet(name, dim, parsePoly(name.substr(5)));
  throw Error(ErrorCode::Parse, "unknown function '" + name + "'");
}

}  // namespace jetlab
