#include "jetlab/io.hpp"

#include <fstream>
#include <iterator>
#include <json.hpp>
#include <sstream>

#include "jetlab/error.hpp"

namespace jetlab {

using json = nlohmann::ordered_json;

std::string readTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "' for reading");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return text;
}

void writeTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
}

// Field access with Parse errors naming the field.
const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(ErrorCode::Parse, std::string("missing field '") + name + "'");
  return j.at(name);
}

template <typename T>
T get(const json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("bad field '") + name + "': " + e.what());
  }
}

json pointJson(const Point& p, int dim) {
  return dim == 1 ? json::array({p[0]}) : json::array({p[0], p[1]});
}

Point pointFrom(const json& j) {
  if (!j.is_array() || j.empty() || j.size() > 2) throw Error(ErrorCode::Parse, "points are arrays of 1 or 2 numbers");
  return {j[0].get<double>(), j.size() == 2 ? j[1].get<double>() : 0.0};
}

json gridJ(const GridSpec& g) {
  json j;
  j["dim"] = g.dim();
  j["origin"] = pointJson(g.origin(), g.dim());
  j["h"] = g.h();
  j["extents"] = g.dim() == 1 ? json::array({g.extent(0)}) : json::array({g.extent(0), g.extent(1)});
  return j;
}

GridSpec gridFrom(const json& j) {
  const int dim = get<int>(j, "dim");
  const json& e = field(j, "extents");
  if (!e.is_array() || static_cast<int>(e.size()) != dim) throw Error(ErrorCode::Parse, "extents must have dim entries");
  std::array<int, 2> ext{e[0].get<int>(), dim == 2 ? e[1].get<int>() : 1};
  return GridSpec(dim, pointFrom(field(j, "origin")), get<double>(j, "h"), ext);
}

// [first bit, run, run, ...]
json rle(const GridMask& m) {
  json runs = json::array();
  const auto& bits = m.bits();
  if (bits.empty()) return runs;
  runs.push_back(static_cast<int>(bits[0]));
  std::uint64_t run = 0;
  std::uint8_t cur = bits[0];
  for (std::uint8_t b : bits) {
    if (b == cur) {
      ++run;
    } else {
      runs.push_back(run);
      cur = b;
      run = 1;
    }
  }
  runs.push_back(run);
  return runs;
}

GridMask unrle(const GridSpec& g, const json& runs) {
  std::vector<std::uint8_t> bits;
  bits.reserve(g.size());
  if (!runs.is_array() || runs.empty()) throw Error(ErrorCode::Parse, "mask runs must be a non-empty array");
  std::uint8_t cur = runs[0].get<int>() ? 1 : 0;
  for (std::size_t k = 1; k < runs.size(); ++k) {
    bits.insert(bits.end(), runs[k].get<std::uint64_t>(), cur);
    cur ^= 1;
  }
  if (bits.size() != g.size()) throw Error(ErrorCode::Parse, "mask runs do not cover the grid");
  return GridMask(g, std::move(bits));
}

json maskJ(const GridMask& m) {
  json j;
  j["grid"] = gridJ(m.grid());
  j["runs"] = rle(m);
  return j;
}

GridMask maskFrom(const json& j) { return unrle(gridFrom(field(j, "grid")), field(j, "runs")); }

json jetJ(const SampledJet& jet) {
  json j;
  j["grid"] = gridJ(jet.grid());
  j["order"] = jet.order();
  j["mask"] = rle(jet.mask());
  json comps;
  for (std::size_t ci = 0; ci < jet.indices().size(); ++ci) {
    auto v = jet.componentAt(ci);
    comps[jet.indices()[ci].key()] = std::vector<double>(v.begin(), v.end());
  }
  j["components"] = std::move(comps);
  return j;
}

SampledJet jetFrom(const json& j) {
  const GridSpec g = gridFrom(field(j, "grid"));
  SampledJet jet(get<int>(j, "order"), unrle(g, field(j, "mask")));
  const json& comps = field(j, "components");
  for (std::size_t ci = 0; ci < jet.indices().size(); ++ci) {
    const std::string key = jet.indices()[ci].key();
    if (!comps.contains(key)) throw Error(ErrorCode::Parse, "missing component " + key);
    const json& vals = comps.at(key);
    if (!vals.is_array() || vals.size() != g.size())
      throw Error(ErrorCode::Parse, "component " + key + " must list every lattice point");
    auto dst = jet.componentAt(ci);
    for (std::size_t f = 0; f < g.size(); ++f) dst[f] = vals[f].get<double>();
  }
  jet.validate();
  return jet;
}

json specJ(const DomainSpec& s) {
  json j;
  j["kind"] = domainName(s.kind);
  json p = json::object();
  switch (s.kind) {
    case DomainKind::CantorSlitSquare: p["depth"] = s.depth; break;
    case DomainKind::Comb: p["nTeeth"] = s.nTeeth; break;
    case DomainKind::GapIntervals: p["nSegments"] = s.nSegments; break;
    case DomainKind::HalfBall: p["radius"] = s.radius; break;
    case DomainKind::Rectangle: p["bounds"] = s.bounds; break;
    case DomainKind::Disk:
      p["center"] = pointJson(s.center, 2);
      p["radius"] = s.radius;
      break;
  }
  j["params"] = std::move(p);
  return j;
}

DomainSpec specFrom(const json& j) {
  const DomainKind kind = parseDomainKind(get<std::string>(j, "kind"));
  const json& p = field(j, "params");
  DomainSpec s;
  switch (kind) {
    case DomainKind::CantorSlitSquare: s = DomainSpec::cantorSlitSquare(get<int>(p, "depth")); break;
    case DomainKind::Comb: s = DomainSpec::comb(get<int>(p, "nTeeth")); break;
    case DomainKind::GapIntervals: s = DomainSpec::gapIntervals(get<int>(p, "nSegments")); break;
    case DomainKind::HalfBall: s = DomainSpec::halfBall(get<double>(p, "radius")); break;
    case DomainKind::Rectangle: {
      auto b = get<std::array<double, 4>>(p, "bounds");
      s = DomainSpec::rectangle(b[0], b[1], b[2], b[3]);
      break;
    }
    case DomainKind::Disk: s = DomainSpec::disk(pointFrom(field(p, "center")), get<double>(p, "radius")); break;
  }
  s.validate();
  return s;
}

json certJ(const Certificate& c) {
  json j;
  j["domain"] = c.domain;
  j["dim"] = c.dim;
  j["claim"] = claimName(c.claim);
  json terms = json::array();
  for (const auto& t : c.terms) {
    json r;
    r["n"] = t.n;
    r["base"] = pointJson(t.base, c.dim);
    r["probe"] = pointJson(t.probe, c.dim);
    r["d"] = t.quotient;
    if (!t.exact.empty()) r["exact"] = t.exact;
    terms.push_back(std::move(r));
  }
  j["terms"] = std::move(terms);
  json lim;
  lim["value"] = c.interiorLimit;
  json w = json::array();
  for (const auto& x : c.witnesses) w.push_back({{"point", pointJson(x.point, c.dim)}, {"value", x.value}});
  lim["witnesses"] = std::move(w);
  j["interiorLimit"] = std::move(lim);
  json gap;
  gap["value"] = c.gap;
  gap["exact"] = c.gapExact;
  gap["divergent"] = c.divergent;
  gap["divergenceIndex"] = c.divergenceIndex;
  j["gap"] = std::move(gap);
  json cfg;
  cfg["nMax"] = c.nMax;
  cfg["tolerance"] = c.tolerance;
  cfg["ceiling"] = c.ceiling;
  cfg["phiDepth"] = c.phiDepth;
  cfg["note"] = c.note;
  j["config"] = std::move(cfg);
  return j;
}

Certificate certFrom(const json& j) {
  Certificate c;
  c.domain = get<std::string>(j, "domain");
  c.dim = get<int>(j, "dim");
  c.claim = parseClaim(get<std::string>(j, "claim"));
  for (const auto& r : field(j, "terms")) {
    CertificateTerm t;
    t.n = get<int>(r, "n");
    t.base = pointFrom(field(r, "base"));
    t.probe = pointFrom(field(r, "probe"));
    t.quotient = get<double>(r, "d");
    if (r.contains("exact")) t.exact = get<std::string>(r, "exact");
    c.terms.push_back(t);
  }
  const json& lim = field(j, "interiorLimit");
  c.interiorLimit = get<double>(lim, "value");
  for (const auto& w : field(lim, "witnesses")) c.witnesses.push_back({pointFrom(field(w, "point")), get<double>(w, "value")});
  const json& gap = field(j, "gap");
  c.gap = get<double>(gap, "value");
  c.gapExact = get<bool>(gap, "exact");
  c.divergent = get<bool>(gap, "divergent");
  c.divergenceIndex = get<int>(gap, "divergenceIndex");
  const json& cfg = field(j, "config");
  c.nMax = get<int>(cfg, "nMax");
  c.tolerance = get<double>(cfg, "tolerance");
  c.ceiling = get<double>(cfg, "ceiling");
  c.phiDepth = get<int>(cfg, "phiDepth");
  c.note = get<std::string>(cfg, "note");
  return c;
}

json normJ(const NormReport& r) {
  json j;
  j["space"] = spaceName(r.space);
  j["order"] = r.order;
  j["mask"] = r.mask;
  j["overall"] = r.overall;
  json per = json::array();
  for (const auto& e : r.perAlpha) per.push_back({{"alpha", e.alpha.key()}, {"value", e.value}, {"argmax", e.argmax}});
  j["perAlpha"] = std::move(per);
  return j;
}

NormReport normFrom(const json& j) {
  NormReport r;
  r.space = parseSpaceTag(get<std::string>(j, "space"));
  r.order = get<int>(j, "order");
  r.mask = get<std::string>(j, "mask");
  r.overall = get<double>(j, "overall");
  for (const auto& e : field(j, "perAlpha"))
    r.perAlpha.push_back({MultiIndex::parse(get<std::string>(e, "alpha")), get<double>(e, "value"),
                          get<std::size_t>(e, "argmax")});
  return r;
}

json moduliJ(const std::vector<std::pair<MultiIndex, double>>& m) {
  json j = json::object();
  for (const auto& [a, v] : m) j[a.key()] = v;
  return j;
}

std::vector<std::pair<MultiIndex, double>> moduliFrom(const json& j) {
  std::vector<std::pair<MultiIndex, double>> m;
  for (auto it = j.begin(); it != j.end(); ++it) m.emplace_back(MultiIndex::parse(it.key()), it.value().get<double>());
  return m;
}

std::string dump(const json& j) { return j.dump(); }

}  // namespace

std::string toJson(const GridSpec& g) { return dump(gridJ(g)); }
std::string toJson(const GridMask& m) { return dump(maskJ(m)); }
std::string toJson(const SampledJet& j) { return dump(jetJ(j)); }
std::string toJson(const DomainSpec& s) { return dump(specJ(s)); }

std::string toJson(const Domain& d) {
  json j;
  j["spec"] = specJ(d.spec);
  j["h"] = d.h;
  j["convention"] = d.convention == OmegaConvention::InteriorOfQ ? "interior-of-Q" : "explicit";
  j["grid"] = gridJ(d.q.grid());
  j["q"] = rle(d.q);
  j["omega"] = rle(d.omega);
  j["counts"] = {{"q", d.q.count()}, {"omega", d.omega.count()}};
  json charts = json::array();
  for (const auto& c : d.charts) charts.push_back(c.label());
  j["charts"] = std::move(charts);
  return dump(j);
}

std::string toJson(const HestenesCoefficients& c) {
  json j;
  j["order"] = c.order;
  json ex = json::array();
  for (const auto& e : c.exact) ex.push_back(e.str());
  j["exact"] = std::move(ex);
  j["values"] = c.values;
  j["absSum"] = c.absSum();
  json res = json::array();
  for (const auto& r : coefficientResiduals(c)) res.push_back(r.str());
  j["residuals"] = std::move(res);
  return dump(j);
}

std::string toJson(const Certificate& c) { return dump(certJ(c)); }
std::string toJson(const NormReport& r) { return dump(normJ(r)); }

std::string toJson(const MembershipVerdict& v) {
  json j;
  j["space"] = spaceName(v.space);
  j["verdict"] = v.consistent() ? "consistent-at-resolution" : "violation";
  j["h"] = v.h;
  j["options"] = {{"tol", v.options.tol},
                  {"cFactor", v.options.cFactor},
                  {"band", v.options.band},
                  {"decay", v.options.decay}};
  j["consistencyBound"] = v.consistencyBound;
  j["worstConsistency"] = v.worstConsistency;
  j["modulus"] = moduliJ(v.modulus);
  j["modulus2h"] = moduliJ(v.modulus2h);
  if (v.certificate) j["certificate"] = certJ(*v.certificate);
  return dump(j);
}

std::string toJson(const GlobalExtension& e) {
  json j;
  j["jet"] = jetJ(e.xbar);
  json meta;
  meta["charts"] = e.chartLabels;
  json bumps = json::array();
  for (std::size_t nu = 0; nu < e.bumpLabels.size(); ++nu) {
    const int k = e.assignment[nu];
    const bool interior = k == static_cast<int>(e.chartLabels.size());
    bumps.push_back({{"label", e.bumpLabels[nu]}, {"uses", interior ? std::string("interior") : "localExt_" + std::to_string(k)}});
  }
  meta["bumps"] = std::move(bumps);
  meta["partitionResidual"] = e.partitionResidual;
  meta["neighborhoodWidth"] = e.neighborhoodWidth;
  meta["neighborhoodPoints"] = e.neighborhoodPoints;
  meta["uncoveredQPoints"] = e.uncoveredQPoints;
  json iface;
  iface["pairs"] = e.interface.pairs;
  iface["maxMismatch"] = e.interface.maxMismatch;
  json per = json::object();
  for (std::size_t ci = 0; ci < e.interface.perComponent.size(); ++ci)
    per[e.xbar.indices()[ci].key()] = e.interface.perComponent[ci];
  iface["perComponent"] = std::move(per);
  meta["interface"] = std::move(iface);
  j["metadata"] = std::move(meta);
  return dump(j);
}

std::string toJson(const LatticeExtension& e) {
  json j;
  j["jet"] = jetJ(e.jet);
  j["metadata"] = {{"extendedPoints", e.extendedPoints},
                   {"maxProbeOffset", e.maxProbeOffset},
                   {"errorEstimate", e.errorEstimate}};
  return dump(j);
}

GridSpec gridFromJson(const std::string& text) { return gridFrom(parse(text)); }
GridMask maskFromJson(const std::string& text) { return maskFrom(parse(text)); }

SampledJet jetFromJson(const std::string& text) {
  const json j = parse(text);
  // Extension documents wrap the jet.
  if (j.is_object() && j.contains("jet") && !j.contains("components")) return jetFrom(j.at("jet"));
  return jetFrom(j);
}

DomainSpec domainSpecFromJson(const std::string& text) { return specFrom(parse(text)); }

Domain domainFromJson(const std::string& text) {
  const json j = parse(text);
  Domain d;
  d.spec = specFrom(field(j, "spec"));
  d.h = get<double>(j, "h");
  const std::string conv = get<std::string>(j, "convention");
  if (conv != "interior-of-Q" && conv != "explicit") throw Error(ErrorCode::Parse, "unknown Omega convention " + conv);
  d.convention = conv == "explicit" ? OmegaConvention::Explicit : OmegaConvention::InteriorOfQ;
  const GridSpec g = gridFrom(field(j, "grid"));
  d.q = unrle(g, field(j, "q"));
  d.omega = unrle(g, field(j, "omega"));
  if (d.spec.chartable()) d.charts = makeCharts(d.spec);
  return d;
}

HestenesCoefficients coefficientsFromJson(const std::string& text) {
  const json j = parse(text);
  HestenesCoefficients c;
  c.order = get<int>(j, "order");
  for (const auto& e : field(j, "exact")) {
    const std::string s = e.get<std::string>();
    const auto slash = s.find('/');
    c.exact.push_back(slash == std::string::npos ? ExactRational{s, "1"}
                                                 : ExactRational{s.substr(0, slash), s.substr(slash + 1)});
  }
  c.values = get<std::vector<double>>(j, "values");
  if (c.values.size() != c.exact.size() || static_cast<int>(c.values.size()) != c.order + 1)
    throw Error(ErrorCode::Parse, "coefficient arrays must have order + 1 entries");
  return c;
}

Certificate certificateFromJson(const std::string& text) { return certFrom(parse(text)); }
NormReport normReportFromJson(const std::string& text) { return normFrom(parse(text)); }

MembershipVerdict verdictFromJson(const std::string& text) {
  const json j = parse(text);
  MembershipVerdict v;
  v.space = parseSpaceTag(get<std::string>(j, "space"));
  const std::string verdict = get<std::string>(j, "verdict");
  if (verdict != "consistent-at-resolution" && verdict != "violation") throw Error(ErrorCode::Parse, "unknown verdict");
  v.verdict = verdict == "violation" ? Verdict::Violation : Verdict::ConsistentAtResolution;
  v.h = get<double>(j, "h");
  const json& o = field(j, "options");
  v.options = {get<double>(o, "tol"), get<double>(o, "cFactor"), get<int>(o, "band"), get<double>(o, "decay")};
  v.consistencyBound = get<double>(j, "consistencyBound");
  v.worstConsistency = get<double>(j, "worstConsistency");
  v.modulus = moduliFrom(field(j, "modulus"));
  v.modulus2h = moduliFrom(field(j, "modulus2h"));
  if (j.contains("certificate")) v.certificate = certFrom(j.at("certificate"));
  if ((v.verdict == Verdict::Violation) != v.certificate.has_value())
    throw Error(ErrorCode::Parse, "a violation verdict must carry a certificate");
  return v;
}

// ------------------------------------------------------ command line

namespace {

std::vector<double> numberList(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "bad number '" + item + "' in " + what);
    }
  }
  return out;
}

}  // namespace

DomainSpec parseDomainArg(const std::string& arg) {
  const auto colon = arg.find(':');
  const std::string name = arg.substr(0, colon);
  const DomainKind kind = parseDomainKind(name);
  const std::vector<double> p =
      colon == std::string::npos ? std::vector<double>{} : numberList(arg.substr(colon + 1), "domain " + name);
  auto expect = [&](std::size_t n) {
    if (!p.empty() && p.size() != n)
      throw Error(ErrorCode::Parse, "domain " + name + " takes " + std::to_string(n) + " parameter(s)");
    return !p.empty();
  };
  auto asInt = [&](double v) {
    if (v != std::floor(v)) throw Error(ErrorCode::Parse, "domain " + name + " needs an integer parameter");
    return static_cast<int>(v);
  };
  DomainSpec s;
  switch (kind) {
    case DomainKind::CantorSlitSquare: s = DomainSpec::cantorSlitSquare(expect(1) ? asInt(p[0]) : 4); break;
    case DomainKind::Comb: s = DomainSpec::comb(expect(1) ? asInt(p[0]) : 6); break;
    case DomainKind::GapIntervals: s = DomainSpec::gapIntervals(expect(1) ? asInt(p[0]) : 6); break;
    case DomainKind::HalfBall: s = DomainSpec::halfBall(expect(1) ? p[0] : 1.0); break;
    case DomainKind::Rectangle:
      s = expect(4) ? DomainSpec::rectangle(p[0], p[1], p[2], p[3]) : DomainSpec::rectangle(0, 1, 0, 1);
      break;
    case DomainKind::Disk: s = expect(3) ? DomainSpec::disk({p[0], p[1]}, p[2]) : DomainSpec::disk({0, 0}, 1.0); break;
  }
  s.validate();
  return s;
}

std::string withProvenance(const std::string& text, const Provenance& p) {
  json j = parse(text);
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "provenance needs a JSON object document");
  json prov = json::object();
  for (const auto& [k, v] : p) prov[k] = v;
  j["provenance"] = std::move(prov);
  return j.dump();
}

std::string stripProvenance(const std::string& text) {
  json j = parse(text);
  if (j.is_object()) j.erase("provenance");
  return j.dump();
}

std::string prettyJson(const std::string& text) { return parse(text).dump(2); }

// ------------------------------------------------------ CSV

namespace {

std::string num(double v) {
  // Same shortest round-trip digits as the JSON output.
  return json(v).dump();
}

}  // namespace

std::string certificateCsv(const Certificate& c) {
  std::ostringstream os;
  os << "n,base_s,base_t,probe_s,probe_t,d_n\n";
  for (const auto& t : c.terms)
    os << t.n << ',' << num(t.base[0]) << ',' << num(t.base[1]) << ',' << num(t.probe[0]) << ','
       << num(t.probe[1]) << ',' << num(t.quotient) << '\n';
  return os.str();
}

std::string jetCsv(const SampledJet& j) {
  std::ostringstream os;
  os << "i,j,s,t,member";
  for (const auto& a : j.indices()) os << ",\"" << a.key() << '"';
  os << '\n';
  const GridSpec& g = j.grid();
  for (std::size_t f = 0; f < j.mask().size(); ++f) {
    const LatticeIndex k = g.index(f);
    const Point p = g.point(k);
    os << k[0] << ',' << (g.dim() == 2 ? k[1] : 0) << ',' << num(p[0]) << ',' << num(g.dim() == 2 ? p[1] : 0.0)
       << ',' << (j.mask()[f] ? 1 : 0);
    for (std::size_t ci = 0; ci < j.indices().size(); ++ci) os << ',' << num(j.componentAt(ci)[f]);
    os << '\n';
  }
  return os.str();
}

std::string maskCsv(const GridMask& m) {
  std::ostringstream os;
  os << "i,j,s,t,member\n";
  const GridSpec& g = m.grid();
  for (std::size_t f = 0; f < m.size(); ++f) {
    const LatticeIndex k = g.index(f);
    const Point p = g.point(k);
    os << k[0] << ',' << (g.dim() == 2 ? k[1] : 0) << ',' << num(p[0]) << ',' << num(g.dim() == 2 ? p[1] : 0.0)
       << ',' << (m[f] ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string normCsv(const NormReport& r, const GridSpec& g) {
  std::ostringstream os;
  os << "alpha,value,s,t\n";
  for (const auto& e : r.perAlpha) {
    const Point p = g.point(e.argmax);
    os << '"' << e.alpha.key() << "\"," << num(e.value) << ',' << num(p[0]) << ',' << num(g.dim() == 2 ? p[1] : 0.0)
       << '\n';
  }
  return os.str();
}

}  // namespace jetlab
